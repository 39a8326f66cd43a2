#include "relspin/scan.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "relspin/bell.hpp"
#include "relspin/kernels.hpp"
#include "relspin/reconstruct.hpp"
#include "relspin/spinops.hpp"

namespace relspin::cli {

namespace {

const Grid kDefaultPmag{0.0, 1.0, 11};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double rounded(double v) {
    return std::strtod(format_number(v).c_str(), nullptr);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(text);
    while (std::getline(is, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
        throw UsageError("invalid number '" + text + "' in " + what);
    return v;
}

Vec3 require_unit_or_normalize(const Vec3& v, const char* name) {
    const double len = v.norm();
    if (!(len > 0.0)) throw UsageError(std::string(name) + " must be a nonzero vector");
    return v / len;
}

// Fixed unit vector orthogonal to n: the component of x (or y) transverse to n.
Vec3 transverse_to(const Vec3& n) {
    Vec3 e = Vec3::UnitX() - n.x() * n;
    if (e.norm() < 1e-6) e = Vec3::UnitY() - n.y() * n;
    return e.normalized();
}

Table rows_table(std::vector<std::string> columns) {
    Table t;
    t.columns = std::move(columns);
    return t;
}

OperatorKind single_kind(const ScanConfig& cfg, const char* command) {
    if (cfg.kinds.size() != 1) throw UsageError(std::string(command) + " takes a single --kind (wigner|pl)");
    return cfg.kinds.front();
}

nlohmann::json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return rounded(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

std::string cell_csv(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

nlohmann::json vec_json(const Vec3& v) {
    return nlohmann::json::array({rounded(v.x()), rounded(v.y()), rounded(v.z())});
}

ExpectationTable read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open table file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("malformed table file '" + path + "': " + e.what());
    }
    const nlohmann::json& entries = doc.contains("entries") ? doc.at("entries") : doc;
    try {
        return entries.get<ExpectationTable>();
    } catch (const DomainError& e) {
        throw UsageError("invalid table file '" + path + "': " + e.what());
    }
}

}  // namespace

Grid Grid::parse(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("grid '" + text + "' must have the form start:stop:steps");
    Grid g;
    g.start = parse_double(parts[0], "grid start");
    g.stop = parse_double(parts[1], "grid stop");
    const double steps = parse_double(parts[2], "grid steps");
    if (steps != std::floor(steps) || steps < 1.0 || steps > 1e7)
        throw UsageError("grid steps must be a positive integer");
    g.steps = static_cast<int>(steps);
    return g;
}

void Grid::validate(const char* name) const {
    if (steps < 1) throw UsageError(std::string(name) + ": steps must be at least 1");
    if (start > stop) throw UsageError(std::string(name) + ": start must not exceed stop");
    if (steps == 1 && start != stop) throw UsageError(std::string(name) + ": a one-step grid needs start == stop");
    if (log && !(start > 0.0)) throw UsageError(std::string(name) + ": log grids need start > 0");
}

std::vector<double> Grid::points() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double f = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        out[static_cast<std::size_t>(i)] =
            log ? start * std::pow(stop / start, f) : start + f * (stop - start);
    }
    out.back() = stop;
    return out;
}

void ScanConfig::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw UsageError("--mass must be positive");
    if (pmag) {
        pmag->validate("--pmag");
        if (pmag->start < 0.0) throw UsageError("--pmag: momentum magnitudes must be non-negative");
    }
    theta.validate("--theta");
    if (!(direction.norm() > 0.0)) throw UsageError("--dir must be a nonzero vector");
    if (!(axis.norm() > 0.0)) throw UsageError("--axis must be a nonzero vector");
    if (axis_b && !(axis_b->norm() > 0.0)) throw UsageError("--axis-b must be a nonzero vector");
    if (kinds.empty()) throw UsageError("--kind is empty");
    if (restarts < 1) throw UsageError("--restarts must be at least 1");
    if (threads < 1) throw UsageError("--threads must be at least 1");
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
}

Vec3 ScanConfig::unit_direction() const {
    return require_unit_or_normalize(direction, "--dir");
}

std::vector<Vec3> ScanConfig::momentum_grid() const {
    if (momentum) return {*momentum};
    const Vec3 n = unit_direction();
    std::vector<Vec3> out;
    for (const double mag : pmag.value_or(kDefaultPmag).points()) out.emplace_back(mag * n);
    return out;
}

Vec3 ScanConfig::single_momentum() const {
    if (momentum) return *momentum;
    if (pmag) {
        if (pmag->steps != 1) throw UsageError("this command needs --p x,y,z or a one-step --pmag");
        return pmag->start * unit_direction();
    }
    return Vec3::Zero();
}

void apply_config_file(const std::string& path, ScanConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("malformed config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");

    auto text = [&](const std::string& key, const nlohmann::json& v) {
        if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
        return v.get<std::string>();
    };
    auto number = [&](const std::string& key, const nlohmann::json& v) {
        if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto vec = [&](const std::string& key, const nlohmann::json& v) {
        if (v.is_string()) return parse_vec3(v.get<std::string>());
        if (!v.is_array() || v.size() != 3) throw UsageError("config key '" + key + "' must be [x, y, z]");
        return Vec3(number(key, v[0]), number(key, v[1]), number(key, v[2]));
    };
    auto count = [&](const std::string& key, const nlohmann::json& v) {
        if (!v.is_number_unsigned()) throw UsageError("config key '" + key + "' must be a non-negative integer");
        return v.get<std::uint64_t>();
    };

    bool log_grid = false;
    for (const auto& [key, v] : doc.items()) {
        if (key == "mass") cfg.mass = number(key, v);
        else if (key == "pmag") cfg.pmag = Grid::parse(text(key, v));
        else if (key == "log_grid") {
            if (!v.is_boolean()) throw UsageError("config key 'log_grid' must be true or false");
            log_grid = v.get<bool>();
        }
        else if (key == "p") cfg.momentum = vec(key, v);
        else if (key == "dir") cfg.direction = vec(key, v);
        else if (key == "kind") cfg.kinds = parse_kinds(text(key, v));
        else if (key == "axis") cfg.axis = vec(key, v);
        else if (key == "axis_b") cfg.axis_b = vec(key, v);
        else if (key == "theta") cfg.theta = Grid::parse(text(key, v));
        else if (key == "seed") cfg.seed = count(key, v);
        else if (key == "shots") cfg.shots = count(key, v);
        else if (key == "restarts") cfg.restarts = static_cast<int>(count(key, v));
        else if (key == "tol") cfg.tol = number(key, v);
        else if (key == "format") {
            const std::string f = text(key, v);
            if (f == "csv") cfg.format = Format::Csv;
            else if (f == "json") cfg.format = Format::Json;
            else throw UsageError("config key 'format' must be csv or json");
        } else if (key == "out") cfg.out = text(key, v);
        else if (key == "threads") cfg.threads = static_cast<int>(count(key, v));
        else throw UsageError("unknown config key '" + key + "' in '" + path + "'");
    }
    if (log_grid) {
        if (!cfg.pmag) cfg.pmag = kDefaultPmag;
        cfg.pmag->log = true;
    }
}

std::string render(const Table& table, Format format) {
    if (table.document) return table.document->dump(2) + "\n";
    if (format == Format::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
            rows.push_back(std::move(obj));
        }
        return rows.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + cell_csv(row[c]);
        out += "\n";
    }
    return out;
}

Vec3 parse_vec3(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw UsageError("vector '" + text + "' must have the form x,y,z");
    return {parse_double(parts[0], "vector"), parse_double(parts[1], "vector"), parse_double(parts[2], "vector")};
}

OperatorKind parse_kind(const std::string& text) {
    try {
        return parse_operator_kind(text);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::vector<OperatorKind> parse_kinds(const std::string& text) {
    if (text == "both") return {OperatorKind::Wigner, OperatorKind::NormalizedPL};
    return {parse_kind(text)};
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("RELSPIN_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string("RELSPIN_SEED is not an integer: ") + env);
    return v;
}

Table cmd_commutator_scan(const ScanConfig& cfg) {
    cfg.validate();
    const OperatorKind kind = single_kind(cfg, "commutator-scan");
    Table t = rows_table({"p_mag", "defect"});
    for (const Vec3& p : cfg.momentum_grid())
        t.rows.push_back({p.norm(), commutator_defect(restricted_spin(kind, cfg.mass, p))});
    return t;
}

Table cmd_eigen_scan(const ScanConfig& cfg) {
    cfg.validate();
    const OperatorKind kind = single_kind(cfg, "eigen-scan");
    const std::vector<Vec3> momenta = cfg.momentum_grid();
    const std::vector<double> thetas = cfg.theta.points();

    struct Point {
        Vec3 p;
        double p_mag;
        double theta;
        Vec3 axis;
    };
    std::vector<Point> points;
    for (const Vec3& p : momenta) {
        const Vec3 n = p.norm() > 0.0 ? Vec3(p.normalized()) : cfg.unit_direction();
        const Vec3 e = transverse_to(n);
        for (const double th : thetas) points.push_back({p, p.norm(), th, (std::cos(th) * n + std::sin(th) * e).normalized()});
    }

    const std::size_t count = points.size();
    std::vector<double> mass(count, cfg.mass), px(count), py(count), pz(count), ax(count), ay(count), az(count);
    for (std::size_t i = 0; i < count; ++i) {
        px[i] = points[i].p.x(), py[i] = points[i].p.y(), pz[i] = points[i].p.z();
        ax[i] = points[i].axis.x(), ay[i] = points[i].axis.y(), az[i] = points[i].axis.z();
    }
    std::vector<double> alpha(count, 1.0);
    if (kind == OperatorKind::NormalizedPL) kernels::alpha_norm({mass, px, py, pz}, {ax, ay, az}, alpha);

    Table t = rows_table({"p_mag", "theta", "s_plus"});
    for (std::size_t i = 0; i < count; ++i) {
        const Point& pt = points[i];
        const double s_plus = 0.5 * alpha[i];
        const double numeric = spin_eigenvalues(kind, cfg.mass, pt.p, pt.axis).second;
        const double closed = kind == OperatorKind::Wigner ? 0.5 : pl_eigenvalue_angle_form(cfg.mass, pt.p_mag, pt.theta);
        if (std::abs(numeric - s_plus) > cfg.tol || std::abs(closed - s_plus) > cfg.tol) t.exit_code = kExitNumerical;
        t.rows.push_back({pt.p_mag, pt.theta, s_plus});
    }
    return t;
}

Table cmd_bell_scan(const ScanConfig& cfg) {
    cfg.validate();
    OptimizerOptions opts;
    opts.restarts = cfg.restarts;
    opts.seed = cfg.seed;
    opts.tol = cfg.tol;
    opts.threads = cfg.threads;

    Table t = rows_table({"p_mag", "kind", "chsh_opt", "chsh_oracle", "status"});
    for (const Vec3& p : cfg.momentum_grid()) {
        const TwoParticleState singlet = TwoParticleState::singlet(cfg.mass, p, p);
        for (const OperatorKind kind : cfg.kinds) {
            const ChshResult r = max_chsh_optimized(singlet, kind, opts);
            const double oracle = r.oracle_value + cfg.inject_oracle_offset;
            std::string status = "ok";
            if (std::abs(r.value - oracle) > cfg.tol) status = "mismatch";
            else if (!r.converged) status = "nonconverged";
            if (status != "ok") t.exit_code = kExitNumerical;
            t.rows.push_back({p.norm(), to_string(kind), r.value, oracle, status});
        }
    }
    return t;
}

Table cmd_sample(const ScanConfig& cfg) {
    cfg.validate();
    if (cfg.shots < 1) throw UsageError("--shots must be at least 1");
    const OperatorKind kind = single_kind(cfg, "sample");
    const Vec3 p = cfg.single_momentum();
    const Vec3 a = require_unit_or_normalize(cfg.axis, "--axis");
    const Vec3 b = require_unit_or_normalize(cfg.axis_b.value_or(cfg.axis), "--axis-b");
    const TwoParticleState singlet = TwoParticleState::singlet(cfg.mass, p, p);
    const JointCounts counts = sample_outcomes(singlet, a, b, kind, cfg.shots, cfg.seed);
    const std::array<double, 4> prob = joint_probabilities(singlet, a, b, kind);

    static constexpr std::array<const char*, 4> kOutcomes{"++", "+-", "-+", "--"};
    Table t = rows_table({"outcome", "count", "probability", "shots", "seed"});
    for (std::size_t i = 0; i < 4; ++i)
        t.rows.push_back({std::string(kOutcomes[i]), static_cast<std::int64_t>(counts.counts[i]), prob[i],
                          static_cast<std::int64_t>(counts.shots), std::to_string(counts.seed)});
    return t;
}

Table cmd_table(const ScanConfig& cfg) {
    cfg.validate();
    if (cfg.format != Format::Json) throw UsageError("table output is JSON only (use --format json)");
    nlohmann::json doc = nlohmann::json::object();
    ExpectationTable table;
    if (!cfg.table_in.empty()) {
        table = read_table_file(cfg.table_in);
        doc["source"] = cfg.table_in;
    } else {
        const OperatorKind kind = single_kind(cfg, "table");
        const Vec3 p = cfg.single_momentum();
        table = expectation_table(kind, cfg.mass, p);
        doc["kind"] = to_string(kind);
        doc["mass"] = rounded(cfg.mass);
        doc["momentum"] = vec_json(p);
    }
    const Lemma2Report report = lemma2_check(table, kDefaultLemmaTol);

    // Entries are written at full precision so the file reconstructs exactly.
    doc["entries"] = table;
    doc["lemma2"] = {
        {"verdict", report.pass ? "pass" : "fail"},
        {"tol", report.tol},
        {"trace_residual", rounded(report.trace_residual)},
        {"epsilon_residual", rounded(report.epsilon_residual)},
        {"worst_index", report.worst_index},
        {"defect", rounded(report.algebra_residual)},
    };
    Table t;
    t.document = std::move(doc);
    return t;
}

}  // namespace relspin::cli
