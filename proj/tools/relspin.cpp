// relspin: parameter scans and single-shot evaluations of relativistic spin observables.

#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "relspin/scan.hpp"

namespace {

using namespace relspin::cli;

struct RawOptions {
    std::string config;
    double mass = 0.0;
    std::string pmag;
    bool log_grid = false;
    std::string p;
    std::string dir;
    std::string kind;
    std::string axis;
    std::string axis_b;
    std::string theta;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    int restarts = 0;
    int threads = 0;
    std::string out;
    std::string format;
    double tol = 0.0;
    std::string table_in;
    double inject_oracle_offset = 0.0;
};

struct Subcommand {
    CLI::App* app;
    std::function<Table(const ScanConfig&)> run;
};

void add_common_options(CLI::App* sub, RawOptions& raw) {
    sub->add_option("--config", raw.config, "JSON config file; command-line flags override its keys");
    sub->add_option("--mass", raw.mass, "particle mass (default 1)");
    sub->add_option("--pmag", raw.pmag, "momentum magnitude grid start:stop:steps (default 0:1:11)");
    sub->add_flag("--log-grid", raw.log_grid, "space the --pmag grid logarithmically");
    sub->add_option("--p", raw.p, "explicit momentum x,y,z (single point)");
    sub->add_option("--dir", raw.dir, "momentum direction x,y,z (default 0,0,1)");
    sub->add_option("--kind", raw.kind, "spin operator: wigner | pl (bell-scan also accepts both)");
    sub->add_option("--axis", raw.axis, "measurement axis x,y,z (default 0,0,1)");
    sub->add_option("--seed", raw.seed, "RNG seed (falls back to RELSPIN_SEED, then 42)");
    sub->add_option("--out", raw.out, "output path (default stdout)");
    sub->add_option("--format", raw.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", raw.tol, "tolerance for internal consistency checks (default 1e-6)");
}

ScanConfig build_config(const CLI::App* sub, const RawOptions& raw) {
    ScanConfig cfg;
    cfg.seed = seed_from_env(cfg.seed);
    if (!raw.config.empty()) apply_config_file(raw.config, cfg);
    auto given = [sub](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--mass")) cfg.mass = raw.mass;
    if (given("--pmag")) cfg.pmag = Grid::parse(raw.pmag);
    if (raw.log_grid) {
        if (!cfg.pmag) cfg.pmag = Grid{0.0, 1.0, 11};
        cfg.pmag->log = true;
    }
    if (given("--p")) cfg.momentum = parse_vec3(raw.p);
    if (given("--dir")) cfg.direction = parse_vec3(raw.dir);
    if (given("--kind")) cfg.kinds = parse_kinds(raw.kind);
    if (given("--axis")) cfg.axis = parse_vec3(raw.axis);
    if (given("--axis-b")) cfg.axis_b = parse_vec3(raw.axis_b);
    if (given("--theta")) cfg.theta = Grid::parse(raw.theta);
    if (given("--seed")) cfg.seed = raw.seed;
    if (given("--shots")) cfg.shots = raw.shots;
    if (given("--restarts")) cfg.restarts = raw.restarts;
    if (given("--threads")) cfg.threads = raw.threads;
    if (given("--out")) cfg.out = raw.out;
    if (given("--format")) cfg.format = raw.format == "json" ? Format::Json : Format::Csv;
    if (given("--tol")) cfg.tol = raw.tol;
    if (given("--from")) cfg.table_in = raw.table_in;
    if (given("--inject-oracle-offset")) cfg.inject_oracle_offset = raw.inject_oracle_offset;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relativistic spin observables: commutator, eigenvalue, Bell scans and sampling"};
    app.require_subcommand(1);
    RawOptions raw;
    std::vector<Subcommand> subs;

    auto* commutator = app.add_subcommand("commutator-scan", "CSV columns: p_mag,defect");
    add_common_options(commutator, raw);
    subs.push_back({commutator, cmd_commutator_scan});

    auto* eigen = app.add_subcommand("eigen-scan", "CSV columns: p_mag,theta,s_plus (theta: axis vs momentum)");
    add_common_options(eigen, raw);
    eigen->add_option("--theta", raw.theta, "angle grid start:stop:steps in radians (default 0:pi:9)");
    subs.push_back({eigen, cmd_eigen_scan});

    auto* bell = app.add_subcommand("bell-scan", "CSV columns: p_mag,kind,chsh_opt,chsh_oracle,status");
    add_common_options(bell, raw);
    bell->add_option("--restarts", raw.restarts, "optimizer restarts per row (default 32)");
    bell->add_option("--threads", raw.threads, "worker threads for restarts (default 1)");
    bell->add_option("--inject-oracle-offset", raw.inject_oracle_offset,
                     "testing aid: add this offset to the oracle before comparison");
    subs.push_back({bell, cmd_bell_scan});

    auto* sample = app.add_subcommand("sample", "CSV columns: outcome,count,probability,shots,seed");
    add_common_options(sample, raw);
    sample->add_option("--axis-b", raw.axis_b, "measurement axis for particle B (default: --axis)");
    sample->add_option("--shots", raw.shots, "number of shots (default 10000)");
    subs.push_back({sample, cmd_sample});

    auto* table = app.add_subcommand("table", "JSON: 18 expectation entries plus the spin-algebra verdict");
    add_common_options(table, raw);
    table->add_option("--from", raw.table_in, "check an existing table JSON file instead of generating one");
    subs.push_back({table, [&raw](ScanConfig cfg) {
                        if (raw.format.empty()) cfg.format = Format::Json;
                        return cmd_table(cfg);
                    }});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (const Subcommand& sub : subs) {
            if (!sub.app->parsed()) continue;
            const ScanConfig cfg = build_config(sub.app, raw);
            const Table result = sub.run(cfg);
            const std::string text = render(result, cfg.format);
            if (cfg.out.empty()) {
                std::cout << text;
            } else {
                std::ofstream file(cfg.out, std::ios::binary);
                if (!file) throw UsageError("cannot write '" + cfg.out + "'");
                file << text;
            }
            if (result.exit_code != kExitOk)
                std::cerr << "relspin: numerical consistency check failed (see status/tolerance)\n";
            return result.exit_code;
        }
    } catch (const UsageError& e) {
        std::cerr << "relspin: " << e.what() << "\n";
        return kExitUsage;
    } catch (const relspin::DomainError& e) {
        std::cerr << "relspin: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "relspin: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
