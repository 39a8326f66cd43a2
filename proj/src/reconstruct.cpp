#include "relspin/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace relspin {

namespace {

constexpr std::array<const char*, 3> kComponent{"x", "y", "z"};

int levi_civita(int i, int j, int k) {
    return (i - j) * (j - k) * (k - i) / 2;
}

std::string entry_key(int k, StateLabel l) {
    return std::string(kComponent[static_cast<std::size_t>(k)]) + "_" + to_string(l);
}

StateLabel plus_state(int axis) {
    return kAllStates[static_cast<std::size_t>(2 * axis)];
}

StateLabel minus_state(int axis) {
    return kAllStates[static_cast<std::size_t>(2 * axis + 1)];
}

}  // namespace

std::string to_string(StateLabel label) {
    switch (label) {
    case StateLabel::PlusX: return "+x";
    case StateLabel::MinusX: return "-x";
    case StateLabel::PlusY: return "+y";
    case StateLabel::MinusY: return "-y";
    case StateLabel::PlusZ: return "+z";
    case StateLabel::MinusZ: return "-z";
    }
    return "?";
}

Vec3 bloch_vector(StateLabel label) {
    const auto index = static_cast<int>(label);
    const double sign = index % 2 == 0 ? 1.0 : -1.0;
    return sign * Vec3::Unit(index / 2);
}

const std::array<Mat2c, 6>& canonical_states() {
    static const std::array<Mat2c, 6> states = [] {
        std::array<Mat2c, 6> out;
        for (const StateLabel l : kAllStates) {
            const Vec3 b = bloch_vector(l);
            Mat2c rho = 0.5 * pauli(0);
            for (int k = 0; k < 3; ++k) rho += 0.5 * b(k) * pauli(k + 1);
            out[static_cast<std::size_t>(l)] = rho;
        }
        return out;
    }();
    return states;
}

Mat3 ExpectationTable::plus_block() const {
    Mat3 a;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) a(k, l) = at(k, plus_state(l));
    return a;
}

double ExpectationTable::trace_part_residual() const {
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) worst = std::max(worst, std::abs(at(k, plus_state(l)) + at(k, minus_state(l))));
    return worst;
}

double ExpectationTable::max_abs() const {
    double worst = 0.0;
    for (const auto& row : value)
        for (const double v : row) worst = std::max(worst, std::abs(v));
    return worst;
}

ExpectationTable table_from_triple(const SpinTriple& triple) {
    ExpectationTable t;
    const auto& states = canonical_states();
    for (int k = 0; k < 3; ++k)
        for (const StateLabel l : kAllStates) t.at(k, l) = (triple[k] * states[static_cast<std::size_t>(l)]).trace().real();
    return t;
}

ExpectationTable expectation_table(OperatorKind kind, double mass, const Vec3& p) {
    return table_from_triple(restricted_spin(kind, mass, p));
}

SpinTriple reconstruct_operators(const ExpectationTable& table, double tol) {
    const double residual = table.trace_part_residual();
    if (!(residual <= tol)) {
        std::ostringstream os;
        os << "expectation table is inconsistent with traceless operators (trace-part residual " << residual << ")";
        throw ReconstructionError(os.str(), residual);
    }
    const Mat3 a = table.plus_block();
    SpinTriple s;
    for (int k = 0; k < 3; ++k) {
        s[k] = Mat2c::Zero();
        for (int l = 0; l < 3; ++l) s[k] += a(k, l) * pauli(l + 1);
    }
    return s;
}

Lemma2Report lemma2_check(const ExpectationTable& table, double tol) {
    Lemma2Report report;
    report.tol = tol;
    report.trace_residual = table.trace_part_residual();

    // With S_j = a_jm sigma_m, [S_j, S_k] = 2i a_jm a_kn eps_mnp sigma_p, so the
    // algebra holds iff 2 a_jm a_kn eps_mnp = eps_jkl a_lp for every (j, k, p).
    const Mat3 a = table.plus_block();
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            for (int p = 0; p < 3; ++p) {
                double lhs = 0.0;
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) lhs += 2.0 * a(j, m) * a(k, n) * levi_civita(m, n, p);
                double rhs = 0.0;
                for (int l = 0; l < 3; ++l) rhs += levi_civita(j, k, l) * a(l, p);
                const double violation = std::abs(lhs - rhs);
                if (violation > report.epsilon_residual) {
                    report.epsilon_residual = violation;
                    report.worst_index = {j, k, p};
                }
            }
        }
    }

    // The reconstruction itself ignores the -l columns; the trace part is
    // reported separately so an inconsistent table still gets a diagnosis.
    report.triple = reconstruct_operators(table, std::numeric_limits<double>::infinity());
    report.algebra_residual = commutator_defect(report.triple);
    report.epsilon_pass = report.epsilon_residual < tol;
    report.algebra_pass = report.algebra_residual < tol;
    report.pass = report.trace_residual < tol && report.epsilon_pass && report.algebra_pass;
    return report;
}

void to_json(nlohmann::json& j, const ExpectationTable& table) {
    j = nlohmann::json::object();
    for (int k = 0; k < 3; ++k)
        for (const StateLabel l : kAllStates) j[entry_key(k, l)] = table.at(k, l);
}

void from_json(const nlohmann::json& j, ExpectationTable& table) {
    if (!j.is_object()) throw DomainError("expectation table must be a JSON object");
    for (int k = 0; k < 3; ++k) {
        for (const StateLabel l : kAllStates) {
            const std::string key = entry_key(k, l);
            const auto it = j.find(key);
            if (it == j.end() || !it->is_number()) throw DomainError("expectation table is missing numeric entry '" + key + "'");
            table.at(k, l) = it->get<double>();
        }
    }
    if (j.size() != 18) throw DomainError("expectation table must have exactly 18 entries");
    if (table.max_abs() > 0.5 + 1e-12) throw DomainError("expectation table entries must lie in [-1/2, 1/2]");
}

}  // namespace relspin
