#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "relspin/spinops.hpp"

namespace relspin {

/// The six pure states with Bloch vectors +x, -x, +y, -y, +z, -z (in this order).
enum class StateLabel { PlusX, MinusX, PlusY, MinusY, PlusZ, MinusZ };

inline constexpr std::array<StateLabel, 6> kAllStates{StateLabel::PlusX, StateLabel::MinusX, StateLabel::PlusY,
                                                      StateLabel::MinusY, StateLabel::PlusZ, StateLabel::MinusZ};

std::string to_string(StateLabel label);
Vec3 bloch_vector(StateLabel label);
const std::array<Mat2c, 6>& canonical_states();

/// Prescribed expectation values s_k(rho_l), k in {x,y,z}, l over the six canonical states.
struct ExpectationTable {
    std::array<std::array<double, 6>, 3> value{};

    double& at(int k, StateLabel l) { return value[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]; }
    double at(int k, StateLabel l) const { return value[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]; }

    /// s_k(rho_{+l}) for l in {x, y, z}, as a matrix A(k, l).
    Mat3 plus_block() const;

    /// max |s_k(rho_l) + s_k(rho_{-l})|: nonzero when some S_k has a trace part.
    double trace_part_residual() const;

    /// max |s_k(rho_l)|
    double max_abs() const;
};

/// Tolerance for the trace-part precondition and for verdicts.
inline constexpr double kDefaultLemmaTol = 1e-9;

/// Thrown by reconstruct_operators when the +l / -l columns disagree.
class ReconstructionError : public std::runtime_error {
public:
    ReconstructionError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// s_k(rho_l) = tr(S_k rho_l) for the kind's triple at momentum p.
ExpectationTable expectation_table(OperatorKind kind, double mass, const Vec3& p);

/// s_k(rho_l) = tr(S_k rho_l) for an arbitrary triple.
ExpectationTable table_from_triple(const SpinTriple& triple);

/// S_k = sum_l s_k(rho_{+l}) sigma_l.
SpinTriple reconstruct_operators(const ExpectationTable& table, double tol = kDefaultLemmaTol);

struct Lemma2Report {
    SpinTriple triple;
    double trace_residual = 0.0;
    /// max over (j, k, p) of |2 s_j(rho_m) s_k(rho_n) eps_mnp - eps_jkl s_l(rho_p)|
    double epsilon_residual = 0.0;
    std::array<int, 3> worst_index{0, 0, 0};
    /// commutator_defect of the reconstructed triple
    double algebra_residual = 0.0;
    double tol = kDefaultLemmaTol;
    bool epsilon_pass = false;
    bool algebra_pass = false;
    /// trace_residual < tol and both residual checks pass
    bool pass = false;
};

/// Decides whether the table can come from a triple obeying [S_j, S_k] = i eps_jkl S_l.
Lemma2Report lemma2_check(const ExpectationTable& table, double tol = kDefaultLemmaTol);

void to_json(nlohmann::json& j, const ExpectationTable& table);
void from_json(const nlohmann::json& j, ExpectationTable& table);

}  // namespace relspin
