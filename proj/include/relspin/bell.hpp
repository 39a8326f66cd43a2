#pragma once

#include <array>
#include <cstdint>

#include "relspin/spinops.hpp"

namespace relspin {

/// Two-qubit spin density matrix with one shared mass and per-particle momenta.
/// Basis ordering is |s_A s_B> with index 2 * s_A + s_B, s = 0 for spin up.
struct TwoParticleState {
    Mat4c rho;
    double mass;
    Vec3 p_a;
    Vec3 p_b;

    /// Validates Hermiticity, unit trace and positivity.
    static TwoParticleState make(const Mat4c& rho, double mass, const Vec3& p_a, const Vec3& p_b);
    static TwoParticleState singlet(double mass, const Vec3& p_a, const Vec3& p_b);
    static TwoParticleState product(const Mat2c& rho_a, const Mat2c& rho_b, double mass, const Vec3& p_a,
                                    const Vec3& p_b);
};

/// Four measurement directions of a CHSH experiment.
struct ChshSettings {
    Vec3 a1;
    Vec3 a2;
    Vec3 b1;
    Vec3 b2;
};

struct ChshResult {
    double value = 0.0;
    ChshSettings settings;
    double oracle_value = 0.0;
    /// Simplex iterations summed over all restarts.
    long iterations = 0;
    /// False when the winning restart stopped on its iteration budget.
    bool converged = false;
    int best_restart = -1;
};

struct OptimizerOptions {
    int restarts = 32;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    int max_iterations = 20000;
    /// Worker threads for restarts; the result does not depend on this.
    int threads = 1;
};

/// Outcome counts in the order (+,+), (+,-), (-,+), (-,-).
struct JointCounts {
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

/// A = 2 a . S: alpha(a, p) . sigma for NormalizedPL, a . sigma for Wigner.
Mat2c observable(OperatorKind kind, const Vec3& a, double mass, const Vec3& p);

/// tr(rho A (x) B)
double correlation(const TwoParticleState& s, const Vec3& a, const Vec3& b, OperatorKind kind);

/// E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)
double chsh(const TwoParticleState& s, const ChshSettings& dirs, OperatorKind kind);

/// T_ij = tr(rho sigma_i (x) sigma_j)
Mat3 correlation_tensor(const TwoParticleState& s);

/// M(p_A)^T T M(p_B), with M the identity for Wigner spin.
Mat3 effective_correlation_tensor(const TwoParticleState& s, OperatorKind kind);

/// 2 sqrt(s1^2 + s2^2) from the two largest singular values of the effective tensor.
double max_chsh_oracle(const TwoParticleState& s, OperatorKind kind);

/// Multi-start Nelder-Mead over the eight polar angles of the four directions.
ChshResult max_chsh_optimized(const TwoParticleState& s, OperatorKind kind, const OptimizerOptions& opts = {});

/// tr(rho P_A^{s} (x) P_B^{s'}) in JointCounts order, renormalized to sum to one.
std::array<double, 4> joint_probabilities(const TwoParticleState& s, const Vec3& a, const Vec3& b, OperatorKind kind);

/// Shot i is decided by draw i of a counter-based stream keyed by `seed`.
JointCounts sample_outcomes(const TwoParticleState& s, const Vec3& a, const Vec3& b, OperatorKind kind,
                            std::uint64_t shots, std::uint64_t seed);

/// Unit vector from polar angle theta and azimuth phi.
Vec3 unit_from_angles(double theta, double phi);

}  // namespace relspin
