#include "relspin/bell.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "relspin/rng.hpp"

namespace relspin {

namespace {

// Angle-space simplex size; the objective is quadratic at the optimum, so the
// value error is ~1e-12 here, far below any reported tolerance.
constexpr double kSimplexSizeTol = 1e-6;
constexpr int kPolishRounds = 2;
// Maxima of the CHSH value form continuous families, and along those the
// simplex never contracts; a round also ends once the best value has not
// improved by more than kStallGain for kStallIterations iterations.
constexpr int kStallIterations = 200;
constexpr double kStallGain = 1e-13;

Mat4c kron(const Mat2c& a, const Mat2c& b) {
    Mat4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Mat3 kind_contraction(OperatorKind kind, double mass, const Vec3& p) {
    return kind == OperatorKind::Wigner ? Mat3::Identity() : contraction_map(mass, p);
}

struct Objective {
    const TwoParticleState* state;
    OperatorKind kind;
};

ChshSettings settings_from_angles(const gsl_vector* x) {
    auto dir = [x](std::size_t i) { return unit_from_angles(gsl_vector_get(x, 2 * i), gsl_vector_get(x, 2 * i + 1)); };
    return {dir(0), dir(1), dir(2), dir(3)};
}

double negative_chsh(const gsl_vector* x, void* params) {
    const auto* obj = static_cast<const Objective*>(params);
    return -chsh(*obj->state, settings_from_angles(x), obj->kind);
}

struct RestartOutcome {
    double value = -std::numeric_limits<double>::infinity();
    ChshSettings settings;
    long iterations = 0;
    bool converged = false;
};

RestartOutcome run_restart(const Objective& objective, CounterRng stream, int max_iterations) {
    CounterEngine engine(stream);
    constexpr std::size_t kDim = 8;
    gsl_vector* x = gsl_vector_alloc(kDim);
    gsl_vector* step = gsl_vector_alloc(kDim);
    for (std::size_t i = 0; i < 4; ++i) {
        gsl_vector_set(x, 2 * i, std::acos(2.0 * engine.uniform() - 1.0));
        gsl_vector_set(x, 2 * i + 1, 2.0 * std::numbers::pi * engine.uniform());
    }

    gsl_multimin_function fn;
    fn.n = kDim;
    fn.f = &negative_chsh;
    fn.params = const_cast<Objective*>(&objective);

    RestartOutcome out;
    gsl_multimin_fminimizer* minimizer = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim);
    // Re-seeding the simplex around the current best guards against the
    // simplex collapsing onto a subspace before reaching the optimum.
    double step_size = 0.5;
    for (int round = 0; round <= kPolishRounds; ++round, step_size *= 0.1) {
        gsl_vector_set_all(step, step_size);
        gsl_multimin_fminimizer_set(minimizer, &fn, x, step);
        int status = GSL_CONTINUE;
        int iter = 0;
        int stall = 0;
        // fval is not set until the first iterate.
        double best = std::numeric_limits<double>::infinity();
        while (status == GSL_CONTINUE && iter < max_iterations) {
            ++iter;
            if (gsl_multimin_fminimizer_iterate(minimizer) != GSL_SUCCESS) break;
            status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer), kSimplexSizeTol);
            const double f = gsl_multimin_fminimizer_minimum(minimizer);
            if (f < best - kStallGain) {
                best = f;
                stall = 0;
            } else if (++stall >= kStallIterations) {
                status = GSL_SUCCESS;
            }
        }
        out.iterations += iter;
        out.converged = status == GSL_SUCCESS;
        gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(minimizer));
    }
    out.value = -gsl_multimin_fminimizer_minimum(minimizer);
    out.settings = settings_from_angles(x);

    gsl_multimin_fminimizer_free(minimizer);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return out;
}

}  // namespace

Vec3 unit_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

TwoParticleState TwoParticleState::make(const Mat4c& rho, double mass, const Vec3& p_a, const Vec3& p_b) {
    require_positive_mass(mass);
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-12) throw DomainError("density matrix does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Mat4c> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()(0) < -1e-10) throw DomainError("density matrix is not positive semidefinite");
    return {rho, mass, p_a, p_b};
}

TwoParticleState TwoParticleState::singlet(double mass, const Vec3& p_a, const Vec3& p_b) {
    Vec4c psi(0.0, 1.0, -1.0, 0.0);
    psi /= std::sqrt(2.0);
    return make(psi * psi.adjoint(), mass, p_a, p_b);
}

TwoParticleState TwoParticleState::product(const Mat2c& rho_a, const Mat2c& rho_b, double mass, const Vec3& p_a,
                                           const Vec3& p_b) {
    return make(kron(rho_a, rho_b), mass, p_a, p_b);
}

Mat2c observable(OperatorKind kind, const Vec3& a, double mass, const Vec3& p) {
    if (std::abs(a.norm() - 1.0) > 1e-9) throw DomainError("measurement direction must be a unit vector");
    return 2.0 * restricted_spin(kind, mass, p).along(a);
}

double correlation(const TwoParticleState& s, const Vec3& a, const Vec3& b, OperatorKind kind) {
    const Mat2c oa = observable(kind, a, s.mass, s.p_a);
    const Mat2c ob = observable(kind, b, s.mass, s.p_b);
    return (s.rho * kron(oa, ob)).trace().real();
}

double chsh(const TwoParticleState& s, const ChshSettings& d, OperatorKind kind) {
    return correlation(s, d.a1, d.b1, kind) + correlation(s, d.a1, d.b2, kind) + correlation(s, d.a2, d.b1, kind) -
           correlation(s, d.a2, d.b2, kind);
}

Mat3 correlation_tensor(const TwoParticleState& s) {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = (s.rho * kron(pauli(i + 1), pauli(j + 1))).trace().real();
    return t;
}

Mat3 effective_correlation_tensor(const TwoParticleState& s, OperatorKind kind) {
    return kind_contraction(kind, s.mass, s.p_a).transpose() * correlation_tensor(s) *
           kind_contraction(kind, s.mass, s.p_b);
}

double max_chsh_oracle(const TwoParticleState& s, OperatorKind kind) {
    Eigen::JacobiSVD<Mat3> svd(effective_correlation_tensor(s, kind));
    const Vec3 sv = svd.singularValues();  // descending
    return 2.0 * std::sqrt(sv(0) * sv(0) + sv(1) * sv(1));
}

ChshResult max_chsh_optimized(const TwoParticleState& s, OperatorKind kind, const OptimizerOptions& opts) {
    if (opts.restarts < 1) throw DomainError("optimizer needs at least one restart");
    gsl_set_error_handler_off();

    const Objective objective{&s, kind};
    const CounterRng root(opts.seed);
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r = next++; r < opts.restarts; r = next++)
            outcomes[static_cast<std::size_t>(r)] =
                run_restart(objective, root.split(static_cast<std::uint64_t>(r)), opts.max_iterations);
    };
    const int threads = std::clamp(opts.threads, 1, opts.restarts);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ChshResult result;
    for (int r = 0; r < opts.restarts; ++r) {
        const RestartOutcome& o = outcomes[static_cast<std::size_t>(r)];
        result.iterations += o.iterations;
        // Strict comparison keeps the lowest index among equal values.
        if (result.best_restart < 0 || o.value > result.value) {
            result.value = o.value;
            result.settings = o.settings;
            result.converged = o.converged;
            result.best_restart = r;
        }
    }
    result.oracle_value = max_chsh_oracle(s, kind);
    return result;
}

std::array<double, 4> joint_probabilities(const TwoParticleState& s, const Vec3& a, const Vec3& b, OperatorKind kind) {
    const Povm pa = povm(kind, s.mass, s.p_a, a);
    const Povm pb = povm(kind, s.mass, s.p_b, b);
    const std::array<const Mat2c*, 2> ea{&pa.plus, &pa.minus};
    const std::array<const Mat2c*, 2> eb{&pb.plus, &pb.minus};
    std::array<double, 4> prob{};
    double total = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const double v = (s.rho * kron(*ea[i], *eb[j])).trace().real();
            prob[2 * i + j] = std::max(0.0, v);
            total += prob[2 * i + j];
        }
    }
    for (double& v : prob) v /= total;
    return prob;
}

JointCounts sample_outcomes(const TwoParticleState& s, const Vec3& a, const Vec3& b, OperatorKind kind,
                            std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw DomainError("shots must be at least 1");
    const std::array<double, 4> prob = joint_probabilities(s, a, b, kind);
    std::array<double, 4> cumulative{};
    std::partial_sum(prob.begin(), prob.end(), cumulative.begin());
    const CounterRng rng(seed);
    JointCounts out;
    out.shots = shots;
    out.seed = seed;
    for (std::uint64_t i = 0; i < shots; ++i) {
        const double u = rng.uniform(i);
        std::size_t k = 0;
        while (k < 3 && !(u < cumulative[k])) ++k;
        // A zero-probability outcome can only be reached past the last positive bin.
        while (prob[k] == 0.0 && k > 0) --k;
        ++out.counts[k];
    }
    return out;
}

}  // namespace relspin
