#include <doctest.h>

#include <cmath>
#include <numbers>

#include "relspin/bell.hpp"
#include "relspin/rng.hpp"
#include "test_support.hpp"

using namespace relspin;
using namespace relspin::testing;

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
constexpr double kChiSquare3Dof999 = 16.266;

Mat4c random_density(Rng& rng) {
    std::normal_distribution<double> n;
    Mat4c g;
    for (int i = 0; i < 16; ++i) g(i) = Complex(n(rng), n(rng));
    Mat4c rho = g * g.adjoint();
    return rho / rho.trace().real();
}

double chi_square(const JointCounts& c, const std::array<double, 4>& prob) {
    double x2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double expected = prob[i] * static_cast<double>(c.shots);
        if (expected > 0.0) x2 += (static_cast<double>(c.counts[i]) - expected) * (static_cast<double>(c.counts[i]) - expected) / expected;
    }
    return x2;
}

}  // namespace

TEST_CASE("two-particle state validation") {
    const TwoParticleState s = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    CHECK(std::abs(s.rho.trace() - Complex(1.0)) < 1e-15);
    CHECK(std::abs(s.rho(1, 1).real() - 0.5) < 1e-15);
    CHECK(std::abs(s.rho(1, 2).real() + 0.5) < 1e-15);

    Mat4c bad = s.rho;
    bad(0, 1) = Complex(0.1, 0.0);
    CHECK_THROWS_AS(TwoParticleState::make(bad, 1.0, Vec3::Zero(), Vec3::Zero()), DomainError);
    CHECK_THROWS_AS(TwoParticleState::make(2.0 * s.rho, 1.0, Vec3::Zero(), Vec3::Zero()), DomainError);
    Mat4c negative = Mat4c::Zero();
    negative(0, 0) = 1.5;
    negative(3, 3) = -0.5;
    CHECK_THROWS_AS(TwoParticleState::make(negative, 1.0, Vec3::Zero(), Vec3::Zero()), DomainError);
    CHECK_THROWS_AS(TwoParticleState::singlet(0.0, Vec3::Zero(), Vec3::Zero()), DomainError);
}

TEST_CASE("singlet correlations") {
    Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        const double m = uniform(rng, 0.1, 3.0);
        const Vec3 pa = random_momentum(rng, 5.0);
        const Vec3 pb = random_momentum(rng, 5.0);
        const TwoParticleState s = TwoParticleState::singlet(m, pa, pb);
        const Vec3 a = random_unit(rng);
        const Vec3 b = random_unit(rng);
        CHECK(correlation(s, a, b, OperatorKind::Wigner) == doctest::Approx(-a.dot(b)).epsilon(1e-12));
        const double pl = -alpha_vector(a, m, pa).dot(alpha_vector(b, m, pb));
        CHECK(correlation(s, a, b, OperatorKind::NormalizedPL) == doctest::Approx(pl).epsilon(1e-12));
        CHECK(max_abs(correlation_tensor(s) + Mat3::Identity()) < 1e-15);
    }
}

TEST_CASE("CHSH oracle examples") {
    const TwoParticleState rest = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    CHECK(max_chsh_oracle(rest, OperatorKind::Wigner) == doctest::Approx(kTsirelson).epsilon(1e-14));
    CHECK(max_chsh_oracle(rest, OperatorKind::NormalizedPL) == doctest::Approx(kTsirelson).epsilon(1e-14));

    const TwoParticleState moving = TwoParticleState::singlet(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1));
    CHECK(max_chsh_oracle(moving, OperatorKind::Wigner) == doctest::Approx(kTsirelson).epsilon(1e-14));
    CHECK(max_chsh_oracle(moving, OperatorKind::NormalizedPL) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

    // Standard settings reach Tsirelson at rest.
    const double r = 1.0 / std::numbers::sqrt2;
    const ChshSettings dirs{Vec3(0, 0, 1), Vec3(1, 0, 0), -Vec3(r, 0, r), Vec3(r, 0, -r)};
    CHECK(chsh(rest, dirs, OperatorKind::Wigner) == doctest::Approx(kTsirelson).epsilon(1e-14));
}

TEST_CASE("PL oracle decreases towards 2 with momentum") {
    double last = kTsirelson + 1e-12;
    for (int i = 0; i <= 40; ++i) {
        const double pz = 0.25 * i;
        const double v = max_chsh_oracle(TwoParticleState::singlet(1.0, Vec3(0, 0, pz), Vec3(0, 0, pz)),
                                         OperatorKind::NormalizedPL);
        CHECK(v < last);
        CHECK(v > 2.0);
        // Singular values of -M^2 are 1, m^2/E^2, m^2/E^2.
        const double a2 = 1.0 / (1.0 + pz * pz);
        CHECK(v == doctest::Approx(2.0 * std::sqrt(1.0 + a2 * a2)).epsilon(1e-13));
        last = v;
    }
}

TEST_CASE("product states never violate the CHSH bound") {
    Rng rng(52);
    for (int i = 0; i < 100; ++i) {
        const Spinor2 x = random_spinor(rng);
        const Spinor2 y = random_spinor(rng);
        const TwoParticleState s = TwoParticleState::product(x * x.adjoint(), y * y.adjoint(), 1.0,
                                                             random_momentum(rng, 3.0), random_momentum(rng, 3.0));
        CHECK(max_chsh_oracle(s, OperatorKind::Wigner) <= 2.0 + 1e-12);
        CHECK(max_chsh_oracle(s, OperatorKind::NormalizedPL) <= 2.0 + 1e-12);
    }
}

TEST_CASE("optimizer reaches the oracle") {
    Rng rng(53);
    OptimizerOptions opts;
    opts.restarts = 8;
    for (int i = 0; i < 12; ++i) {
        const bool singlet = i < 4;
        const Vec3 pa = random_momentum(rng, 3.0);
        const Vec3 pb = random_momentum(rng, 3.0);
        const TwoParticleState s = singlet ? TwoParticleState::singlet(1.0, pa, pb)
                                           : TwoParticleState::make(random_density(rng), 1.0, pa, pb);
        const OperatorKind kind = i % 2 == 0 ? OperatorKind::Wigner : OperatorKind::NormalizedPL;
        const ChshResult r = max_chsh_optimized(s, kind, opts);
        CHECK(r.converged);
        CHECK(std::abs(r.value - r.oracle_value) < 1e-6);
        CHECK(r.value <= r.oracle_value + 1e-9);
        CHECK(chsh(s, r.settings, kind) == doctest::Approx(r.value).epsilon(1e-12));
        for (const Vec3* v : {&r.settings.a1, &r.settings.a2, &r.settings.b1, &r.settings.b2})
            CHECK(v->norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("optimizer result does not depend on the thread count") {
    const TwoParticleState s = TwoParticleState::singlet(1.0, Vec3(0.2, 0, 0.7), Vec3(0, -0.4, 0.5));
    OptimizerOptions serial;
    serial.restarts = 12;
    OptimizerOptions parallel = serial;
    parallel.threads = 4;
    const ChshResult a = max_chsh_optimized(s, OperatorKind::NormalizedPL, serial);
    const ChshResult b = max_chsh_optimized(s, OperatorKind::NormalizedPL, parallel);
    const ChshResult c = max_chsh_optimized(s, OperatorKind::NormalizedPL, serial);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(a.best_restart == b.best_restart);
    CHECK(a.iterations == b.iterations);
    CHECK(a.settings.a1 == b.settings.a1);
}

TEST_CASE("optimizer validates options") {
    const TwoParticleState s = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    OptimizerOptions opts;
    opts.restarts = 0;
    CHECK_THROWS_AS(max_chsh_optimized(s, OperatorKind::Wigner, opts), DomainError);
}

TEST_CASE("joint probabilities") {
    const TwoParticleState rest = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    const auto same = joint_probabilities(rest, Vec3::UnitZ(), Vec3::UnitZ(), OperatorKind::Wigner);
    CHECK(same[0] == 0.0);
    CHECK(same[3] == 0.0);
    CHECK(same[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(same[2] == doctest::Approx(0.5).epsilon(1e-15));

    const TwoParticleState moving = TwoParticleState::singlet(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1));
    const auto pl = joint_probabilities(moving, Vec3::UnitX(), Vec3::UnitX(), OperatorKind::NormalizedPL);
    CHECK(pl[0] == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(pl[1] == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(pl[2] == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(pl[3] == doctest::Approx(0.125).epsilon(1e-14));

    Rng rng(54);
    for (int i = 0; i < 200; ++i) {
        const TwoParticleState s = TwoParticleState::make(random_density(rng), uniform(rng, 0.1, 2.0),
                                                          random_momentum(rng, 3.0), random_momentum(rng, 3.0));
        for (OperatorKind kind : {OperatorKind::Wigner, OperatorKind::NormalizedPL}) {
            const Vec3 a = random_unit(rng);
            const Vec3 b = random_unit(rng);
            const auto prob = joint_probabilities(s, a, b, kind);
            CHECK(prob[0] + prob[1] + prob[2] + prob[3] == doctest::Approx(1.0).epsilon(1e-14));
            for (double q : prob) CHECK(q >= 0.0);
            CHECK(prob[0] - prob[1] - prob[2] + prob[3] == doctest::Approx(correlation(s, a, b, kind)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sampling is reproducible and matches the probabilities") {
    const TwoParticleState s = TwoParticleState::singlet(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1));
    const Vec3 a = Vec3::UnitX();
    const Vec3 b = Vec3(1, 1, 0).normalized();
    for (OperatorKind kind : {OperatorKind::Wigner, OperatorKind::NormalizedPL}) {
        const auto prob = joint_probabilities(s, a, b, kind);
        for (std::uint64_t seed : {1ULL, 42ULL, 9001ULL}) {
            const JointCounts c1 = sample_outcomes(s, a, b, kind, 20000, seed);
            const JointCounts c2 = sample_outcomes(s, a, b, kind, 20000, seed);
            CHECK(c1.counts == c2.counts);
            CHECK(c1.shots == 20000);
            CHECK(c1.seed == seed);
            CHECK(c1.counts[0] + c1.counts[1] + c1.counts[2] + c1.counts[3] == 20000);
            CHECK(chi_square(c1, prob) < kChiSquare3Dof999);
        }
    }
}

TEST_CASE("sampling prefixes agree: shot i depends only on the seed and i") {
    const TwoParticleState s = TwoParticleState::singlet(1.0, Vec3(0.5, 0, 0), Vec3(0, 0.5, 0));
    const Vec3 a = Vec3::UnitZ();
    const Vec3 b = Vec3::UnitX();
    const JointCounts small = sample_outcomes(s, a, b, OperatorKind::NormalizedPL, 1, 7);
    const JointCounts large = sample_outcomes(s, a, b, OperatorKind::NormalizedPL, 1000, 7);
    int first = -1;
    for (int i = 0; i < 4; ++i)
        if (small.counts[static_cast<std::size_t>(i)] == 1) first = i;
    REQUIRE(first >= 0);
    CHECK(large.counts[static_cast<std::size_t>(first)] >= 1);
}

TEST_CASE("sampling never produces zero-probability outcomes") {
    const TwoParticleState rest = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    const JointCounts c = sample_outcomes(rest, Vec3::UnitZ(), Vec3::UnitZ(), OperatorKind::Wigner, 50000, 3);
    CHECK(c.counts[0] == 0);
    CHECK(c.counts[3] == 0);
    CHECK(c.counts[1] + c.counts[2] == 50000);
    CHECK_THROWS_AS(sample_outcomes(rest, Vec3::UnitZ(), Vec3::UnitZ(), OperatorKind::Wigner, 0, 3), DomainError);
}

TEST_CASE("counter RNG streams") {
    const CounterRng rng(42);
    CHECK(rng.bits(5) == CounterRng(42).bits(5));
    CHECK(rng.bits(5) != rng.bits(6));
    CHECK(rng.split(1).bits(0) != rng.split(2).bits(0));
    CHECK(rng.split(1).bits(0) == CounterRng(42).split(1).bits(0));
    double sum = 0.0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = rng.uniform(i);
        CHECK_UNARY(u >= 0.0);
        CHECK_UNARY(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("unit_from_angles") {
    CHECK(max_abs(unit_from_angles(0.0, 1.3) - Vec3::UnitZ()) < 1e-15);
    CHECK(max_abs(unit_from_angles(std::numbers::pi / 2, std::numbers::pi / 2) - Vec3::UnitY()) < 1e-15);
}

TEST_CASE("observable examples") {
    const Vec3 a = Vec3(1, 0, 0);
    const Mat2c w = observable(OperatorKind::Wigner, a, 1.0, Vec3(0, 0, 4));
    CHECK(max_abs(w - pauli(1)) < 1e-15);
    CHECK(max_abs(w * w - Mat2c::Identity()) < 1e-15);
    const Mat2c pl = observable(OperatorKind::NormalizedPL, a, 1.0, Vec3(0, 1, 0));
    CHECK(max_abs(pl - pauli(1) / std::sqrt(2.0)) < 1e-15);
    CHECK(max_abs(pl * pl - 0.5 * Mat2c::Identity()) < 1e-15);
    CHECK(max_abs(observable(OperatorKind::NormalizedPL, a, 1.0, Vec3(3, 0, 0)) - pauli(1)) < 1e-15);
}

TEST_CASE("correlation examples") {
    const TwoParticleState moving = TwoParticleState::singlet(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1));
    CHECK(correlation(moving, Vec3::UnitX(), Vec3::UnitX(), OperatorKind::NormalizedPL) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    const Mat2c up = Spinor2(1, 0).asDiagonal().toDenseMatrix();
    const TwoParticleState zz = TwoParticleState::product(up, up, 1.0, Vec3::Zero(), Vec3::Zero());
    CHECK(correlation(zz, Vec3::UnitZ(), Vec3::UnitZ(), OperatorKind::Wigner) == doctest::Approx(1.0));
}

TEST_CASE("textbook settings fall short of Tsirelson for moving PL particles") {
    const double r = 1.0 / std::numbers::sqrt2;
    const ChshSettings dirs{Vec3::UnitX(), Vec3::UnitZ(), -Vec3(r, 0, r), -Vec3(r, 0, -r)};
    const TwoParticleState rest = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    CHECK(std::abs(chsh(rest, dirs, OperatorKind::Wigner)) == doctest::Approx(kTsirelson).epsilon(1e-14));
    const TwoParticleState moving = TwoParticleState::singlet(1.0, Vec3(0, 0, 1), Vec3(0, 0, 1));
    CHECK(std::abs(chsh(moving, dirs, OperatorKind::NormalizedPL)) < kTsirelson - 0.1);

    Rng rng(55);
    for (int i = 0; i < 200; ++i) {
        const TwoParticleState s = TwoParticleState::make(random_density(rng), 1.0, random_momentum(rng, 3.0),
                                                          random_momentum(rng, 3.0));
        const ChshSettings any{random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng)};
        for (OperatorKind kind : {OperatorKind::Wigner, OperatorKind::NormalizedPL})
            CHECK(std::abs(chsh(s, any, kind)) <= 4.0);
    }
}

TEST_CASE("PL oracle tends to the classical bound at large momentum") {
    const TwoParticleState fast = TwoParticleState::singlet(1.0, Vec3(0, 0, 1e4), Vec3(0, 0, 1e4));
    CHECK(max_chsh_oracle(fast, OperatorKind::NormalizedPL) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rest-frame singlet sampled along one axis is perfectly anticorrelated") {
    const TwoParticleState rest = TwoParticleState::singlet(1.0, Vec3::Zero(), Vec3::Zero());
    for (OperatorKind kind : {OperatorKind::Wigner, OperatorKind::NormalizedPL}) {
        const JointCounts c = sample_outcomes(rest, Vec3::UnitZ(), Vec3::UnitZ(), kind, 10000, 42);
        CHECK(c.counts[0] == 0);
        CHECK(c.counts[3] == 0);
        CHECK(std::abs(static_cast<double>(c.counts[1]) - 5000.0) < 4 * 50.0);
    }
}
