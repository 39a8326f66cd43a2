#include <doctest.h>

#include <cstring>
#include <vector>

#include "relspin/kernels.hpp"
#include "relspin/spinops.hpp"
#include "test_support.hpp"

using namespace relspin;
using namespace relspin::testing;
namespace k = relspin::kernels;

namespace {

struct Batch {
    std::vector<double> m, px, py, pz, vx, vy, vz;

    explicit Batch(std::size_t n) : m(n), px(n), py(n), pz(n), vx(n), vy(n), vz(n) {}

    k::MomentumBatch momenta() const { return {m, px, py, pz}; }
    k::Vec3Batch vectors() const { return {vx, vy, vz}; }
    std::size_t size() const { return m.size(); }
    Vec3 p(std::size_t i) const { return {px[i], py[i], pz[i]}; }
    Vec3 v(std::size_t i) const { return {vx[i], vy[i], vz[i]}; }
};

// Mixes ordinary points with p = 0, tiny and huge momenta.
Batch random_batch(Rng& rng, std::size_t n) {
    Batch b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.m[i] = uniform(rng, 0.05, 5.0);
        double scale = 10.0;
        switch (i % 7) {
        case 3: scale = 0.0; break;
        case 5: scale = 1e-9; break;
        case 6: scale = 1e6; break;
        default: break;
        }
        const Vec3 p = random_momentum(rng, scale);
        const Vec3 a = random_unit(rng);
        b.px[i] = p.x();
        b.py[i] = p.y();
        b.pz[i] = p.z();
        b.vx[i] = a.x();
        b.vy[i] = a.y();
        b.vz[i] = a.z();
    }
    return b;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels agree with the matrix forms") {
    Rng rng(61);
    const Batch b = random_batch(rng, 500);
    std::vector<double> ox(b.size()), oy(b.size()), oz(b.size()), norm(b.size());
    k::contract(k::Isa::Scalar, b.momenta(), b.vectors(), {ox, oy, oz});
    k::alpha_norm(k::Isa::Scalar, b.momenta(), b.vectors(), norm);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Vec3 expected = contraction_map(b.m[i], b.p(i)) * b.v(i);
        CHECK(max_abs(Vec3(ox[i], oy[i], oz[i]) - expected) < 1e-14);
        CHECK(norm[i] == doctest::Approx(alpha_vector(b.v(i), b.m[i], b.p(i)).norm()).epsilon(1e-13));
    }
}

TEST_CASE("kernel examples") {
    const std::vector<double> m{1.0, 1.0}, px{0.0, 0.0}, py{0.0, 0.0}, pz{0.0, 1.0};
    const std::vector<double> ax{1.0, 1.0}, ay{0.0, 0.0}, az{0.0, 0.0};
    std::vector<double> out(2);
    k::alpha_norm({m, px, py, pz}, {ax, ay, az}, out);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("SIMD kernels are bitwise identical to the scalar reference") {
    if (!k::isa_available(k::Isa::Avx2)) {
        MESSAGE("AVX2 not available on this machine; only the scalar path is exercised");
        CHECK_THROWS_AS(k::alpha_norm(k::Isa::Avx2, {}, {}, {}), std::invalid_argument);
        return;
    }
    Rng rng(62);
    for (std::size_t n = 0; n <= 37; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const Batch b = random_batch(rng, n);
            std::vector<double> sx(n), sy(n), sz(n), vx(n), vy(n), vz(n), sn(n), vn(n);
            k::contract(k::Isa::Scalar, b.momenta(), b.vectors(), {sx, sy, sz});
            k::contract(k::Isa::Avx2, b.momenta(), b.vectors(), {vx, vy, vz});
            k::alpha_norm(k::Isa::Scalar, b.momenta(), b.vectors(), sn);
            k::alpha_norm(k::Isa::Avx2, b.momenta(), b.vectors(), vn);
            CHECK(bitwise_equal(sx, vx));
            CHECK(bitwise_equal(sy, vy));
            CHECK(bitwise_equal(sz, vz));
            CHECK(bitwise_equal(sn, vn));
        }
    }
}

TEST_CASE("SIMD kernels handle unaligned subspans") {
    if (!k::isa_available(k::Isa::Avx2)) return;
    Rng rng(63);
    const Batch b = random_batch(rng, 64);
    for (std::size_t off = 1; off < 4; ++off) {
        const std::size_t n = 64 - off - 1;
        const k::MomentumBatch p{std::span(b.m).subspan(off, n), std::span(b.px).subspan(off, n),
                                 std::span(b.py).subspan(off, n), std::span(b.pz).subspan(off, n)};
        const k::Vec3Batch a{std::span(b.vx).subspan(off, n), std::span(b.vy).subspan(off, n),
                             std::span(b.vz).subspan(off, n)};
        std::vector<double> sn(n), vn(n);
        k::alpha_norm(k::Isa::Scalar, p, a, sn);
        k::alpha_norm(k::Isa::Avx2, p, a, vn);
        CHECK(bitwise_equal(sn, vn));
    }
}

TEST_CASE("dispatch") {
    CHECK(k::isa_available(k::Isa::Scalar));
    CHECK(k::isa_available(k::best_isa()));
    CHECK(k::isa_available(k::active_isa()));
    CHECK(k::to_string(k::Isa::Avx2) == "avx2");
    CHECK(k::to_string(k::Isa::Scalar) == "scalar");
}

TEST_CASE("mismatched batch sizes are rejected") {
    const std::vector<double> one{1.0}, two{1.0, 2.0};
    std::vector<double> out(1);
    CHECK_THROWS_AS(k::alpha_norm({one, one, one, two}, {one, one, one}, out), std::invalid_argument);
    std::vector<double> wide(2);
    CHECK_THROWS_AS(k::alpha_norm({one, one, one, one}, {one, one, one}, wide), std::invalid_argument);
    CHECK_THROWS_AS(k::contract({one, one, one, one}, {one, two, one}, {out, out, out}), std::invalid_argument);
}
