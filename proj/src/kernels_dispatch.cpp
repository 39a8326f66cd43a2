#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "relspin/kernels.hpp"

namespace relspin::kernels {

namespace {

void check_sizes(const MomentumBatch& p, std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t n = p.size();
    if (p.px.size() != n || p.py.size() != n || p.pz.size() != n || a != n || b != n || c != n)
        throw std::invalid_argument("batch spans must all have the same length");
}

}  // namespace

std::string to_string(Isa isa) {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(RELSPIN_BUILD_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa best_isa() {
    static const Isa best = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    return best;
}

Isa active_isa() {
    static const Isa active = [] {
        const char* forced = std::getenv("RELSPIN_ISA");
        if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::Scalar;
        return best_isa();
    }();
    return active;
}

void contract(const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out) {
    contract(active_isa(), p, v, out);
}

void contract(Isa isa, const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out) {
    check_sizes(p, v.x.size(), v.y.size(), v.z.size());
    check_sizes(p, out.x.size(), out.y.size(), out.z.size());
    if (!isa_available(isa)) throw std::invalid_argument("requested ISA " + to_string(isa) + " is not available");
#if defined(RELSPIN_BUILD_AVX2)
    if (isa == Isa::Avx2) return avx2::contract(p, v, out);
#endif
    scalar::contract(p, v, out);
}

void alpha_norm(const MomentumBatch& p, const Vec3Batch& a, std::span<double> out) {
    alpha_norm(active_isa(), p, a, out);
}

void alpha_norm(Isa isa, const MomentumBatch& p, const Vec3Batch& a, std::span<double> out) {
    check_sizes(p, a.x.size(), a.y.size(), a.z.size());
    check_sizes(p, out.size(), out.size(), out.size());
    if (!isa_available(isa)) throw std::invalid_argument("requested ISA " + to_string(isa) + " is not available");
#if defined(RELSPIN_BUILD_AVX2)
    if (isa == Isa::Avx2) return avx2::alpha_norm(p, a, out);
#endif
    scalar::alpha_norm(p, a, out);
}

}  // namespace relspin::kernels
