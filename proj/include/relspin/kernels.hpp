#pragma once

#include <span>
#include <string>

namespace relspin::kernels {

// Batched closed forms over structure-of-arrays inputs. Every entry point has
// a scalar reference and, on x86-64, an AVX2 variant chosen at runtime. The
// variants perform the same IEEE operations in the same order, so their
// outputs are bitwise identical.

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

/// Best ISA this binary and CPU support.
Isa best_isa();
/// ISA used by the dispatching overloads: best_isa() unless RELSPIN_ISA=scalar.
Isa active_isa();
bool isa_available(Isa isa);

/// Per-point masses and momenta; all spans have the same length.
struct MomentumBatch {
    std::span<const double> mass;
    std::span<const double> px;
    std::span<const double> py;
    std::span<const double> pz;

    std::size_t size() const { return mass.size(); }
};

struct Vec3Batch {
    std::span<const double> x;
    std::span<const double> y;
    std::span<const double> z;
};

struct Vec3BatchOut {
    std::span<double> x;
    std::span<double> y;
    std::span<double> z;
};

/// out_i = M(p_i) v_i with M(p) = (m/E) 1 + p p^T / (E (E + m)).
void contract(const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out);
void contract(Isa isa, const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out);

/// out_i = |alpha(a_i, p_i)| = sqrt((p_i . a_i)^2 + m_i^2) / E_i for unit a_i.
void alpha_norm(const MomentumBatch& p, const Vec3Batch& a, std::span<double> out);
void alpha_norm(Isa isa, const MomentumBatch& p, const Vec3Batch& a, std::span<double> out);

namespace scalar {
void contract(const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out);
void alpha_norm(const MomentumBatch& p, const Vec3Batch& a, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void contract(const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out);
void alpha_norm(const MomentumBatch& p, const Vec3Batch& a, std::span<double> out);
}  // namespace avx2

}  // namespace relspin::kernels
