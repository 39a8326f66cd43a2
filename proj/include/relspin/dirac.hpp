#pragma once

#include <array>

#include "relspin/types.hpp"

namespace relspin {

enum class Representation { Standard, Weyl };

Representation parse_representation(const std::string& text);

/// gamma^0 .. gamma^3 in one representation.
struct GammaSet {
    std::array<Mat4c, 4> gamma;
    Representation rep;

    const Mat4c& operator[](int mu) const { return gamma[static_cast<std::size_t>(mu)]; }

    /// Sigma_k = 2 S^{ij} = (i/2)[gamma^i, gamma^j] for cyclic (k, i, j).
    Mat4c sigma(int k) const;

    /// max |{gamma^mu, gamma^nu} - 2 g^{mu nu}|
    double clifford_defect() const;
};

GammaSet gamma_matrices(Representation rep);

/// Spin label of a positive-energy plane wave: +1/2 or -1/2 along z in the rest frame.
enum class SpinLabel { Up, Down };

/// Positive-energy plane-wave solution u^sigma_p, normalized to u^dagger u = 2E.
struct DiracSpinor {
    Vec4c u;
    double mass;
    Vec3 momentum;
    SpinLabel label;
    Representation rep;

    /// || (gamma^mu p_mu - m) u ||
    double dirac_residual() const;
};

DiracSpinor plane_wave_spinor(SpinLabel label, double mass, const Vec3& p,
                              Representation rep = Representation::Standard);

/// alpha u^{+1/2}_p + beta u^{-1/2}_p for psi = (alpha, beta).
Vec4c dirac_state(const Spinor2& psi, double mass, const Vec3& p, Representation rep = Representation::Standard);

/// Psi_p^dagger (Sigma / (4E)) Psi_p.
Vec3 dispin_expectation(const Spinor2& psi, double mass, const Vec3& p,
                        Representation rep = Representation::Standard);

/// Free Foldy-Wouthuysen unitary in the standard representation,
/// U = (E + m + gamma^i p^i) / sqrt(2E (E + m)); maps u^sigma_p to sqrt(2E) (xi_sigma; 0).
Mat4c foldy_wouthuysen(double mass, const Vec3& p);

/// n . spin_expectation(kind, psi, m, p) with n = p / |p|.
double helicity_expectation(const Spinor2& psi, double mass, const Vec3& p, OperatorKind kind);

}  // namespace relspin
