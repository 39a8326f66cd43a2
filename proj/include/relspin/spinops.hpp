#pragma once

#include <array>
#include <utility>

#include "relspin/types.hpp"

namespace relspin {

/// sigma_0 = identity, sigma_1..3 = Pauli matrices.
const Mat2c& pauli(int index);

/// Three 2x2 Hermitian matrices offered as a spin observable.
struct SpinTriple {
    std::array<Mat2c, 3> s;

    const Mat2c& operator[](int k) const { return s[static_cast<std::size_t>(k)]; }
    Mat2c& operator[](int k) { return s[static_cast<std::size_t>(k)]; }

    /// axis . S
    Mat2c along(const Vec3& axis) const { return axis.x() * s[0] + axis.y() * s[1] + axis.z() * s[2]; }

    /// sigma / 2
    static SpinTriple pauli_halves();
    /// S_k = sum_l coeff(l, k) sigma_l / 2
    static SpinTriple from_columns(const Mat3& coeff);

    /// Largest deviation from Hermiticity or tracelessness over the three matrices.
    double structure_defect() const;
};

/// Matrix-valued Pauli-Lubanski four-vector at sharp momentum,
/// w^mu = m (L_p)^mu_nu (0, sigma/2)^nu.
struct PLVector {
    std::array<Mat2c, 4> w;
    double mass;
    Vec3 momentum;

    const Mat2c& operator[](int mu) const { return w[static_cast<std::size_t>(mu)]; }
};

/// Two-outcome POVM {P-, P+} for the spin projection along `axis`.
struct Povm {
    Mat2c minus;
    Mat2c plus;
    Vec3 axis;
    double mass;
    Vec3 momentum;

    /// |P+ + P- - 1|_max
    double completeness_defect() const;
    /// min over both elements of the smallest eigenvalue
    double min_eigenvalue() const;
    /// Frobenius norm of P+ P-; zero iff the elements are orthogonal projectors.
    double overlap_norm() const;
};

/// M(p) = (m/E) 1 + (1 - m/E) n n^T, written as (m/E) 1 + p p^T / (E (E + m)) so
/// that p = 0 gives the identity without a special case.
Mat3 contraction_map(double mass, const Vec3& p);

PLVector pauli_lubanski(double mass, const Vec3& p);

/// S = (w - w^0 p / (E + m)) / m. Collapses to sigma/2 at every momentum.
SpinTriple wigner_spin(double mass, const Vec3& p);

/// alpha(a, p) = (m/E) a + (1 - m/E)(a.n) n; a itself when p = 0.
Vec3 alpha_vector(const Vec3& a, double mass, const Vec3& p);

/// Spin triple of the given kind at momentum p. NormalizedPL is built as
/// S_k = alpha(e_k, p) . sigma / 2.
SpinTriple restricted_spin(OperatorKind kind, double mass, const Vec3& p);

/// The same NormalizedPL triple by its second route, w_k / E.
SpinTriple normalized_pauli_lubanski(double mass, const Vec3& p);

/// Componentwise tr(S_k rho) with rho = psi psi^dagger.
Vec3 spin_expectation(OperatorKind kind, const Spinor2& psi, double mass, const Vec3& p);

/// Eigenvalues (s-, s+) of axis . S, computed numerically.
std::pair<double, double> spin_eigenvalues(OperatorKind kind, double mass, const Vec3& p, const Vec3& axis);

/// Positive eigenvalue of axis . S for NormalizedPL from the angle between
/// axis and momentum: sqrt(E^2 + m^2 + p^2 cos 2 theta) / (2 sqrt(2) E).
double pl_eigenvalue_angle_form(double mass, double p_mag, double theta);

Povm povm(OperatorKind kind, double mass, const Vec3& p, const Vec3& axis);

/// max over (j, k) of || [S_j, S_k] - i eps_jkl S_l ||_F.
double commutator_defect(const SpinTriple& t);

}  // namespace relspin
