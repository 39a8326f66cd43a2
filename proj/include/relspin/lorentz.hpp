#pragma once

#include <utility>

#include "relspin/types.hpp"

namespace relspin {

/// Contravariant four-vector (t, x, y, z).
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static FourVector on_shell(double mass, const Vec3& p) {
        return {energy(mass, p), p.x(), p.y(), p.z()};
    }
    static FourVector from(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

    Vec4 vec() const { return {t, x, y, z}; }
    Vec3 spatial() const { return {x, y, z}; }
    /// t^2 - x^2 - y^2 - z^2
    double minkowski_norm2() const { return t * t - x * x - y * y - z * z; }
};

/// Minkowski metric diag(1,-1,-1,-1).
const Mat4& metric();

/// Proper orthochronous Lorentz transformation.
class LorentzMatrix {
public:
    LorentzMatrix() : m_(Mat4::Identity()) {}

    /// Validates metric preservation, det = +1 and L00 >= 1. The metric
    /// tolerance is relative to the squared magnitude of the largest entry,
    /// since large rapidities amplify roundoff.
    static LorentzMatrix from_matrix(const Mat4& m, double tol = 1e-12);

    const Mat4& matrix() const { return m_; }
    double operator()(int row, int col) const { return m_(row, col); }

    /// max |L^T g L - g|
    double metric_defect() const;

    /// g L^T g
    LorentzMatrix inverse() const;

    FourVector operator*(const FourVector& v) const { return FourVector::from(m_ * v.vec()); }
    LorentzMatrix operator*(const LorentzMatrix& other) const {
        return LorentzMatrix(m_ * other.m_);
    }

private:
    explicit LorentzMatrix(const Mat4& m) : m_(m) {}
    friend LorentzMatrix standard_boost(double, const Vec3&);
    friend LorentzMatrix boost(const Vec3&, double);
    friend class Rotation3;

    Mat4 m_;
};

/// Proper rotation of R^3.
class Rotation3 {
public:
    Rotation3() : r_(Mat3::Identity()) {}

    /// Validates R^T R = 1 and det R = +1.
    static Rotation3 from_matrix(const Mat3& r, double tol = 1e-10);

    const Mat3& matrix() const { return r_; }
    double operator()(int row, int col) const { return r_(row, col); }

    /// 4x4 embedding with trivial time row and column.
    LorentzMatrix embed() const;

    Rotation3 operator*(const Rotation3& other) const { return Rotation3(r_ * other.r_); }
    Vec3 operator*(const Vec3& v) const { return r_ * v; }

    /// Unit quaternion (w, x, y, z) with w >= 0. At w == 0 (angle pi) the
    /// vector part is oriented so its first nonzero component is positive.
    Eigen::Vector4d quaternion() const;

    /// Rotation angle in [0, pi].
    double angle() const;

private:
    explicit Rotation3(const Mat3& r) : r_(r) {}
    friend std::pair<LorentzMatrix, Rotation3> pure_rotation(const Vec3&, double);

    Mat3 r_;
};

/// Unitary 2x2 spin transformation D[W] acting on (alpha, beta).
class SpinTransform {
public:
    SpinTransform() : d_(Mat2c::Identity()) {}
    static SpinTransform from_matrix(const Mat2c& d, double tol = 1e-12);

    const Mat2c& matrix() const { return d_; }
    Spinor2 operator*(const Spinor2& psi) const { return d_ * psi; }

private:
    explicit SpinTransform(const Mat2c& d) : d_(d) {}
    friend SpinTransform su2_of_rotation(const Rotation3&);

    Mat2c d_;
};

/// A particle of mass m with sharp 3-momentum p and spin state psi = (alpha, beta).
struct MomentumSpinState {
    Spinor2 psi;
    double mass;
    Vec3 momentum;

    /// Validates |alpha|^2 + |beta|^2 = 1 and m > 0.
    static MomentumSpinState make(const Spinor2& psi, double mass, const Vec3& p, double tol = 1e-12);

    double energy() const { return relspin::energy(mass, momentum); }
    FourVector four_momentum() const { return FourVector::on_shell(mass, momentum); }
};

/// Canonical pure boost L_p taking (m,0,0,0) to (E,p):
///   L00 = E/m,  L0i = Li0 = p_i/m,  Lij = delta_ij + p_i p_j / (m (m + E)).
LorentzMatrix standard_boost(double mass, const Vec3& p);

/// Pure boost along a unit direction with the given rapidity.
LorentzMatrix boost(const Vec3& direction, double rapidity);

/// Rodrigues rotation about a unit axis, returned both as its 4x4 embedding
/// and as the 3x3 block.
std::pair<LorentzMatrix, Rotation3> pure_rotation(const Vec3& axis, double angle);

/// W(L, p) = L_{Lp}^{-1} L L_p, restricted to its spatial block.
Rotation3 wigner_rotation(const LorentzMatrix& lambda, double mass, const Vec3& p);

/// D = exp(-i theta n.sigma / 2) for the axis-angle (n, theta) of R, theta in [0, pi].
SpinTransform su2_of_rotation(const Rotation3& r);

/// U(L) on a sharp-momentum state: momentum -> spatial part of L(E,p),
/// spinor -> D[W(L,p)] psi.
MomentumSpinState apply_lorentz(const LorentzMatrix& lambda, const MomentumSpinState& state);

}  // namespace relspin
