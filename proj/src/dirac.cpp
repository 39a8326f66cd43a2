#include "relspin/dirac.hpp"

#include <algorithm>
#include <cmath>

#include "relspin/lorentz.hpp"
#include "relspin/spinops.hpp"

namespace relspin {

namespace {

Mat4c blocks(const Mat2c& a, const Mat2c& b, const Mat2c& c, const Mat2c& d) {
    Mat4c m;
    m << a, b, c, d;
    return m;
}

Mat2c sigma_dot(const Vec3& p) {
    return p.x() * pauli(1) + p.y() * pauli(2) + p.z() * pauli(3);
}

Spinor2 basis_spinor(SpinLabel label) {
    return label == SpinLabel::Up ? Spinor2(1.0, 0.0) : Spinor2(0.0, 1.0);
}

// sqrt(E -/+ p.sigma) = (E + m -/+ p.sigma) / sqrt(2 (E + m)).
Mat2c sqrt_light_cone(double mass, const Vec3& p, double sign) {
    const double e = energy(mass, p);
    return ((e + mass) * Mat2c::Identity() + sign * sigma_dot(p)) / std::sqrt(2.0 * (e + mass));
}

}  // namespace

Representation parse_representation(const std::string& text) {
    if (text == "standard") return Representation::Standard;
    if (text == "weyl") return Representation::Weyl;
    throw DomainError("unknown gamma representation '" + text + "' (expected standard|weyl)");
}

Mat4c GammaSet::sigma(int k) const {
    const int i = 1 + (k + 1) % 3;
    const int j = 1 + (k + 2) % 3;
    return 0.5 * kI * ((*this)[i] * (*this)[j] - (*this)[j] * (*this)[i]);
}

double GammaSet::clifford_defect() const {
    const Mat4 g = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const Mat4c anti = (*this)[mu] * (*this)[nu] + (*this)[nu] * (*this)[mu];
            worst = std::max(worst, (anti - 2.0 * g(mu, nu) * Mat4c::Identity()).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

GammaSet gamma_matrices(Representation rep) {
    const Mat2c one = Mat2c::Identity();
    const Mat2c zero = Mat2c::Zero();
    GammaSet set{{}, rep};
    switch (rep) {
    case Representation::Standard: set.gamma[0] = blocks(one, zero, zero, -one); break;
    case Representation::Weyl: set.gamma[0] = blocks(zero, one, one, zero); break;
    default: throw DomainError("unknown gamma representation");
    }
    for (int k = 1; k <= 3; ++k)
        set.gamma[static_cast<std::size_t>(k)] = blocks(zero, pauli(k), -pauli(k), zero);
    return set;
}

double DiracSpinor::dirac_residual() const {
    const GammaSet g = gamma_matrices(rep);
    const double e = energy(mass, momentum);
    // gamma^mu p_mu = gamma^0 E - gamma . p
    Mat4c slash = e * g[0];
    for (int k = 1; k <= 3; ++k) slash -= momentum(k - 1) * g[k];
    return ((slash - mass * Mat4c::Identity()) * u).norm();
}

DiracSpinor plane_wave_spinor(SpinLabel label, double mass, const Vec3& p, Representation rep) {
    require_positive_mass(mass);
    const double e = energy(mass, p);
    const Spinor2 xi = basis_spinor(label);
    Vec4c u;
    switch (rep) {
    case Representation::Standard:
        u << std::sqrt(e + mass) * xi, sigma_dot(p) * xi / std::sqrt(e + mass);
        break;
    case Representation::Weyl:
        u << sqrt_light_cone(mass, p, -1.0) * xi, sqrt_light_cone(mass, p, +1.0) * xi;
        break;
    default: throw DomainError("unknown gamma representation");
    }
    return {u, mass, p, label, rep};
}

Vec4c dirac_state(const Spinor2& psi, double mass, const Vec3& p, Representation rep) {
    return psi(0) * plane_wave_spinor(SpinLabel::Up, mass, p, rep).u +
           psi(1) * plane_wave_spinor(SpinLabel::Down, mass, p, rep).u;
}

Vec3 dispin_expectation(const Spinor2& psi, double mass, const Vec3& p, Representation rep) {
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-12) throw DomainError("spinor is not normalized");
    const Vec4c state = dirac_state(psi, mass, p, rep);
    const GammaSet g = gamma_matrices(rep);
    const double e = energy(mass, p);
    Vec3 out;
    for (int k = 0; k < 3; ++k) out(k) = (state.adjoint() * g.sigma(k) * state)(0).real() / (4.0 * e);
    return out;
}

Mat4c foldy_wouthuysen(double mass, const Vec3& p) {
    require_positive_mass(mass);
    const GammaSet g = gamma_matrices(Representation::Standard);
    const double e = energy(mass, p);
    Mat4c u = (e + mass) * Mat4c::Identity();
    for (int k = 1; k <= 3; ++k) u += p(k - 1) * g[k];
    return u / std::sqrt(2.0 * e * (e + mass));
}

double helicity_expectation(const Spinor2& psi, double mass, const Vec3& p, OperatorKind kind) {
    const double len = p.norm();
    if (len == 0.0) throw DomainError("helicity is undefined at zero momentum");
    return p.dot(spin_expectation(kind, psi, mass, p)) / len;
}

}  // namespace relspin
