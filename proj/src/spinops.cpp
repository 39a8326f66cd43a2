#include "relspin/spinops.hpp"

#include <algorithm>
#include <cmath>

#include "relspin/lorentz.hpp"

namespace relspin {

namespace {

void require_unit(const Vec3& a, const char* what) {
    if (std::abs(a.norm() - 1.0) > 1e-9) throw DomainError(std::string(what) + " must be a unit vector");
}

// Levi-Civita symbol on {0,1,2}.
int levi_civita(int i, int j, int k) {
    return (i - j) * (j - k) * (k - i) / 2;
}

}  // namespace

const Mat2c& pauli(int index) {
    static const std::array<Mat2c, 4> sigma = [] {
        std::array<Mat2c, 4> s;
        s[0] << 1, 0, 0, 1;
        s[1] << 0, 1, 1, 0;
        s[2] << 0, -kI, kI, 0;
        s[3] << 1, 0, 0, -1;
        return s;
    }();
    return sigma.at(static_cast<std::size_t>(index));
}

SpinTriple SpinTriple::pauli_halves() {
    return from_columns(Mat3::Identity());
}

SpinTriple SpinTriple::from_columns(const Mat3& coeff) {
    SpinTriple t;
    for (int k = 0; k < 3; ++k) {
        t[k] = Mat2c::Zero();
        for (int l = 0; l < 3; ++l) t[k] += 0.5 * coeff(l, k) * pauli(l + 1);
    }
    return t;
}

double SpinTriple::structure_defect() const {
    double worst = 0.0;
    for (const auto& m : s) {
        worst = std::max(worst, (m - m.adjoint()).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(m.trace()));
    }
    return worst;
}

double Povm::completeness_defect() const {
    return (plus + minus - Mat2c::Identity()).cwiseAbs().maxCoeff();
}

double Povm::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat2c> ep(plus, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat2c> em(minus, Eigen::EigenvaluesOnly);
    return std::min(ep.eigenvalues()(0), em.eigenvalues()(0));
}

double Povm::overlap_norm() const {
    return (plus * minus).norm();
}

Mat3 contraction_map(double mass, const Vec3& p) {
    require_positive_mass(mass);
    const double e = energy(mass, p);
    return (mass / e) * Mat3::Identity() + p * p.transpose() / (e * (e + mass));
}

PLVector pauli_lubanski(double mass, const Vec3& p) {
    const Mat4& boost = standard_boost(mass, p).matrix();
    PLVector out{{}, mass, p};
    for (int mu = 0; mu < 4; ++mu) {
        out.w[static_cast<std::size_t>(mu)] = Mat2c::Zero();
        for (int nu = 1; nu < 4; ++nu) out.w[static_cast<std::size_t>(mu)] += mass * boost(mu, nu) * 0.5 * pauli(nu);
    }
    return out;
}

SpinTriple wigner_spin(double mass, const Vec3& p) {
    const PLVector w = pauli_lubanski(mass, p);
    const double e = energy(mass, p);
    SpinTriple s;
    for (int k = 0; k < 3; ++k) s[k] = (w[k + 1] - w[0] * (p(k) / (e + mass))) / mass;
    return s;
}

Vec3 alpha_vector(const Vec3& a, double mass, const Vec3& p) {
    require_unit(a, "measurement direction");
    return contraction_map(mass, p) * a;
}

SpinTriple restricted_spin(OperatorKind kind, double mass, const Vec3& p) {
    require_positive_mass(mass);
    switch (kind) {
    case OperatorKind::Wigner: return SpinTriple::pauli_halves();
    case OperatorKind::NormalizedPL: {
        Mat3 columns;
        for (int k = 0; k < 3; ++k) columns.col(k) = alpha_vector(Vec3::Unit(k), mass, p);
        return SpinTriple::from_columns(columns);
    }
    }
    throw DomainError("unknown operator kind");
}

SpinTriple normalized_pauli_lubanski(double mass, const Vec3& p) {
    const PLVector w = pauli_lubanski(mass, p);
    const double e = energy(mass, p);
    SpinTriple s;
    for (int k = 0; k < 3; ++k) s[k] = w[k + 1] / e;
    return s;
}

Vec3 spin_expectation(OperatorKind kind, const Spinor2& psi, double mass, const Vec3& p) {
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-12) throw DomainError("spinor is not normalized");
    const SpinTriple s = restricted_spin(kind, mass, p);
    const Mat2c rho = psi * psi.adjoint();
    Vec3 out;
    for (int k = 0; k < 3; ++k) out(k) = (s[k] * rho).trace().real();
    return out;
}

std::pair<double, double> spin_eigenvalues(OperatorKind kind, double mass, const Vec3& p, const Vec3& axis) {
    require_unit(axis, "axis");
    const Mat2c op = restricted_spin(kind, mass, p).along(axis);
    Eigen::SelfAdjointEigenSolver<Mat2c> solver(op, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

double pl_eigenvalue_angle_form(double mass, double p_mag, double theta) {
    require_positive_mass(mass);
    // E^2 + m^2 + p^2 cos 2theta = 2 (m^2 + p^2 cos^2 theta); the right side has no cancellation.
    const double pc = p_mag * std::cos(theta);
    return 0.5 * std::sqrt(mass * mass + pc * pc) / std::sqrt(mass * mass + p_mag * p_mag);
}

Povm povm(OperatorKind kind, double mass, const Vec3& p, const Vec3& axis) {
    require_unit(axis, "axis");
    const Mat2c twice_s = 2.0 * restricted_spin(kind, mass, p).along(axis);
    const Mat2c id = Mat2c::Identity();
    return {0.5 * (id - twice_s), 0.5 * (id + twice_s), axis, mass, p};
}

double commutator_defect(const SpinTriple& t) {
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            Mat2c d = t[j] * t[k] - t[k] * t[j];
            for (int l = 0; l < 3; ++l) {
                const int eps = levi_civita(j, k, l);
                if (eps != 0) d -= kI * static_cast<double>(eps) * t[l];
            }
            worst = std::max(worst, d.norm());
        }
    }
    return worst;
}

}  // namespace relspin
