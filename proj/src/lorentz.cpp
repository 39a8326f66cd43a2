#include "relspin/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

namespace relspin {

namespace {

// Tolerance for selecting the theta = pi branch of the SU(2) lift.
constexpr double kBranchTol = 1e-9;

std::string describe_defect(const char* what, double value) {
    std::ostringstream os;
    os << what << " (defect " << value << ")";
    return os.str();
}

// Wigner rotation of the pure boost whose first column is (gamma, x), acting on
// momentum q. In SL(2,C) the boosts are A ~ (1 + gamma) + sigma.x, and W is the
// unitary polar factor of A_boost A_q, which is (c + i sigma.f) / |(c, f)|.
Mat3 boost_wigner_rotation(double gamma, const Vec3& x, double mass, const Vec3& q) {
    const Vec3 y = q / mass;
    const double c = (1.0 + gamma) * (1.0 + std::sqrt(1.0 + y.squaredNorm())) + x.dot(y);
    const Vec3 f = x.cross(y);
    Eigen::Quaterniond quat(c, -f.x(), -f.y(), -f.z());
    quat.normalize();
    return quat.toRotationMatrix();
}

}  // namespace

const Mat4& metric() {
    static const Mat4 g = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();
    return g;
}

LorentzMatrix LorentzMatrix::from_matrix(const Mat4& m, double tol) {
    if (!m.allFinite()) throw InvariantError("Lorentz matrix has non-finite entries");
    LorentzMatrix out(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double defect = out.metric_defect();
    if (defect > tol * scale * scale)
        throw InvariantError(describe_defect("matrix does not preserve the Minkowski metric", defect));
    if (m(0, 0) < 1.0 - tol * scale) throw InvariantError("Lorentz matrix is not orthochronous");
    if (m.determinant() < 0.0) throw InvariantError("Lorentz matrix is not proper");
    return out;
}

double LorentzMatrix::metric_defect() const {
    return (m_.transpose() * metric() * m_ - metric()).cwiseAbs().maxCoeff();
}

LorentzMatrix LorentzMatrix::inverse() const {
    return LorentzMatrix(metric() * m_.transpose() * metric());
}

Rotation3 Rotation3::from_matrix(const Mat3& r, double tol) {
    if (!r.allFinite()) throw InvariantError("rotation has non-finite entries");
    const double defect = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (defect > tol) throw InvariantError(describe_defect("matrix is not orthogonal", defect));
    if (r.determinant() < 0.0) throw InvariantError("rotation is improper (det = -1)");
    return Rotation3(r);
}

LorentzMatrix Rotation3::embed() const {
    Mat4 m = Mat4::Identity();
    m.block<3, 3>(1, 1) = r_;
    return LorentzMatrix(m);
}

Eigen::Vector4d Rotation3::quaternion() const {
    // Shepperd's method: pivot on the largest of w^2, x^2, y^2, z^2.
    const Mat3& r = r_;
    const double tr = r.trace();
    const std::array<double, 4> diag{tr, r(0, 0), r(1, 1), r(2, 2)};
    const auto pivot = static_cast<int>(std::max_element(diag.begin(), diag.end()) - diag.begin());
    Eigen::Vector4d q;
    if (pivot == 0) {
        const double s = 2.0 * std::sqrt(1.0 + tr);
        q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s;
    } else {
        const int i = pivot - 1;
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const double s = 2.0 * std::sqrt(std::max(0.0, 1.0 + r(i, i) - r(j, j) - r(k, k)));
        q(0) = (r(k, j) - r(j, k)) / s;
        q(1 + i) = 0.25 * s;
        q(1 + j) = (r(j, i) + r(i, j)) / s;
        q(1 + k) = (r(k, i) + r(i, k)) / s;
    }
    q.normalize();
    if (q(0) < 0.0) q = -q;
    if (q(0) < kBranchTol) {
        // theta = pi: q and -q both have w ~ 0; orient the axis deterministically.
        q(0) = 0.0;
        for (int c = 1; c < 4; ++c) {
            if (std::abs(q(c)) > kBranchTol) {
                if (q(c) < 0.0) q.tail<3>() = -q.tail<3>();
                break;
            }
        }
    }
    return q;
}

double Rotation3::angle() const {
    const Eigen::Vector4d q = quaternion();
    return 2.0 * std::atan2(q.tail<3>().norm(), q(0));
}

SpinTransform SpinTransform::from_matrix(const Mat2c& d, double tol) {
    const double defect = (d.adjoint() * d - Mat2c::Identity()).cwiseAbs().maxCoeff();
    if (defect > tol) throw InvariantError(describe_defect("spin transform is not unitary", defect));
    return SpinTransform(d);
}

MomentumSpinState MomentumSpinState::make(const Spinor2& psi, double mass, const Vec3& p, double tol) {
    require_positive_mass(mass);
    if (std::abs(psi.squaredNorm() - 1.0) > tol) throw DomainError("spinor is not normalized");
    if (!p.allFinite()) throw DomainError("momentum has non-finite components");
    return {psi, mass, p};
}

LorentzMatrix standard_boost(double mass, const Vec3& p) {
    require_positive_mass(mass);
    const double e = energy(mass, p);
    Mat4 m;
    m(0, 0) = e / mass;
    for (int i = 0; i < 3; ++i) {
        m(0, i + 1) = p(i) / mass;
        m(i + 1, 0) = p(i) / mass;
        for (int j = 0; j < 3; ++j)
            m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + p(i) * p(j) / (mass * (mass + e));
    }
    return LorentzMatrix(m);
}

LorentzMatrix boost(const Vec3& direction, double rapidity) {
    const double len = direction.norm();
    if (len == 0.0 || !std::isfinite(len)) throw DomainError("boost direction must be nonzero");
    const Vec3 n = direction / len;
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    Mat4 m;
    m(0, 0) = ch;
    m.block<1, 3>(0, 1) = sh * n.transpose();
    m.block<3, 1>(1, 0) = sh * n;
    m.block<3, 3>(1, 1) = Mat3::Identity() + (ch - 1.0) * n * n.transpose();
    return LorentzMatrix(m);
}

std::pair<LorentzMatrix, Rotation3> pure_rotation(const Vec3& axis, double angle) {
    const double len = axis.norm();
    if (len == 0.0 || !std::isfinite(len)) throw DomainError("rotation axis must be nonzero");
    if (std::abs(len - 1.0) > 1e-9) throw DomainError("rotation axis must be a unit vector");
    const Vec3 n = axis / len;
    Mat3 k;
    k << 0.0, -n.z(), n.y(),
         n.z(), 0.0, -n.x(),
         -n.y(), n.x(), 0.0;
    const Mat3 r = Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
    Rotation3 rot(r);
    return {rot.embed(), rot};
}

Rotation3 wigner_rotation(const LorentzMatrix& lambda, double mass, const Vec3& p) {
    require_positive_mass(mass);
    // Revalidate: callers may hand us products of many matrices.
    const LorentzMatrix checked = LorentzMatrix::from_matrix(lambda.matrix(), 1e-10);
    const Mat4& l = checked.matrix();
    const double gamma = l(0, 0);
    const double tol = 1e-10 * gamma * gamma;
    const Vec3 x = l.block<3, 1>(1, 0);
    const Vec3 w = l.block<1, 3>(0, 1).transpose();

    // Lambda = B R with B the boost sharing Lambda's first column. Then
    // W(Lambda, p) = W(B, R p) R, which avoids the gamma^2 cancellation of
    // multiplying out L_{Lambda p}^{-1} Lambda L_p.
    const Rotation3 r = Rotation3::from_matrix(l.block<3, 3>(1, 1) - x * w.transpose() / (1.0 + gamma), tol);
    return Rotation3::from_matrix(boost_wigner_rotation(gamma, x, mass, r * p) * r.matrix(), tol);
}

SpinTransform su2_of_rotation(const Rotation3& r) {
    const Eigen::Vector4d q = r.quaternion();
    const double w = q(0), x = q(1), y = q(2), z = q(3);
    // w - i (x sx + y sy + z sz)
    Mat2c d;
    d << Complex(w, -z), Complex(-y, -x),
         Complex(y, -x), Complex(w, z);
    return SpinTransform(d);
}

MomentumSpinState apply_lorentz(const LorentzMatrix& lambda, const MomentumSpinState& state) {
    const Rotation3 w = wigner_rotation(lambda, state.mass, state.momentum);
    const FourVector moved = lambda * state.four_momentum();
    Spinor2 psi = su2_of_rotation(w) * state.psi;
    psi.normalize();
    return {psi, state.mass, moved.spatial()};
}

}  // namespace relspin
