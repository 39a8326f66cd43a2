#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relspin {

// Natural units (hbar = c = 1), metric signature (+,-,-,-) throughout.

using Complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

using Spinor2 = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;
using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when an argument lies outside an operation's domain (m <= 0, zero axis, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a value fails a structural invariant (metric preservation, unitarity, ...).
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The spin observable families compared throughout the library.
///
/// `NormalizedPL` is the energy-normalized Pauli-Lubanski spatial part. On
/// sharp-momentum states it coincides with the one-particle restriction of
/// the Dirac spin operator; both construction paths are kept in `spinops`.
enum class OperatorKind { Wigner, NormalizedPL };

std::string to_string(OperatorKind kind);
OperatorKind parse_operator_kind(const std::string& text);

/// Relativistic energy for mass m and 3-momentum p.
inline double energy(double mass, const Vec3& p) {
    return std::sqrt(mass * mass + p.squaredNorm());
}

void require_positive_mass(double mass);

}  // namespace relspin
