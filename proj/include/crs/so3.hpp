#pragma once

#include <Eigen/Dense>
#include <array>
#include <numbers>

#include "crs/segment.hpp"

namespace crs {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance tiers used throughout the library.
inline constexpr double kTolAlgebra = 1e-12;   ///< exact algebraic identities
inline constexpr double kTolIdentity = 1e-10;  ///< composed matrix identities
inline constexpr double kTolInput = 1e-9;      ///< user-supplied rotations
inline constexpr double kTolFeasible = 1e-6;   ///< accepted terminal residual

/// Tight-turn radius for a steering bound u_max >= 1; lies in (0, 1/sqrt(2)].
double turn_radius(double u_max);

/// Rotation by `angle` about the unit vector `axis` (Euler-Rodrigues form).
Mat3 rotation_about_axis(const Vec3& axis, double angle);

/// Scalar arctangent of num/den with the convention that a vanishing
/// denominator yields +-pi/2 by the sign of the numerator.  Matches the
/// piecewise definition used by the closed-form traverse-angle expressions.
double arctan_ratio(double num, double den);

/// Frobenius distance between two matrices.
double frobenius_distance(const Mat3& a, const Mat3& b);

/// Geodesic angle of a rotation matrix, in [0, pi].
double rotation_angle(const Mat3& rot);

/// True when m is orthonormal with determinant +1 within `tol` (Frobenius).
bool is_rotation(const Mat3& m, double tol = kTolInput);

/// Rotation matrix of a single motion primitive with arc angle `phi`.
///
/// `r` is the tight-turn radius and is ignored for great-circle and
/// turn-in-place kinds.  Throws std::domain_error for phi < 0 or, for turn
/// kinds, r outside (0, 1/sqrt(2)].
Mat3 segment_matrix(SegmentKind kind, double r, double phi);

/// Unit vector fixed by segment_matrix(kind, r, phi) for every phi.
Vec3 axial_vector(SegmentKind kind, double r);

/// Sign s such that segment_matrix(kind, r, phi) equals a rotation by
/// s * phi about axial_vector(kind, r).
double axial_sign(SegmentKind kind);

/// Roots of a*cos(theta) + b*sin(theta) = c on [0, 2*pi).
struct TrigRoots {
  bool all_angles = false;          ///< a = b = c = 0: every angle solves
  int count = 0;                    ///< number of isolated roots (0, 1 or 2)
  std::array<double, 2> roots{};    ///< the isolated roots, ascending
};
TrigRoots solve_linear_trig(double a, double b, double c);

/// Angle aligning p onto q about a known unit axis (rotate-onto subproblem).
struct AxisAlignment {
  enum class Status {
    kUnique,      ///< exactly one angle in [0, 2*pi)
    kAllAngles,   ///< p and q both parallel to the axis: every angle works
    kInfeasible,  ///< axis components or norms disagree: no angle works
  };
  Status status = Status::kInfeasible;
  double angle = 0.0;  ///< valid when status == kUnique
};
AxisAlignment align_about_axis(const Vec3& axis, const Vec3& p, const Vec3& q,
                               double tol = kTolInput);

/// Orthogonal polar factor of m (closest rotation in Frobenius norm).
///
/// Accepts matrices whose singular values deviate from 1 by at most `tol`
/// each; throws InvalidConfiguration (with the measured deviation) for
/// anything farther from the rotation group or with non-positive determinant.
Mat3 nearest_rotation(const Mat3& m, double tol = kTolFeasible);

/// Intrinsic z-y-x (yaw-pitch-roll) Euler angles: R = Rz(z) * Ry(y) * Rx(x).
Mat3 euler_zyx_to_rotation(double x, double y, double z);

struct EulerZyx {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool gimbal_lock = false;  ///< |cos y| < 1e-9; z fixed to 0 by convention
};
EulerZyx rotation_to_euler_zyx(const Mat3& rot);

}  // namespace crs
