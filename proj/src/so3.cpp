#include "crs/so3.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "crs/errors.hpp"

namespace crs {

double turn_radius(double u_max) {
  if (u_max < 1.0) {
    throw UnsupportedRegime("turn_radius: u_max must be >= 1, got " +
                            std::to_string(u_max));
  }
  return 1.0 / std::sqrt(1.0 + u_max * u_max);
}

Mat3 rotation_about_axis(const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 cross;
  cross << 0.0, -axis.z(), axis.y(),
           axis.z(), 0.0, -axis.x(),
          -axis.y(), axis.x(), 0.0;
  return c * Mat3::Identity() + s * cross +
         (1.0 - c) * (axis * axis.transpose());
}

double arctan_ratio(double num, double den) {
  if (den == 0.0) {
    return std::copysign(kPi / 2.0, num);
  }
  return std::atan(num / den);
}

double frobenius_distance(const Mat3& a, const Mat3& b) {
  return (a - b).norm();
}

double rotation_angle(const Mat3& rot) {
  const double c = std::clamp((rot.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

bool is_rotation(const Mat3& m, double tol) {
  return (m.transpose() * m - Mat3::Identity()).norm() <= tol &&
         std::abs(m.determinant() - 1.0) <= tol;
}

std::optional<SegmentKind> segment_kind_from_string(std::string_view token) {
  for (SegmentKind k : kAllSegmentKinds) {
    if (token == to_string(k)) return k;
  }
  return std::nullopt;
}

Vec3 axial_vector(SegmentKind kind, double r) {
  if (is_great_circle(kind)) return Vec3(0.0, 0.0, 1.0);
  if (is_in_place(kind)) return Vec3(1.0, 0.0, 0.0);
  const double s = std::sqrt(1.0 - r * r);
  switch (kind) {
    case SegmentKind::kLp:
    case SegmentKind::kRm: return Vec3(s, 0.0, r);
    default: return Vec3(-s, 0.0, r);  // R+, L-
  }
}

double axial_sign(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kGp:
    case SegmentKind::kLp:
    case SegmentKind::kRp:
    case SegmentKind::kL0: return 1.0;
    default: return -1.0;  // G-, L-, R-, R0 are transposes of the above
  }
}

Mat3 segment_matrix(SegmentKind kind, double r, double phi) {
  if (phi < 0.0) {
    throw std::domain_error("segment_matrix: arc angle must be >= 0, got " +
                            std::to_string(phi));
  }
  if (is_turn(kind) && !(r > 0.0 && r <= 1.0 / std::sqrt(2.0) + 1e-12)) {
    throw std::domain_error("segment_matrix: turn radius out of (0, 1/sqrt(2)]");
  }
  return rotation_about_axis(axial_vector(kind, r), axial_sign(kind) * phi);
}

TrigRoots solve_linear_trig(double a, double b, double c) {
  TrigRoots out;
  const double amp = std::hypot(a, b);
  if (amp < 1e-15) {
    if (std::abs(c) < 1e-15) {
      out.all_angles = true;
    }
    return out;  // no isolated roots either way
  }
  double x = c / amp;
  if (std::abs(x) > 1.0) {
    // Allow a whisker of overshoot so tangent roots survive roundoff.
    if (std::abs(x) > 1.0 + 1e-9) return out;
    x = std::clamp(x, -1.0, 1.0);
  }
  const double base = std::atan2(b, a);
  const double half = std::acos(x);
  auto wrap = [](double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
  };
  const double r1 = wrap(base + half);
  const double r2 = wrap(base - half);
  out.roots[out.count++] = r1;
  if (std::abs(r2 - r1) > 1e-12 && std::abs(std::abs(r2 - r1) - kTwoPi) > 1e-12) {
    out.roots[out.count++] = r2;
  }
  if (out.count == 2 && out.roots[0] > out.roots[1]) {
    std::swap(out.roots[0], out.roots[1]);
  }
  return out;
}

AxisAlignment align_about_axis(const Vec3& axis, const Vec3& p, const Vec3& q,
                               double tol) {
  AxisAlignment out;
  if (std::abs(p.norm() - q.norm()) > tol ||
      std::abs(axis.dot(p) - axis.dot(q)) > tol) {
    return out;  // infeasible
  }
  const Vec3 pp = p - axis.dot(p) * axis;
  const Vec3 qq = q - axis.dot(q) * axis;
  const double np = pp.norm();
  const double nq = qq.norm();
  if (np <= kTolInput && nq <= kTolInput) {
    out.status = AxisAlignment::Status::kAllAngles;
    return out;
  }
  if (np <= kTolInput || nq <= kTolInput) {
    return out;  // one vector on the axis, the other off it: cannot align
  }
  double angle = std::atan2(axis.dot(pp.cross(qq)), pp.dot(qq));
  if (angle < 0.0) angle += kTwoPi;
  out.status = AxisAlignment::Status::kUnique;
  out.angle = angle;
  return out;
}

Mat3 nearest_rotation(const Mat3& m, double tol) {
  if (m.determinant() <= 0.0) {
    throw InvalidConfiguration(
        "nearest_rotation: matrix has non-positive determinant (reflection or "
        "degenerate input)");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  const double deviation = (sv - Vec3::Ones()).cwiseAbs().maxCoeff();
  if (deviation > tol + 1e-12) {
    std::ostringstream msg;
    msg << "nearest_rotation: input is " << deviation
        << " from the rotation group (tolerance " << tol << ")";
    throw InvalidConfiguration(msg.str());
  }
  Mat3 rot = svd.matrixU() * svd.matrixV().transpose();
  if (rot.determinant() < 0.0) {
    // det(m) > 0 makes this unreachable, but keep the polar factor proper.
    Mat3 flip = Mat3::Identity();
    flip(2, 2) = -1.0;
    rot = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return rot;
}

Mat3 euler_zyx_to_rotation(double x, double y, double z) {
  return rotation_about_axis(Vec3::UnitZ(), z) *
         rotation_about_axis(Vec3::UnitY(), y) *
         rotation_about_axis(Vec3::UnitX(), x);
}

EulerZyx rotation_to_euler_zyx(const Mat3& rot) {
  EulerZyx out;
  const double sy = -rot(2, 0);
  out.y = std::asin(std::clamp(sy, -1.0, 1.0));
  if (std::abs(std::cos(out.y)) < 1e-9) {
    out.gimbal_lock = true;
    out.z = 0.0;
    // With z pinned, the remaining rotation about x is read off column 2/3.
    out.x = std::atan2(-rot(1, 2), rot(1, 1));
    return out;
  }
  out.x = std::atan2(rot(2, 1), rot(2, 2));
  out.z = std::atan2(rot(1, 0), rot(0, 0));
  return out;
}

}  // namespace crs
