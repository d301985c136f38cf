#include "crs/kinematics.hpp"

#include <cmath>
#include <stdexcept>

#include "crs/errors.hpp"

namespace crs {

Controls segment_controls(SegmentKind kind, double u_max) {
  if (!(u_max >= 1.0)) {
    throw UnsupportedRegime("steering bound must satisfy u_max >= 1");
  }
  return Controls{static_cast<double>(speed_sign(kind)),
                  static_cast<double>(steer_sign(kind)) * u_max};
}

double segment_omega(SegmentKind kind, double u_max) {
  const Controls c = segment_controls(kind, u_max);
  return std::sqrt(c.v * c.v + c.u_g * c.u_g);
}

double duration(const PathInstance& path) {
  double total = 0.0;
  for (const Segment& seg : path.segments) {
    total += seg.duration(path.u_max);
  }
  return total;
}

Mat3 forward_kinematics(const Mat3& r0, const PathInstance& path) {
  const double r = turn_radius(path.u_max);
  Mat3 acc = r0;
  for (const Segment& seg : path.segments) {
    acc = acc * segment_matrix(seg.kind, r, seg.phi);
  }
  return acc;
}

std::vector<PathSample> sample_path(const Mat3& r0, const PathInstance& path,
                                    int n_per_segment) {
  if (n_per_segment < 1) {
    throw std::domain_error("n_per_segment must be positive");
  }
  const double r = turn_radius(path.u_max);
  std::vector<PathSample> out;
  out.reserve(1 + path.segments.size() * static_cast<size_t>(n_per_segment));
  out.push_back(PathSample{0.0, r0});
  Mat3 base = r0;
  double t_base = 0.0;
  for (const Segment& seg : path.segments) {
    const double omega = segment_omega(seg.kind, path.u_max);
    for (int i = 1; i <= n_per_segment; ++i) {
      const double phi = seg.phi * static_cast<double>(i) /
                         static_cast<double>(n_per_segment);
      out.push_back(PathSample{t_base + phi / omega,
                               base * segment_matrix(seg.kind, r, phi)});
    }
    base = base * segment_matrix(seg.kind, r, seg.phi);
    t_base += seg.phi / omega;
  }
  return out;
}

std::vector<ControlPiece> control_schedule(const PathInstance& path) {
  std::vector<ControlPiece> out;
  out.reserve(path.segments.size());
  for (const Segment& seg : path.segments) {
    const Controls c = segment_controls(seg.kind, path.u_max);
    out.push_back(ControlPiece{c.v, c.u_g, seg.duration(path.u_max)});
  }
  return out;
}

Mat3 body_rates(double v, double u_g) {
  Mat3 omega;
  omega << 0.0, -v, 0.0,  //
      v, 0.0, -u_g,       //
      0.0, u_g, 0.0;
  return omega;
}

namespace {

/// Projects a near-orthogonal matrix back onto the rotation group via the
/// iteration Y <- (Y + Y^-T)/2, which converges quadratically to the polar
/// factor for matrices near orthogonality.
Mat3 reproject(Mat3 y) {
  for (int i = 0; i < 4; ++i) {
    const Mat3 next = 0.5 * (y + y.transpose().inverse());
    if ((next - y).norm() < 1e-15) {
      y = next;
      break;
    }
    y = next;
  }
  return y;
}

}  // namespace

Mat3 integrate_state(const Mat3& r0, const std::vector<ControlPiece>& schedule,
                     double dt) {
  if (!(dt > 0.0)) {
    throw std::domain_error("integration step must be positive");
  }
  Mat3 rot = r0;
  for (const ControlPiece& piece : schedule) {
    if (piece.duration < 0.0) {
      throw std::domain_error("control piece duration must be non-negative");
    }
    if (piece.duration == 0.0) {
      continue;
    }
    const Mat3 gen = body_rates(piece.v, piece.u_g);
    const int n_steps =
        std::max(1, static_cast<int>(std::ceil(piece.duration / dt)));
    const double h = piece.duration / static_cast<double>(n_steps);
    for (int i = 0; i < n_steps; ++i) {
      const Mat3 k1 = rot * gen;
      const Mat3 k2 = (rot + 0.5 * h * k1) * gen;
      const Mat3 k3 = (rot + 0.5 * h * k2) * gen;
      const Mat3 k4 = (rot + h * k3) * gen;
      rot = rot + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rot = reproject(rot);
    }
  }
  return rot;
}

}  // namespace crs
