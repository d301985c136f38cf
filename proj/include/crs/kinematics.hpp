#pragma once

#include <vector>

#include "crs/so3.hpp"

namespace crs {

/// Control pair (speed v, steering u_g) of a segment kind at a given bound.
struct Controls {
  double v = 0.0;
  double u_g = 0.0;
};
Controls segment_controls(SegmentKind kind, double u_max);

/// Angular frequency omega = sqrt(v^2 + u_g^2) of a segment kind:
/// sqrt(1 + u_max^2) for turns, 1 for great circles, u_max for in-place.
double segment_omega(SegmentKind kind, double u_max);

/// One motion primitive with its arc angle (radians, >= 0).
struct Segment {
  SegmentKind kind;
  double phi = 0.0;

  double duration(double u_max) const { return phi / segment_omega(kind, u_max); }
};

/// An ordered sequence of segments under a common steering bound.
struct PathInstance {
  std::vector<Segment> segments;
  double u_max = 1.0;
};

/// Total traversal time sum(phi_i / omega_i).
double duration(const PathInstance& path);

/// Net rotation r0 * prod_i segment_matrix(kind_i, r, phi_i).
Mat3 forward_kinematics(const Mat3& r0, const PathInstance& path);

/// Dense samples along a path: (time, configuration) pairs.
struct PathSample {
  double t = 0.0;
  Mat3 rot;
};

/// Samples each segment at n_per_segment equal angle increments (segment end
/// included, segment start carried over from the previous sample).  Returns
/// 1 + n_per_segment * segments samples; the first is (0, r0).
std::vector<PathSample> sample_path(const Mat3& r0, const PathInstance& path,
                                    int n_per_segment);

/// One piece of a piecewise-constant control schedule.
struct ControlPiece {
  double v = 0.0;
  double u_g = 0.0;
  double duration = 0.0;
};

/// Converts a path to its control schedule (v, u_g, duration per segment).
std::vector<ControlPiece> control_schedule(const PathInstance& path);

/// Integrates dR/dt = R * Omega(v, u_g) with classical RK4 and per-step
/// reprojection onto the rotation group.  Steps never straddle a piece
/// boundary; dt is an upper bound on the step size.
Mat3 integrate_state(const Mat3& r0, const std::vector<ControlPiece>& schedule,
                     double dt);

/// Body-rate generator matrix for controls (v, u_g).
Mat3 body_rates(double v, double u_g);

}  // namespace crs
