#pragma once

#include <vector>

#include "crs/segment.hpp"

namespace crs {

/// Switching threshold below which an adjoint coordinate is treated as zero
/// when deriving feedback controls (prevents chattering at switching points).
inline constexpr double kEpsSingular = 1e-10;

/// Costate of the time-optimal problem, reduced to the three scalars that
/// drive the feedback law.
struct AdjointState {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Conserved quadratic invariant g = A^2 + B^2 + C^2.
  double casimir() const { return a * a + b * b + c * c; }
};

/// Conserved quantities attached to one extremal trajectory.
struct ExtremalConstants {
  double g = 0.0;         // Casimir invariant
  double lambda_c = 0.0;  // circle parameter of the (C, dC/dt) portrait, g < 1
  double u_max = 1.0;
};

/// Computes the invariants of a state under a steering bound.  lambda_c
/// follows lambda_c^2 = (u^2 g - 1)/(1+u^2) + 1/(1+u^2)^2, clamped at zero
/// when the portrait does not reach the dC/dt axis.
ExtremalConstants extremal_constants(const AdjointState& s, double u_max);

/// Pointwise extremal feedback: v = -sign(C), u_g = -u_max * sign(A), with
/// either control set to zero when its coordinate is within kEpsSingular.
struct ExtremalControls {
  double v = 0.0;
  double u_g = 0.0;
};
ExtremalControls extremal_controls(const AdjointState& s, double u_max);

/// One integration sample of the closed-loop adjoint system.
struct ExtremalSample {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double v = 0.0;
  double u_g = 0.0;
};

/// One constant-control arc of the closed-loop trajectory, i.e. one induced
/// path segment.  phi is the traversed arc angle omega * (t_end - t_begin).
struct ExtremalArc {
  double v = 0.0;
  double u_g = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  double phi = 0.0;
  bool stationary = false;  // both controls vanish (rest point)
  bool has_kind = false;
  SegmentKind kind = SegmentKind::kGp;
};

struct ExtremalTrajectory {
  std::vector<ExtremalSample> samples;
  std::vector<ExtremalArc> arcs;   // induced segment decomposition
  bool consistent_start = true;    // Hamiltonian condition held at t = 0
  bool singular_great_circle = false;  // dwells at a great-circle equilibrium
};

/// Integrates dA = vB, dB = -vA + u_g C, dC = -u_g B under the extremal
/// feedback with RK4.  Controls are frozen per arc; sign changes of A and C
/// terminate an arc and are located by bisection to 1e-12 so switching times
/// are sharp.  Emits a warning (and clears consistent_start) when the initial
/// state violates the Hamiltonian condition 1 + vC + u_g A = 0.
ExtremalTrajectory simulate_extremal(const AdjointState& s0, double u_max,
                                     double t_end, double dt);

/// Arc angle of a completely traversed turn segment for Casimir g >= 1.
/// Strictly decreasing in g; throws std::domain_error for g < 1.
double alpha_full_traverse(double g, double u_max);

/// Arc angle of the middle turn segment in the g < 1 regime, parameterised
/// by lambda_c in [1/(1+u^2), u^2/(1+u^2)).  Range (pi + 2*atan(1/sqrt(u^4-1)), 2*pi].
double alpha_small_g(double lambda_c, double u_max);

/// Arc angle of a completely traversed turn at g = 1:
/// beta = atan(1/sqrt(u^4 - 1)) + pi/2, with beta(1) = pi.
double beta(double u_max);

/// One row of phase-portrait data: the adjoint coordinates plus dC/dt.
struct PortraitRow {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double dc_dt = 0.0;
  double v = 0.0;
  double u_g = 0.0;
};

/// Same integration as simulate_extremal, tabulated for the (A, C) and
/// (C, dC/dt) portraits.
std::vector<PortraitRow> emit_portrait(const AdjointState& s0, double u_max,
                                       double t_end, double dt);

}  // namespace crs
