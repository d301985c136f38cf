#pragma once

#include <utility>
#include <vector>

#include "crs/catalog.hpp"
#include "crs/kinematics.hpp"
#include "crs/solver.hpp"

namespace crs {

/// One planning query.  Rotations are polar-projected (hygiene gate at the
/// query tolerance) before solving; the problem is left-invariant, so only
/// r0^T * r_f matters.
struct PlanQuery {
  Mat3 r0 = Mat3::Identity();
  Mat3 r_f = Mat3::Identity();
  double u_max = 1.0;
  double tolerance = 1e-6;
};

/// One feasible row: the candidate, its solved angles, and the traversal time.
struct FeasiblePath {
  ConcreteCandidate candidate;
  AngleSolution solution;
  double total_time = 0.0;

  /// The solved path as an executable segment sequence.
  PathInstance path(double u_max) const;
};

/// Full planning result.  Rows are sorted by (time, word, angles) so the
/// output is deterministic; `optimal` indexes the first row and `ties` lists
/// every row whose time matches the optimum within 1e-9.
struct PlanResult {
  std::vector<FeasiblePath> feasible;
  int optimal = 0;
  std::vector<int> ties;
  Mat3 r_net = Mat3::Identity();
};

/// Enumerates the sufficient list, solves every concrete candidate, and
/// selects the minimum-time feasible path.
/// Throws UnsupportedRegime (u_max < 1), InvalidConfiguration (inputs beyond
/// the rotation hygiene gate), or NoSolutionFound (empty feasible set, which
/// signals a solver defect; the message carries the best near-miss residual).
PlanResult plan(const PlanQuery& q);

/// Maps reaction-wheel satellite parameters to a normalized query.
/// u_max = v1max*j3/(v2max*j1); returned scale converts planner time to
/// physical seconds via physical = planner_time / time_scale, with
/// time_scale = v2max/j3.
std::pair<PlanQuery, double> satellite_to_query(double j1, double j3,
                                                double v1max, double v2max,
                                                const Mat3& r_f);

}  // namespace crs
