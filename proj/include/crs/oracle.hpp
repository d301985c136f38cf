#pragma once

#include <cstdint>

#include "crs/kinematics.hpp"

namespace crs {

/// Search budget.  Results are bit-for-bit deterministic for a given seed:
/// each sample draws from its own counter-based stream, so the outcome does
/// not depend on evaluation order or on skipped samples.
struct OracleBudget {
  std::int64_t n_samples = 100000;
  int max_segments = 6;  // in [1, 6]
  std::uint64_t rng_seed = 0;
};

/// Best evidence found by the random search.
struct OracleResult {
  bool found = false;           // at least one schedule hit the target ball
  PathInstance best_schedule;   // minimum-time hit (ties: lowest sample index)
  double best_time = 0.0;       // its traversal time
  double best_residual = 0.0;   // its endpoint Frobenius distance to target
  std::int64_t best_index = -1; // sample index that produced it (-1: empty path)
  std::int64_t hits = 0;        // number of samples inside the target ball

  /// Minimum over all hits of time + remaining_angle / omega_max: a hit may
  /// stop short of the target by up to the hit tolerance, so raw hit times
  /// undercut the true optimum by up to tol/omega_max; this penalized figure
  /// is the right-hand side for "the planner was not beaten" comparisons.
  double best_time_bound = 0.0;

  double nearest_residual = 0.0;  // best endpoint distance over all samples
};

/// Randomized bang-bang search: samples piecewise-constant schedules over the
/// eight extremal control pairs (v in {-1,0,1}, u_g in {-u_max,0,u_max}, not
/// both zero) with angles drawn from (0, pi], integrates them numerically,
/// and keeps the fastest schedule whose endpoint lands within tol of r_net
/// (Frobenius).  Absence of a hit is a valid outcome (found = false).
OracleResult random_search(const Mat3& r_net, double u_max,
                           const OracleBudget& budget, double tol = 5e-2,
                           double dt = 0.01);

}  // namespace crs
