#pragma once

#include <vector>

#include "crs/catalog.hpp"
#include "crs/so3.hpp"

namespace crs {

/// One verified angle assignment for a concrete candidate.
struct AngleSolution {
  std::vector<double> angles;  // radians, one per segment
  double residual = 0.0;       // Frobenius distance of forward product to target
  int branch_id = 0;           // which root combination produced it
};

/// Diagnostics accumulated while solving (useful when nothing is feasible).
struct SolveDiagnostics {
  double best_rejected_residual = 1e300;  // best residual among discarded attempts
};

/// Computes every angle assignment with Prod_i M_i(angle_i) = r_net for the
/// candidate's segment kinds, within the given Frobenius tolerance and angle
/// domains.  Strategy by unknown count:
///   - one segment: recover the angle about the known axis from a basis vector;
///   - two boundary unknowns around a fixed middle: axial projections on both
///     sides (Paden-Kahan subproblem 1);
///   - one interior unknown: eliminate the boundary angles by projecting onto
///     their axial vectors, leaving a*cos(theta) + b*sin(theta) = c;
///   - a shared interior angle appearing k >= 2 times: dense scan of the
///     eliminated scalar over the angle domain (4096 intervals) with bisection
///     refinement to 1e-12.
/// Every returned solution is re-verified by the full forward product.
std::vector<AngleSolution> solve_candidate(const ConcreteCandidate& c,
                                           const Mat3& r_net, double r,
                                           double tolerance = kTolFeasible,
                                           SolveDiagnostics* diag = nullptr);

/// Cusp angle of the equal-time turn-turn-turn replacement of a great-circle
/// arc: the middle angle epsilon in M_{L+}(r,mu) M_{R+}(r,eps) M_{L+}(r,mu)
/// = M_{G+}(theta).  Requires 0 < mu < beta; satisfies 0 < eps < 2*mu.
double epsilon_of_mu(double mu, double r);

/// Great-circle angle theta matched by the replacement above.
double theta_of_mu(double mu, double r);

}  // namespace crs
