#include "crs/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crs/errors.hpp"

namespace crs {

PathInstance FeasiblePath::path(double u_max) const {
  PathInstance p;
  p.u_max = u_max;
  p.segments.reserve(candidate.kinds.size());
  for (size_t i = 0; i < candidate.kinds.size(); ++i) {
    p.segments.push_back(Segment{candidate.kinds[i], solution.angles[i]});
  }
  return p;
}

namespace {

bool row_less(const FeasiblePath& x, const FeasiblePath& y) {
  if (x.total_time != y.total_time) {
    return x.total_time < y.total_time;
  }
  const std::string wx = x.candidate.word();
  const std::string wy = y.candidate.word();
  if (wx != wy) {
    return wx < wy;
  }
  return std::lexicographical_compare(
      x.solution.angles.begin(), x.solution.angles.end(),
      y.solution.angles.begin(), y.solution.angles.end());
}

}  // namespace

PlanResult plan(const PlanQuery& q) {
  if (!(q.u_max >= 1.0)) {
    throw UnsupportedRegime("planning requires u_max >= 1");
  }
  if (!(q.tolerance > 0.0)) {
    throw InvalidConfiguration("tolerance must be positive");
  }
  const Mat3 r0 = nearest_rotation(q.r0, q.tolerance);
  const Mat3 r_f = nearest_rotation(q.r_f, q.tolerance);

  PlanResult result;
  result.r_net = r0.transpose() * r_f;
  const double r = turn_radius(q.u_max);
  const Catalog catalog = sufficient_list(q.u_max);

  SolveDiagnostics diag;
  for (const AbstractPathType& type : catalog.types) {
    for (const ConcreteCandidate& candidate : expand_concrete(type)) {
      for (AngleSolution& sol :
           solve_candidate(candidate, result.r_net, r, q.tolerance, &diag)) {
        FeasiblePath row;
        row.candidate = candidate;
        row.solution = std::move(sol);
        row.total_time = duration(row.path(q.u_max));
        result.feasible.push_back(std::move(row));
      }
    }
  }

  if (result.feasible.empty()) {
    std::ostringstream msg;
    msg << "no feasible path found (best near-miss residual "
        << diag.best_rejected_residual
        << "); this should not happen for u_max >= 1 and indicates a solver defect";
    throw NoSolutionFound(msg.str());
  }

  std::sort(result.feasible.begin(), result.feasible.end(), row_less);
  result.optimal = 0;
  const double t_opt = result.feasible.front().total_time;
  for (int i = 0; i < static_cast<int>(result.feasible.size()); ++i) {
    if (std::abs(result.feasible[static_cast<size_t>(i)].total_time - t_opt) <=
        1e-9) {
      result.ties.push_back(i);
    }
  }
  return result;
}

std::pair<PlanQuery, double> satellite_to_query(double j1, double j3,
                                                double v1max, double v2max,
                                                const Mat3& r_f) {
  if (!(j1 > 0.0) || !(j3 > 0.0) || !(v1max > 0.0) || !(v2max > 0.0)) {
    throw InvalidConfiguration("satellite parameters must be positive");
  }
  const double u_max = v1max * j3 / (v2max * j1);
  if (!(u_max >= 1.0)) {
    std::ostringstream msg;
    msg << "derived steering bound " << u_max << " is below 1";
    throw UnsupportedRegime(msg.str());
  }
  PlanQuery q;
  q.r_f = r_f;
  q.u_max = u_max;
  const double time_scale = v2max / j3;
  return {q, time_scale};
}

}  // namespace crs
