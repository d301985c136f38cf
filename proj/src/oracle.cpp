#include "crs/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crs/errors.hpp"
#include "crs/so3.hpp"

namespace crs {

namespace {

/// splitmix64: tiny, high-quality, and seedable per sample index, which makes
/// every sample an independent deterministic stream.
struct CounterRng {
  std::uint64_t state;

  explicit CounterRng(std::uint64_t seed, std::uint64_t index) {
    state = seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
    next();  // burn one output to decorrelate adjacent indices
  }

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() {  // in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

}  // namespace

OracleResult random_search(const Mat3& r_net, double u_max,
                           const OracleBudget& budget, double tol, double dt) {
  if (!(u_max >= 1.0)) {
    throw UnsupportedRegime("oracle search requires u_max >= 1");
  }
  if (budget.max_segments < 1 || budget.max_segments > 6) {
    throw std::domain_error("max_segments must lie in [1, 6]");
  }
  if (!(tol > 0.0) || !(dt > 0.0)) {
    throw std::domain_error("require tol > 0 and dt > 0");
  }
  const double omega_max = std::sqrt(1.0 + u_max * u_max);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  OracleResult out;
  out.best_time = kInf;
  out.best_residual = kInf;
  out.best_time_bound = kInf;
  out.nearest_residual = kInf;

  // The empty schedule is always a candidate.
  const double identity_residual = frobenius_distance(r_net, Mat3::Identity());
  out.nearest_residual = identity_residual;
  if (identity_residual <= tol) {
    out.found = true;
    out.best_schedule.u_max = u_max;
    out.best_time = 0.0;
    out.best_residual = identity_residual;
    out.best_index = -1;
    out.hits = 1;
    out.best_time_bound = rotation_angle(r_net) / omega_max;
    return out;  // time 0 cannot be improved
  }

  for (std::int64_t i = 0; i < budget.n_samples; ++i) {
    CounterRng rng(budget.rng_seed, static_cast<std::uint64_t>(i));
    const int n_seg =
        1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(budget.max_segments));
    PathInstance schedule;
    schedule.u_max = u_max;
    schedule.segments.reserve(static_cast<size_t>(n_seg));
    double total_time = 0.0;
    for (int s = 0; s < n_seg; ++s) {
      const SegmentKind kind = kAllSegmentKinds[rng.next() % 8];
      const double phi = (1.0 - rng.uniform01()) * kPi;  // in (0, pi]
      schedule.segments.push_back(Segment{kind, phi});
      total_time += phi / segment_omega(kind, u_max);
    }
    // A schedule at least as long as both incumbents cannot improve either;
    // skipping is safe because each sample has its own RNG stream.
    if (out.found && total_time >= out.best_time &&
        total_time >= out.best_time_bound) {
      continue;
    }
    const Mat3 end =
        integrate_state(Mat3::Identity(), control_schedule(schedule), dt);
    const double residual = frobenius_distance(end, r_net);
    if (residual < out.nearest_residual) {
      out.nearest_residual = residual;
    }
    if (residual <= tol) {
      ++out.hits;
      out.found = true;
      if (total_time < out.best_time) {
        out.best_time = total_time;
        out.best_residual = residual;
        out.best_schedule = schedule;
        out.best_index = i;
      }
      const double remaining = rotation_angle(end.transpose() * r_net);
      const double bound = total_time + remaining / omega_max;
      if (bound < out.best_time_bound) {
        out.best_time_bound = bound;
      }
    }
  }
  return out;
}

}  // namespace crs
