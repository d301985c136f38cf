// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "crs/adjoint.hpp"
#include "crs/catalog.hpp"
#include "crs/errors.hpp"
#include "crs/kinematics.hpp"
#include "crs/oracle.hpp"
#include "crs/planner.hpp"
#include "crs/solver.hpp"
#include "crs/so3.hpp"

namespace {

using crs::Mat3;
using crs::SegmentKind;

struct Hygiene {
  long count = 0;
  double worst = 0.0;

  void record(const Mat3& m) {
    ++count;
    const double ortho = (m.transpose() * m - Mat3::Identity()).norm();
    const double det = std::abs(m.determinant() - 1.0);
    worst = std::max(worst, std::max(ortho, det));
  }
};

Hygiene g_hygiene;

Mat3 published_target() {
  Mat3 m;
  m << 0.804977, -0.592216, 0.035944,  //
      -0.569461, -0.754203, 0.326943,  //
      -0.166512, -0.283650, -0.944360;
  return crs::nearest_rotation(m, 1e-4);
}

Mat3 random_rotation(std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Quaterniond q(normal(gen), normal(gen), normal(gen), normal(gen));
  return q.normalized().toRotationMatrix();
}

struct PublishedRow {
  std::string word;
  std::vector<double> angles;
  double time;
};

const std::vector<PublishedRow>& published_rows() {
  static const std::vector<PublishedRow> rows = {
      {"L-R-R+", {0.1122, 1.4896, 1.6238}, 1.0200},
      {"L-L0L+", {1.2685, 1.3659, 0.9832}, 1.1673},
      {"L-R-R+L+", {2.4701, 0.5045, 0.5045, 2.1848}, 1.7911},
      {"R+L+L-R-", {2.5273, 1.5573, 1.5573, 2.8126}, 2.6735},
      {"R-R+G+L+", {1.4008, 1.6821, 0.0160, 0.0864}, 1.0182},
  };
  return rows;
}

bool criterion_1_table_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  crs::PlanQuery q;
  q.u_max = 3.0;
  q.r_f = published_target();
  crs::PlanResult res;
  try {
    res = crs::plan(q);
  } catch (const std::exception& e) {
    std::printf("  planner threw: %s\n", e.what());
    return false;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  g_hygiene.record(res.r_net);
  bool ok = wall < 1.0;
  if (!ok) {
    std::printf("  wall time %.3f s exceeds 1 s\n", wall);
  }
  for (const PublishedRow& want : published_rows()) {
    bool found = false;
    for (const crs::FeasiblePath& row : res.feasible) {
      if (row.candidate.word() != want.word ||
          row.solution.angles.size() != want.angles.size()) {
        continue;
      }
      bool close = std::abs(row.total_time - want.time) <= 5e-4;
      for (size_t i = 0; i < want.angles.size(); ++i) {
        close = close && std::abs(row.solution.angles[i] - want.angles[i]) <= 5e-4;
      }
      if (close) {
        found = true;
        g_hygiene.record(
            crs::forward_kinematics(Mat3::Identity(), row.path(q.u_max)));
        break;
      }
    }
    if (!found) {
      std::printf("  missing row %s\n", want.word.c_str());
      ok = false;
    }
  }
  if (res.feasible[res.optimal].candidate.word() != "R-R+G+L+") {
    std::printf("  wrong optimum %s\n",
                res.feasible[res.optimal].candidate.word().c_str());
    ok = false;
  }
  return ok;
}

bool criterion_2_duration_identity() {
  const double u = 3.0;
  bool ok = true;
  for (const PublishedRow& row : published_rows()) {
    double total = 0.0;
    for (size_t i = 0; i < row.angles.size(); ++i) {
      const auto kind = crs::segment_kind_from_string(row.word.substr(2 * i, 2));
      if (!kind) {
        ok = false;
        continue;
      }
      total += row.angles[i] / crs::segment_omega(*kind, u);
    }
    if (std::abs(total - row.time) > 5e-4) {
      std::printf("  %s: recomputed %.5f vs printed %.5f\n", row.word.c_str(),
                  total, row.time);
      ok = false;
    }
  }
  return ok;
}

bool criterion_3_identity_suite() {
  std::mt19937_64 gen(2026);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool ok = true;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      std::printf("  identity failed: %s\n", what);
      ok = false;
    }
  };

  for (int i = 0; i < 120; ++i) {
    const double u = 1.0 + 9.0 * u01(gen);
    const double r = crs::turn_radius(u);
    const double b = crs::beta(u);

    // Antipodal exchange of opposite-sense turns.
    const double alpha = crs::kPi * u01(gen);
    expect(crs::frobenius_distance(
               crs::segment_matrix(SegmentKind::kLm, r, crs::kPi + alpha),
               crs::segment_matrix(SegmentKind::kRp, r, crs::kPi - alpha)) <
               1e-10,
           "antipodal turn exchange");

    // Half-period double turns coincide and match the closed-form block.
    const Mat3 ll = crs::segment_matrix(SegmentKind::kLp, r, b) *
                    crs::segment_matrix(SegmentKind::kLm, r, b);
    const Mat3 rr = crs::segment_matrix(SegmentKind::kRp, r, b) *
                    crs::segment_matrix(SegmentKind::kRm, r, b);
    g_hygiene.record(ll);
    expect(crs::frobenius_distance(ll, rr) < 1e-10, "double-turn equality");
    Mat3 block;
    const double u2 = u * u;
    block << (u2 - 2.0) / u2, 2.0 * std::sqrt(u2 - 1.0) / u2, 0.0,  //
        2.0 * std::sqrt(u2 - 1.0) / u2, -(u2 - 2.0) / u2, 0.0,      //
        0.0, 0.0, -1.0;
    expect(crs::frobenius_distance(ll, block) < 1e-10, "double-turn block");

    // The half-period pair conjugates great-circle arcs.
    const double sigma = crs::kTwoPi * u01(gen);
    const Mat3 pair = crs::segment_matrix(SegmentKind::kLm, r, b) *
                      crs::segment_matrix(SegmentKind::kLp, r, b);
    expect(crs::frobenius_distance(
               pair * crs::segment_matrix(SegmentKind::kGp, r, sigma),
               crs::segment_matrix(SegmentKind::kGm, r, sigma) * pair) < 1e-10,
           "pair/great-circle conjugation");

    // Triple-turn collapse with 0 < eps < 2*mu on the admissible window.
    const double mu = 1e-3 + (b - 2e-3) * u01(gen);
    const double eps = crs::epsilon_of_mu(mu, r);
    const double theta = crs::theta_of_mu(mu, r);
    expect(eps > 0.0 && eps < 2.0 * mu, "collapse eps range");
    const Mat3 collapsed = crs::segment_matrix(SegmentKind::kLp, r, mu) *
                           crs::segment_matrix(SegmentKind::kRp, r, eps) *
                           crs::segment_matrix(SegmentKind::kLp, r, mu);
    g_hygiene.record(collapsed);
    expect(crs::frobenius_distance(
               collapsed, crs::segment_matrix(SegmentKind::kGp, r, theta)) <
               1e-10,
           "triple-turn collapse");

    // Unit-bound in-place/half-turn exchange.
    const double rho = crs::kTwoPi * u01(gen);
    const double r1 = crs::turn_radius(1.0);
    expect(crs::frobenius_distance(
               crs::segment_matrix(SegmentKind::kL0, r1, rho) *
                   crs::segment_matrix(SegmentKind::kLm, r1, crs::kPi),
               crs::segment_matrix(SegmentKind::kRp, r1, crs::kPi) *
                   crs::segment_matrix(SegmentKind::kGm, r1, rho)) < 1e-10,
           "unit-bound exchange");
  }

  // Figure-caption spot checks for the collapse formulas.
  const double r3 = crs::turn_radius(3.0);
  expect(std::abs(crs::epsilon_of_mu(crs::kPi / 3, r3) - 0.61 * crs::kPi) <
             0.01 * crs::kPi,
         "caption eps(pi/3)");
  expect(std::abs(crs::theta_of_mu(crs::kPi / 3, r3) - 0.35 * crs::kPi) <
             0.01 * crs::kPi,
         "caption theta(pi/3)");
  expect(std::abs(crs::epsilon_of_mu(2 * crs::kPi / 3, r3) - 1.14 * crs::kPi) <
             0.01 * crs::kPi,
         "caption eps(2pi/3)");
  expect(std::abs(crs::theta_of_mu(2 * crs::kPi / 3, r3) - 0.42 * crs::kPi) <
             0.01 * crs::kPi,
         "caption theta(2pi/3)");
  return ok;
}

bool criterion_4_pmp_certificates() {
  bool ok = true;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) {
      std::printf("  certificate failed: %s\n", what.c_str());
      ok = false;
    }
  };

  std::mt19937_64 gen(4096);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<std::pair<crs::AdjointState, double>> starts;
  for (int i = 0; i < 7; ++i) {  // g < 1
    const double u = 3.0;
    const double g = 0.15 + 0.75 * u01(gen);
    starts.push_back({crs::AdjointState{1.0 / u, -std::sqrt(g - 1.0 / (u * u)), 0.0}, u});
  }
  for (int i = 0; i < 6; ++i) {  // g = 1
    const double u = 1.5 + i * 0.5;
    starts.push_back(
        {crs::AdjointState{1.0 / u, std::sqrt(1.0 - 1.0 / (u * u)), 0.0}, u});
  }
  for (int i = 0; i < 7; ++i) {  // g > 1
    const double u = 1.0 + 6.0 * u01(gen);
    const double g = 1.1 + 2.9 * u01(gen);
    starts.push_back({crs::AdjointState{0.0, -std::sqrt(g - 1.0), 1.0}, u});
  }

  for (const auto& [s0, u] : starts) {
    const double g0 = s0.casimir();
    const crs::ExtremalTrajectory traj = crs::simulate_extremal(s0, u, 10.0, 1e-3);
    expect(traj.consistent_start, "consistent start");
    double drift = 0.0, ham = 0.0;
    for (const crs::ExtremalSample& s : traj.samples) {
      drift = std::max(drift,
                       std::abs(s.a * s.a + s.b * s.b + s.c * s.c - g0));
      if (s.v != 0.0 || s.u_g != 0.0) {
        ham = std::max(ham, std::abs(1.0 + s.v * s.c + s.u_g * s.a));
      }
    }
    expect(drift < 1e-8 * 10.0, "Casimir drift");
    expect(ham < 1e-8, "Hamiltonian magnitude");
  }

  // Full-traverse angles against the closed forms.
  const double u = 3.0;
  for (const double g : {1.0, 1.2, 2.0, 5.0}) {
    const double b0 = g > 1.0 ? -std::sqrt(g - 1.0) : -1e-8;
    const crs::ExtremalTrajectory traj =
        crs::simulate_extremal(crs::AdjointState{0.0, b0, 1.0}, u, 6.0, 1e-3);
    if (traj.arcs.empty()) {
      expect(false, "no arcs for large-Casimir start");
      continue;
    }
    expect(std::abs(traj.arcs[0].phi - crs::alpha_full_traverse(g, u)) < 1e-6,
           "full traverse angle at g=" + std::to_string(g));
  }
  for (const double lambda_c : {0.5, 0.2}) {
    const double g =
        ((lambda_c * lambda_c - 1.0 / ((1.0 + u * u) * (1.0 + u * u))) *
             (1.0 + u * u) +
         1.0) /
        (u * u);
    const crs::AdjointState s0{1.0 / u, -std::sqrt(g - 1.0 / (u * u)), 0.0};
    const crs::ExtremalTrajectory traj = crs::simulate_extremal(s0, u, 6.0, 1e-3);
    if (traj.arcs.empty()) {
      expect(false, "no arcs for small-Casimir start");
      continue;
    }
    expect(std::abs(traj.arcs[0].phi - crs::alpha_small_g(lambda_c, u)) < 1e-6,
           "small-Casimir traverse at lambda=" + std::to_string(lambda_c));
  }
  return ok;
}

bool criterion_5_roundtrip_bound() {
  std::mt19937_64 gen(5000);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::vector<double> bounds = {1.0, 1.5, 3.0, 7.0};
  std::vector<crs::Catalog> catalogs;
  for (const double u : bounds) {
    catalogs.push_back(crs::sufficient_list(u));
  }
  bool ok = true;
  int checked = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const size_t ui = rep % bounds.size();
    const double u = bounds[ui];
    const crs::Catalog& cat = catalogs[ui];
    const crs::AbstractPathType& type =
        cat.types[gen() % (cat.types.size() - 1)];  // last entry is empty
    const auto cands = crs::expand_concrete(type);
    const crs::ConcreteCandidate& cand = cands[gen() % cands.size()];

    crs::PathInstance p;
    p.u_max = u;
    double shared = -1.0;
    for (size_t i = 0; i < cand.kinds.size(); ++i) {
      const crs::AngleInterval& dom = cand.domains[i];
      double angle = 0.0;
      if (dom.lo == dom.hi) {
        angle = dom.lo;
      } else if (crs::is_shared(cand.classes[i]) && shared >= 0.0) {
        angle = shared;
      } else {
        angle = dom.lo + 0.02 + (dom.hi - dom.lo - 0.04) * u01(gen);
        if (crs::is_shared(cand.classes[i])) {
          shared = angle;
        }
      }
      p.segments.push_back(crs::Segment{cand.kinds[i], angle});
    }

    crs::PlanQuery q;
    q.u_max = u;
    q.r_f = crs::forward_kinematics(Mat3::Identity(), p);
    try {
      const crs::PlanResult res = crs::plan(q);
      const crs::FeasiblePath& best = res.feasible[res.optimal];
      g_hygiene.record(
          crs::forward_kinematics(Mat3::Identity(), best.path(u)));
      if (best.total_time > crs::duration(p) + 1e-6) {
        std::printf("  %s at u=%.2f: planned %.9f > constructed %.9f\n",
                    cand.word().c_str(), u, best.total_time, crs::duration(p));
        ok = false;
      }
      ++checked;
    } catch (const std::exception& e) {
      std::printf("  %s at u=%.2f: planner threw: %s\n", cand.word().c_str(),
                  u, e.what());
      ok = false;
    }
  }
  std::printf("  %d/1000 round-trip bounds verified\n", checked);
  return ok;
}

bool criterion_6_oracle_falsification() {
  std::mt19937_64 gen(6006);
  bool ok = true;
  int hits = 0, runs = 0;
  const std::pair<double, int> batches[] = {{1.0, 17}, {1.5, 17}, {3.0, 16}};
  for (const auto& [u, n_targets] : batches) {
    for (int i = 0; i < n_targets; ++i) {
      const Mat3 target = random_rotation(gen);
      crs::PlanQuery q;
      q.u_max = u;
      q.r_f = target;
      double planned = 0.0;
      try {
        const crs::PlanResult res = crs::plan(q);
        planned = res.feasible[res.optimal].total_time;
      } catch (const std::exception& e) {
        std::printf("  planner threw at u=%.1f: %s\n", u, e.what());
        ok = false;
        continue;
      }
      crs::OracleBudget budget;
      budget.n_samples = 100000;
      budget.rng_seed = 1700 + runs;
      const crs::OracleResult oracle =
          crs::random_search(target, u, budget, 5e-2, 0.05);
      ++runs;
      if (oracle.found) {
        ++hits;
        g_hygiene.record(crs::integrate_state(
            Mat3::Identity(), crs::control_schedule(oracle.best_schedule),
            0.05));
        if (oracle.best_time_bound < planned - 1e-3) {
          std::printf(
              "  oracle beat the planner at u=%.1f: bound %.6f < %.6f\n", u,
              oracle.best_time_bound, planned);
          ok = false;
        }
      }
    }
  }
  std::printf("  %d/%d oracle runs found a hit; none beat the planner\n",
              hits, runs);
  return ok;
}

bool criterion_7_so3_hygiene() {
  // Sample the published rows so emitted trajectories are covered too.
  crs::PlanQuery q;
  q.u_max = 3.0;
  q.r_f = published_target();
  const crs::PlanResult res = crs::plan(q);
  for (const crs::FeasiblePath& row : res.feasible) {
    for (const crs::PathSample& s :
         crs::sample_path(Mat3::Identity(), row.path(q.u_max), 25)) {
      g_hygiene.record(s.rot);
    }
  }
  std::printf("  %ld rotations checked, worst deviation %.3e\n",
              g_hygiene.count, g_hygiene.worst);
  return g_hygiene.worst <= 1e-9 && g_hygiene.count > 1000;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    bool (*run)();
  };
  const Criterion criteria[] = {
      {"criterion 1: published benchmark table reproduced in under 1 s",
       criterion_1_table_reproduction},
      {"criterion 2: printed durations equal the angle/rate quotients",
       criterion_2_duration_identity},
      {"criterion 3: segment-matrix identity suite within 1e-10",
       criterion_3_identity_suite},
      {"criterion 4: adjoint certificates and traverse-angle closed forms",
       criterion_4_pmp_certificates},
      {"criterion 5: planner beats or matches 1000 constructed paths",
       criterion_5_roundtrip_bound},
      {"criterion 6: random bang-bang search never beats the planner",
       criterion_6_oracle_falsification},
      {"criterion 7: every emitted rotation is orthonormal with det 1",
       criterion_7_so3_hygiene},
  };

  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  for (const Criterion& c : criteria) {
    const bool pass = c.run();
    std::printf("%s  %s\n", pass ? "PASS" : "FAIL", c.label);
    failures += pass ? 0 : 1;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%d/7 criteria passed in %.1f s\n", 7 - failures, wall);
  return failures == 0 ? 0 : 1;
}
