#include "crs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "crs/adjoint.hpp"

namespace crs {

namespace {

constexpr double kAlignTol = 1e-5;  // loose gate; the forward residual decides
constexpr int kScanIntervals = 4096;

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) {
    y += kTwoPi;
  }
  return y >= kTwoPi ? 0.0 : y;
}

/// Rotation about a unit axis from precomputed cosine/sine of the signed angle.
Mat3 rodrigues(const Vec3& axis, double c, double s) {
  Mat3 cross;
  cross << 0.0, -axis.z(), axis.y(),  //
      axis.z(), 0.0, -axis.x(),       //
      -axis.y(), axis.x(), 0.0;
  return c * Mat3::Identity() + s * cross +
         (1.0 - c) * (axis * axis.transpose());
}

struct SegmentGeometry {
  Vec3 axis;
  double sign;
};

SegmentGeometry geometry(SegmentKind kind, double r) {
  return SegmentGeometry{axial_vector(kind, r),
                         static_cast<double>(axial_sign(kind))};
}

void check_radius(double r) {
  if (!(r > 0.0) || !(r <= 1.0 / std::sqrt(2.0) + 1e-12)) {
    throw std::domain_error("turn radius must lie in (0, 1/sqrt(2)]");
  }
}

double steering_bound_of_radius(double r) {
  return std::sqrt(std::max(0.0, 1.0 / (r * r) - 1.0));
}

}  // namespace

std::vector<AngleSolution> solve_candidate(const ConcreteCandidate& c,
                                           const Mat3& r_net, double r,
                                           double tolerance,
                                           SolveDiagnostics* diag) {
  check_radius(r);
  const int n = c.size();
  std::vector<AngleSolution> accepted;
  int branch_counter = 0;

  auto note_reject = [&](double res) {
    if (diag != nullptr && res < diag->best_rejected_residual) {
      diag->best_rejected_residual = res;
    }
  };

  auto forward = [&](const std::vector<double>& angles) {
    Mat3 acc = Mat3::Identity();
    for (int i = 0; i < n; ++i) {
      acc = acc * segment_matrix(c.kinds[static_cast<size_t>(i)], r,
                                 angles[static_cast<size_t>(i)]);
    }
    return acc;
  };

  // Domain-filters, clamps, verifies by the full forward product, dedups.
  auto try_accept = [&](std::vector<double> angles) {
    ++branch_counter;
    for (int i = 0; i < n; ++i) {
      const size_t si = static_cast<size_t>(i);
      if (c.classes[si] == AngleClass::kFixedBeta) {
        angles[si] = c.beta_angle;
        continue;
      }
      if (!c.domains[si].contains(angles[si], kTolInput)) {
        return;
      }
      angles[si] = c.domains[si].clamp(angles[si]);
    }
    const double res = frobenius_distance(forward(angles), r_net);
    if (res > tolerance) {
      note_reject(res);
      return;
    }
    for (AngleSolution& s : accepted) {
      double gap = 0.0;
      for (int i = 0; i < n; ++i) {
        gap = std::max(gap, std::abs(s.angles[static_cast<size_t>(i)] -
                                     angles[static_cast<size_t>(i)]));
      }
      if (gap < 1e-8) {
        if (res < s.residual) {
          s.angles = std::move(angles);
          s.residual = res;
        }
        return;
      }
    }
    accepted.push_back(AngleSolution{std::move(angles), res, branch_counter});
  };

  if (n == 0) {
    const double res = frobenius_distance(Mat3::Identity(), r_net);
    if (res <= tolerance) {
      accepted.push_back(AngleSolution{{}, res, 0});
    } else {
      note_reject(res);
    }
    return accepted;
  }

  if (n == 1) {
    const SegmentGeometry g = geometry(c.kinds[0], r);
    int best_axis = 0;
    double best_perp = -1.0;
    for (int i = 0; i < 3; ++i) {
      const Vec3 e = Vec3::Unit(i);
      const double perp = (e - g.axis.dot(e) * g.axis).norm();
      if (perp > best_perp) {
        best_perp = perp;
        best_axis = i;
      }
    }
    const Vec3 p = Vec3::Unit(best_axis);
    const AxisAlignment al = align_about_axis(g.axis, p, r_net * p, kAlignTol);
    if (al.status == AxisAlignment::Status::kInfeasible) {
      return accepted;
    }
    const double tau =
        al.status == AxisAlignment::Status::kAllAngles ? 0.0 : al.angle;
    try_accept({g.sign > 0 ? tau : wrap_angle(kTwoPi - tau)});
    return accepted;
  }

  const SegmentGeometry ga = geometry(c.kinds[0], r);
  const SegmentGeometry gb = geometry(c.kinds[static_cast<size_t>(n - 1)], r);
  const double rhs = ga.axis.dot(r_net * gb.axis);

  std::vector<int> unknown_pos;
  for (int i = 1; i < n - 1; ++i) {
    if (c.classes[static_cast<size_t>(i)] != AngleClass::kFixedBeta) {
      unknown_pos.push_back(i);
    }
  }

  std::vector<double> tmpl(static_cast<size_t>(n), 0.0);
  for (int i = 1; i < n - 1; ++i) {
    tmpl[static_cast<size_t>(i)] = c.beta_angle;
  }

  // Recovers both boundary angles about their axial vectors given the fully
  // determined middle product, then hands off to verification.
  auto boundary_recover = [&](const Mat3& middle, std::vector<double> angles) {
    const AxisAlignment aa =
        align_about_axis(ga.axis, middle * gb.axis, r_net * gb.axis, kAlignTol);
    if (aa.status == AxisAlignment::Status::kInfeasible) {
      return;
    }
    const double tau_a =
        aa.status == AxisAlignment::Status::kAllAngles ? 0.0 : aa.angle;
    const AxisAlignment ab =
        align_about_axis(gb.axis, middle.transpose() * ga.axis,
                         r_net.transpose() * ga.axis, kAlignTol);
    if (ab.status == AxisAlignment::Status::kInfeasible) {
      return;
    }
    const double tau_b =
        ab.status == AxisAlignment::Status::kAllAngles ? 0.0 : ab.angle;
    angles[0] = ga.sign > 0 ? tau_a : wrap_angle(kTwoPi - tau_a);
    angles[static_cast<size_t>(n - 1)] =
        gb.sign < 0 ? tau_b : wrap_angle(kTwoPi - tau_b);
    try_accept(std::move(angles));
  };

  if (unknown_pos.empty()) {
    Mat3 middle = Mat3::Identity();
    for (int i = 1; i < n - 1; ++i) {
      middle = middle *
               segment_matrix(c.kinds[static_cast<size_t>(i)], r, c.beta_angle);
    }
    // Necessary scalar condition: the first/last axial projections of the
    // middle product and of the target must agree (the boundary rotations fix
    // their own axial vectors).
    const double gap = std::abs(ga.axis.dot(middle * gb.axis) - rhs);
    if (gap > std::max(tolerance, 1e-4)) {
      note_reject(gap);
      return accepted;
    }
    boundary_recover(middle, tmpl);
    return accepted;
  }

  if (unknown_pos.size() == 1) {
    // Single interior unknown: eliminate the boundary angles by projecting
    // onto their axial vectors, leaving a linear trigonometric equation.
    const int m = unknown_pos[0];
    Mat3 pre = Mat3::Identity();
    Mat3 post = Mat3::Identity();
    for (int i = 1; i < m; ++i) {
      pre = pre *
            segment_matrix(c.kinds[static_cast<size_t>(i)], r, c.beta_angle);
    }
    for (int i = m + 1; i < n - 1; ++i) {
      post = post *
             segment_matrix(c.kinds[static_cast<size_t>(i)], r, c.beta_angle);
    }
    const SegmentGeometry gm = geometry(c.kinds[static_cast<size_t>(m)], r);
    const Vec3 p = pre.transpose() * ga.axis;
    const Vec3 q = post * gb.axis;
    const Vec3& w = gm.axis;
    const double a = p.dot(q) - p.dot(w) * q.dot(w);
    const double b = gm.sign * p.dot(w.cross(q));
    const double cst = rhs - p.dot(w) * q.dot(w);
    const TrigRoots roots = solve_linear_trig(a, b, cst);
    const AngleInterval& dom = c.domains[static_cast<size_t>(m)];
    std::vector<double> thetas;
    if (roots.all_angles) {
      // The projection is independent of the interior angle; probe a spread
      // of values and let the verification pass decide.
      for (int j = 1; j <= 8; ++j) {
        thetas.push_back(dom.lo + (dom.hi - dom.lo) * j / 9.0);
      }
    } else {
      for (int j = 0; j < roots.count; ++j) {
        thetas.push_back(roots.roots[j]);
      }
    }
    for (double theta : thetas) {
      if (!dom.contains(theta, kTolInput)) {
        continue;
      }
      theta = dom.clamp(theta);
      const Mat3 middle =
          pre * segment_matrix(c.kinds[static_cast<size_t>(m)], r, theta) * post;
      tmpl[static_cast<size_t>(m)] = theta;
      boundary_recover(middle, tmpl);
    }
    return accepted;
  }

  // Shared interior angle appearing k >= 2 times: isolate the roots of the
  // eliminated scalar by a dense scan plus bisection.
  for (const int i : unknown_pos) {
    if (!is_shared(c.classes[static_cast<size_t>(i)])) {
      throw std::logic_error(
          "unsupported candidate shape: multiple independent interior unknowns");
    }
  }
  const AngleInterval& dom = c.domains[static_cast<size_t>(unknown_pos[0])];

  struct Piece {
    bool fixed;
    Mat3 fixed_mat;
    Vec3 axis;
    double sign;
  };
  std::vector<Piece> pieces;
  pieces.reserve(static_cast<size_t>(n - 2));
  for (int i = 1; i < n - 1; ++i) {
    const size_t si = static_cast<size_t>(i);
    if (c.classes[si] == AngleClass::kFixedBeta) {
      pieces.push_back(
          Piece{true, segment_matrix(c.kinds[si], r, c.beta_angle), Vec3::Zero(), 0.0});
    } else {
      const SegmentGeometry g = geometry(c.kinds[si], r);
      pieces.push_back(Piece{false, Mat3::Identity(), g.axis, g.sign});
    }
  }
  auto middle_at = [&](double x) {
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    Mat3 acc = Mat3::Identity();
    for (const Piece& pc : pieces) {
      acc = acc * (pc.fixed ? pc.fixed_mat : rodrigues(pc.axis, cx, pc.sign * sx));
    }
    return acc;
  };
  auto f = [&](double x) { return ga.axis.dot(middle_at(x) * gb.axis) - rhs; };

  const double lo = dom.lo + (dom.lo_open ? 1e-9 : 0.0);
  const double hi = dom.hi - (dom.hi_open ? 1e-9 : 0.0);
  if (!(hi > lo)) {
    return accepted;
  }
  std::vector<double> roots;
  double x_prev = lo;
  double f_prev = f(lo);
  if (std::abs(f_prev) < 1e-13) {
    roots.push_back(x_prev);
  }
  for (int j = 1; j <= kScanIntervals; ++j) {
    const double x = lo + (hi - lo) * j / kScanIntervals;
    const double fx = f(x);
    if (std::abs(fx) < 1e-13) {
      roots.push_back(x);
    } else if (std::abs(f_prev) >= 1e-13 &&
               std::signbit(fx) != std::signbit(f_prev)) {
      double a0 = x_prev;
      double b0 = x;
      double fa = f_prev;
      while (b0 - a0 > 1e-12) {
        const double m0 = 0.5 * (a0 + b0);
        const double fm = f(m0);
        if (fm == 0.0) {
          a0 = m0;
          b0 = m0;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a0 = m0;
          fa = fm;
        } else {
          b0 = m0;
        }
      }
      roots.push_back(0.5 * (a0 + b0));
    }
    x_prev = x;
    f_prev = fx;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double u, double v) { return std::abs(u - v) < 1e-10; }),
              roots.end());
  for (const double x : roots) {
    for (const int i : unknown_pos) {
      tmpl[static_cast<size_t>(i)] = x;
    }
    boundary_recover(middle_at(x), tmpl);
  }
  return accepted;
}

namespace {

void check_mu_domain(double mu, double r) {
  check_radius(r);
  // The collapse identity needs s(mu) > 0, i.e. mu in (0, pi).  The tighter
  // (0, beta) window only matters for optimality pruning, not validity.
  if (!(mu > 0.0) || !(mu < kPi)) {
    throw std::domain_error("mu must lie in (0, pi)");
  }
}

}  // namespace

double epsilon_of_mu(double mu, double r) {
  check_mu_domain(mu, r);
  const double r2 = r * r;
  const double cm = std::cos(mu);
  const double sm = std::sin(mu);
  const double base = cm * (1.0 - 2.0 * r2) + 2.0 * r2;
  const double d = std::sqrt(base * base + sm * sm);
  const double delta = std::atan2(sm / d, base / d);
  return 2.0 * delta;
}

double theta_of_mu(double mu, double r) {
  check_mu_domain(mu, r);
  const double r2 = r * r;
  const double r4 = r2 * r2;
  const double cm = std::cos(mu);
  const double sm = std::sin(mu);
  const double den =
      (4.0 * r2 - 8.0 * r4) * cm + (-4.0 * r2 + 4.0 * r4) * cm * cm + 4.0 * r4 + 1.0;
  const double ct = ((4.0 * r2 - 8.0 * r4) * cm + (4.0 * r2 + 4.0 * r4) * cm * cm -
                     8.0 * r2 + 4.0 * r4 + 1.0) /
                    den;
  const double st =
      4.0 * r * ((1.0 - 2.0 * r2) * sm + 2.0 * r2 * cm * sm) / den;
  return std::fmod(std::atan2(st, ct) + kTwoPi, kTwoPi);
}

}  // namespace crs
