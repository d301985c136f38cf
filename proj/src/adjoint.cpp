#include "crs/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "crs/so3.hpp"

namespace crs {

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

int sgn_eps(double x) { return std::abs(x) > kEpsSingular ? sgn(x) : 0; }

AdjointState rhs(const AdjointState& s, double v, double u_g) {
  return AdjointState{v * s.b, -v * s.a + u_g * s.c, -u_g * s.b};
}

AdjointState axpy(const AdjointState& s, double h, const AdjointState& d) {
  return AdjointState{s.a + h * d.a, s.b + h * d.b, s.c + h * d.c};
}

AdjointState rk4_step(const AdjointState& s, double v, double u_g, double h) {
  const AdjointState k1 = rhs(s, v, u_g);
  const AdjointState k2 = rhs(axpy(s, 0.5 * h, k1), v, u_g);
  const AdjointState k3 = rhs(axpy(s, 0.5 * h, k2), v, u_g);
  const AdjointState k4 = rhs(axpy(s, h, k3), v, u_g);
  return AdjointState{
      s.a + (h / 6.0) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
      s.b + (h / 6.0) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b),
      s.c + (h / 6.0) * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c)};
}

struct ArcSetup {
  double v = 0.0;
  double u_g = 0.0;
  int ref_a = 0;  // reference sign of A for event detection
  int ref_c = 0;  // reference sign of C for event detection
  bool stationary = false;
  bool great_circle_dwell = false;
};

/// Chooses the controls for the arc starting at state s.  When a coordinate
/// sits inside the singular band its sign is taken from its derivative under
/// the already-determined control ("effective sign"); if the derivative also
/// vanishes the arc is an equilibrium dwell.
ArcSetup choose_arc(const AdjointState& s, double u_max) {
  ArcSetup arc;
  const int sa = sgn_eps(s.a);
  const int sc = sgn_eps(s.c);
  if (sc != 0 && sa != 0) {
    arc.v = -sc;
    arc.u_g = -u_max * sa;
  } else if (sa == 0 && sc != 0) {
    arc.v = -sc;
    const double da = arc.v * s.b;
    if (std::abs(da) > kEpsSingular) {
      arc.u_g = -u_max * sgn(da);
    } else {
      arc.u_g = 0.0;  // great-circle equilibrium: A and B both pinned at zero
      arc.great_circle_dwell = true;
    }
  } else if (sc == 0 && sa != 0) {
    arc.u_g = -u_max * sa;
    const double dc = -arc.u_g * s.b;
    if (std::abs(dc) > kEpsSingular) {
      arc.v = -sgn(dc);
    } else {
      arc.v = 0.0;  // in-place equilibrium: C and B both pinned at zero
    }
  } else {
    arc.stationary = true;
  }
  arc.ref_a = sa != 0 ? sa : sgn_eps(arc.v * s.b);
  arc.ref_c = sc != 0 ? sc : sgn_eps(-arc.u_g * s.b);
  return arc;
}

bool kind_from_controls(double v, double u_g, SegmentKind* out) {
  const int vs = sgn(v);
  const int us = sgn(u_g);
  if (vs > 0) {
    *out = us > 0 ? SegmentKind::kLp : us < 0 ? SegmentKind::kRp
                                               : SegmentKind::kGp;
  } else if (vs < 0) {
    *out = us > 0 ? SegmentKind::kLm : us < 0 ? SegmentKind::kRm
                                               : SegmentKind::kGm;
  } else if (us > 0) {
    *out = SegmentKind::kL0;
  } else if (us < 0) {
    *out = SegmentKind::kR0;
  } else {
    return false;
  }
  return true;
}

}  // namespace

ExtremalConstants extremal_constants(const AdjointState& s, double u_max) {
  if (!(u_max >= 1.0)) {
    throw std::domain_error("steering bound must satisfy u_max >= 1");
  }
  ExtremalConstants out;
  out.g = s.casimir();
  out.u_max = u_max;
  const double one_p = 1.0 + u_max * u_max;
  const double lc2 =
      (u_max * u_max * out.g - 1.0) / one_p + 1.0 / (one_p * one_p);
  out.lambda_c = lc2 > 0.0 ? std::sqrt(lc2) : 0.0;
  return out;
}

ExtremalControls extremal_controls(const AdjointState& s, double u_max) {
  if (!(u_max >= 1.0)) {
    throw std::domain_error("steering bound must satisfy u_max >= 1");
  }
  ExtremalControls out;
  out.v = std::abs(s.c) > kEpsSingular ? -static_cast<double>(sgn(s.c)) : 0.0;
  out.u_g =
      std::abs(s.a) > kEpsSingular ? -u_max * static_cast<double>(sgn(s.a)) : 0.0;
  return out;
}

ExtremalTrajectory simulate_extremal(const AdjointState& s0, double u_max,
                                     double t_end, double dt) {
  if (!(u_max >= 1.0)) {
    throw std::domain_error("steering bound must satisfy u_max >= 1");
  }
  if (!(t_end >= 0.0) || !(dt > 0.0)) {
    throw std::domain_error("require t_end >= 0 and dt > 0");
  }
  ExtremalTrajectory out;
  AdjointState s = s0;
  double t = 0.0;

  {
    const ArcSetup first = choose_arc(s, u_max);
    const double h0 = 1.0 + first.v * s.c + first.u_g * s.a;
    if (std::abs(h0) > 1e-8) {
      out.consistent_start = false;
      std::cerr << "warning: initial adjoint state violates the Hamiltonian "
                   "condition (residual "
                << h0 << ")\n";
    }
  }

  while (t < t_end - 1e-15) {
    const ArcSetup arc = choose_arc(s, u_max);
    if (arc.great_circle_dwell) {
      out.singular_great_circle = true;
    }
    const double omega = std::hypot(arc.v, arc.u_g);
    const double t_arc_begin = t;
    if (out.samples.empty()) {
      out.samples.push_back(ExtremalSample{t, s.a, s.b, s.c, arc.v, arc.u_g});
    }

    bool event = false;
    while (t < t_end - 1e-15) {
      const double h = std::min(dt, t_end - t);
      const AdjointState s_new = rk4_step(s, arc.v, arc.u_g, h);
      const bool cross_a = arc.ref_a != 0 && sgn(s_new.a) == -arc.ref_a;
      const bool cross_c = arc.ref_c != 0 && sgn(s_new.c) == -arc.ref_c;
      if (cross_a || cross_c) {
        double lo = 0.0;
        double hi = h;
        for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
          const double mid = 0.5 * (lo + hi);
          const AdjointState sm = rk4_step(s, arc.v, arc.u_g, mid);
          const bool crossed =
              (arc.ref_a != 0 && sgn(sm.a) == -arc.ref_a) ||
              (arc.ref_c != 0 && sgn(sm.c) == -arc.ref_c);
          (crossed ? hi : lo) = mid;
        }
        s = rk4_step(s, arc.v, arc.u_g, hi);
        t += hi;
        out.samples.push_back(
            ExtremalSample{t, s.a, s.b, s.c, arc.v, arc.u_g});
        event = true;
        break;
      }
      s = s_new;
      t += h;
      out.samples.push_back(ExtremalSample{t, s.a, s.b, s.c, arc.v, arc.u_g});
    }

    ExtremalArc rec;
    rec.v = arc.v;
    rec.u_g = arc.u_g;
    rec.t_begin = t_arc_begin;
    rec.t_end = t;
    rec.phi = omega * (t - t_arc_begin);
    rec.stationary = arc.stationary;
    rec.has_kind = kind_from_controls(arc.v, arc.u_g, &rec.kind);
    out.arcs.push_back(rec);
    if (!event) {
      break;  // reached t_end inside the arc
    }
  }
  if (out.samples.empty()) {
    const ArcSetup arc = choose_arc(s, u_max);
    out.samples.push_back(ExtremalSample{0.0, s.a, s.b, s.c, arc.v, arc.u_g});
  }
  return out;
}

double alpha_full_traverse(double g, double u_max) {
  if (!(u_max >= 1.0)) {
    throw std::domain_error("steering bound must satisfy u_max >= 1");
  }
  if (!(g >= 1.0)) {
    throw std::domain_error("full-traverse angle requires g >= 1");
  }
  const double u2 = u_max * u_max;
  const double t1 = u_max * std::sqrt(std::max(0.0, (g - 1.0 / u2) * (1.0 + u2)));
  const double t2 = std::sqrt(std::max(0.0, (g - 1.0) * (1.0 + u2)));
  return arctan_ratio(1.0, t1) - arctan_ratio(-u_max, t2);
}

double alpha_small_g(double lambda_c, double u_max) {
  if (!(u_max >= 1.0)) {
    throw std::domain_error("steering bound must satisfy u_max >= 1");
  }
  const double one_p = 1.0 + u_max * u_max;
  const double lo = 1.0 / one_p;
  const double hi = u_max * u_max / one_p;
  if (!(lambda_c >= lo - 1e-12) || !(lambda_c < hi)) {
    throw std::domain_error("lambda_c outside [1/(1+u^2), u^2/(1+u^2))");
  }
  const double arg = std::max(0.0, one_p * one_p * lambda_c * lambda_c - 1.0);
  return kPi + 2.0 * arctan_ratio(1.0, std::sqrt(arg));
}

double beta(double u_max) {
  if (!(u_max >= 1.0)) {
    throw std::domain_error("steering bound must satisfy u_max >= 1");
  }
  const double u4 = u_max * u_max * u_max * u_max;
  return arctan_ratio(1.0, std::sqrt(std::max(0.0, u4 - 1.0))) + kPi / 2.0;
}

std::vector<PortraitRow> emit_portrait(const AdjointState& s0, double u_max,
                                       double t_end, double dt) {
  const ExtremalTrajectory traj = simulate_extremal(s0, u_max, t_end, dt);
  std::vector<PortraitRow> rows;
  rows.reserve(traj.samples.size());
  for (const ExtremalSample& s : traj.samples) {
    rows.push_back(PortraitRow{s.t, s.a, s.b, s.c, -s.u_g * s.b, s.v, s.u_g});
  }
  return rows;
}

}  // namespace crs
