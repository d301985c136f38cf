#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crs/adjoint.hpp"
#include "crs/catalog.hpp"
#include "crs/errors.hpp"
#include "crs/kinematics.hpp"
#include "crs/oracle.hpp"
#include "crs/planner.hpp"
#include "crs/solver.hpp"

namespace {

using crs::Mat3;
using nlohmann::json;

/// Rotation specified on the command line: 9 row-major entries, a unit
/// quaternion (w,x,y,z), or z-y-x Euler angles given as (x,y,z) radians.
struct RotationInput {
  std::string raw;

  Mat3 parse(double tol) const {
    std::vector<double> vals;
    std::string token;
    std::stringstream ss(raw);
    while (std::getline(ss, token, ',')) {
      try {
        size_t pos = 0;
        const double v = std::stod(token, &pos);
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) {
          ++pos;
        }
        if (pos != token.size()) {
          throw std::invalid_argument("trailing characters");
        }
        vals.push_back(v);
      } catch (const std::exception&) {
        throw crs::InvalidConfiguration("cannot parse rotation component '" +
                                        token + "'");
      }
    }
    if (vals.size() == 9) {
      Mat3 m;
      m << vals[0], vals[1], vals[2],  //
          vals[3], vals[4], vals[5],   //
          vals[6], vals[7], vals[8];
      return crs::nearest_rotation(m, tol);
    }
    if (vals.size() == 4) {
      const double norm = std::sqrt(vals[0] * vals[0] + vals[1] * vals[1] +
                                    vals[2] * vals[2] + vals[3] * vals[3]);
      if (!(std::abs(norm - 1.0) <= 1e-3)) {
        throw crs::InvalidConfiguration(
            "quaternion must be unit length (w,x,y,z)");
      }
      Eigen::Quaterniond quat(vals[0], vals[1], vals[2], vals[3]);
      return quat.normalized().toRotationMatrix();
    }
    if (vals.size() == 3) {
      return crs::euler_zyx_to_rotation(vals[0], vals[1], vals[2]);
    }
    throw crs::InvalidConfiguration(
        "rotation must have 9 (row-major), 4 (quaternion w,x,y,z) or 3 "
        "(Euler x,y,z) comma-separated values");
  }
};

/// Parses the path grammar "KIND:angle,KIND:angle,...", e.g.
/// "L-:0.1122,R-:1.4896,R+:1.6238".  An empty string is the empty path.
crs::PathInstance parse_path_string(const std::string& text, double u_max) {
  crs::PathInstance path;
  path.u_max = u_max;
  if (text.empty()) {
    return path;
  }
  size_t offset = 0;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const size_t colon = token.find(':');
    if (colon == std::string::npos) {
      throw crs::InvalidConfiguration(
          "malformed path segment at position " + std::to_string(offset) +
          ": expected KIND:angle, got '" + token + "'");
    }
    const std::optional<crs::SegmentKind> kind =
        crs::segment_kind_from_string(token.substr(0, colon));
    if (!kind.has_value()) {
      throw crs::InvalidConfiguration(
          "unknown segment kind at position " + std::to_string(offset) +
          ": '" + token.substr(0, colon) + "'");
    }
    double phi = 0.0;
    try {
      size_t pos = 0;
      phi = std::stod(token.substr(colon + 1), &pos);
      if (pos != token.size() - colon - 1) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      throw crs::InvalidConfiguration(
          "malformed angle at position " + std::to_string(offset + colon + 1) +
          ": '" + token.substr(colon + 1) + "'");
    }
    if (!(phi >= 0.0) || !std::isfinite(phi)) {
      throw crs::InvalidConfiguration(
          "segment angle must be finite and non-negative at position " +
          std::to_string(offset + colon + 1));
    }
    path.segments.push_back(crs::Segment{*kind, phi});
    offset += token.size() + 1;
  }
  return path;
}

json rotation_to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  }
  return rows;
}

std::string display_word(const crs::ConcreteCandidate& c) {
  const std::string w = c.word();
  return w.empty() ? "(empty)" : w;
}

std::ostream& open_output(std::ofstream& file, const std::string& out_path) {
  if (out_path.empty()) {
    return std::cout;
  }
  file.open(out_path);
  if (!file) {
    throw crs::InvalidConfiguration("cannot open output file '" + out_path +
                                    "'");
  }
  return file;
}

struct SolveOptions {
  double u_max = 1.0;
  RotationInput r_f;
  RotationInput r0;
  double tol = 1e-6;
  bool as_json = false;
};

int cmd_solve(const SolveOptions& opt) {
  crs::PlanQuery q;
  q.u_max = opt.u_max;
  q.tolerance = opt.tol;
  q.r_f = opt.r_f.parse(opt.tol);
  if (!opt.r0.raw.empty()) {
    q.r0 = opt.r0.parse(opt.tol);
  }
  const crs::PlanResult res = crs::plan(q);

  if (opt.as_json) {
    json report;
    report["schema"] = 1;
    report["u_max"] = q.u_max;
    report["tolerance"] = q.tolerance;
    report["r_net"] = rotation_to_json(res.r_net);
    json rows = json::array();
    for (const crs::FeasiblePath& row : res.feasible) {
      rows.push_back({{"word", row.candidate.word()},
                      {"type", row.candidate.type_name},
                      {"angles", row.solution.angles},
                      {"time", row.total_time},
                      {"residual", row.solution.residual}});
    }
    report["feasible"] = std::move(rows);
    report["optimal_index"] = res.optimal;
    report["ties"] = res.ties;
    std::cout << report.dump(2) << "\n";
    return 0;
  }

  std::printf("%-24s %-10s %-38s %s\n", "path", "time", "angles", "residual");
  for (size_t i = 0; i < res.feasible.size(); ++i) {
    const crs::FeasiblePath& row = res.feasible[i];
    std::string angles;
    for (const double a : row.solution.angles) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.4f ", a);
      angles += buf;
    }
    const bool optimal = static_cast<int>(i) == res.optimal;
    std::printf("%-24s %-10.4f %-38s %.2e\n",
                (display_word(row.candidate) + (optimal ? " *" : "")).c_str(),
                row.total_time, angles.c_str(), row.solution.residual);
  }
  return 0;
}

struct SampleOptions {
  double u_max = 1.0;
  std::string path_text;
  int n = 100;
  std::string out_path;
  RotationInput r0;
};

int cmd_sample(const SampleOptions& opt) {
  const crs::PathInstance path = parse_path_string(opt.path_text, opt.u_max);
  Mat3 r0 = Mat3::Identity();
  if (!opt.r0.raw.empty()) {
    r0 = opt.r0.parse(1e-6);
  }
  std::vector<crs::PathSample> samples;
  if (path.segments.empty()) {
    samples.push_back(crs::PathSample{0.0, r0});
  } else {
    samples = crs::sample_path(r0, path, opt.n);
  }
  std::ofstream file;
  std::ostream& os = open_output(file, opt.out_path);
  os << "t,Xv_x,Xv_y,Xv_z,Tv_x,Tv_y,Tv_z,Nv_x,Nv_y,Nv_z\n";
  char line[512];
  for (const crs::PathSample& s : samples) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.t, s.rot(0, 0), s.rot(1, 0), s.rot(2, 0), s.rot(0, 1),
                  s.rot(1, 1), s.rot(2, 1), s.rot(0, 2), s.rot(1, 2),
                  s.rot(2, 2));
    os << line;
  }
  return 0;
}

struct PortraitOptions {
  double u_max = 1.0;
  double a0 = 0.0;
  double b0 = 0.0;
  double c0 = 0.0;
  double t_end = 10.0;
  double dt = 1e-3;
  std::string out_path;
  bool force = false;
};

int cmd_portrait(const PortraitOptions& opt) {
  const crs::AdjointState s0{opt.a0, opt.b0, opt.c0};
  const crs::ExtremalControls ctrl = crs::extremal_controls(s0, opt.u_max);
  const double hamiltonian = 1.0 + ctrl.v * s0.c + ctrl.u_g * s0.a;
  if (std::abs(hamiltonian) > 1e-6) {
    if (!opt.force) {
      throw crs::InvalidConfiguration(
          "initial adjoint state violates the extremal condition (residual " +
          std::to_string(hamiltonian) + "); pass --force to integrate anyway");
    }
    std::cerr << "warning: integrating inconsistent initial state (residual "
              << hamiltonian << ")\n";
  }
  const std::vector<crs::PortraitRow> rows =
      crs::emit_portrait(s0, opt.u_max, opt.t_end, opt.dt);
  std::ofstream file;
  std::ostream& os = open_output(file, opt.out_path);
  os << "t,A,B,C,dC_dt,v,u_g\n";
  char line[512];
  for (const crs::PortraitRow& r : rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%g,%g\n",
                  r.t, r.a, r.b, r.c, r.dc_dt, r.v, r.u_g);
    os << line;
  }
  return 0;
}

struct EnumerateOptions {
  double u_max = 1.0;
  bool as_json = false;
};

int cmd_enumerate(const EnumerateOptions& opt) {
  const crs::Catalog cat = crs::sufficient_list(opt.u_max);
  int n_types = 0;
  int n_candidates = 0;
  json types = json::array();
  std::ostringstream text;
  for (const crs::AbstractPathType& type : cat.types) {
    const std::vector<crs::ConcreteCandidate> cands = crs::expand_concrete(type);
    if (!type.empty()) {
      ++n_types;
      n_candidates += static_cast<int>(cands.size());
    }
    if (opt.as_json) {
      json words = json::array();
      for (const crs::ConcreteCandidate& c : cands) {
        words.push_back(c.word());
      }
      json domains = json::array();
      for (int i = 0; i < type.size(); ++i) {
        const crs::AngleInterval& dom = crs::angle_domain(type, i);
        domains.push_back({{"lo", dom.lo},
                           {"hi", dom.hi},
                           {"lo_open", dom.lo_open},
                           {"hi_open", dom.hi_open}});
      }
      types.push_back({{"name", type.name.empty() ? "(empty)" : type.name},
                       {"segments", type.size()},
                       {"domains", std::move(domains)},
                       {"candidates", std::move(words)}});
    } else {
      text << (type.name.empty() ? "(empty)" : type.name) << "  ["
           << type.size() << " segment" << (type.size() == 1 ? "" : "s")
           << ", " << cands.size() << " candidate"
           << (cands.size() == 1 ? "" : "s") << "]\n    ";
      for (size_t i = 0; i < cands.size(); ++i) {
        text << (i > 0 ? " " : "") << display_word(cands[i]);
      }
      text << "\n";
    }
  }
  if (opt.as_json) {
    json report;
    report["schema"] = 1;
    report["u_max"] = opt.u_max;
    report["beta"] = cat.beta_angle;
    report["n_types"] = n_types;
    report["n_candidates"] = n_candidates;
    report["types"] = std::move(types);
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf(
        "sufficient list at u_max=%g: %d path types (+ empty path), beta=%.4f, "
        "%d concrete candidates\n",
        opt.u_max, n_types, cat.beta_angle, n_candidates);
    std::cout << text.str();
  }
  return 0;
}

struct OracleOptions {
  double u_max = 1.0;
  RotationInput r_f;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  double tol = 5e-2;
  double dt = 0.01;
  int max_segments = 6;
};

int cmd_oracle(const OracleOptions& opt) {
  const Mat3 r_net = opt.r_f.parse(1e-6);
  crs::OracleBudget budget;
  budget.n_samples = opt.samples;
  budget.max_segments = opt.max_segments;
  budget.rng_seed = opt.seed;
  const crs::OracleResult res =
      crs::random_search(r_net, opt.u_max, budget, opt.tol, opt.dt);
  json report;
  report["schema"] = 1;
  report["u_max"] = opt.u_max;
  report["samples"] = opt.samples;
  report["seed"] = opt.seed;
  report["tol"] = opt.tol;
  report["dt"] = opt.dt;
  report["found"] = res.found;
  report["hits"] = res.hits;
  report["nearest_residual"] = res.nearest_residual;
  if (res.found) {
    report["best_time"] = res.best_time;
    report["best_residual"] = res.best_residual;
    report["best_time_bound"] = res.best_time_bound;
    report["best_index"] = res.best_index;
    json schedule = json::array();
    for (const crs::Segment& seg : res.best_schedule.segments) {
      schedule.push_back({{"kind", std::string(crs::to_string(seg.kind))},
                          {"angle", seg.phi}});
    }
    report["best_schedule"] = std::move(schedule);
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

struct SatelliteOptions {
  double j1 = 1.0;
  double j3 = 1.0;
  double v1max = 1.0;
  double v2max = 1.0;
  RotationInput r_f;
  bool as_json = false;
};

int cmd_satellite(const SatelliteOptions& opt) {
  const Mat3 r_f = opt.r_f.parse(1e-6);
  auto [query, time_scale] =
      crs::satellite_to_query(opt.j1, opt.j3, opt.v1max, opt.v2max, r_f);
  const crs::PlanResult res = crs::plan(query);
  const crs::FeasiblePath& best =
      res.feasible[static_cast<size_t>(res.optimal)];
  const double physical_time = best.total_time / time_scale;
  if (opt.as_json) {
    json report;
    report["schema"] = 1;
    report["u_max"] = query.u_max;
    report["time_scale"] = time_scale;
    report["word"] = best.candidate.word();
    report["angles"] = best.solution.angles;
    report["planner_time"] = best.total_time;
    report["physical_time"] = physical_time;
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("u_max        %.6f\n", query.u_max);
    std::printf("time_scale   %.6f\n", time_scale);
    std::printf("optimal      %s\n", display_word(best.candidate).c_str());
    std::printf("planner_time %.4f\n", best.total_time);
    std::printf("physical_time %.4f\n", physical_time);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Time-optimal spherical paths for the convexified Reeds-Shepp vehicle"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "Enumerate feasible paths to a target rotation and pick the optimum");
  solve->add_option("--umax", solve_opt.u_max, "Steering bound (>= 1)")
      ->required();
  solve->add_option("--rf", solve_opt.r_f.raw,
                    "Target rotation: 9 row-major, 4 quaternion (w,x,y,z), or "
                    "3 Euler z-y-x values (x,y,z)")
      ->required();
  solve->add_option("--r0", solve_opt.r0.raw,
                    "Start rotation (default identity)");
  solve->add_option("--tol", solve_opt.tol, "Feasibility tolerance");
  solve->add_flag("--json", solve_opt.as_json, "Emit a JSON report");

  SampleOptions sample_opt;
  CLI::App* sample = app.add_subcommand(
      "sample", "Sample a path given as KIND:angle,... to CSV");
  sample->add_option("--umax", sample_opt.u_max, "Steering bound (>= 1)")
      ->required();
  sample->add_option("--path", sample_opt.path_text,
                     "Path string, e.g. L-:0.1122,R-:1.4896,R+:1.6238");
  sample->add_option("--n", sample_opt.n, "Samples per segment");
  sample->add_option("--out", sample_opt.out_path, "Output file (default stdout)");
  sample->add_option("--r0", sample_opt.r0.raw, "Start rotation");

  PortraitOptions portrait_opt;
  CLI::App* portrait = app.add_subcommand(
      "portrait", "Integrate the extremal adjoint flow and emit portrait CSV");
  portrait->add_option("--umax", portrait_opt.u_max, "Steering bound (>= 1)")
      ->required();
  portrait->add_option("--a0", portrait_opt.a0, "Initial A")->required();
  portrait->add_option("--b0", portrait_opt.b0, "Initial B")->required();
  portrait->add_option("--c0", portrait_opt.c0, "Initial C")->required();
  portrait->add_option("--t", portrait_opt.t_end, "Integration horizon")
      ->required();
  portrait->add_option("--dt", portrait_opt.dt, "Integration step");
  portrait->add_option("--out", portrait_opt.out_path,
                       "Output file (default stdout)");
  portrait->add_flag("--force", portrait_opt.force,
                     "Integrate even if the initial state is inconsistent");

  EnumerateOptions enum_opt;
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "Print the sufficient list of path types");
  enumerate->add_option("--umax", enum_opt.u_max, "Steering bound (>= 1)")
      ->required();
  enumerate->add_flag("--json", enum_opt.as_json, "Emit a JSON report");

  OracleOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Random bang-bang search challenging the planner (JSON report)");
  oracle->add_option("--umax", oracle_opt.u_max, "Steering bound (>= 1)")
      ->required();
  oracle->add_option("--rf", oracle_opt.r_f.raw, "Target rotation")->required();
  oracle->add_option("--samples", oracle_opt.samples, "Number of samples");
  oracle->add_option("--seed", oracle_opt.seed, "RNG seed");
  oracle->add_option("--tol", oracle_opt.tol, "Hit tolerance (Frobenius)");
  oracle->add_option("--dt", oracle_opt.dt, "Integration step");
  oracle->add_option("--max-segments", oracle_opt.max_segments,
                     "Segments per schedule (1-6)");

  SatelliteOptions sat_opt;
  CLI::App* satellite = app.add_subcommand(
      "satellite", "Map reaction-wheel satellite parameters to a query and solve");
  satellite->add_option("--j1", sat_opt.j1, "Transverse inertia")->required();
  satellite->add_option("--j3", sat_opt.j3, "Spin-axis inertia")->required();
  satellite->add_option("--v1max", sat_opt.v1max, "First wheel rate bound")
      ->required();
  satellite->add_option("--v2max", sat_opt.v2max, "Second wheel rate bound")
      ->required();
  satellite->add_option("--rf", sat_opt.r_f.raw, "Target rotation")->required();
  satellite->add_flag("--json", sat_opt.as_json, "Emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opt);
    if (sample->parsed()) return cmd_sample(sample_opt);
    if (portrait->parsed()) return cmd_portrait(portrait_opt);
    if (enumerate->parsed()) return cmd_enumerate(enum_opt);
    if (oracle->parsed()) return cmd_oracle(oracle_opt);
    if (satellite->parsed()) return cmd_satellite(sat_opt);
  } catch (const crs::UnsupportedRegime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const crs::NoSolutionFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
