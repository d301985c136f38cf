#include "crs/catalog.hpp"

#include <array>
#include <stdexcept>

#include "crs/adjoint.hpp"
#include "crs/errors.hpp"
#include "crs/so3.hpp"

namespace crs {

namespace {

/// The sufficient list: 17 base forms plus the 6 reversals that are not
/// palindromes.  The grammar is the type name itself: letters C/G/T, angle
/// suffixes _psi/_mu/_beta, and '|' for a cusp junction.
constexpr std::array<const char*, 23> kTypeNames = {
    "C",
    "G",
    "T",
    "CC",
    "GC",
    "C|C",
    "TC",
    "CC_psi|C",
    "CGC",
    "C|C_betaG",
    "CTC",
    "C|C_psiC_psi|C",
    "CGC_beta|C",
    "CC_mu|C_muC",
    "C|C_betaGC_beta|C",
    "C|C_muC_mu|C_muC",
    "CC_mu|C_muC_mu|C_muC",
    "CG",
    "CT",
    "C|C_psiC",
    "GC_beta|C",
    "C|C_betaGC",
    "CC_mu|C_muC_mu|C",
};

AbstractPathType parse_type(const std::string& name) {
  AbstractPathType t;
  t.name = name;
  size_t i = 0;
  bool pending_cusp = false;
  while (i < name.size()) {
    const char ch = name[i];
    if (ch == '|') {
      if (t.letters.empty() || pending_cusp) {
        throw std::invalid_argument("malformed path-type name: " + name);
      }
      pending_cusp = true;
      ++i;
      continue;
    }
    PathLetter letter;
    switch (ch) {
      case 'C': letter = PathLetter::kC; break;
      case 'G': letter = PathLetter::kG; break;
      case 'T': letter = PathLetter::kT; break;
      default:
        throw std::invalid_argument("malformed path-type name: " + name);
    }
    ++i;
    AngleClass cls = AngleClass::kFree;
    if (name.compare(i, 4, "_psi") == 0) {
      cls = AngleClass::kSharedPsi;
      i += 4;
    } else if (name.compare(i, 3, "_mu") == 0) {
      cls = AngleClass::kSharedMu;
      i += 3;
    } else if (name.compare(i, 5, "_beta") == 0) {
      cls = AngleClass::kFixedBeta;
      i += 5;
    }
    if (!t.letters.empty()) {
      t.junctions.push_back(pending_cusp ? JunctionMark::kCusp
                                         : JunctionMark::kPlain);
    }
    pending_cusp = false;
    t.letters.push_back(letter);
    t.classes.push_back(cls);
  }
  if (pending_cusp) {
    throw std::invalid_argument("malformed path-type name: " + name);
  }
  return t;
}

AngleInterval interval_for(PathLetter letter, AngleClass cls, double beta_angle) {
  switch (cls) {
    case AngleClass::kFixedBeta:
      return AngleInterval{beta_angle, beta_angle, false, false};
    case AngleClass::kSharedPsi:
      return AngleInterval{0.0, beta_angle, true, false};
    case AngleClass::kSharedMu:
      return AngleInterval{0.0, beta_angle, true, true};
    case AngleClass::kFree:
      break;
  }
  switch (letter) {
    case PathLetter::kG:
      return AngleInterval{0.0, kTwoPi, true, true};
    case PathLetter::kC:
    case PathLetter::kT:
      return AngleInterval{0.0, kPi, true, false};
  }
  return AngleInterval{};
}

void resolve_intervals(AbstractPathType* t, double beta_angle) {
  t->beta_angle = beta_angle;
  t->interval_index.assign(t->letters.size(), -1);
  int shared_index = -1;
  for (int i = 0; i < t->size(); ++i) {
    if (is_shared(t->classes[i])) {
      if (shared_index < 0) {
        shared_index = static_cast<int>(t->intervals.size());
        t->intervals.push_back(
            interval_for(t->letters[i], t->classes[i], beta_angle));
      }
      t->interval_index[i] = shared_index;
    } else {
      t->interval_index[i] = static_cast<int>(t->intervals.size());
      t->intervals.push_back(
          interval_for(t->letters[i], t->classes[i], beta_angle));
    }
  }
}

/// Per-position assignment used during expansion: turn in {+1 = L, -1 = R,
/// 0 = none} and speed v in {+1, -1, 0}.
struct SignAssignment {
  int turn = 0;
  int v = 0;
};

bool junction_ok(PathLetter la, const SignAssignment& a, JunctionMark mark,
                 PathLetter lb, const SignAssignment& b) {
  const bool turn_a = la != PathLetter::kG;
  const bool turn_b = lb != PathLetter::kG;
  if (la == PathLetter::kC && lb == PathLetter::kC) {
    if (mark == JunctionMark::kCusp) {
      return a.turn == b.turn && a.v == -b.v;
    }
    return a.turn != b.turn && a.v == b.v;
  }
  if (la == PathLetter::kG || lb == PathLetter::kG) {
    return a.v == b.v || la == PathLetter::kT || lb == PathLetter::kT;
  }
  // One side is a turn-in-place: the turn direction carries across; the
  // speeds on the two sides are unconstrained (enumerated independently).
  if (turn_a && turn_b) {
    return a.turn == b.turn;
  }
  return true;
}

SegmentKind kind_of(PathLetter letter, const SignAssignment& s) {
  switch (letter) {
    case PathLetter::kC:
      if (s.turn > 0) {
        return s.v > 0 ? SegmentKind::kLp : SegmentKind::kLm;
      }
      return s.v > 0 ? SegmentKind::kRp : SegmentKind::kRm;
    case PathLetter::kG:
      return s.v > 0 ? SegmentKind::kGp : SegmentKind::kGm;
    case PathLetter::kT:
      return s.turn > 0 ? SegmentKind::kL0 : SegmentKind::kR0;
  }
  return SegmentKind::kGp;
}

}  // namespace

const AngleInterval& angle_domain(const AbstractPathType& t, int position) {
  if (position < 0 || position >= t.size()) {
    throw std::out_of_range("angle_domain: position out of range");
  }
  return t.intervals[static_cast<size_t>(t.interval_index[position])];
}

Catalog sufficient_list(double u_max) {
  if (!(u_max >= 1.0)) {
    throw UnsupportedRegime("sufficient list requires u_max >= 1");
  }
  Catalog cat;
  cat.u_max = u_max;
  cat.beta_angle = beta(u_max);
  cat.types.reserve(kTypeNames.size() + 1);
  for (const char* name : kTypeNames) {
    AbstractPathType t = parse_type(name);
    resolve_intervals(&t, cat.beta_angle);
    cat.types.push_back(std::move(t));
  }
  AbstractPathType empty_type;
  empty_type.name = "";
  empty_type.beta_angle = cat.beta_angle;
  cat.types.push_back(std::move(empty_type));
  return cat;
}

std::string ConcreteCandidate::word() const {
  std::string out;
  for (const SegmentKind kind : kinds) {
    out += to_string(kind);
  }
  return out;
}

std::vector<ConcreteCandidate> expand_concrete(const AbstractPathType& t) {
  const int n = t.size();
  std::vector<ConcreteCandidate> out;
  if (n == 0) {
    ConcreteCandidate empty_candidate;
    empty_candidate.type_name = t.name;
    empty_candidate.beta_angle = t.beta_angle;
    out.push_back(std::move(empty_candidate));
    return out;
  }

  // Options per position.
  std::vector<std::vector<SignAssignment>> options(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    switch (t.letters[static_cast<size_t>(i)]) {
      case PathLetter::kC:
        options[static_cast<size_t>(i)] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
        break;
      case PathLetter::kG:
        options[static_cast<size_t>(i)] = {{0, +1}, {0, -1}};
        break;
      case PathLetter::kT:
        options[static_cast<size_t>(i)] = {{+1, 0}, {-1, 0}};
        break;
    }
  }

  std::vector<size_t> pick(static_cast<size_t>(n), 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) {
      ok = junction_ok(t.letters[static_cast<size_t>(i)],
                       options[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]],
                       t.junctions[static_cast<size_t>(i)],
                       t.letters[static_cast<size_t>(i + 1)],
                       options[static_cast<size_t>(i + 1)][pick[static_cast<size_t>(i + 1)]]);
    }
    if (ok) {
      ConcreteCandidate c;
      c.type_name = t.name;
      c.beta_angle = t.beta_angle;
      c.kinds.reserve(static_cast<size_t>(n));
      c.classes = t.classes;
      c.domains.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        c.kinds.push_back(kind_of(t.letters[static_cast<size_t>(i)],
                                  options[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]));
        c.domains.push_back(angle_domain(t, i));
      }
      out.push_back(std::move(c));
    }
    // Advance the mixed-radix counter.
    int pos = n - 1;
    while (pos >= 0) {
      if (++pick[static_cast<size_t>(pos)] < options[static_cast<size_t>(pos)].size()) {
        break;
      }
      pick[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) {
      break;
    }
  }
  return out;
}

}  // namespace crs
