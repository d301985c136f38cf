#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace crs {

/// The eight extremal motion primitives of the spherical vehicle.
///
/// Letter: turn sense of the steering control (L = positive steering,
/// R = negative steering, G = no steering / great-circle arc).
/// Sign: forward (+), backward (-), or in-place (0, speed zero).
enum class SegmentKind {
  kGp,  ///< G+ : forward along a great circle
  kGm,  ///< G- : backward along a great circle
  kLp,  ///< L+ : forward tight left turn
  kLm,  ///< L- : backward tight left turn
  kRp,  ///< R+ : forward tight right turn
  kRm,  ///< R- : backward tight right turn
  kL0,  ///< L0 : left turn in place
  kR0,  ///< R0 : right turn in place
};

inline constexpr std::array<SegmentKind, 8> kAllSegmentKinds = {
    SegmentKind::kGp, SegmentKind::kGm, SegmentKind::kLp, SegmentKind::kLm,
    SegmentKind::kRp, SegmentKind::kRm, SegmentKind::kL0, SegmentKind::kR0};

constexpr std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kGp: return "G+";
    case SegmentKind::kGm: return "G-";
    case SegmentKind::kLp: return "L+";
    case SegmentKind::kLm: return "L-";
    case SegmentKind::kRp: return "R+";
    case SegmentKind::kRm: return "R-";
    case SegmentKind::kL0: return "L0";
    case SegmentKind::kR0: return "R0";
  }
  return "??";
}

/// Parses "G+", "G-", "L+", "L-", "R+", "R-", "L0", "R0".
std::optional<SegmentKind> segment_kind_from_string(std::string_view token);

/// True for the four tight-turn kinds (|v| = 1, |u_g| = u_max).
constexpr bool is_turn(SegmentKind k) {
  return k == SegmentKind::kLp || k == SegmentKind::kLm ||
         k == SegmentKind::kRp || k == SegmentKind::kRm;
}
/// True for the two great-circle kinds (u_g = 0).
constexpr bool is_great_circle(SegmentKind k) {
  return k == SegmentKind::kGp || k == SegmentKind::kGm;
}
/// True for the two turn-in-place kinds (v = 0).
constexpr bool is_in_place(SegmentKind k) {
  return k == SegmentKind::kL0 || k == SegmentKind::kR0;
}

/// Speed component of the kind: +1, -1 or 0.
constexpr double speed_sign(SegmentKind k) {
  switch (k) {
    case SegmentKind::kGp:
    case SegmentKind::kLp:
    case SegmentKind::kRp: return 1.0;
    case SegmentKind::kGm:
    case SegmentKind::kLm:
    case SegmentKind::kRm: return -1.0;
    default: return 0.0;
  }
}

/// Steering component of the kind as a multiple of u_max: +1, -1 or 0.
constexpr double steer_sign(SegmentKind k) {
  switch (k) {
    case SegmentKind::kLp:
    case SegmentKind::kLm:
    case SegmentKind::kL0: return 1.0;
    case SegmentKind::kRp:
    case SegmentKind::kRm:
    case SegmentKind::kR0: return -1.0;
    default: return 0.0;
  }
}

}  // namespace crs
