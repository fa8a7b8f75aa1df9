#pragma once

// Fat Cantor set on the unit circle.
//
// C_0 is the closed arc of angles [pi/2 - 1/2, pi/2 + 1/2]. Each stage splits
// every arc of C_n into two closed children of length theta(n+1) by removing
// an open central gap of length theta(n) / 2^(n+1). C_n has 2^n arcs and
// total length cantor_measure(n).

#include <compare>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lgc {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Arc enumeration is capped here; 2^40 arcs is already far past useful.
inline constexpr int kMaxEnumerationDepth = 40;
/// Address resolution works down to this depth.
inline constexpr int kMaxAddressDepth = 1000;

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Which child of an arc: Left is counterclockwise, Right is clockwise.
enum class Side : std::uint8_t { Left, Right };

/// Path from C_0 to an arc of stage `depth()`.
class ArcAddress {
 public:
  ArcAddress() = default;
  explicit ArcAddress(std::vector<Side> path);

  /// Parses a string of 'L'/'R' characters. The empty string is the root.
  static ArcAddress parse(std::string_view text);

  int depth() const { return static_cast<int>(path_.size()); }
  bool is_root() const { return path_.empty(); }
  std::span<const Side> path() const { return path_; }
  Side last() const;

  ArcAddress parent() const;
  ArcAddress ancestor(int generations) const;
  ArcAddress child(Side side) const;
  std::pair<ArcAddress, ArcAddress> children() const;

  std::string str() const;

  auto operator<=>(const ArcAddress&) const = default;

 private:
  std::vector<Side> path_;
};

/// Closed arc of the unit circle. Angles are kept as offsets from pi/2.
struct Arc {
  double start_offset = -0.5;
  double end_offset = 0.5;

  double start() const { return kHalfPi + start_offset; }
  double end() const { return kHalfPi + end_offset; }
  double length() const { return end_offset - start_offset; }
  double mid() const { return kHalfPi + 0.5 * (start_offset + end_offset); }
};

/// Verdict of a membership query against C_depth.
struct Membership {
  enum class Kind : std::uint8_t { InsideAtDepth, RemovedAtStage };
  Kind kind = Kind::InsideAtDepth;
  /// Query depth for InsideAtDepth, removal stage for RemovedAtStage.
  int stage = 0;

  bool inside() const { return kind == Kind::InsideAtDepth; }
  bool operator==(const Membership&) const = default;
};

/// Arc length of each arc of C_n.
double theta(int n);
/// Total length of C_n, the product of (1 - 2^-i) over i = 1..n.
double cantor_measure(int n);
/// K_N for the smallest N with K_N - K_(N+32) < tolerance.
double cantor_measure_limit(double tolerance);
/// Length of the open gap removed from the middle of a stage-n arc.
double gap_length(int n);

/// The 2^n arcs of C_n in counterclockwise order.
std::vector<Arc> arcs(int n);

Arc resolve(const ArcAddress& address);

Membership membership(double angle, int depth);
int trace_value(double angle, int depth);

}  // namespace lgc
