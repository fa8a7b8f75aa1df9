#include "lgc/cantor.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lgc {

namespace {

// In double precision the factors (1 - 2^-i) round to 1 beyond i = 53, so the
// running product is frozen well before this size.
constexpr int kProductTableSize = 96;

const std::array<double, kProductTableSize>& product_table() {
  static const std::array<double, kProductTableSize> table = [] {
    std::array<double, kProductTableSize> t{};
    t[0] = 1.0;
    for (int i = 1; i < kProductTableSize; ++i) {
      t[i] = t[i - 1] * (1.0 - std::ldexp(1.0, -i));
    }
    return t;
  }();
  return table;
}

void check_depth(int n) {
  if (n < 0) throw std::invalid_argument("depth must be nonnegative");
}

// Slack for endpoint queries: one or two ulps of pi/2 are lost when an
// absolute angle is converted back into an offset.
constexpr double kEndpointSlack = 1e-15;

}  // namespace

ArcAddress::ArcAddress(std::vector<Side> path) : path_(std::move(path)) {
  if (depth() > kMaxAddressDepth) {
    throw CapacityError("arc address deeper than " + std::to_string(kMaxAddressDepth));
  }
}

ArcAddress ArcAddress::parse(std::string_view text) {
  std::vector<Side> path;
  path.reserve(text.size());
  for (char c : text) {
    if (c == 'L') {
      path.push_back(Side::Left);
    } else if (c == 'R') {
      path.push_back(Side::Right);
    } else {
      throw std::invalid_argument("arc address must contain only 'L' and 'R'");
    }
  }
  return ArcAddress(std::move(path));
}

Side ArcAddress::last() const {
  if (is_root()) throw std::logic_error("root arc has no last step");
  return path_.back();
}

ArcAddress ArcAddress::parent() const {
  if (is_root()) throw std::logic_error("the root arc C_0 has no parent");
  return ArcAddress(std::vector<Side>(path_.begin(), path_.end() - 1));
}

ArcAddress ArcAddress::ancestor(int generations) const {
  if (generations < 0 || generations > depth()) {
    throw std::out_of_range("ancestor generation out of range");
  }
  return ArcAddress(std::vector<Side>(path_.begin(), path_.end() - generations));
}

ArcAddress ArcAddress::child(Side side) const {
  std::vector<Side> path = path_;
  path.push_back(side);
  return ArcAddress(std::move(path));
}

std::pair<ArcAddress, ArcAddress> ArcAddress::children() const {
  return {child(Side::Left), child(Side::Right)};
}

std::string ArcAddress::str() const {
  std::string s;
  s.reserve(path_.size());
  for (Side side : path_) s.push_back(side == Side::Left ? 'L' : 'R');
  return s;
}

double cantor_measure(int n) {
  check_depth(n);
  const auto& table = product_table();
  return table[std::min(n, kProductTableSize - 1)];
}

double theta(int n) { return std::ldexp(cantor_measure(n), -n); }

double gap_length(int n) { return std::ldexp(theta(n), -(n + 1)); }

double cantor_measure_limit(double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  for (int n = 0;; ++n) {
    if (cantor_measure(n) - cantor_measure(n + 32) < tolerance) return cantor_measure(n);
  }
}

namespace {

void enumerate(double lo, int level, int depth, std::vector<Arc>& out) {
  if (level == depth) {
    out.push_back(Arc{lo, lo + theta(depth)});
    return;
  }
  const double shift = theta(level) - theta(level + 1);
  enumerate(lo, level + 1, depth, out);          // clockwise child
  enumerate(lo + shift, level + 1, depth, out);  // counterclockwise child
}

}  // namespace

std::vector<Arc> arcs(int n) {
  check_depth(n);
  if (n > kMaxEnumerationDepth) {
    throw CapacityError("arc enumeration is capped at depth " +
                        std::to_string(kMaxEnumerationDepth));
  }
  std::vector<Arc> out;
  out.reserve(std::size_t{1} << n);
  enumerate(-0.5, 0, n, out);
  return out;
}

Arc resolve(const ArcAddress& address) {
  double lo = -0.5;
  int level = 0;
  for (Side side : address.path()) {
    if (side == Side::Left) lo += theta(level) - theta(level + 1);
    ++level;
  }
  return Arc{lo, lo + theta(level)};
}

Membership membership(double angle, int depth) {
  check_depth(depth);
  const double offset = std::remainder(angle - kHalfPi, kTwoPi);
  if (offset < -0.5 - kEndpointSlack || offset > 0.5 + kEndpointSlack) {
    return {Membership::Kind::RemovedAtStage, 0};
  }
  double lo = -0.5;
  for (int k = 0; k < depth; ++k) {
    const double len = theta(k);
    const double child = theta(k + 1);
    if (offset <= lo + child + kEndpointSlack) continue;
    if (offset >= lo + len - child - kEndpointSlack) {
      lo += len - child;
      continue;
    }
    return {Membership::Kind::RemovedAtStage, k + 1};
  }
  return {Membership::Kind::InsideAtDepth, depth};
}

int trace_value(double angle, int depth) { return membership(angle, depth).inside() ? 1 : 0; }

}  // namespace lgc
