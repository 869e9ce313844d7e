#pragma once

#include <compare>
#include <string>
#include <vector>

namespace measlab {

using Point = std::vector<double>;

/// Shortest round-trip decimal form of a double.
std::string format_number(double x);
std::string format_point(const Point& p);

/// One-dimensional interval with independent closedness of each end.
/// A degenerate closed interval [x, x] is a single point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval half_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval point(double x) { return {x, x, true, true}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(double x) const {
    return (x > lo || (x == lo && lo_closed)) && (x < hi || (x == hi && hi_closed));
  }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool subset_of(const Interval& other) const;

  static Interval intersect(const Interval& a, const Interval& b);
  /// Part of `a` lying strictly before `b`.
  static Interval below(const Interval& a, const Interval& b);
  /// Part of `a` lying strictly after `b`.
  static Interval above(const Interval& a, const Interval& b);

  auto operator<=>(const Interval&) const = default;
};

/// Axis-aligned box: product of intervals.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> sides) : sides_(std::move(sides)) {}

  /// [lower, upper) in every coordinate.
  static Box half_open(const Point& lower, const Point& upper);
  /// [lower, upper] in every coordinate.
  static Box closed(const Point& lower, const Point& upper);
  static Box open(const Point& lower, const Point& upper);
  static Box point(const Point& p);

  std::size_t dimension() const { return sides_.size(); }
  const Interval& side(std::size_t i) const { return sides_[i]; }
  Interval& side(std::size_t i) { return sides_[i]; }
  const std::vector<Interval>& sides() const { return sides_; }

  bool empty() const;
  bool contains(const Point& p) const;
  double volume() const;
  bool subset_of(const Box& other) const;
  Point lower() const;
  Point upper() const;

  static Box intersect(const Box& a, const Box& b);
  /// Disjoint pieces covering a \ b.
  static std::vector<Box> subtract(const Box& a, const Box& b);

  std::string to_string() const;

  auto operator<=>(const Box&) const = default;

 private:
  std::vector<Interval> sides_;
};

}  // namespace measlab
