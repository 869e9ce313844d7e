#pragma once

#include <vector>

#include "measlab/geometry.hpp"

namespace measlab {

/// The underlying space: a closed box in R^d or a finite set of points.
///
/// An axis of a box may be flagged as truncated. A truncated axis stands for
/// an unbounded direction cut at the box's upper face; the upper half of such
/// an axis plays the role of a neighbourhood of infinity (see core()).
class Space {
 public:
  enum class Kind { Box, Discrete };

  static Space box(Point lower, Point upper, std::vector<bool> truncated = {});
  static Space discrete(std::vector<Point> points);

  Kind kind() const { return kind_; }
  bool is_box() const { return kind_ == Kind::Box; }
  bool is_discrete() const { return kind_ == Kind::Discrete; }
  std::size_t dimension() const { return dim_; }

  /// Closed bounding box; for a box space this is the space itself.
  const Box& bounds() const { return bounds_; }
  const std::vector<Point>& points() const { return points_; }
  bool truncated(std::size_t axis) const { return truncated_.at(axis); }
  const std::vector<bool>& truncated_axes() const { return truncated_; }
  bool any_truncated() const;

  bool contains(const Point& p) const;

  /// Compact region in which vanishing-at-infinity test functions are
  /// supported: the whole box, with each truncated axis cut to its lower half.
  Box core() const;

  bool operator==(const Space& other) const;

 private:
  Kind kind_ = Kind::Box;
  std::size_t dim_ = 0;
  Box bounds_;
  std::vector<bool> truncated_;
  std::vector<Point> points_;
};

}  // namespace measlab
