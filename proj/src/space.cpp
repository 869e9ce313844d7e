#include "measlab/space.hpp"

#include <algorithm>
#include <cmath>

#include "measlab/error.hpp"

namespace measlab {

Space Space::box(Point lower, Point upper, std::vector<bool> truncated) {
  if (lower.empty() || lower.size() != upper.size())
    throw InvalidArgument("box space needs corners of equal dimension d >= 1");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i]))
      throw InvalidArgument("box space needs finite lower < upper in every coordinate");
  }
  if (truncated.empty()) truncated.assign(lower.size(), false);
  if (truncated.size() != lower.size())
    throw InvalidArgument("truncation flags must match the dimension");
  Space s;
  s.kind_ = Kind::Box;
  s.dim_ = lower.size();
  s.bounds_ = Box::closed(lower, upper);
  s.truncated_ = std::move(truncated);
  return s;
}

Space Space::discrete(std::vector<Point> points) {
  if (points.empty()) throw InvalidArgument("discrete space needs at least one point");
  const std::size_t d = points.front().size();
  if (d == 0) throw InvalidArgument("discrete points need dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != d) throw InvalidArgument("discrete points must share a dimension");
    for (double x : p)
      if (!std::isfinite(x)) throw InvalidArgument("discrete points must be finite");
  }
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("discrete point list must be duplicate-free");

  Space s;
  s.kind_ = Kind::Discrete;
  s.dim_ = d;
  Point lo = points.front();
  Point hi = points.front();
  for (const auto& p : points) {
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  s.bounds_ = Box::closed(lo, hi);
  s.truncated_.assign(d, false);
  s.points_ = std::move(points);
  return s;
}

bool Space::any_truncated() const {
  return std::find(truncated_.begin(), truncated_.end(), true) != truncated_.end();
}

bool Space::contains(const Point& p) const {
  if (kind_ == Kind::Box) return bounds_.contains(p);
  return std::find(points_.begin(), points_.end(), p) != points_.end();
}

Box Space::core() const {
  Box c = bounds_;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (truncated_[i]) {
      auto& s = c.side(i);
      s.hi = s.lo + (s.hi - s.lo) / 2;
    }
  }
  return c;
}

bool Space::operator==(const Space& o) const {
  return kind_ == o.kind_ && dim_ == o.dim_ && bounds_ == o.bounds_ &&
         truncated_ == o.truncated_ && points_ == o.points_;
}

}  // namespace measlab
