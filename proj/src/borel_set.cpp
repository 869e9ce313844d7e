#include "measlab/borel_set.hpp"

#include <algorithm>
#include <set>

#include "measlab/error.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

namespace {

void check_dim(std::size_t dim, const Box& b) {
  if (b.dimension() != dim) throw DomainMismatch("box dimension does not match set dimension");
}

std::vector<Box> minus_all(const Box& a, const std::vector<Box>& others) {
  std::vector<Box> pieces{a};
  for (const auto& b : others) {
    std::vector<Box> next;
    for (const auto& p : pieces) {
      auto diff = Box::subtract(p, b);
      next.insert(next.end(), diff.begin(), diff.end());
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

}  // namespace

BorelSet BorelSet::from_boxes(std::size_t dimension, const std::vector<Box>& boxes) {
  BorelSet s(dimension);
  for (const auto& b : boxes) {
    check_dim(dimension, b);
    if (b.empty()) continue;
    auto pieces = minus_all(b, s.boxes_);
    s.boxes_.insert(s.boxes_.end(), pieces.begin(), pieces.end());
  }
  std::sort(s.boxes_.begin(), s.boxes_.end());
  return s;
}

BorelSet BorelSet::of(const Box& box) { return from_boxes(box.dimension(), {box}); }

BorelSet BorelSet::points(std::size_t dimension, const std::vector<Point>& pts) {
  std::vector<Point> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  BorelSet s(dimension);
  s.boxes_.reserve(sorted.size());
  for (const auto& p : sorted) {
    const Box b = Box::point(p);
    check_dim(dimension, b);
    if (!b.empty()) s.boxes_.push_back(b);
  }
  std::sort(s.boxes_.begin(), s.boxes_.end());
  return s;
}

BorelSet BorelSet::half_open(const Space& space, const Point& lower, const Point& upper) {
  return BorelSet::of(Box::half_open(lower, upper)).intersect(whole(space));
}

BorelSet BorelSet::whole(const Space& space) {
  if (space.is_box()) return of(space.bounds());
  return points(space.dimension(), space.points());
}

BorelSet BorelSet::with_overrides(const std::vector<Point>& include,
                                  const std::vector<Point>& exclude) const {
  return unite(points(dim_, include)).subtract(points(dim_, exclude));
}

BorelSet BorelSet::unite(const BorelSet& other) const {
  if (other.dim_ != dim_) throw DomainMismatch("set dimensions differ");
  BorelSet s = *this;
  for (const auto& b : other.boxes_) {
    auto pieces = minus_all(b, boxes_);
    s.boxes_.insert(s.boxes_.end(), pieces.begin(), pieces.end());
  }
  std::sort(s.boxes_.begin(), s.boxes_.end());
  return s;
}

BorelSet BorelSet::intersect(const BorelSet& other) const {
  if (other.dim_ != dim_) throw DomainMismatch("set dimensions differ");
  BorelSet s(dim_);
  for (const auto& a : boxes_) {
    for (const auto& b : other.boxes_) {
      Box c = Box::intersect(a, b);
      if (!c.empty()) s.boxes_.push_back(std::move(c));
    }
  }
  std::sort(s.boxes_.begin(), s.boxes_.end());
  return s;
}

BorelSet BorelSet::subtract(const BorelSet& other) const {
  if (other.dim_ != dim_) throw DomainMismatch("set dimensions differ");
  BorelSet s(dim_);
  for (const auto& a : boxes_) {
    auto pieces = minus_all(a, other.boxes_);
    s.boxes_.insert(s.boxes_.end(), pieces.begin(), pieces.end());
  }
  std::sort(s.boxes_.begin(), s.boxes_.end());
  return s;
}

BorelSet BorelSet::complement(const Space& space) const {
  if (space.dimension() != dim_) throw DomainMismatch("set and space dimensions differ");
  return whole(space).subtract(*this);
}

bool BorelSet::contains(const Point& p) const {
  for (const auto& b : boxes_)
    if (b.contains(p)) return true;
  return false;
}

double BorelSet::volume() const {
  CompensatedSum v;
  for (const auto& b : boxes_) v += b.volume();
  return v.value();
}

std::string BorelSet::to_string() const {
  if (boxes_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (i) out += " u ";
    out += boxes_[i].to_string();
  }
  return out;
}

std::vector<LabeledSet> dyadic_cells(const Space& space, int level) {
  if (level < 0) throw InvalidArgument("dyadic level must be >= 0");
  const std::size_t d = space.dimension();
  const Box& omega = space.bounds();
  const long per_dim = 1L << level;
  long total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per_dim;

  const BorelSet whole = BorelSet::whole(space);
  std::vector<LabeledSet> out;
  std::vector<long> idx(d, 0);
  for (long c = 0; c < total; ++c) {
    long rem = c;
    for (std::size_t i = 0; i < d; ++i) {
      idx[d - 1 - i] = rem % per_dim;
      rem /= per_dim;
    }
    std::vector<Interval> sides(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& s = omega.side(i);
      const double w = (s.hi - s.lo) / static_cast<double>(per_dim);
      const bool last = idx[i] == per_dim - 1;
      sides[i].lo = s.lo + static_cast<double>(idx[i]) * w;
      sides[i].hi = last ? s.hi : s.lo + static_cast<double>(idx[i] + 1) * w;
      sides[i].lo_closed = true;
      sides[i].hi_closed = last;
    }
    BorelSet cell = BorelSet::of(Box(std::move(sides)));
    if (space.is_discrete()) {
      cell = cell.intersect(whole);
      if (cell.empty()) continue;
    }
    out.push_back({cell.to_string(), std::move(cell)});
  }
  return out;
}

std::vector<LabeledSet> closed_dyadic_cells(const Space& space, int resolution) {
  std::vector<LabeledSet> out;
  for (int k = 1; k <= resolution; ++k) {
    for (auto& c : dyadic_cells(space, k)) {
      std::vector<Box> closed;
      for (const auto& b : c.set.boxes()) {
        Box cb = b;
        for (std::size_t i = 0; i < cb.dimension(); ++i) {
          cb.side(i).lo_closed = true;
          cb.side(i).hi_closed = true;
        }
        closed.push_back(cb);
      }
      BorelSet s = BorelSet::from_boxes(space.dimension(), closed).intersect(BorelSet::whole(space));
      out.push_back({s.to_string(), std::move(s)});
    }
  }
  return out;
}

std::vector<LabeledSet> dyadic_ring(const Space& space, int resolution,
                                    const std::vector<Point>& atoms) {
  if (resolution < 0) throw InvalidArgument("ring resolution must be >= 0");
  const std::size_t d = space.dimension();
  const BorelSet whole = BorelSet::whole(space);
  std::vector<LabeledSet> out;
  std::set<std::vector<Box>> seen;
  auto add = [&](BorelSet s) {
    if (s.empty()) return;
    if (!seen.insert(s.boxes()).second) return;
    out.push_back({s.to_string(), std::move(s)});
  };

  if (space.is_discrete() && space.points().size() <= 12) {
    const auto& pts = space.points();
    const unsigned long count = 1UL << pts.size();
    for (unsigned long mask = 1; mask < count; ++mask) {
      std::vector<Point> sub;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (mask & (1UL << i)) sub.push_back(pts[i]);
      add(BorelSet::points(d, sub));
    }
    return out;
  }

  add(whole);
  for (int k = 1; k <= resolution; ++k) {
    for (auto& c : dyadic_cells(space, k)) {
      add(c.set);
      add(c.set.complement(space));
    }
  }
  for (const auto& a : atoms) {
    if (!space.contains(a)) continue;
    BorelSet single = BorelSet::points(d, {a});
    add(single);
    add(single.complement(space));
  }
  return out;
}

}  // namespace measlab
