#include "measlab/geometry.hpp"

#include <charconv>
#include <limits>

#include "measlab/error.hpp"

namespace measlab {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_point(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += format_number(p[i]);
  }
  return out + ")";
}

bool Interval::subset_of(const Interval& o) const {
  if (empty()) return true;
  if (o.empty()) return false;
  const bool lo_ok = lo > o.lo || (lo == o.lo && (o.lo_closed || !lo_closed));
  const bool hi_ok = hi < o.hi || (hi == o.hi && (o.hi_closed || !hi_closed));
  return lo_ok && hi_ok;
}

Interval Interval::intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

Interval Interval::below(const Interval& a, const Interval& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return intersect(a, Interval{-inf, b.lo, false, !b.lo_closed});
}

Interval Interval::above(const Interval& a, const Interval& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return intersect(a, Interval{b.hi, inf, !b.hi_closed, false});
}

namespace {

Box make_box(const Point& lower, const Point& upper, bool lo_closed, bool hi_closed) {
  if (lower.size() != upper.size() || lower.empty())
    throw InvalidArgument("box corners must have equal, positive dimension");
  std::vector<Interval> sides;
  sides.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i)
    sides.push_back(Interval{lower[i], upper[i], lo_closed, hi_closed});
  return Box(std::move(sides));
}

}  // namespace

Box Box::half_open(const Point& lower, const Point& upper) {
  return make_box(lower, upper, true, false);
}
Box Box::closed(const Point& lower, const Point& upper) {
  return make_box(lower, upper, true, true);
}
Box Box::open(const Point& lower, const Point& upper) {
  return make_box(lower, upper, false, false);
}
Box Box::point(const Point& p) { return make_box(p, p, true, true); }

bool Box::empty() const {
  if (sides_.empty()) return true;
  for (const auto& s : sides_)
    if (s.empty()) return true;
  return false;
}

bool Box::contains(const Point& p) const {
  if (p.size() != sides_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!sides_[i].contains(p[i])) return false;
  return true;
}

double Box::volume() const {
  if (empty()) return 0.0;
  double v = 1.0;
  for (const auto& s : sides_) v *= s.length();
  return v;
}

bool Box::subset_of(const Box& other) const {
  if (empty()) return true;
  if (other.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < sides_.size(); ++i)
    if (!sides_[i].subset_of(other.sides_[i])) return false;
  return true;
}

Point Box::lower() const {
  Point p;
  for (const auto& s : sides_) p.push_back(s.lo);
  return p;
}

Point Box::upper() const {
  Point p;
  for (const auto& s : sides_) p.push_back(s.hi);
  return p;
}

Box Box::intersect(const Box& a, const Box& b) {
  if (a.dimension() != b.dimension()) throw DomainMismatch("box dimensions differ");
  std::vector<Interval> sides(a.dimension());
  for (std::size_t i = 0; i < sides.size(); ++i)
    sides[i] = Interval::intersect(a.sides_[i], b.sides_[i]);
  return Box(std::move(sides));
}

std::vector<Box> Box::subtract(const Box& a, const Box& b) {
  std::vector<Box> out;
  if (a.empty()) return out;
  if (Box::intersect(a, b).empty()) {
    out.push_back(a);
    return out;
  }
  Box cur = a;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    Interval lo_part = Interval::below(cur.sides_[i], b.sides_[i]);
    Interval hi_part = Interval::above(cur.sides_[i], b.sides_[i]);
    if (!lo_part.empty()) {
      Box piece = cur;
      piece.sides_[i] = lo_part;
      out.push_back(std::move(piece));
    }
    if (!hi_part.empty()) {
      Box piece = cur;
      piece.sides_[i] = hi_part;
      out.push_back(std::move(piece));
    }
    cur.sides_[i] = Interval::intersect(cur.sides_[i], b.sides_[i]);
  }
  return out;
}

std::string Box::to_string() const {
  if (empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    if (i) out += "x";
    const auto& s = sides_[i];
    if (s.lo == s.hi) {
      out += "{" + format_number(s.lo) + "}";
    } else {
      out += s.lo_closed ? "[" : "(";
      out += format_number(s.lo) + "," + format_number(s.hi);
      out += s.hi_closed ? "]" : ")";
    }
  }
  return out;
}

}  // namespace measlab
