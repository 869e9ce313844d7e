#include "measlab/measure.hpp"

#include <algorithm>
#include <cmath>

#include "measlab/error.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

FiniteMeasure::FiniteMeasure(Space space, std::vector<Atom> atoms,
                             std::vector<DensityPiece> density)
    : space_(std::move(space)), atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
      throw InvalidArgument("atom weights must be finite and nonnegative");
    if (!space_.contains(a.point))
      throw DomainMismatch("atom " + format_point(a.point) + " lies outside the space");
  }
  for (auto& p : density_) {
    if (!(p.value >= 0.0) || !std::isfinite(p.value))
      throw InvalidArgument("density values must be finite and nonnegative");
    if (space_.is_discrete() && p.value > 0.0 && p.box.volume() > 0.0)
      throw DomainMismatch("a discrete space carries no density");
    if (p.box.dimension() != space_.dimension())
      throw DomainMismatch("density piece dimension does not match the space");
    p.box = Box::intersect(p.box, space_.bounds());
  }
  canonicalize();
}

void FiniteMeasure::canonicalize() {
  std::sort(atoms_.begin(), atoms_.end());
  std::vector<Atom> merged;
  for (auto& a : atoms_) {
    if (a.weight == 0.0) continue;
    if (!merged.empty() && merged.back().point == a.point)
      merged.back().weight += a.weight;
    else
      merged.push_back(std::move(a));
  }
  atoms_ = std::move(merged);

  std::vector<DensityPiece> pieces;
  for (auto& p : density_) {
    if (p.value == 0.0 || p.box.volume() == 0.0) continue;
    // Closedness does not change Lebesgue mass; normalise to half-open.
    for (std::size_t i = 0; i < p.box.dimension(); ++i) {
      p.box.side(i).lo_closed = true;
      p.box.side(i).hi_closed = false;
    }
    pieces.push_back(std::move(p));
  }
  std::sort(pieces.begin(), pieces.end());
  std::vector<DensityPiece> mp;
  for (auto& p : pieces) {
    if (!mp.empty() && mp.back().box == p.box)
      mp.back().value += p.value;
    else
      mp.push_back(std::move(p));
  }
  density_ = std::move(mp);

  CompensatedSum t;
  for (const auto& a : atoms_) t += a.weight;
  for (const auto& p : density_) t += p.value * p.box.volume();
  total_ = t.value();
  if (!std::isfinite(total_)) throw InvalidArgument("total mass must be finite");
}

FiniteMeasure FiniteMeasure::zero(const Space& space) { return FiniteMeasure(space, {}, {}); }

FiniteMeasure FiniteMeasure::dirac(const Space& space, const Point& at, double weight) {
  return FiniteMeasure(space, {Atom{at, weight}}, {});
}

FiniteMeasure FiniteMeasure::lebesgue(const Space& space, double scale) {
  if (!space.is_box()) throw DomainMismatch("Lebesgue measure needs a box space");
  return FiniteMeasure(space, {}, {DensityPiece{space.bounds(), scale}});
}

FiniteMeasure FiniteMeasure::uniform(const Space& space, const Box& box, double value) {
  if (!space.is_box()) throw DomainMismatch("a density needs a box space");
  return FiniteMeasure(space, {}, {DensityPiece{box, value}});
}

FiniteMeasure FiniteMeasure::grid(const Space& space, const std::vector<int>& shape,
                                  const std::vector<double>& values) {
  if (!space.is_box()) throw DomainMismatch("a density needs a box space");
  if (shape.size() != space.dimension()) throw InvalidArgument("grid shape must match dimension");
  std::size_t count = 1;
  for (int s : shape) {
    if (s < 1) throw InvalidArgument("grid shape entries must be >= 1");
    count *= static_cast<std::size_t>(s);
  }
  if (values.size() != count) throw InvalidArgument("grid value count does not match shape");
  const std::size_t d = shape.size();
  const Box& omega = space.bounds();
  std::vector<DensityPiece> pieces;
  pieces.reserve(count);
  std::vector<int> idx(d, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rem = c;
    for (std::size_t i = 0; i < d; ++i) {
      idx[d - 1 - i] = static_cast<int>(rem % static_cast<std::size_t>(shape[d - 1 - i]));
      rem /= static_cast<std::size_t>(shape[d - 1 - i]);
    }
    std::vector<Interval> sides(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& s = omega.side(i);
      const double w = (s.hi - s.lo) / shape[i];
      sides[i] = Interval::half_open(s.lo + idx[i] * w,
                                     idx[i] + 1 == shape[i] ? s.hi : s.lo + (idx[i] + 1) * w);
    }
    pieces.push_back({Box(std::move(sides)), values[c]});
  }
  return FiniteMeasure(space, {}, std::move(pieces));
}

void require_within(const Space& space, const BorelSet& set) {
  if (set.empty()) return;
  if (set.dimension() != space.dimension())
    throw DomainMismatch("set dimension does not match the space");
  if (space.is_discrete()) {
    const auto& pts = space.points();
    auto member = [&](const Box& b) {
      for (std::size_t i = 0; i < b.dimension(); ++i) {
        const auto& s = b.side(i);
        if (s.lo != s.hi || !s.lo_closed || !s.hi_closed) return false;
      }
      return std::any_of(pts.begin(), pts.end(), [&](const Point& p) {
        for (std::size_t i = 0; i < p.size(); ++i)
          if (p[i] != b.side(i).lo) return false;
        return true;
      });
    };
    if (std::all_of(set.boxes().begin(), set.boxes().end(), member)) return;
  }
  if (!set.subset_of(BorelSet::whole(space)))
    throw DomainMismatch("set " + set.to_string() + " is not contained in the space");
}

double FiniteMeasure::atom_mass(const BorelSet& set) const {
  CompensatedSum s;
  for (const auto& a : atoms_)
    if (set.contains(a.point)) s += a.weight;
  return s.value();
}

double FiniteMeasure::evaluate(const BorelSet& set) const {
  require_within(space_, set);
  CompensatedSum s;
  for (const auto& a : atoms_)
    if (set.contains(a.point)) s += a.weight;
  for (const auto& p : density_) {
    for (const auto& b : set.boxes()) {
      const double v = Box::intersect(p.box, b).volume();
      if (v > 0.0) s += p.value * v;
    }
  }
  return s.value();
}

FiniteMeasure FiniteMeasure::scale(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw InvalidArgument("measures can only be scaled by finite c >= 0");
  auto atoms = atoms_;
  for (auto& a : atoms) a.weight *= c;
  auto density = density_;
  for (auto& p : density) p.value *= c;
  return FiniteMeasure(space_, std::move(atoms), std::move(density));
}

FiniteMeasure FiniteMeasure::add(const FiniteMeasure& other) const {
  if (!(space_ == other.space_)) throw DomainMismatch("cannot add measures on different spaces");
  auto atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  auto density = density_;
  density.insert(density.end(), other.density_.begin(), other.density_.end());
  return FiniteMeasure(space_, std::move(atoms), std::move(density));
}

FiniteMeasure FiniteMeasure::restrict(const BorelSet& set) const {
  require_within(space_, set);
  std::vector<Atom> atoms;
  for (const auto& a : atoms_)
    if (set.contains(a.point)) atoms.push_back(a);
  std::vector<DensityPiece> density;
  for (const auto& p : density_) {
    for (const auto& b : set.boxes()) {
      Box c = Box::intersect(p.box, b);
      if (c.volume() > 0.0) density.push_back({c, p.value});
    }
  }
  return FiniteMeasure(space_, std::move(atoms), std::move(density));
}

std::vector<Point> FiniteMeasure::atom_points() const {
  std::vector<Point> pts;
  for (const auto& a : atoms_)
    if (a.weight > 0.0) pts.push_back(a.point);
  return pts;
}

DominationResult dominates(const FiniteMeasure& big, const FiniteMeasure& small,
                           const std::vector<LabeledSet>& ring) {
  if (ring.empty()) throw InvalidArgument("domination test needs a nonempty ring");
  if (!(big.space() == small.space())) throw DomainMismatch("measures live on different spaces");
  const double tol = 1e-12 * std::max({1.0, big.total_mass(), small.total_mass()});
  DominationResult r;
  for (const auto& s : ring) {
    const double a = small.evaluate(s.set);
    const double b = big.evaluate(s.set);
    if (a > b + tol) {
      r.dominated = false;
      r.witness = s.label;
      r.small_mass = a;
      r.big_mass = b;
      return r;
    }
  }
  return r;
}

MeasureSequence::MeasureSequence(Space space, Generator gen, int n_max,
                                 std::vector<std::string> tags)
    : space_(std::move(space)),
      gen_(std::move(gen)),
      n_max_(n_max),
      tags_(std::move(tags)),
      cache_(std::make_shared<Cache>()) {
  if (n_max_ < 1) throw InvalidArgument("sequence index range must be [1, n_max] with n_max >= 1");
  cache_->items.resize(static_cast<std::size_t>(n_max_));
}

MeasureSequence MeasureSequence::constant(const FiniteMeasure& m, int n_max) {
  return MeasureSequence(
      m.space(), [m](int) { return m; }, n_max, {"constant"});
}

const FiniteMeasure& MeasureSequence::at(int n) const {
  if (n < 1 || n > n_max_)
    throw InvalidArgument("index " + std::to_string(n) + " outside [1, " +
                          std::to_string(n_max_) + "]");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& slot = cache_->items[static_cast<std::size_t>(n - 1)];
  if (!slot) {
    auto m = std::make_unique<FiniteMeasure>(gen_(n));
    if (!(m->space() == space_))
      throw DomainMismatch("sequence member " + std::to_string(n) + " lives on another space");
    slot = std::move(m);
  }
  return *slot;
}

MeasureSequence MeasureSequence::with_n_max(int n_max) const {
  return MeasureSequence(space_, gen_, n_max, tags_);
}

}  // namespace measlab
