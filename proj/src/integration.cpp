#include "measlab/integration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "measlab/error.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

namespace {

double eval_at(const ScalarFn& f, const Point& p) {
  try {
    return f(p);
  } catch (const IntegrabilityFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError("function evaluation failed at " + format_point(p) + ": " + e.what());
  }
}

void require_finite(double v, const Point& p) {
  if (!std::isfinite(v))
    throw IntegrabilityFailure("non-finite integrand value " + format_number(v) + " at " +
                               format_point(p) + " on a region of positive mass");
}

std::vector<Box> split_at_breaks(const Box& cell, const std::vector<std::vector<double>>& breaks) {
  std::vector<Box> out{cell};
  for (std::size_t i = 0; i < cell.dimension() && i < breaks.size(); ++i) {
    std::vector<Box> next;
    for (const auto& b : out) {
      const auto& s = b.side(i);
      std::vector<double> cuts{s.lo};
      for (double c : breaks[i])
        if (c > s.lo && c < s.hi) cuts.push_back(c);
      cuts.push_back(s.hi);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Box piece = b;
        piece.side(i) = Interval::half_open(cuts[k], cuts[k + 1]);
        next.push_back(std::move(piece));
      }
    }
    out = std::move(next);
  }
  return out;
}

int effective_depth(const QuadratureConfig& q, std::size_t dim) {
  const int cap = std::max(2, q.max_points_log2 / static_cast<int>(std::max<std::size_t>(dim, 1)));
  return std::max(2, std::min(q.depth, cap));
}

struct LevelSum {
  double value = 0.0;
  double abs = 0.0;
};

/// Walks the 2^level lattice of `box`, calling visit(cell) for each cell.
void for_each_cell(const Box& box, int level, const std::function<void(const Box&)>& visit) {
  const std::size_t d = box.dimension();
  const long n = 1L << level;
  std::vector<long> idx(d, 0);
  std::vector<Interval> sides(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) {
      const auto& s = box.side(i);
      const double w = (s.hi - s.lo) / static_cast<double>(n);
      const double lo = s.lo + w * static_cast<double>(idx[i]);
      const double hi = idx[i] + 1 == n ? s.hi : s.lo + w * static_cast<double>(idx[i] + 1);
      sides[i] = Interval::half_open(lo, hi);
    }
    visit(Box(sides));
    std::size_t k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
}

Point center(const Box& b) {
  Point c(b.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (b.side(i).lo + b.side(i).hi);
  return c;
}

using CellRule = std::function<LevelSum(const Box& piece, int level)>;

LevelSum midpoint_rule(const ScalarFn& g, const Box& piece, int level) {
  CompensatedSum s, a;
  for_each_cell(piece, level, [&](const Box& cell) {
    const Point c = center(cell);
    const double v = eval_at(g, c);
    require_finite(v, c);
    const double vol = cell.volume();
    s += v * vol;
    a += std::abs(v) * vol;
  });
  return {s.value(), a.value()};
}

/// Certified per-piece error for the midpoint rule, or nullopt.
std::optional<double> certified_bound(const FnTraits& t, const Box& piece, int level) {
  const std::size_t d = piece.dimension();
  const double n = std::ldexp(1.0, level);
  double hmax = 0.0, hsq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double h = piece.side(i).length() / n;
    hmax = std::max(hmax, h);
    hsq += h * h;
  }
  const double vol = piece.volume();
  std::optional<double> best;
  if (t.lipschitz) best = vol * *t.lipschitz * hmax / 2.0;
  if (t.curvature && d == 1) {
    const double c = vol * *t.curvature * hsq / 24.0;
    best = best ? std::min(*best, c) : c;
  }
  return best;
}

struct Job {
  Box box;
  double weight;
};

IntegralResult drive(const ScalarFn& g, const FiniteMeasure& m, const std::vector<Job>& jobs,
                     const std::vector<Point>& atoms_in, const CellRule& rule, bool try_certify,
                     const QuadratureConfig& q) {
  IntegralResult r;
  CompensatedSum total, abs_total, err;
  for (const auto& a : m.atoms()) {
    if (!std::binary_search(atoms_in.begin(), atoms_in.end(), a.point)) continue;
    const double v = eval_at(g, a.point);
    require_finite(v, a.point);
    total += a.weight * v;
    abs_total += a.weight * std::abs(v);
  }
  const std::size_t d = m.space().dimension();
  const int depth = effective_depth(q, d);
  for (const auto& job : jobs) {
    for (const auto& piece : split_at_breaks(job.box, g.traits().breaks)) {
      if (piece.volume() <= 0.0) continue;
      const LevelSum q0 = rule(piece, depth);
      total += job.weight * q0.value;
      abs_total += job.weight * q0.abs;
      std::optional<double> cert;
      if (try_certify) cert = certified_bound(g.traits(), piece, depth);
      if (cert) {
        err += job.weight * *cert;
        continue;
      }
      r.certified = false;
      const double v1 = rule(piece, depth - 1).value;
      const double v2 = rule(piece, depth - 2).value;
      const double d1 = std::abs(q0.value - v1) * job.weight;
      const double d2 = std::abs(v1 - v2) * job.weight;
      const double floor = 64.0 * kEps * job.weight * q0.abs;
      if (d1 <= floor) {
        err += floor;
      } else {
        const double ratio = d2 / d1;
        if (ratio >= 1.2) {
          err += d1 * std::max(1.0, 2.0 / (ratio - 1.0));
        } else {
          r.converged = false;
          err += kInf;
        }
      }
    }
  }
  r.value = total.value();
  r.error = err.value() + 16.0 * kEps * abs_total.value();
  if (!r.converged) r.error = kInf;
  return r;
}

/// Density jobs for ∫_A: each density piece intersected with each box of A.
std::vector<Job> density_jobs(const FiniteMeasure& m, const BorelSet& A) {
  std::vector<Job> jobs;
  for (const auto& p : m.density())
    for (const auto& b : A.boxes()) {
      Box c = Box::intersect(p.box, b);
      if (c.volume() > 0.0) jobs.push_back({std::move(c), p.value});
    }
  return jobs;
}

std::vector<Point> atoms_inside(const FiniteMeasure& m, const BorelSet& A) {
  std::vector<Point> pts;
  for (const auto& a : m.atoms())
    if (A.contains(a.point)) pts.push_back(a.point);
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<std::size_t> atoms_in(const FiniteMeasure& m, const BorelSet& A) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m.atoms().size(); ++i)
    if (A.contains(m.atoms()[i].point)) idx.push_back(i);
  return idx;
}

/// Purely atomic measures need no quadrature: one pass over the atoms of A.
IntegralResult atomic_sum(const ScalarFn& g, const FiniteMeasure& m, const std::vector<std::size_t>& in,
                          bool absolute) {
  CompensatedSum total, abs_total;
  for (std::size_t i : in) {
    const Atom& a = m.atoms()[i];
    double v = eval_at(g, a.point);
    require_finite(v, a.point);
    if (absolute) v = std::abs(v);
    total += a.weight * v;
    abs_total += a.weight * std::abs(v);
  }
  IntegralResult r;
  r.value = total.value();
  r.error = 16.0 * kEps * abs_total.value();
  return r;
}

IntegralResult integrate_impl(const ScalarFn& f, const FiniteMeasure& m, const BorelSet& A,
                              const QuadratureConfig& q, bool absolute) {
  require_within(m.space(), A);
  if (m.density().empty()) return atomic_sum(f, m, atoms_in(m, A), absolute);
  const ScalarFn g = absolute ? fn::abs(f) : f;
  const CellRule rule = [&g](const Box& piece, int level) { return midpoint_rule(g, piece, level); };
  return drive(g, m, density_jobs(m, A), atoms_inside(m, A), rule, true, q);
}

/// Integrates h·1{|f| > alpha}, resolving the boundary of the superlevel set
/// by recursive splitting of cells whose samples disagree.
IntegralResult superlevel_impl(const ScalarFn& f, const FiniteMeasure& m, double alpha,
                               bool mass_only, const QuadratureConfig& q) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive and finite");
  const std::size_t d = m.space().dimension();
  const int cap = std::max(effective_depth(q, d),
                           q.superlevel_depth_cap / static_cast<int>(std::max<std::size_t>(d, 1)));
  auto above = [&](const Point& p, double& weight_out) {
    const double v = std::abs(eval_at(f, p));
    if (std::isnan(v)) require_finite(v, p);
    const bool hit = v > alpha;
    weight_out = hit ? (mass_only ? 1.0 : v) : 0.0;
    return hit;
  };
  ScalarFn g = fn::from_lambda(
      [&](const Point& p) {
        double w;
        above(p, w);
        return w;
      },
      FnTraits{FnClass::Measurable, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
               f.traits().breaks},
      "superlevel");

  // Offsets 1/4, 1/2, 3/4 per axis.
  std::vector<std::vector<int>> lattice;
  {
    std::vector<int> idx(d, 0);
    while (true) {
      lattice.push_back(idx);
      std::size_t k = 0;
      while (k < d && ++idx[k] == 3) idx[k++] = 0;
      if (k == d) break;
    }
  }

  std::function<void(const Box&, int, double, CompensatedSum&, CompensatedSum&)> resolve;
  resolve = [&](const Box& cell, int level, double weight, CompensatedSum& s, CompensatedSum& a) {
    int hits = 0;
    double sample_sum = 0.0, center_w = 0.0;
    Point p(d);
    for (const auto& idx : lattice) {
      bool is_center = true;
      for (std::size_t i = 0; i < d; ++i) {
        const auto& side = cell.side(i);
        p[i] = side.lo + (side.hi - side.lo) * (idx[i] + 1) / 4.0;
        is_center = is_center && idx[i] == 1;
      }
      double w;
      if (above(p, w)) {
        ++hits;
        if (!std::isfinite(w)) require_finite(w, p);
      }
      sample_sum += w;
      if (is_center) center_w = w;
    }
    const double vol = cell.volume();
    const int total = static_cast<int>(lattice.size());
    if (hits == 0) return;
    if (hits == total) {
      s += center_w * vol;
      a += center_w * vol;
      return;
    }
    if (level >= cap || weight * vol < q.tolerance) {
      s += sample_sum / total * vol;
      a += sample_sum / total * vol;
      return;
    }
    for_each_cell(cell, 1, [&](const Box& child) { resolve(child, level + 1, weight, s, a); });
  };

  // The weight is folded in by drive(); cell mass for the stopping rule uses
  // the largest density value as a conservative proxy.
  double wmax = 0.0;
  for (const auto& p : m.density()) wmax = std::max(wmax, p.value);
  const CellRule rule = [&](const Box& piece, int level) {
    CompensatedSum s, a;
    for_each_cell(piece, level, [&](const Box& cell) { resolve(cell, level, wmax, s, a); });
    return LevelSum{s.value(), a.value()};
  };
  const BorelSet omega = BorelSet::whole(m.space());
  return drive(g, m, density_jobs(m, omega), atoms_inside(m, omega), rule, false, q);
}

}  // namespace

IntegralResult integrate(const ScalarFn& f, const FiniteMeasure& m, const BorelSet& A,
                         const QuadratureConfig& q) {
  return integrate_impl(f, m, A, q, false);
}

IntegralResult integrate(const ScalarFn& f, const FiniteMeasure& m, const QuadratureConfig& q) {
  return integrate_impl(f, m, BorelSet::whole(m.space()), q, false);
}

IntegralResult integrate_abs(const ScalarFn& f, const FiniteMeasure& m, const BorelSet& A,
                             const QuadratureConfig& q) {
  return integrate_impl(f, m, A, q, true);
}

IntegralResult integrate_abs(const ScalarFn& f, const FiniteMeasure& m, const QuadratureConfig& q) {
  return integrate_impl(f, m, BorelSet::whole(m.space()), q, true);
}

std::vector<IntegralResult> integrate_many(const std::vector<ScalarFn>& fs, const FiniteMeasure& m,
                                           const BorelSet& A, bool absolute, const QuadratureConfig& q) {
  std::vector<IntegralResult> out;
  out.reserve(fs.size());
  if (!m.density().empty()) {
    for (const auto& f : fs) out.push_back(integrate_impl(f, m, A, q, absolute));
    return out;
  }
  require_within(m.space(), A);
  const std::vector<std::size_t> in = atoms_in(m, A);
  for (const auto& f : fs) out.push_back(atomic_sum(f, m, in, absolute));
  return out;
}

IntegralResult superlevel_integral(const ScalarFn& f, const FiniteMeasure& m, double alpha,
                                   const QuadratureConfig& q) {
  return superlevel_impl(f, m, alpha, false, q);
}

IntegralResult superlevel_mass(const ScalarFn& f, const FiniteMeasure& m, double alpha,
                               const QuadratureConfig& q) {
  return superlevel_impl(f, m, alpha, true, q);
}

L1Report l1_surrogate(const ScalarFn& f, const FiniteMeasure& m, const QuadratureConfig& q) {
  L1Report rep;
  try {
    const IntegralResult r = integrate_abs(f, m, q);
    rep.value = r.value;
    rep.error = r.error;
    rep.integrable = std::isfinite(r.value) && r.converged && std::isfinite(r.error);
    if (!rep.integrable) rep.note = "refinements of the integral of |f| do not settle";
  } catch (const IntegrabilityFailure& e) {
    rep.integrable = false;
    rep.value = kInf;
    rep.error = kInf;
    rep.note = e.what();
  }
  return rep;
}

std::optional<double> sup_on(const ScalarFn& f, const Space& space, const QuadratureConfig& q) {
  const auto& t = f.traits();
  if (t.sup_bound) return *t.sup_bound;
  if (space.is_discrete()) {
    double mx = 0.0;
    for (const auto& p : space.points()) {
      const double v = std::abs(eval_at(f, p));
      if (!std::isfinite(v)) return std::nullopt;
      mx = std::max(mx, v);
    }
    return mx;
  }
  const Box& omega = space.bounds();
  const auto& recipe = f.recipe();
  if (recipe.value("type", "") == "affine") {
    const auto coef = recipe.at("coef").get<std::vector<double>>();
    double hi = recipe.at("offset").get<double>(), lo = hi;
    for (std::size_t i = 0; i < coef.size() && i < omega.dimension(); ++i) {
      const double a = coef[i] * omega.side(i).lo, b = coef[i] * omega.side(i).hi;
      hi += std::max(a, b);
      lo += std::min(a, b);
    }
    return std::max(std::abs(hi), std::abs(lo));
  }
  if (!is_continuous(t.cls) || !t.lipschitz) return std::nullopt;
  const int depth = effective_depth(q, omega.dimension());
  double mx = 0.0, hmax = 0.0;
  for (const auto& piece : split_at_breaks(omega, t.breaks)) {
    for_each_cell(piece, depth, [&](const Box& cell) {
      mx = std::max(mx, std::abs(eval_at(f, center(cell))));
      for (std::size_t i = 0; i < cell.dimension(); ++i) hmax = std::max(hmax, cell.side(i).length());
    });
  }
  if (!std::isfinite(mx)) return std::nullopt;
  return mx + *t.lipschitz * hmax / 2.0;
}

}  // namespace measlab
