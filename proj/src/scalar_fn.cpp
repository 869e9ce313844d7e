#include "measlab/scalar_fn.hpp"

#include <algorithm>
#include <cmath>

#include "measlab/error.hpp"
#include "measlab/json_io.hpp"

namespace measlab {

using nlohmann::json;

std::string to_string(FnClass c) {
  switch (c) {
    case FnClass::Cc: return "C_c";
    case FnClass::C0: return "C_0";
    case FnClass::Cb: return "C_b";
    case FnClass::C: return "C";
    case FnClass::Measurable: return "measurable";
  }
  return "measurable";
}

FnClass parse_fn_class(const std::string& s) {
  if (s == "C_c" || s == "Cc") return FnClass::Cc;
  if (s == "C_0" || s == "C0") return FnClass::C0;
  if (s == "C_b" || s == "Cb") return FnClass::Cb;
  if (s == "C") return FnClass::C;
  if (s == "measurable") return FnClass::Measurable;
  throw InvalidArgument("unknown function class '" + s + "'");
}

ScalarFn::ScalarFn() {
  static const auto empty = std::make_shared<const State>();
  state_ = empty;
}

ScalarFn::ScalarFn(Evaluator eval, FnTraits traits, json recipe) {
  if (traits.cls == FnClass::Cc && !traits.support)
    throw InvalidArgument("a C_c function needs a declared support box");
  state_ = std::make_shared<const State>(State{std::move(eval), std::move(traits), std::move(recipe)});
}

std::string ScalarFn::label() const { return state_->recipe.dump(); }

namespace {

using Breaks = std::vector<std::vector<double>>;

Breaks merge_breaks(const Breaks& a, const Breaks& b) {
  Breaks out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i].insert(out[i].end(), a[i].begin(), a[i].end());
    if (i < b.size()) out[i].insert(out[i].end(), b[i].begin(), b[i].end());
    std::sort(out[i].begin(), out[i].end());
    out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
  }
  return out;
}

Box closure(const Box& b) {
  return Box::closed(b.lower(), b.upper());
}

Box hull(const Box& a, const Box& b) {
  Point lo = a.lower(), hi = a.upper();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(lo[i], b.side(i).lo);
    hi[i] = std::max(hi[i], b.side(i).hi);
  }
  return Box::closed(lo, hi);
}

std::optional<double> opt_add(std::optional<double> a, std::optional<double> b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

}  // namespace

namespace fn {

ScalarFn constant(double c) {
  FnTraits t;
  t.cls = FnClass::Cb;
  t.sup_bound = std::abs(c);
  t.lipschitz = 0.0;
  t.curvature = 0.0;
  return ScalarFn([c](const Point&) { return c; }, t, json{{"type", "const"}, {"value", c}});
}

ScalarFn affine(std::vector<double> coef, double offset) {
  FnTraits t;
  t.cls = FnClass::C;
  double l = 0.0;
  for (double c : coef) l += std::abs(c);
  t.lipschitz = l;
  t.curvature = 0.0;
  if (l == 0.0) {
    t.cls = FnClass::Cb;
    t.sup_bound = std::abs(offset);
  }
  json recipe{{"type", "affine"}, {"coef", coef}, {"offset", offset}};
  return ScalarFn(
      [coef = std::move(coef), offset](const Point& p) {
        if (p.size() != coef.size()) throw DomainMismatch("affine function evaluated in wrong dimension");
        double s = offset;
        for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * p[i];
        return s;
      },
      t, std::move(recipe));
}

ScalarFn coordinate(std::size_t axis, std::size_t dimension) {
  if (axis >= dimension) throw InvalidArgument("coordinate axis out of range");
  std::vector<double> coef(dimension, 0.0);
  coef[axis] = 1.0;
  return affine(std::move(coef), 0.0);
}

ScalarFn indicator(const Box& box, double value) {
  FnTraits t;
  t.cls = FnClass::Measurable;
  t.support = closure(box);
  t.sup_bound = std::abs(value);
  // Constant between breaks.
  t.lipschitz = 0.0;
  t.curvature = 0.0;
  t.breaks.resize(box.dimension());
  for (std::size_t i = 0; i < box.dimension(); ++i)
    t.breaks[i] = {box.side(i).lo, box.side(i).hi};
  return ScalarFn([box, value](const Point& p) { return box.contains(p) ? value : 0.0; }, t,
                  json{{"type", "indicator"}, {"box", to_json(box)}, {"value", value}});
}

ScalarFn power(std::size_t axis, double exponent, double scale) {
  if (!std::isfinite(exponent) || !std::isfinite(scale))
    throw InvalidArgument("power needs finite exponent and scale");
  FnTraits t;
  t.cls = exponent >= 0.0 ? FnClass::C : FnClass::Measurable;
  if (exponent == 0.0 || scale == 0.0) {
    t.cls = FnClass::Cb;
    t.sup_bound = std::abs(scale);
    t.lipschitz = 0.0;
    t.curvature = 0.0;
  } else if (exponent == 1.0) {
    t.lipschitz = std::abs(scale);
    t.curvature = 0.0;
  }
  t.breaks.resize(axis + 1);
  t.breaks[axis] = {0.0};
  return ScalarFn(
      [axis, exponent, scale](const Point& p) {
        if (axis >= p.size()) throw DomainMismatch("power function axis exceeds the point dimension");
        const double x = p[axis];
        if (x == 0.0 && exponent < 0.0) return std::numeric_limits<double>::infinity();
        return scale * std::pow(x, exponent);
      },
      t, json{{"type", "power"}, {"axis", axis}, {"exponent", exponent}, {"scale", scale}});
}

ScalarFn clipped_coordinate(std::size_t axis, double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("clipped coordinate needs lo < hi");
  FnTraits t;
  t.cls = FnClass::Cb;
  t.sup_bound = 1.0;
  t.lipschitz = 1.0 / (hi - lo);
  t.curvature = 0.0;
  t.breaks.resize(axis + 1);
  t.breaks[axis] = {lo, hi};
  return ScalarFn(
      [axis, lo, hi](const Point& p) {
        if (axis >= p.size()) throw DomainMismatch("clipped coordinate axis exceeds the point dimension");
        return std::clamp((p[axis] - lo) / (hi - lo), 0.0, 1.0);
      },
      t, json{{"type", "clip"}, {"axis", axis}, {"lo", lo}, {"hi", hi}});
}

ScalarFn sum(const std::vector<ScalarFn>& terms) {
  if (terms.empty()) return constant(0.0);
  if (terms.size() == 1) return terms.front();
  FnTraits t = terms.front().traits();
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const auto& u = terms[k].traits();
    const bool both_cc = t.cls == FnClass::Cc && u.cls == FnClass::Cc;
    if (both_cc)
      t.support = hull(*t.support, *u.support);
    else
      t.support.reset();
    t.cls = std::max(t.cls, u.cls);
    t.sup_bound = opt_add(t.sup_bound, u.sup_bound);
    t.lipschitz = opt_add(t.lipschitz, u.lipschitz);
    t.curvature = opt_add(t.curvature, u.curvature);
    t.breaks = merge_breaks(t.breaks, u.breaks);
  }
  json recipe{{"type", "sum"}, {"terms", json::array()}};
  for (const auto& f : terms) recipe["terms"].push_back(f.recipe());
  return ScalarFn(
      [terms](const Point& p) {
        double s = 0.0;
        for (const auto& f : terms) s += f(p);
        return s;
      },
      t, std::move(recipe));
}

ScalarFn product(const ScalarFn& a, const ScalarFn& b) {
  const auto& ta = a.traits();
  const auto& tb = b.traits();
  FnTraits t;
  const FnClass worst = std::max(ta.cls, tb.cls);
  if (ta.cls == FnClass::Cc && is_continuous(tb.cls)) {
    t.cls = FnClass::Cc;
    t.support = ta.support;
  } else if (tb.cls == FnClass::Cc && is_continuous(ta.cls)) {
    t.cls = FnClass::Cc;
    t.support = tb.support;
  } else if (worst <= FnClass::Cb) {
    t.cls = std::min(worst, std::min(ta.cls, tb.cls) == FnClass::C0 ? FnClass::C0 : worst);
  } else {
    t.cls = worst;
  }
  if (ta.cls == FnClass::Cc && tb.cls == FnClass::Cc)
    t.support = Box::intersect(*ta.support, *tb.support);
  if (ta.sup_bound && tb.sup_bound) t.sup_bound = *ta.sup_bound * *tb.sup_bound;
  if (ta.sup_bound && tb.sup_bound && ta.lipschitz && tb.lipschitz) {
    t.lipschitz = *ta.lipschitz * *tb.sup_bound + *tb.lipschitz * *ta.sup_bound;
    if (ta.curvature && tb.curvature)
      t.curvature = *ta.curvature * *tb.sup_bound + 2.0 * *ta.lipschitz * *tb.lipschitz +
                    *ta.sup_bound * *tb.curvature;
  }
  t.breaks = merge_breaks(ta.breaks, tb.breaks);
  return ScalarFn([a, b](const Point& p) { return a(p) * b(p); }, t,
                  json{{"type", "product"}, {"factors", {a.recipe(), b.recipe()}}});
}

ScalarFn scaled(const ScalarFn& a, double c) {
  if (!std::isfinite(c)) throw InvalidArgument("scale factor must be finite");
  FnTraits t = a.traits();
  const double k = std::abs(c);
  if (t.sup_bound) *t.sup_bound *= k;
  if (t.lipschitz) *t.lipschitz *= k;
  if (t.curvature) *t.curvature *= k;
  return ScalarFn([a, c](const Point& p) { return c * a(p); }, t,
                  json{{"type", "scale"}, {"factor", c}, {"arg", a.recipe()}});
}

ScalarFn abs(const ScalarFn& a) {
  FnTraits t = a.traits();
  t.curvature.reset();
  return ScalarFn([a](const Point& p) { return std::abs(a(p)); }, t,
                  json{{"type", "abs"}, {"arg", a.recipe()}});
}

ScalarFn from_lambda(ScalarFn::Evaluator eval, FnTraits traits, const std::string& label) {
  return ScalarFn(std::move(eval), std::move(traits), json{{"type", "opaque"}, {"label", label}});
}

}  // namespace fn

ScalarFn pos_part(const ScalarFn& f) {
  FnTraits t = f.traits();
  t.curvature.reset();
  return ScalarFn([f](const Point& p) { return std::max(f(p), 0.0); }, t,
                  json{{"type", "pos_part"}, {"arg", f.recipe()}});
}

ScalarFn neg_part(const ScalarFn& f) {
  FnTraits t = f.traits();
  t.curvature.reset();
  return ScalarFn([f](const Point& p) { return std::max(-f(p), 0.0); }, t,
                  json{{"type", "neg_part"}, {"arg", f.recipe()}});
}

}  // namespace measlab
