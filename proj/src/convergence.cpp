#include "measlab/convergence.hpp"

#include "measlab/detail/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "measlab/error.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

namespace detail {

/// One trend decision on the largest error over members per index, overridden
/// to REFUTED by any member with a settled positive plateau. The witness is
/// the member with the largest final-window mean.
Verdict aggregate(const std::string& check, const Series& s, const std::string& kind,
                  const TrendConfig& tc) {
  Verdict v;
  v.check = check;
  if (s.err.empty()) {
    v.status = Status::Supported;
    v.basis = "no members";
    return v;
  }
  const std::size_t n = s.err.front().size();
  v.trend.assign(n, 0.0);
  for (const auto& e : s.err)
    for (std::size_t i = 0; i < n; ++i) v.trend[i] = std::max(v.trend[i], e[i]);
  apply_trend(v, tc);
  // The envelope can extrapolate to 0 over a member that has settled on a
  // positive plateau; such a member refutes on its own.
  std::size_t best = s.err.size();
  double best_mean = -1.0;
  for (std::size_t k = 0; k < s.err.size(); ++k) {
    const TrendResult t = classify_trend(s.err[k], tc);
    if (t.status == Status::Refuted && t.nonincreasing && t.final_mean > best_mean) {
      best_mean = t.final_mean;
      best = k;
    }
  }
  if (v.status != Status::Refuted && best < s.err.size()) {
    v.status = Status::Refuted;
    v.basis = "stabilized member";
  }
  if (v.status == Status::Refuted) {
    if (best == s.err.size()) {
      const std::size_t w = std::max<std::size_t>(1, n / static_cast<std::size_t>(tc.window_divisor));
      for (std::size_t k = 0; k < s.err.size(); ++k) {
        CompensatedSum sum;
        for (std::size_t i = n - w; i < n; ++i) sum += s.err[k][i];
        const double mean = sum.value() / static_cast<double>(w);
        if (mean > best_mean) {
          best_mean = mean;
          best = k;
        }
      }
    }
    v.witness = Witness{kind, s.labels[best], static_cast<int>(n), s.val[best][n - 1], s.ref[best][n - 1]};
  }
  return v;
}

Verdict simple(const std::string& check, Status st, const std::string& note) {
  Verdict v;
  v.check = check;
  v.status = st;
  v.note = note;
  v.basis = "direct";
  return v;
}

Status combine_all(const std::vector<Status>& st) {
  bool any_inc = false;
  for (Status s : st) {
    if (s == Status::Refuted) return Status::Refuted;
    if (s == Status::Inconclusive) any_inc = true;
  }
  return any_inc ? Status::Inconclusive : Status::Supported;
}

std::string not_applicable(const std::vector<const Verdict*>& hyps) {
  std::string failed;
  for (const auto* h : hyps) {
    if (h->status == Status::Supported) continue;
    if (!failed.empty()) failed += ", ";
    failed += h->check + " " + to_string(h->status);
  }
  return failed.empty() ? "" : "not applicable: " + failed;
}

/// Wraps a conclusion verdict behind a hypothesis battery.
Verdict gated(const std::string& check, std::vector<Verdict> hyps, std::vector<Verdict> conclusions) {
  Verdict v;
  v.check = check;
  std::vector<const Verdict*> hp;
  for (const auto& h : hyps) hp.push_back(&h);
  const std::string na = not_applicable(hp);
  std::vector<Status> cs;
  for (const auto& c : conclusions) cs.push_back(c.status);
  const Status concl = combine_all(cs);
  if (!conclusions.empty()) {
    v.trend = conclusions.front().trend;
    v.final_error = conclusions.front().final_error;
    for (const auto& c : conclusions)
      if (c.status == Status::Refuted && c.witness && !v.witness) v.witness = c.witness;
  }
  if (!na.empty()) {
    v.status = Status::Inconclusive;
    v.basis = "not applicable";
    v.note = na + "; conclusion computed anyway: " + to_string(concl);
    v.witness.reset();
  } else {
    v.status = concl;
    v.basis = "hypotheses hold";
    if (concl == Status::Refuted)
      v.note = "conclusion fails although every hypothesis holds: an implementation fault or a misreported hypothesis";
  }
  for (auto& h : hyps) v.sub.push_back(std::move(h));
  for (auto& c : conclusions) v.sub.push_back(std::move(c));
  return v;
}

std::vector<double> totals(const MeasureSequence& seq) {
  std::vector<double> t;
  for (int n = 1; n <= seq.n_max(); ++n) t.push_back(seq.at(n).total_mass());
  return t;
}

void require_same_space(const MeasureSequence& seq, const FiniteMeasure& m) {
  if (!(seq.space() == m.space())) throw DomainMismatch("sequence and limit measure live on different spaces");
}

Verdict family_check(const std::string& check, const MeasureSequence& seq, const FiniteMeasure& m,
                     const FunctionFamily& fam, const CheckConfig& cfg) {
  require_same_space(seq, m);
  Series s;
  s.labels = fam.labels;
  s.resize(fam.size(), seq.n_max());
  for (std::size_t k = 0; k < fam.size(); ++k) {
    const double ref = integrate(fam.members[k], m, cfg.quad).value;
    for (int n = 1; n <= seq.n_max(); ++n)
      s.set(k, n, integrate(fam.members[k], seq.at(n), cfg.quad).value, ref);
  }
  Verdict v = aggregate(check, s, "function", cfg.trend(mass_scale(seq, m)));
  v.note = std::to_string(fam.size()) + " test functions of class " + to_string(fam.cls) +
           " at resolution " + std::to_string(fam.resolution);
  return v;
}

/// Sets on which f_n has no declared breaks: products of consecutive break
/// coordinates inside Ω (at most `cap` cells).
std::vector<LabeledSet> break_cells(const ScalarFn& f, const Space& space, std::size_t cap) {
  std::vector<LabeledSet> out;
  if (!space.is_box()) return out;
  const Box& omega = space.bounds();
  const std::size_t d = omega.dimension();
  const auto& br = f.traits().breaks;
  std::vector<std::vector<double>> cuts(d);
  bool any = false;
  for (std::size_t i = 0; i < d; ++i) {
    cuts[i].push_back(omega.side(i).lo);
    if (i < br.size())
      for (double c : br[i])
        if (c > omega.side(i).lo && c < omega.side(i).hi) {
          cuts[i].push_back(c);
          any = true;
        }
    cuts[i].push_back(omega.side(i).hi);
    std::sort(cuts[i].begin(), cuts[i].end());
    cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
  }
  if (!any) return out;
  std::size_t count = 1;
  for (const auto& c : cuts) count *= c.size() - 1;
  if (count > cap) return out;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<Interval> sides(d);
    for (std::size_t i = 0; i < d; ++i) {
      const bool last = idx[i] + 2 == cuts[i].size();
      sides[i] = {cuts[i][idx[i]], cuts[i][idx[i] + 1], true, last};
    }
    BorelSet set = BorelSet::of(Box(sides)).intersect(BorelSet::whole(space));
    if (!set.empty()) out.push_back({set.to_string(), std::move(set)});
    std::size_t a = 0;
    while (a < d && ++idx[a] == cuts[a].size() - 1) idx[a++] = 0;
    if (a == d) break;
  }
  return out;
}

namespace {

/// A ring set present at every index whose effect stays >= eps over the
/// trend windows while its control and its control/effect ratio both vanish.
const Candidate* vanishing_set(const std::map<std::string, std::vector<const Candidate*>>& tracks, int n_max,
                               double eps, double scale, const CheckConfig& cfg) {
  const int w = std::max(1, n_max / cfg.window_divisor);
  const int tail_start = std::max(0, n_max - cfg.windows * w);
  const Candidate* best = nullptr;
  for (const auto& [label, track] : tracks) {
    if (std::find(track.begin(), track.end(), nullptr) != track.end()) continue;
    bool holds = true;
    for (int i = tail_start; i < n_max && holds; ++i) holds = track[static_cast<std::size_t>(i)]->effect >= eps;
    if (!holds) continue;
    std::vector<double> control, inv;
    double inv_cap = 0.0;
    for (const Candidate* c : track) {
      control.push_back(c->control);
      inv.push_back(c->effect > 0.0 ? c->control / c->effect : kInf);
      if (std::isfinite(inv.back())) inv_cap = std::max(inv_cap, inv.back());
    }
    for (double& r : inv) r = std::min(r, inv_cap);
    if (classify_trend(control, cfg.trend(scale)).status == Status::Supported &&
        classify_trend(inv, cfg.trend(inv_cap)).status == Status::Supported &&
        (!best || track.back()->control < best->control))
      best = track.back();
  }
  return best;
}

}  // namespace

UniformityReport uniformity(const std::string& check, int n_max,
                            const std::function<std::vector<Candidate>(int)>& candidates,
                            double scale, const CheckConfig& cfg) {
  UniformityReport rep;
  rep.check = check;
  std::vector<std::vector<Candidate>> per_n;
  for (int n = 1; n <= n_max; ++n) per_n.push_back(candidates(n));
  std::map<std::string, std::vector<const Candidate*>> tracks;
  for (int n = 1; n <= n_max; ++n)
    for (const auto& c : per_n[static_cast<std::size_t>(n - 1)]) {
      auto& t = tracks[c.label];
      t.resize(static_cast<std::size_t>(n_max), nullptr);
      t[static_cast<std::size_t>(n - 1)] = &c;
    }
  const double cap = 2.0 * scale + 1.0;
  const double zero = cfg.zero_tol * scale;
  for (double eps : cfg.eps_grid) {
    UniformityRow row;
    row.eps = eps;
    std::vector<double> delta_star;
    // Smallest control/effect among sets reaching eps: 1/R_n with R_n the
    // largest mass ratio. A bounded R_n keeps delta above eps/R.
    std::vector<double> inv_ratio;
    std::vector<const Candidate*> argmin;
    int zero_hit = 0;
    for (int n = 1; n <= n_max; ++n) {
      const Candidate* best = nullptr;
      double inv = kInf;
      for (const auto& c : per_n[static_cast<std::size_t>(n - 1)]) {
        if (!(c.effect >= eps)) continue;
        inv = std::min(inv, c.control / c.effect);
        if (!best || c.control < best->control ||
            (c.control == best->control && c.volume < best->volume))
          best = &c;
      }
      inv_ratio.push_back(inv);
      delta_star.push_back(best ? best->control : kInf);
      argmin.push_back(best);
      if (best && best->control <= zero && zero_hit == 0) zero_hit = n;
    }
    double dmin = kInf;
    for (double d : delta_star) dmin = std::min(dmin, d);
    if (zero_hit > 0) {
      const Candidate* c = argmin[static_cast<std::size_t>(zero_hit - 1)];
      row.status = Status::Refuted;
      row.delta = 0.0;
      row.witness = Witness{"set", c->label, zero_hit, c->effect, c->control};
      row.note = "a null set carries mass at least eps";
    } else if (const Candidate* c = vanishing_set(tracks, n_max, eps, scale, cfg)) {
      row.status = Status::Refuted;
      row.delta = 0.0;
      row.witness = Witness{"set", c->label, n_max, c->effect, c->control};
      row.note = "a fixed set keeps its integral at eps while its mass vanishes";
    } else {
      std::vector<double> capped;
      for (double d : delta_star) capped.push_back(std::min(d, cap));
      const TrendResult t = classify_trend(capped, cfg.trend(scale));
      Status ratio = Status::Supported;
      if (t.status == Status::Supported) {
        double inv_cap = 0.0;
        for (double r : inv_ratio)
          if (std::isfinite(r)) inv_cap = std::max(inv_cap, r);
        std::vector<double> inv;
        for (double r : inv_ratio) inv.push_back(std::min(r, inv_cap));
        ratio = classify_trend(inv, cfg.trend(inv_cap)).status;
      }
      if (t.status == Status::Supported && ratio == Status::Refuted) {
        row.status = Status::Supported;
        row.delta = dmin;
        row.note = "mass ratio on sets reaching eps stays bounded";
      } else if (t.status == Status::Supported && ratio != Status::Supported) {
        row.status = Status::Inconclusive;
        row.delta = dmin;
        row.note = "admissible delta shrinks along n, mass ratio unsettled";
      } else if (t.status == Status::Supported) {
        const Candidate* c = argmin.back();
        row.status = Status::Refuted;
        row.delta = 0.0;
        if (c) row.witness = Witness{"set", c->label, n_max, c->effect, c->control};
        row.note = "admissible delta shrinks to 0 along n";
      } else if (t.status == Status::Refuted) {
        row.status = Status::Supported;
        row.delta = dmin;
      } else {
        row.status = Status::Inconclusive;
        row.delta = dmin;
        row.note = t.basis;
      }
    }
    rep.rows.push_back(std::move(row));
  }
  std::vector<Status> st;
  for (const auto& r : rep.rows) st.push_back(r.status);
  rep.overall = combine_all(st);
  return rep;
}

std::vector<Point> sorted_unique(std::vector<Point> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

Verdict bounded_verdict(const std::string& check, std::vector<double> values, const TrendConfig& tc) {
  Verdict v;
  v.check = check;
  v.trend = std::move(values);
  v.final_error = v.trend.empty() ? 0.0 : v.trend.back();
  const bool ok = looks_bounded(v.trend, tc);
  v.status = ok ? Status::Supported : Status::Refuted;
  v.basis = "boundedness of the tail";
  if (!ok)
    v.witness = Witness{"index", "sup grows without settling", static_cast<int>(v.trend.size()),
                        v.final_error, 0.0};
  return v;
}

double integral_scale(const FunctionSequence& fseq, const MeasureSequence& seq, const CheckConfig& cfg) {
  double s = 0.0;
  for (int n = 1; n <= seq.n_max(); ++n) {
    const double v = integrate_abs(fseq.at(n), seq.at(n), cfg.quad).value;
    if (std::isfinite(v)) s = std::max(s, v);
  }
  return s > 0.0 ? s : 1.0;
}

void require_ranges(const FunctionSequence& fseq, const MeasureSequence& seq) {
  if (fseq.n_max() != seq.n_max())
    throw InvalidArgument("function and measure sequences must share the index range");
}

/// ∫_A f_n dm_n against ∫_A f dm on each labeled set.
Series integral_series(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                       const FiniteMeasure& m, const std::vector<LabeledSet>& sets,
                       const CheckConfig& cfg) {
  Series s;
  for (const auto& a : sets) s.labels.push_back(a.label);
  s.resize(sets.size(), seq.n_max());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const double ref = integrate(f, m, sets[k].set, cfg.quad).value;
    for (int n = 1; n <= seq.n_max(); ++n)
      s.set(k, n, integrate(fseq.at(n), seq.at(n), sets[k].set, cfg.quad).value, ref);
  }
  return s;
}

}  // namespace detail

namespace {

using namespace detail;

Verdict vitali_impl(const std::string& check, const FunctionSequence& fseq, const ScalarFn& f,
                    const MeasureSequence& seq, const FiniteMeasure& m,
                    const std::vector<LabeledSet>& ring, bool bounded_limit, const CheckConfig& cfg) {
  require_same_space(seq, m);
  require_ranges(fseq, seq);
  const int N = seq.n_max();
  const Space& space = m.space();
  std::vector<Verdict> hyps;

  // Pointwise convergence on the m-a.e. sample.
  {
    const auto pts = ae_sample_points(m);
    Series s;
    s.labels.push_back("sample of " + std::to_string(pts.size()) + " points");
    s.resize(1, N);
    double sc = 1.0;
    std::vector<double> fx;
    for (const auto& p : pts) {
      fx.push_back(f(p));
      if (std::isfinite(fx.back())) sc = std::max(sc, std::abs(fx.back()));
    }
    for (int n = 1; n <= N; ++n) {
      double e = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = std::abs(fseq.at(n)(pts[i]) - fx[i]);
        e = std::isnan(d) ? d : std::max(e, d);
        if (std::isnan(e)) break;
      }
      s.set(0, n, e, 0.0, e);
    }
    Verdict v = aggregate("pointwise_ae", s, "index", cfg.trend(sc));
    v.note = "sup over the a.e. sample of |f_n - f|";
    hyps.push_back(std::move(v));
  }

  // Regularity of the limit.
  {
    const auto probe = probe_continuity(f, space, 256, cfg.seed);
    const bool declared = is_continuous(f.cls());
    Verdict v = simple("limit_continuous", declared && probe.continuous ? Status::Supported : Status::Refuted,
                       "declared class " + to_string(f.cls()));
    if (!declared) v.witness = Witness{"function", "declared class " + to_string(f.cls()), 0, 0.0, 0.0};
    if (declared && !probe.continuous)
      v.witness = Witness{"function", "jump near " + format_point(probe.where), 0, probe.jump, 0.0};
    hyps.push_back(std::move(v));
  }
  std::optional<double> bound;
  if (bounded_limit) {
    bound = sup_on(f, space, cfg.quad);
    Verdict v = simple("limit_bounded", bound ? Status::Supported : Status::Refuted,
                       bound ? "sup |f| <= " + format_number(*bound) : "no sup bound could be established");
    if (!bound) v.witness = Witness{"function", f.label(), 0, 0.0, 0.0};
    hyps.push_back(std::move(v));
  }

  hyps.push_back(uac_integrals(fseq, seq, ring, cfg).as_verdict());
  hyps.back().check = "uac_integrals_fn";
  if (bounded_limit && bound) {
    Verdict v = simple("uac_integrals_f", Status::Supported,
                       "discharged by the bound M = " + format_number(*bound) + ": delta(eps / M) works");
    hyps.push_back(std::move(v));
  } else {
    const FunctionSequence fconst = FunctionSequence::constant(f, N);
    hyps.push_back(uac_integrals(fconst, seq, ring, cfg).as_verdict());
    hyps.back().check = "uac_integrals_f";
  }
  hyps.push_back(vague_check(seq, m, cfg));
  hyps.push_back(uniform_abs_continuity(seq, m, ring, cfg).as_verdict());

  const double scale = std::max(integral_scale(fseq, seq, cfg), mass_scale(seq, m));
  const TrendConfig tc = cfg.trend(scale);
  std::vector<Verdict> concl;

  // Boundedness of ∫|f| dm_n and the Ω-level limit.
  {
    std::vector<double> s;
    for (int n = 1; n <= N; ++n) s.push_back(integrate_abs(f, seq.at(n), cfg.quad).value);
    concl.push_back(bounded_verdict("p1_sup_bounded", std::move(s), tc));
  }
  const LabeledSet omega{"Ω", BorelSet::whole(space)};
  {
    Series s;
    s.labels.push_back(omega.label);
    s.resize(1, N);
    const double ref = integrate(f, m, cfg.quad).value;
    for (int n = 1; n <= N; ++n) s.set(0, n, integrate(f, seq.at(n), cfg.quad).value, ref);
    Verdict v = aggregate("p2_omega_limit", s, "set", tc);
    const L1Report l1 = l1_surrogate(f, m, cfg.quad);
    v.note = l1.integrable ? "f in L1(m) (numerical surrogate): integral of |f| = " + format_number(l1.value)
                           : "f not certified in L1(m): " + l1.note;
    if (!l1.integrable) {
      v.status = Status::Refuted;
      v.witness = Witness{"function", f.label(), 0, l1.value, 0.0};
    }
    concl.push_back(std::move(v));
  }

  const Series s1 = integral_series(fseq, f, seq, m, {omega}, cfg);
  const Series s2 = integral_series(fseq, f, seq, m, closed_dyadic_cells(space, cfg.resolution), cfg);
  const Series s3 = integral_series(fseq, f, seq, m, ring, cfg);
  Series all = s1;
  for (const Series* part : {&s2, &s3}) {
    all.labels.insert(all.labels.end(), part->labels.begin(), part->labels.end());
    all.err.insert(all.err.end(), part->err.begin(), part->err.end());
    all.val.insert(all.val.end(), part->val.begin(), part->val.end());
    all.ref.insert(all.ref.end(), part->ref.begin(), part->ref.end());
  }
  Verdict limit = aggregate("limit_all_sets", all, "set", tc);
  limit.note = std::to_string(all.labels.size()) + " sets: Ω, closed dyadic cells, ring";
  concl.insert(concl.begin(), std::move(limit));
  concl.push_back(aggregate("step1_omega", s1, "set", tc));
  concl.push_back(aggregate("step2_compact", s2, "set", tc));
  concl.push_back(aggregate("step3_ring", s3, "set", tc));
  return gated(check, std::move(hyps), std::move(concl));
}

}  // namespace

using namespace detail;

nlohmann::json UniformityReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"eps", r.eps}, {"status", to_string(r.status)},
                     {"delta", std::isfinite(r.delta) ? nlohmann::json(r.delta) : nlohmann::json("inf")},
                     {"witness", r.witness ? r.witness->to_string() : ""}};
    if (!r.note.empty()) j["note"] = r.note;
    rows_json.push_back(std::move(j));
  }
  return {{"check", check}, {"overall", to_string(overall)}, {"ring_relative", ring_relative},
          {"rows", rows_json}};
}

Verdict UniformityReport::as_verdict() const {
  Verdict v;
  v.check = check;
  v.status = overall;
  v.basis = "ring-relative (eps, delta) table";
  double dmin = kInf;
  for (const auto& r : rows) {
    v.trend.push_back(r.delta);
    dmin = std::min(dmin, r.delta);
    if (r.status == Status::Refuted && r.witness && !v.witness) v.witness = r.witness;
    if (!v.note.empty()) v.note += "; ";
    v.note += "eps=" + format_number(r.eps) + ": " + to_string(r.status) +
              (r.status == Status::Supported ? " delta=" + format_number(r.delta) : "");
  }
  v.final_error = dmin;
  return v;
}

double mass_scale(const MeasureSequence& seq, const FiniteMeasure& m) {
  double s = m.total_mass();
  for (int n = 1; n <= seq.n_max(); ++n) s = std::max(s, seq.at(n).total_mass());
  return s > 0.0 ? s : 1.0;
}

std::vector<LabeledSet> default_ring(const Space& space, const FiniteMeasure& m, const CheckConfig& cfg) {
  return dyadic_ring(space, cfg.resolution, m.atom_points());
}

std::vector<LabeledSet> default_closed_sets(const Space& space, const FiniteMeasure& m,
                                            const CheckConfig& cfg) {
  std::vector<LabeledSet> out{{"Ω", BorelSet::whole(space)}};
  for (const auto& p : m.atom_points()) {
    BorelSet s = BorelSet::points(space.dimension(), {p});
    out.push_back({s.to_string(), std::move(s)});
  }
  if (space.is_box()) {
    auto cells = closed_dyadic_cells(space, cfg.resolution);
    out.insert(out.end(), cells.begin(), cells.end());
  } else {
    for (const auto& p : space.points()) {
      BorelSet s = BorelSet::points(space.dimension(), {p});
      out.push_back({s.to_string(), std::move(s)});
    }
  }
  return out;
}

std::vector<double> default_alpha_grid(int n_max) {
  std::vector<double> g;
  const double top = std::max(2.0, n_max / 2.0);
  for (int k = 0;; ++k) {
    const double a = std::exp2(k / 4.0);
    if (a > top * (1.0 + 1e-12)) break;
    g.push_back(a);
  }
  return g;
}

std::vector<Point> ae_sample_points(const FiniteMeasure& m, int per_axis) {
  std::vector<Point> pts = m.atom_points();
  const std::size_t d = m.space().dimension();
  int k = per_axis;
  while (k > 1 && std::pow(static_cast<double>(k), static_cast<double>(d)) > 4096.0) k /= 2;
  for (const auto& piece : m.density()) {
    std::vector<int> idx(d, 0);
    while (true) {
      Point p(d);
      for (std::size_t i = 0; i < d; ++i) {
        const auto& s = piece.box.side(i);
        p[i] = s.lo + (s.hi - s.lo) * (idx[i] + 0.5) / k;
      }
      pts.push_back(std::move(p));
      std::size_t a = 0;
      while (a < d && ++idx[a] == k) idx[a++] = 0;
      if (a == d) break;
    }
  }
  return sorted_unique(std::move(pts));
}

Verdict mass_convergence_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  require_same_space(seq, m);
  Series s;
  s.labels.push_back("Ω");
  s.resize(1, seq.n_max());
  for (int n = 1; n <= seq.n_max(); ++n) s.set(0, n, seq.at(n).total_mass(), m.total_mass());
  return aggregate("mass_convergence", s, "set", cfg.trend(mass_scale(seq, m)));
}

Verdict vague_check(const MeasureSequence& seq, const FiniteMeasure& m, const FunctionFamily& fam,
                    const CheckConfig& cfg) {
  return family_check("vague", seq, m, fam, cfg);
}

Verdict vague_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  return vague_check(seq, m, c0_family(m.space(), cfg.resolution), cfg);
}

Verdict weak_check(const MeasureSequence& seq, const FiniteMeasure& m, const FunctionFamily& fam,
                   const CheckConfig& cfg) {
  return family_check("weak", seq, m, fam, cfg);
}

Verdict weak_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  return weak_check(seq, m, cb_family(m.space(), cfg.resolution), cfg);
}

Verdict setwise_check(const MeasureSequence& seq, const FiniteMeasure& m,
                      const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  require_same_space(seq, m);
  if (ring.empty()) throw InvalidArgument("setwise check needs a nonempty ring");
  Series s;
  for (const auto& a : ring) s.labels.push_back(a.label);
  s.resize(ring.size(), seq.n_max());
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const double ref = m.evaluate(ring[k].set);
    for (int n = 1; n <= seq.n_max(); ++n) s.set(k, n, seq.at(n).evaluate(ring[k].set), ref);
  }
  Verdict v = aggregate("setwise", s, "set", cfg.trend(mass_scale(seq, m)));
  v.note = std::to_string(ring.size()) + " ring sets";
  return v;
}

Verdict setwise_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  return setwise_check(seq, m, default_ring(m.space(), m, cfg), cfg);
}

UniformityReport uniform_abs_continuity(const MeasureSequence& seq, const FiniteMeasure& m,
                                        const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  require_same_space(seq, m);
  if (ring.empty()) throw InvalidArgument("uniform absolute continuity needs a nonempty ring");
  std::vector<double> control;
  for (const auto& e : ring) control.push_back(m.evaluate(e.set));
  auto cand = [&](int n) {
    std::vector<Candidate> out;
    const FiniteMeasure& mn = seq.at(n);
    for (std::size_t k = 0; k < ring.size(); ++k)
      out.push_back({ring[k].label, control[k], mn.evaluate(ring[k].set), ring[k].set.volume()});
    return out;
  };
  return uniformity("uniform_abs_continuity", seq.n_max(), cand, mass_scale(seq, m), cfg);
}

UniformityReport uniform_abs_continuity(const MeasureSequence& seq, const FiniteMeasure& m,
                                        const CheckConfig& cfg) {
  return uniform_abs_continuity(seq, m, default_ring(m.space(), m, cfg), cfg);
}

UniformityReport uac_integrals(const FunctionSequence& fseq, const MeasureSequence& seq,
                               const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  require_ranges(fseq, seq);
  if (ring.empty()) throw InvalidArgument("uniform integral continuity needs a nonempty ring");
  auto cand = [&](int n) {
    std::vector<Candidate> out;
    const FiniteMeasure& mn = seq.at(n);
    const ScalarFn& fn = fseq.at(n);
    const auto extra = break_cells(fn, seq.space());
    for (const auto* sets : {&ring, &extra})
      for (const auto& a : *sets)
        out.push_back({a.label, mn.evaluate(a.set), integrate_abs(fn, mn, a.set, cfg.quad).value,
                       a.set.volume()});
    return out;
  };
  return uniformity("uac_integrals", seq.n_max(), cand, mass_scale(seq, seq.at(seq.n_max())), cfg);
}

UniformityReport uac_integrals(const FunctionSequence& fseq, const MeasureSequence& seq,
                               const CheckConfig& cfg) {
  return uac_integrals(fseq, seq, dyadic_ring(seq.space(), cfg.resolution, seq.at(seq.n_max()).atom_points()),
                       cfg);
}

Verdict uniform_integrability(const FunctionSequence& fseq, const MeasureSequence& seq,
                              const CheckConfig& cfg) {
  require_ranges(fseq, seq);
  const std::vector<double> grid = cfg.alpha_grid.empty() ? default_alpha_grid(seq.n_max()) : cfg.alpha_grid;
  Verdict v;
  v.check = "uniform_integrability";
  int arg_n = 0;
  for (double a : grid) {
    double t = 0.0;
    for (int n = 1; n <= seq.n_max(); ++n) {
      const double s = superlevel_integral(fseq.at(n), seq.at(n), a, cfg.quad).value;
      if (s > t) {
        t = s;
        arg_n = n;
      }
    }
    v.trend.push_back(t);
  }
  apply_trend(v, cfg.trend(integral_scale(fseq, seq, cfg)));
  v.note = "sup_n of the tail integral over " + std::to_string(grid.size()) + " alpha values up to " +
           format_number(grid.empty() ? 0.0 : grid.back());
  if (v.status == Status::Refuted)
    v.witness = Witness{"alpha", "alpha=" + format_number(grid.back()), arg_n, v.trend.back(), 0.0};
  return v;
}

Verdict ui_equivalence_check(const FunctionSequence& fseq, const MeasureSequence& seq,
                             const CheckConfig& cfg) {
  require_ranges(fseq, seq);
  const TrendConfig tc = cfg.trend(1.0);
  Verdict masses = bounded_verdict("masses_bounded", totals(seq), tc);
  if (masses.status != Status::Supported) {
    Verdict v = simple("ui_equivalence", Status::Inconclusive, "not applicable: total masses are not bounded");
    v.basis = "not applicable";
    v.sub.push_back(std::move(masses));
    return v;
  }
  Verdict ui = uniform_integrability(fseq, seq, cfg);
  Verdict uac = uac_integrals(fseq, seq, cfg).as_verdict();
  std::vector<double> s;
  for (int n = 1; n <= seq.n_max(); ++n) s.push_back(integrate_abs(fseq.at(n), seq.at(n), cfg.quad).value);
  Verdict bounded = bounded_verdict("sup_integral_bounded", std::move(s), tc);

  Status rhs;
  if (uac.status == Status::Refuted || bounded.status == Status::Refuted)
    rhs = Status::Refuted;
  else if (uac.status == Status::Supported && bounded.status == Status::Supported)
    rhs = Status::Supported;
  else
    rhs = Status::Inconclusive;

  Verdict v;
  v.check = "ui_equivalence";
  v.basis = "both sides compared";
  if (ui.status == Status::Inconclusive || rhs == Status::Inconclusive) {
    v.status = Status::Inconclusive;
    v.note = "a side is undecided";
  } else if (ui.status == rhs) {
    v.status = Status::Supported;
    v.note = ui.status == Status::Supported ? "both sides hold" : "both sides fail";
  } else {
    v.status = Status::Refuted;
    v.witness = Witness{"side",
                        ui.status == Status::Supported
                            ? "uniform integrability holds, integral continuity with bounded integrals fails"
                            : "integral continuity with bounded integrals holds, uniform integrability fails",
                        0, 0.0, 0.0};
  }
  v.trend = ui.trend;
  v.final_error = ui.final_error;
  v.sub.push_back(std::move(masses));
  v.sub.push_back(std::move(ui));
  v.sub.push_back(std::move(uac));
  v.sub.push_back(std::move(bounded));
  return v;
}

Verdict portmanteau_check(const MeasureSequence& seq, const FiniteMeasure& m,
                          const std::vector<LabeledSet>& closed_sets, const CheckConfig& cfg) {
  Verdict pre = mass_convergence_check(seq, m, cfg);
  if (pre.status != Status::Supported) {
    Verdict v = simple("portmanteau", Status::Inconclusive,
                       "not applicable: total masses do not converge (" + to_string(pre.status) + ")");
    v.basis = "not applicable";
    v.sub.push_back(std::move(pre));
    return v;
  }
  Series s;
  for (const auto& F : closed_sets) s.labels.push_back(F.label);
  s.resize(closed_sets.size(), seq.n_max());
  for (std::size_t k = 0; k < closed_sets.size(); ++k) {
    const double ref = m.evaluate(closed_sets[k].set);
    for (int n = 1; n <= seq.n_max(); ++n) {
      const double val = seq.at(n).evaluate(closed_sets[k].set);
      s.set(k, n, val, ref, std::max(0.0, val - ref));
    }
  }
  Verdict v = aggregate("portmanteau", s, "set", cfg.trend(mass_scale(seq, m)));
  v.note = "excess of m_n(F) over m(F) on " + std::to_string(closed_sets.size()) + " closed sets";
  v.sub.push_back(std::move(pre));
  return v;
}

Verdict portmanteau_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  return portmanteau_check(seq, m, default_closed_sets(m.space(), m, cfg), cfg);
}

Verdict prop_pw_verify(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  std::vector<Verdict> hyps;
  hyps.push_back(uniform_abs_continuity(seq, m, cfg).as_verdict());
  hyps.push_back(vague_check(seq, m, cfg));
  std::vector<Verdict> concl;
  concl.push_back(weak_check(seq, m, cfg));
  return gated("prop_pw", std::move(hyps), std::move(concl));
}

Verdict prop_L4_verify(const MeasureSequence& seq, const FiniteMeasure& m, const ScalarFn& f,
                       const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  require_same_space(seq, m);
  std::vector<Verdict> hyps;
  {
    Verdict d = simple("dominated", Status::Supported, "m_n <= m on every ring set for every n");
    for (int n = 1; n <= seq.n_max(); ++n) {
      const auto r = dominates(m, seq.at(n), ring);
      if (!r.dominated) {
        d.status = Status::Refuted;
        d.witness = Witness{"set", r.witness, n, r.small_mass, r.big_mass};
        d.note = "m_n exceeds m";
        break;
      }
    }
    hyps.push_back(std::move(d));
  }
  hyps.push_back(vague_check(seq, m, cfg));
  {
    const L1Report l1 = l1_surrogate(f, m, cfg.quad);
    Verdict v = simple("f_in_L1", l1.integrable ? Status::Supported : Status::Refuted,
                       l1.integrable ? "integral of |f| = " + format_number(l1.value) + " (numerical surrogate)"
                                     : l1.note);
    if (!l1.integrable) v.witness = Witness{"function", f.label(), 0, l1.value, 0.0};
    hyps.push_back(std::move(v));
  }
  std::vector<Verdict> concl;
  {
    const FunctionSequence fconst = FunctionSequence::constant(f, seq.n_max());
    Series s = integral_series(fconst, f, seq, m, ring, cfg);
    double sc = mass_scale(seq, m);
    const double fi = integrate_abs(f, m, cfg.quad).value;
    if (std::isfinite(fi)) sc = std::max(sc, fi);
    concl.push_back(aggregate("integral_limit", s, "set", cfg.trend(sc)));
  }
  concl.push_back(setwise_check(seq, m, ring, cfg));
  return gated("prop_L4", std::move(hyps), std::move(concl));
}

Verdict prop_L4_verify(const MeasureSequence& seq, const FiniteMeasure& m, const ScalarFn& f,
                       const CheckConfig& cfg) {
  return prop_L4_verify(seq, m, f, default_ring(m.space(), m, cfg), cfg);
}

Verdict vitali_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                      const FiniteMeasure& m, const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  return vitali_impl("vitali", fseq, f, seq, m, ring, false, cfg);
}

Verdict vitali_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                      const FiniteMeasure& m, const CheckConfig& cfg) {
  return vitali_verify(fseq, f, seq, m, default_ring(m.space(), m, cfg), cfg);
}

Verdict vitali_cb_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const std::vector<LabeledSet>& ring,
                         const CheckConfig& cfg) {
  return vitali_impl("vitali_cb", fseq, f, seq, m, ring, true, cfg);
}

Verdict vitali_cb_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const CheckConfig& cfg) {
  return vitali_cb_verify(fseq, f, seq, m, default_ring(m.space(), m, cfg), cfg);
}

Verdict vitali_pm_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const std::vector<LabeledSet>& ring,
                         const CheckConfig& cfg) {
  Verdict base = vitali_verify(fseq, f, seq, m, ring, cfg);
  Verdict pos = vitali_impl("vitali_pos_part", fseq.map([](const ScalarFn& g) { return pos_part(g); }),
                            pos_part(f), seq, m, ring, false, cfg);
  Verdict neg = vitali_impl("vitali_neg_part", fseq.map([](const ScalarFn& g) { return neg_part(g); }),
                            neg_part(f), seq, m, ring, false, cfg);
  Verdict v;
  v.check = "vitali_pm";
  v.basis = "parts compared with the base verdict";
  if (pos.status == base.status && neg.status == base.status) {
    v.status = base.status;
    v.note = "both parts agree with the base verdict";
  } else {
    const bool clash = [&] {
      for (Status a : {base.status, pos.status, neg.status})
        for (Status b : {base.status, pos.status, neg.status})
          if (a == Status::Supported && b == Status::Refuted) return true;
      return false;
    }();
    v.status = clash ? Status::Refuted : Status::Inconclusive;
    const Verdict& odd = pos.status != base.status ? pos : neg;
    v.note = odd.check + " is " + to_string(odd.status) + " while the base verdict is " + to_string(base.status);
    if (clash) v.witness = Witness{"part", odd.check, 0, 0.0, 0.0};
  }
  v.trend = base.trend;
  v.final_error = base.final_error;
  v.sub.push_back(std::move(base));
  v.sub.push_back(std::move(pos));
  v.sub.push_back(std::move(neg));
  return v;
}

Verdict vitali_pm_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const CheckConfig& cfg) {
  return vitali_pm_verify(fseq, f, seq, m, default_ring(m.space(), m, cfg), cfg);
}

Verdict convergence_in_measure_check(const FunctionSequence& fseq, const ScalarFn& f,
                                     const FiniteMeasure& m, double eps, const CheckConfig& cfg) {
  if (!(eps > 0.0)) throw InvalidArgument("convergence in measure needs eps > 0");
  Series s;
  s.labels.push_back("m(|f_n - f| > " + format_number(eps) + ")");
  s.resize(1, fseq.n_max());
  const ScalarFn minus_f = fn::scaled(f, -1.0);
  for (int n = 1; n <= fseq.n_max(); ++n) {
    const ScalarFn diff = fn::sum({fseq.at(n), minus_f});
    const double mass = superlevel_mass(diff, m, eps, cfg.quad).value;
    s.set(0, n, mass, 0.0, mass);
  }
  Verdict v = aggregate("convergence_in_measure", s, "index", cfg.trend(m.total_mass() > 0 ? m.total_mass() : 1.0));
  v.note = "eps = " + format_number(eps);
  return v;
}

}  // namespace measlab
