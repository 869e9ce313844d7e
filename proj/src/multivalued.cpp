#include "measlab/multivalued.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "measlab/detail/checks.hpp"
#include "measlab/error.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

using nlohmann::json;
using namespace detail;

BoxBody BoxBody::make(Point lower, Point upper) {
  if (lower.size() != upper.size()) throw InvalidArgument("box corners differ in dimension");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i]))
      throw InvalidArgument("box corner " + format_point(lower) + " is not below " + format_point(upper));
  return {std::move(lower), std::move(upper)};
}

bool BoxBody::contains(const BoxBody& other, double tol) const {
  if (other.dimension() != dimension()) throw DomainMismatch("box bodies differ in dimension");
  for (std::size_t i = 0; i < dimension(); ++i)
    if (other.lower[i] < lower[i] - tol || other.upper[i] > upper[i] + tol) return false;
  return true;
}

std::string BoxBody::to_string() const {
  return "[" + format_point(lower) + ", " + format_point(upper) + "]";
}

json BoxBody::to_json() const { return {{"lower", lower}, {"upper", upper}}; }

BoxBody BoxBody::operator+(const BoxBody& other) const {
  if (other.dimension() != dimension()) throw DomainMismatch("box bodies differ in dimension");
  BoxBody out = *this;
  for (std::size_t i = 0; i < dimension(); ++i) {
    out.lower[i] += other.lower[i];
    out.upper[i] += other.upper[i];
  }
  return out;
}

double support(const Point& direction, const BoxBody& c) {
  if (direction.size() != c.dimension())
    throw DomainMismatch("direction of dimension " + std::to_string(direction.size()) +
                         " paired with a box of dimension " + std::to_string(c.dimension()));
  CompensatedSum s;
  for (std::size_t i = 0; i < direction.size(); ++i) {
    const double x = direction[i];
    if (x > 0.0)
      s += x * c.upper[i];
    else if (x < 0.0)
      s += x * c.lower[i];
  }
  return s.value();
}

Multifunction::Multifunction(std::vector<ScalarFn> lower, std::vector<ScalarFn> upper,
                             std::optional<bool> scalarly_continuous)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size())
    throw InvalidArgument("a multifunction needs matching, nonempty lower and upper endpoint lists");
  bool all = true;
  for (const auto* v : {&lower_, &upper_})
    for (const auto& f : *v) all = all && is_continuous(f.cls());
  continuous_ = scalarly_continuous.value_or(all);
}

Multifunction Multifunction::single_valued(std::vector<ScalarFn> g) {
  Multifunction out(g, g);
  out.single_ = true;
  return out;
}

BoxBody Multifunction::operator()(const Point& t) const {
  BoxBody b;
  for (std::size_t i = 0; i < dimension(); ++i) {
    b.lower.push_back(lower_[i](t));
    b.upper.push_back(single_ ? b.lower.back() : upper_[i](t));
    if (b.lower[i] > b.upper[i])
      throw RepresentationError("lower endpoint exceeds upper endpoint on axis " + std::to_string(i) +
                                " at " + format_point(t));
  }
  return b;
}

ScalarFn Multifunction::support_fn(const Point& direction) const {
  if (direction.size() != dimension())
    throw DomainMismatch("direction dimension does not match the multifunction");
  std::vector<ScalarFn> terms;
  for (std::size_t i = 0; i < dimension(); ++i) {
    const double x = direction[i];
    if (x == 0.0) continue;
    const ScalarFn& f = x > 0.0 ? upper_[i] : lower_[i];
    terms.push_back(x == 1.0 ? f : fn::scaled(f, x));
  }
  return fn::sum(terms);
}

json Multifunction::recipe() const {
  json lo = json::array(), hi = json::array();
  for (const auto& f : lower_) lo.push_back(f.recipe());
  if (single_) return {{"point", lo}, {"scalarly_continuous", continuous_}};
  for (const auto& f : upper_) hi.push_back(f.recipe());
  return {{"lower", lo}, {"upper", hi}, {"scalarly_continuous", continuous_}};
}

std::vector<Point> directions(std::size_t d, int random, std::uint64_t seed) {
  if (d == 0) throw InvalidArgument("directions need a dimension >= 1");
  std::vector<Point> out;
  for (std::size_t i = 0; i < d; ++i) {
    Point e(d, 0.0);
    e[i] = 1.0;
    out.push_back(e);
    e[i] = -1.0;
    out.push_back(e);
  }
  // Uniform on the ℓ¹ sphere: exponential magnitudes, normalized, random signs.
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> mag(1.0);
  std::bernoulli_distribution sign(0.5);
  for (int k = 0; k < random; ++k) {
    Point x(d);
    double norm = 0.0;
    for (auto& v : x) {
      v = mag(rng);
      norm += v;
    }
    for (auto& v : x) v = (sign(rng) ? v : -v) / norm;
    out.push_back(std::move(x));
  }
  return out;
}

Verdict ScalarIntegrabilityReport::as_verdict(const std::string& check) const {
  Verdict v;
  v.check = check;
  v.status = integrable ? Status::Supported : Status::Refuted;
  v.basis = "L1 surrogate per direction";
  for (const auto& r : rows) {
    v.trend.push_back(r.report.value);
    if (!r.report.integrable && !v.witness)
      v.witness = Witness{"direction", "x* = " + format_point(r.direction), 0, r.report.value, 0.0};
  }
  v.note = std::to_string(rows.size()) + " directions";
  for (const auto& r : rows)
    if (!r.report.integrable) {
      v.note += "; " + r.report.note;
      break;
    }
  return v;
}

ScalarIntegrabilityReport scalar_integrability_report(const Multifunction& gamma, const FiniteMeasure& m,
                                                      const std::vector<Point>& dirs,
                                                      const QuadratureConfig& q) {
  ScalarIntegrabilityReport rep;
  for (const auto& x : dirs) {
    DirectionIntegrability row{x, {}};
    try {
      row.report = l1_surrogate(gamma.support_fn(x), m, q);
    } catch (const EvaluationError& e) {
      row.report = L1Report{false, kInf, kInf, e.what()};
    }
    rep.integrable = rep.integrable && row.report.integrable;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

PettisIntegral pettis_integral(const Multifunction& gamma, const FiniteMeasure& m, const BorelSet& a,
                               const QuadratureConfig& q) {
  PettisIntegral out;
  std::vector<ScalarFn> ends = gamma.lower();
  if (!gamma.is_single_valued()) ends.insert(ends.end(), gamma.upper().begin(), gamma.upper().end());
  const std::vector<IntegralResult> r = integrate_many(ends, m, a, false, q);
  const std::size_t d = gamma.dimension();
  for (std::size_t i = 0; i < d; ++i) {
    const IntegralResult& lo = r[i];
    const IntegralResult& hi = gamma.is_single_valued() ? lo : r[d + i];
    if (lo.value > hi.value + lo.error + hi.error)
      throw RepresentationError("integral of the lower endpoint exceeds that of the upper endpoint on axis " +
                                std::to_string(i) + ": " + format_number(lo.value) + " > " +
                                format_number(hi.value));
    out.body.lower.push_back(lo.value);
    out.body.upper.push_back(std::max(lo.value, hi.value));
    out.error = std::max({out.error, lo.error, hi.error});
    out.certified = out.certified && lo.certified && hi.certified;
  }
  return out;
}

PettisIntegral pettis_integral(const Multifunction& gamma, const FiniteMeasure& m, const QuadratureConfig& q) {
  return pettis_integral(gamma, m, BorelSet::whole(m.space()), q);
}

std::vector<IdentityRow> defining_identity(const Multifunction& gamma, const FiniteMeasure& m,
                                           const BorelSet& a, const std::vector<Point>& dirs,
                                           const QuadratureConfig& q) {
  const PettisIntegral p = pettis_integral(gamma, m, a, q);
  std::vector<ScalarFn> fns;
  for (const auto& x : dirs) fns.push_back(gamma.support_fn(x));
  const std::vector<IntegralResult> direct_all = integrate_many(fns, m, a, false, q);
  std::vector<IdentityRow> out;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const Point& x = dirs[j];
    IdentityRow r;
    r.direction = x;
    r.support_value = support(x, p.body);
    const IntegralResult& direct = direct_all[j];
    r.integral = direct.value;
    r.residual = std::abs(r.support_value - r.integral);
    double norm1 = 0.0;
    for (double v : x) norm1 += std::abs(v);
    r.bound = norm1 * p.error + direct.error;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::vector<ScalarFn> endpoints(const Multifunction& g) {
  std::vector<ScalarFn> out = g.lower();
  if (!g.is_single_valued()) out.insert(out.end(), g.upper().begin(), g.upper().end());
  return out;
}

std::string member_label(const std::string& set, const Point& x) {
  return "A = " + set + ", x* = " + format_point(x);
}

std::vector<LabeledSet> with_omega(const Space& space, const std::vector<LabeledSet>& ring) {
  std::vector<LabeledSet> out{{"Ω", BorelSet::whole(space)}};
  for (const auto& a : ring)
    if (a.label != "Ω") out.push_back(a);
  return out;
}

/// Endpoint L¹ surrogate of every Γ_n under m_n.
Verdict pettis_sequence(const std::string& check, const MultifunctionSequence& gseq,
                        const MeasureSequence& seq, const CheckConfig& cfg) {
  Verdict v;
  v.check = check;
  v.basis = "endpoint integrability, structural for boxes";
  v.status = Status::Supported;
  for (int n = 1; n <= seq.n_max(); ++n) {
    double worst = 0.0;
    for (const auto& f : endpoints(gseq.at(n))) {
      const L1Report r = l1_surrogate(f, seq.at(n), cfg.quad);
      worst = std::max(worst, r.value);
      if (!r.integrable && v.status == Status::Supported) {
        v.status = Status::Refuted;
        v.witness = Witness{"index", f.label(), n, r.value, 0.0};
        v.note = r.note;
      }
    }
    v.trend.push_back(worst);
  }
  v.final_error = v.trend.back();
  return v;
}

/// Γ Pettis m-integrable: every support function in L¹(m) and the defining
/// identity on each set and direction.
Verdict limit_pettis(const Multifunction& gamma, const FiniteMeasure& m, const std::vector<LabeledSet>& sets,
                     const std::vector<Point>& dirs, const CheckConfig& cfg) {
  Verdict v = scalar_integrability_report(gamma, m, dirs, cfg.quad).as_verdict("limit_pettis");
  if (v.status != Status::Supported) return v;
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& a : sets) {
    std::vector<IdentityRow> rows;
    try {
      rows = defining_identity(gamma, m, a.set, dirs, cfg.quad);
    } catch (const RepresentationError& e) {
      v.status = Status::Refuted;
      v.witness = Witness{"set", a.label, 0, 0.0, 0.0};
      v.note = e.what();
      return v;
    }
    for (const auto& r : rows) {
      ++checked;
      worst = std::max(worst, r.residual);
      if (!r.holds() && v.status == Status::Supported) {
        v.status = Status::Refuted;
        v.witness = Witness{"set-direction", member_label(a.label, r.direction), 0, r.support_value, r.integral};
      }
    }
  }
  v.basis = "endpoint integrability and the defining identity";
  v.final_error = worst;
  v.note = "identity checked on " + std::to_string(checked) + " set-direction pairs, largest residual " +
           format_number(worst);
  return v;
}

/// ∫_A s(x*, Γ_n) dm_n against ∫_A s(x*, Γ) dm.
Series support_integral_series(const MultifunctionSequence& gseq, const Multifunction& gamma,
                               const MeasureSequence& seq, const FiniteMeasure& m,
                               const std::vector<LabeledSet>& sets, const std::vector<Point>& dirs,
                               const CheckConfig& cfg) {
  Series s;
  for (const auto& a : sets)
    for (const auto& x : dirs) s.labels.push_back(member_label(a.label, x));
  s.resize(s.labels.size(), seq.n_max());
  std::vector<ScalarFn> limit_fns;
  for (const auto& x : dirs) limit_fns.push_back(gamma.support_fn(x));
  std::vector<double> ref;
  for (const auto& a : sets)
    for (const auto& r : integrate_many(limit_fns, m, a.set, false, cfg.quad)) ref.push_back(r.value);
  for (int n = 1; n <= seq.n_max(); ++n) {
    std::vector<ScalarFn> fns;
    for (const auto& x : dirs) fns.push_back(gseq.at(n).support_fn(x));
    std::size_t k = 0;
    for (const auto& a : sets)
      for (const auto& r : integrate_many(fns, seq.at(n), a.set, false, cfg.quad)) {
        s.set(k, n, r.value, ref[k]);
        ++k;
      }
  }
  return s;
}

double support_scale(const MultifunctionSequence& gseq, const MeasureSequence& seq, const FiniteMeasure& m,
                     const std::vector<Point>& dirs, const CheckConfig& cfg) {
  double s = mass_scale(seq, m);
  for (int n = 1; n <= seq.n_max(); ++n)
    for (const auto& x : dirs) {
      const double v = integrate_abs(gseq.at(n).support_fn(x), seq.at(n), cfg.quad).value;
      if (std::isfinite(v)) s = std::max(s, v);
    }
  return s;
}

void require_matching(const MultifunctionSequence& gseq, const Multifunction& gamma,
                      const MeasureSequence& seq, const FiniteMeasure& m) {
  require_same_space(seq, m);
  if (gseq.n_max() != seq.n_max())
    throw InvalidArgument("multifunction and measure sequences must share the index range");
  if (gseq.at(1).dimension() != gamma.dimension())
    throw DomainMismatch("the multifunctions take values in spaces of different dimension");
}

}  // namespace

UniformityReport uac_scalar_integrals(const MultifunctionSequence& gseq, const MeasureSequence& seq,
                                      const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  if (gseq.n_max() != seq.n_max())
    throw InvalidArgument("multifunction and measure sequences must share the index range");
  if (ring.empty()) throw InvalidArgument("uniform scalar integral continuity needs a nonempty ring");
  auto cand = [&](int n) {
    std::vector<Candidate> out;
    const FiniteMeasure& mn = seq.at(n);
    // On the ℓ¹ ball, x* -> ∫_A |s(x*, Γ)| is convex on each orthant face, so
    // its maximum sits at ±e_i, where s equals upper_i or -lower_i.
    const std::vector<ScalarFn> ends = endpoints(gseq.at(n));
    const auto extra = break_cells(fn::sum(ends), seq.space());
    for (const auto* sets : {&ring, &extra})
      for (const auto& a : *sets) {
        double effect = 0.0;
        for (const auto& r : integrate_many(ends, mn, a.set, true, cfg.quad)) effect = std::max(effect, r.value);
        out.push_back({a.label, mn.evaluate(a.set), effect, a.set.volume()});
      }
    return out;
  };
  return uniformity("uac_scalar_integrals", seq.n_max(), cand, mass_scale(seq, seq.at(seq.n_max())), cfg);
}

UniformityReport uac_scalar_integrals(const MultifunctionSequence& gseq, const MeasureSequence& seq,
                                      const CheckConfig& cfg) {
  return uac_scalar_integrals(
      gseq, seq, dyadic_ring(seq.space(), cfg.resolution, seq.at(seq.n_max()).atom_points()), cfg);
}

Verdict thm42_verify(const MultifunctionSequence& gseq, const Multifunction& gamma,
                     const MeasureSequence& seq, const FiniteMeasure& m,
                     const std::vector<LabeledSet>& ring, const CheckConfig& cfg) {
  require_matching(gseq, gamma, seq, m);
  const int N = seq.n_max();
  const Space& space = m.space();
  const std::vector<Point> dirs = directions(gamma.dimension(), cfg.random_directions, cfg.seed);
  std::vector<Verdict> hyps;

  hyps.push_back(uac_scalar_integrals(gseq, seq, ring, cfg).as_verdict());
  hyps.back().check = "j_uac_scalar_seq";
  hyps.push_back(uac_scalar_integrals(MultifunctionSequence::constant(gamma, N), seq, ring, cfg).as_verdict());
  hyps.back().check = "j_uac_scalar_limit";

  {
    const auto pts = ae_sample_points(m);
    std::vector<BoxBody> limit;
    double sc = 1.0;
    for (const auto& p : pts) {
      limit.push_back(gamma(p));
      for (const auto& x : dirs) {
        const double s = support(x, limit.back());
        if (std::isfinite(s)) sc = std::max(sc, std::abs(s));
      }
    }
    Series s;
    s.labels.push_back("sample of " + std::to_string(pts.size()) + " points");
    s.resize(1, N);
    for (int n = 1; n <= N; ++n) {
      double e = 0.0;
      for (std::size_t i = 0; i < pts.size() && !std::isnan(e); ++i) {
        const BoxBody b = gseq.at(n)(pts[i]);
        for (const auto& x : dirs) {
          const double d = std::abs(support(x, b) - support(x, limit[i]));
          e = std::isnan(d) ? d : std::max(e, d);
        }
      }
      s.set(0, n, e, 0.0, e);
    }
    Verdict v = aggregate("jj_pointwise_support", s, "index", cfg.trend(sc));
    v.note = "sup over the a.e. sample and the directions of |s(x*, Γ_n) - s(x*, Γ)|";
    hyps.push_back(std::move(v));
  }

  {
    Verdict v = simple("jjj_scalar_continuity", Status::Supported, "declared scalarly continuous");
    if (!gamma.scalarly_continuous()) {
      v.status = Status::Refuted;
      v.note = "not declared scalarly continuous";
      v.witness = Witness{"function", gamma.label(), 0, 0.0, 0.0};
    } else {
      for (const auto& x : dirs) {
        const auto probe = probe_continuity(gamma.support_fn(x), space, 256, cfg.seed);
        if (!probe.continuous) {
          v.status = Status::Refuted;
          v.note = "declared continuous, but the sampled modulus shows a jump";
          v.witness = Witness{"direction", "x* = " + format_point(x) + ", jump near " + format_point(probe.where),
                              0, probe.jump, 0.0};
          break;
        }
      }
    }
    hyps.push_back(std::move(v));
  }

  hyps.push_back(vague_check(seq, m, cfg));
  hyps.back().check = "jv_vague";
  hyps.push_back(uniform_abs_continuity(seq, m, ring, cfg).as_verdict());
  hyps.back().check = "jv_uniform_abs_continuity";
  hyps.push_back(pettis_sequence("v_pettis_seq", gseq, seq, cfg));

  const std::vector<LabeledSet> sets = with_omega(space, ring);
  const TrendConfig tc = cfg.trend(support_scale(gseq, seq, m, dirs, cfg));
  std::vector<Verdict> concl;
  {
    std::vector<BoxBody> ref;
    for (const auto& a : sets) ref.push_back(pettis_integral(gamma, m, a.set, cfg.quad).body);
    Series s;
    for (const auto& a : sets)
      for (const auto& x : dirs) s.labels.push_back(member_label(a.label, x));
    s.resize(s.labels.size(), N);
    for (int n = 1; n <= N; ++n) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const BoxBody b = pettis_integral(gseq.at(n), seq.at(n), sets[i].set, cfg.quad).body;
        for (const auto& x : dirs) s.set(k++, n, support(x, b), support(x, ref[i]));
      }
    }
    Verdict v = aggregate("support_limit", s, "set-direction", tc);
    v.note = std::to_string(sets.size()) + " sets x " + std::to_string(dirs.size()) + " directions";
    concl.push_back(std::move(v));
  }
  concl.push_back(aggregate("support_integral_limit",
                            support_integral_series(gseq, gamma, seq, m, sets, dirs, cfg), "set-direction", tc));
  concl.push_back(limit_pettis(gamma, m, sets, dirs, cfg));
  return gated("thm42", std::move(hyps), std::move(concl));
}

Verdict thm42_verify(const MultifunctionSequence& gseq, const Multifunction& gamma,
                     const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  return thm42_verify(gseq, gamma, seq, m, default_ring(m.space(), m, cfg), cfg);
}

std::vector<LabeledSet> all_subsets(const Space& space) {
  if (!space.is_discrete()) throw InvalidArgument("subsets are enumerated on discrete spaces only");
  if (space.points().size() > 12) throw InvalidArgument("too many points to enumerate every subset");
  return dyadic_ring(space, 0);
}

Verdict prop44_verify(const MultifunctionSequence& gseq, const Multifunction& gamma,
                      const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg) {
  require_matching(gseq, gamma, seq, m);
  const Space& space = m.space();
  if (!space.is_discrete()) {
    Verdict v = simple("prop44", Status::Inconclusive, "runs on discrete spaces only");
    v.basis = "not applicable";
    return v;
  }
  const std::vector<Point> dirs = directions(gamma.dimension(), cfg.random_directions, cfg.seed);
  const std::vector<LabeledSet> subsets = all_subsets(space);
  std::vector<Verdict> hyps;
  hyps.push_back(uac_scalar_integrals(gseq, seq, subsets, cfg).as_verdict());
  hyps.back().check = "j_uac_scalar_seq";
  hyps.push_back(scalar_integrability_report(gamma, m, dirs, cfg.quad).as_verdict("jj_scalar_integrable"));
  hyps.push_back(uniform_abs_continuity(seq, m, subsets, cfg).as_verdict());
  hyps.back().check = "jjj_uniform_abs_continuity";
  hyps.push_back(pettis_sequence("jv_pettis_seq", gseq, seq, cfg));
  {
    const Series s = support_integral_series(gseq, gamma, seq, m, subsets, dirs, cfg);
    Verdict v = aggregate("v_limit_identity", s, "set-direction",
                          cfg.trend(support_scale(gseq, seq, m, dirs, cfg)));
    v.note = std::to_string(subsets.size()) + " subsets x " + std::to_string(dirs.size()) + " directions";
    hyps.push_back(std::move(v));
  }
  std::vector<Verdict> concl;
  concl.push_back(limit_pettis(gamma, m, subsets, dirs, cfg));
  return gated("prop44", std::move(hyps), std::move(concl));
}

}  // namespace measlab
