// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

#include "measlab/convergence.hpp"
#include "measlab/error.hpp"
#include "measlab/multivalued.hpp"

using namespace measlab;

namespace {

constexpr int N = 64;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += what;
    pass = false;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

const Space kUnit = Space::box({0.0}, {1.0});

MeasureSequence shrinking_lebesgue() {
  return MeasureSequence(kUnit, [](int n) { return FiniteMeasure::lebesgue(kUnit, 1.0 - 1.0 / n); }, N);
}

FunctionSequence shifted_identity() {
  return FunctionSequence([](int n) { return fn::affine({1.0}, 1.0 / n); }, N);
}

// 1 ------------------------------------------------------------------------

Outcome dirac_escape() {
  Outcome o;
  const Space s = Space::box({0.0}, {double(N)}, {true});
  const MeasureSequence seq(s, [s](int n) { return FiniteMeasure::dirac(s, {double(n)}); }, N);
  const FiniteMeasure zero = FiniteMeasure::zero(s);
  CheckConfig cfg;
  cfg.tol = 1e-6;
  const Verdict vague = vague_check(seq, zero, cfg);
  const Verdict mass = mass_convergence_check(seq, zero, cfg);
  const Verdict weak = weak_check(seq, zero, cfg);
  o.require(vague.status == Status::Supported, "vague " + to_string(vague.status));
  o.require(mass.status == Status::Refuted, "mass_convergence " + to_string(mass.status));
  o.require(mass.witness && mass.witness->value == 1.0 && mass.witness->reference == 0.0,
            "mass witness is not 1 vs 0");
  o.require(seq.at(N).total_mass() == 1.0 && zero.total_mass() == 0.0, "final masses are not 1 vs 0");
  o.require(weak.status == Status::Refuted, "weak " + to_string(weak.status));
  o.require(weak.witness && weak.witness->label == "1",
            "weak witness " + (weak.witness ? weak.witness->label : std::string("missing")));
  if (o.pass) o.detail = "vague SUPPORTED, mass REFUTED (1 vs 0), weak REFUTED with g = 1";
  return o;
}

// 2 ------------------------------------------------------------------------

Outcome dominated_setwise() {
  Outcome o;
  const auto seq = shrinking_lebesgue();
  const FiniteMeasure leb = FiniteMeasure::lebesgue(kUnit);
  CheckConfig cfg;
  const auto ring = default_ring(kUnit, leb, cfg);
  double worst_gap = 0.0, largest = 0.0;
  for (const auto& a : ring) {
    const double vol = a.set.volume();
    largest = std::max(largest, vol);
    for (int n = 1; n <= N; ++n) {
      const double gap = std::abs(seq.at(n).evaluate(a.set) - leb.evaluate(a.set));
      worst_gap = std::max(worst_gap, std::abs(gap - vol / n));
    }
  }
  o.require(worst_gap <= 1e-12, "|m_n(A) - m(A)| deviates from |A|/n by " + fmt(worst_gap));
  const Verdict sw = setwise_check(seq, leb, ring, cfg);
  const double at_n = sw.trend.back();
  o.require(std::abs(at_n - largest / N) <= 1e-12, "max ring error at n = 64 is " + fmt(at_n));
  const ScalarFn x = fn::coordinate(0, 1);
  const Verdict l4 = prop_L4_verify(seq, leb, x, ring, cfg);
  o.require(l4.status == Status::Supported, "prop_L4 " + to_string(l4.status));
  const BorelSet half = BorelSet::half_open(kUnit, {0.0}, {0.5});
  double worst = 0.0;
  for (int n = 1; n <= N; ++n)
    worst = std::max(worst, std::abs(integrate(x, seq.at(n), half).value - 0.125 * (1.0 - 1.0 / n)));
  o.require(worst <= 1e-9, "integral of x over [0, 0.5) off by " + fmt(worst));
  if (o.pass)
    o.detail = std::to_string(ring.size()) + " ring sets, max error " + fmt(at_n) + " = |A|/64, prop_L4 SUPPORTED, " +
               "[0,0.5) integrals within " + fmt(worst);
  return o;
}

// 3 ------------------------------------------------------------------------

Outcome vitali_linear() {
  Outcome o;
  const auto seq = shrinking_lebesgue();
  const auto fseq = shifted_identity();
  const FiniteMeasure leb = FiniteMeasure::lebesgue(kUnit);
  CheckConfig cfg;
  cfg.resolution = 4;
  const Verdict v = vitali_verify(fseq, fn::coordinate(0, 1), seq, leb, default_ring(kUnit, leb, cfg), cfg);
  o.require(v.status == Status::Supported, "vitali " + to_string(v.status));
  for (const char* h : {"pointwise_ae", "limit_continuous", "uac_integrals_fn", "uac_integrals_f", "vague",
                        "uniform_abs_continuity"}) {
    const Verdict* s = v.find_sub(h);
    o.require(s && s->status == Status::Supported, std::string(h) + (s ? " " + to_string(s->status) : " missing"));
  }
  double worst = 0.0;
  for (int n = 1; n <= N; ++n) {
    const IntegralResult r = integrate(fseq.at(n), seq.at(n));
    const double exact = (1.0 - 1.0 / n) * (0.5 + 1.0 / n);
    const double excess = std::abs(r.value - exact) - r.error;
    worst = std::max(worst, excess);
  }
  o.require(worst <= 1e-9, "integral over Omega exceeds its bound by " + fmt(worst));
  if (o.pass) o.detail = "battery passes, closed form met for n <= 64, SUPPORTED at resolution 4";
  return o;
}

// 4 ------------------------------------------------------------------------

Outcome ui_equivalence() {
  Outcome o;
  const MeasureSequence leb = MeasureSequence::constant(FiniteMeasure::lebesgue(kUnit), N);
  const FunctionSequence spike([](int n) { return fn::indicator(Box::half_open({0.0}, {1.0 / n}), n); }, N);
  CheckConfig cfg;

  const Verdict ui = uniform_integrability(spike, leb, cfg);
  o.require(ui.status == Status::Refuted, "spike uniform_integrability " + to_string(ui.status));
  double low = INFINITY;
  for (double t : ui.trend) low = std::min(low, t);
  o.require(low >= 1.0 - 1e-12, "tail integral drops to " + fmt(low));

  const UniformityReport uac = uac_integrals(spike, leb, cfg);
  o.require(uac.overall == Status::Refuted, "spike uac_integrals " + to_string(uac.overall));
  for (const auto& r : uac.rows) {
    if (!(r.eps < 1.0)) continue;
    if (r.status != Status::Refuted || !r.witness) {
      o.require(false, "eps = " + fmt(r.eps) + " row " + to_string(r.status));
      continue;
    }
    const int n = r.witness->index;
    const std::string expected =
        BorelSet::of(Box({Interval::half_open(0.0, 1.0 / n)})).intersect(BorelSet::whole(kUnit)).to_string();
    o.require(r.witness->label == expected, "eps = " + fmt(r.eps) + " witness " + r.witness->label);
  }
  const Verdict eq_spike = ui_equivalence_check(spike, leb, cfg);
  o.require(eq_spike.status == Status::Supported, "spike equivalence " + to_string(eq_spike.status));

  const auto bounded = shifted_identity();
  const Verdict ui_b = uniform_integrability(bounded, leb, cfg);
  const UniformityReport uac_b = uac_integrals(bounded, leb, cfg);
  const Verdict eq_b = ui_equivalence_check(bounded, leb, cfg);
  o.require(ui_b.status == Status::Supported, "bounded uniform_integrability " + to_string(ui_b.status));
  o.require(uac_b.overall == Status::Supported, "bounded uac_integrals " + to_string(uac_b.overall));
  o.require(eq_b.status == Status::Supported, "bounded equivalence " + to_string(eq_b.status));
  if (o.pass)
    o.detail = "spike fails both (min tail " + fmt(low) + ", witnesses [0,1/n)), bounded family passes both, " +
               "equivalence SUPPORTED twice";
  return o;
}

// 5 ------------------------------------------------------------------------

Outcome pettis_interval() {
  Outcome o;
  const Multifunction g({fn::affine({-1.0}, 0.0)}, {fn::coordinate(0, 1)});
  QuadratureConfig q;
  q.depth = 10;
  const FiniteMeasure leb = FiniteMeasure::lebesgue(kUnit);
  const PettisIntegral p = pettis_integral(g, leb, BorelSet::whole(kUnit), q);
  o.require(p.error <= 1e-6, "quadrature bound " + fmt(p.error));
  o.require(std::abs(p.body.lower[0] + 0.5) <= p.error && std::abs(p.body.upper[0] - 0.5) <= p.error,
            "integral " + p.body.to_string());
  const auto dirs = directions(1, 32, 17);
  const auto rows = defining_identity(g, leb, BorelSet::whole(kUnit), dirs, q);
  double worst = 0.0;
  for (const auto& r : rows) {
    o.require(r.holds() && r.bound <= 1e-6, "identity fails at x* = " + format_point(r.direction));
    worst = std::max(worst, r.residual);
  }
  if (o.pass)
    o.detail = p.body.to_string() + " +- " + fmt(p.error) + ", identity on " + std::to_string(rows.size()) +
               " directions, max residual " + fmt(worst);
  return o;
}

// 6 ------------------------------------------------------------------------

Outcome thm42_interval() {
  Outcome o;
  const auto seq = shrinking_lebesgue();
  const FiniteMeasure leb = FiniteMeasure::lebesgue(kUnit);
  const MultifunctionSequence gseq(
      [](int n) { return Multifunction({fn::affine({-1.0}, -1.0 / n)}, {fn::affine({1.0}, 1.0 / n)}); }, N);
  const Multifunction g({fn::affine({-1.0}, 0.0)}, {fn::coordinate(0, 1)});
  CheckConfig cfg;
  const auto ring = default_ring(kUnit, leb, cfg);
  const Verdict v = thm42_verify(gseq, g, seq, leb, ring, cfg);
  o.require(v.status == Status::Supported, "thm42 " + to_string(v.status));
  for (const char* h : {"j_uac_scalar_seq", "j_uac_scalar_limit", "jj_pointwise_support", "jjj_scalar_continuity",
                        "jv_vague", "jv_uniform_abs_continuity", "v_pettis_seq"}) {
    const Verdict* s = v.find_sub(h);
    o.require(s && s->status == Status::Supported, std::string(h) + (s ? " " + to_string(s->status) : " missing"));
  }
  double worst = 0.0;
  for (const auto& a : ring) {
    const PettisIntegral pn = pettis_integral(gseq.at(N), seq.at(N), a.set, cfg.quad);
    const PettisIntegral p = pettis_integral(g, leb, a.set, cfg.quad);
    for (const auto& x : directions(1)) {
      const double err = std::abs(support(x, pn.body) - support(x, p.body));
      worst = std::max(worst, err);
      o.require(err <= 2.0 / N + pn.error + p.error, a.label + " x* = " + format_point(x) + " error " + fmt(err));
    }
  }
  const std::size_t w = N / 8;
  bool strict = v.trend.size() == static_cast<std::size_t>(N);
  for (std::size_t i = v.trend.size() - w; strict && i < v.trend.size(); ++i) strict = v.trend[i] < v.trend[i - 1];
  o.require(strict, "trend tail is not strictly decreasing");
  if (o.pass)
    o.detail = "battery passes, max support error at n = 64 is " + fmt(worst) + " <= 2/64, tail strictly decreasing";
  return o;
}

// 7 ------------------------------------------------------------------------
//
// Discrete instances on Ω = {1..8} with rational data:
//   m_n(j) = w_j + c_j / n, claimed limit m;
//   f_n(j) = f_j + d_j / n + a_j n, claimed limit f∞;
//   Γ_n(j) = Π_i [L_ji - e_ji / n, U_ji + e_ji / n (+ b_j n on axis 0)], claimed limit Γ∞.
// The expected verdicts are derived from the exact limits of the finite sums.

using Q = boost::rational<long long>;
constexpr int K = 8;
constexpr int D = 2;

double dbl(const Q& q) { return boost::rational_cast<double>(q); }

struct Instance {
  std::array<Q, K> w, c, m;
  std::array<Q, K> f, d, f_lim;
  std::array<long long, K> a{};
  std::array<std::array<Q, D>, K> L, U, e, L_lim, U_lim;
  std::array<long long, K> b{};
  bool v_by_construction = true;
};

Q q12(long long k) { return Q(k, 12); }

Instance random_instance(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };
  Instance I;
  const bool dominated = chance(0.3);
  for (int j = 0; j < K; ++j) {
    I.w[j] = chance(0.2) ? Q(0) : q12(pick(1, 12));
    if (I.w[j] == Q(0))
      I.c[j] = chance(0.5) ? Q(0) : q12(pick(1, 6));
    else if (dominated || chance(0.5))
      I.c[j] = -q12(pick(0, static_cast<int>((I.w[j] * 12).numerator()) - 1));
    else
      I.c[j] = q12(pick(0, 6));
    I.m[j] = I.w[j];
    I.f[j] = q12(pick(-12, 12));
    I.d[j] = q12(pick(-12, 12));
    for (int i = 0; i < D; ++i) {
      I.L[j][i] = q12(pick(-12, 6));
      I.U[j][i] = I.L[j][i] + q12(pick(0, 12));
      I.e[j][i] = q12(pick(0, 6));
    }
  }
  if (chance(0.25)) {
    I.v_by_construction = false;
    const int j = pick(0, K - 1);
    if (I.m[j] >= q12(1) && chance(0.5)) {
      I.m[j] -= q12(1);
      I.m[(j + 1) % K] += q12(1);
    } else {
      I.m[j] += q12(1);
    }
  }
  std::vector<int> null;
  for (int j = 0; j < K; ++j)
    if (I.w[j] == Q(0) && I.m[j] == Q(0)) null.push_back(j);
  auto null_point = [&]() { return null[static_cast<std::size_t>(pick(0, static_cast<int>(null.size()) - 1))]; };
  if (!null.empty() && chance(0.3)) {
    const int j = null_point();
    I.a[j] = pick(1, 3);
    I.f[j] = I.d[j] = Q(0);
  }
  if (!null.empty() && chance(0.3)) {
    const int j = null_point();
    I.b[j] = pick(1, 3);
    for (int i = 0; i < D; ++i) I.L[j][i] = I.U[j][i] = I.e[j][i] = Q(0);
    I.v_by_construction = false;
  }
  I.f_lim = I.f;
  I.L_lim = I.L;
  I.U_lim = I.U;
  std::vector<int> charged;
  for (int j = 0; j < K; ++j)
    if (I.m[j] > Q(0)) charged.push_back(j);
  if (!charged.empty() && chance(0.15)) {
    const int j = charged[static_cast<std::size_t>(pick(0, static_cast<int>(charged.size()) - 1))];
    I.f_lim[j] += q12(chance(0.5) ? pick(1, 3) : -pick(1, 3));
  }
  if (!charged.empty() && chance(0.15)) {
    const int j = charged[static_cast<std::size_t>(pick(0, static_cast<int>(charged.size()) - 1))];
    I.U_lim[j][pick(0, D - 1)] += q12(1);
    I.v_by_construction = false;
  }
  return I;
}

Q mass_at(const Instance& I, int j, int n) { return I.w[j] + I.c[j] / n; }
Q f_at(const Instance& I, int j, int n) { return I.f[j] + I.d[j] / n + Q(I.a[j] * n); }
Q lower_at(const Instance& I, int j, int i, int n) { return I.L[j][i] - I.e[j][i] / n; }
Q upper_at(const Instance& I, int j, int i, int n) {
  return I.U[j][i] + I.e[j][i] / n + (i == 0 ? Q(I.b[j] * n) : Q(0));
}

const Space& omega8() {
  static const Space s = [] {
    std::vector<Point> pts;
    for (int j = 1; j <= K; ++j) pts.push_back({double(j)});
    return Space::discrete(pts);
  }();
  return s;
}

FiniteMeasure measure_of(const std::function<Q(int)>& weight) {
  std::vector<Atom> atoms;
  for (int j = 0; j < K; ++j) atoms.push_back({{double(j + 1)}, dbl(weight(j))});
  return FiniteMeasure(omega8(), atoms, {});
}

// Table lookup on the points 1..K, zero elsewhere.
ScalarFn function_of(const std::function<Q(int)>& value) {
  std::array<double, K> table{};
  FnTraits t;
  t.cls = FnClass::Cc;
  t.support = Box::closed({1.0}, {double(K)});
  t.sup_bound = 0.0;
  for (int j = 0; j < K; ++j) {
    table[static_cast<std::size_t>(j)] = dbl(value(j));
    t.sup_bound = std::max(*t.sup_bound, std::abs(table[static_cast<std::size_t>(j)]));
  }
  return fn::from_lambda(
      [table](const Point& p) {
        const double x = p.at(0);
        const int j = static_cast<int>(x) - 1;
        return x == double(j + 1) && j >= 0 && j < K ? table[static_cast<std::size_t>(j)] : 0.0;
      },
      t, "table");
}

Multifunction multifunction_of(const std::function<Q(int, int)>& lo, const std::function<Q(int, int)>& hi) {
  std::vector<ScalarFn> l, u;
  for (int i = 0; i < D; ++i) {
    l.push_back(function_of([&](int j) { return lo(j, i); }));
    u.push_back(function_of([&](int j) { return hi(j, i); }));
  }
  return Multifunction(l, u);
}

struct Built {
  MeasureSequence seq;
  FiniteMeasure m;
  FunctionSequence fseq;
  ScalarFn f;
  MultifunctionSequence gseq;
  Multifunction g;
};

Built build(const Instance& I) {
  return Built{
      MeasureSequence(omega8(), [I](int n) { return measure_of([&](int j) { return mass_at(I, j, n); }); }, N),
      measure_of([&](int j) { return I.m[j]; }),
      FunctionSequence([I](int n) { return function_of([&](int j) { return f_at(I, j, n); }); }, N),
      function_of([&](int j) { return I.f_lim[j]; }),
      MultifunctionSequence(
          [I](int n) {
            return multifunction_of([&](int j, int i) { return lower_at(I, j, i, n); },
                                    [&](int j, int i) { return upper_at(I, j, i, n); });
          },
          N),
      multifunction_of([&](int j, int i) { return I.L_lim[j][i]; }, [&](int j, int i) { return I.U_lim[j][i]; })};
}

const std::vector<Q>& eps_grid() {
  static const std::vector<Q> g = {Q(1, 10), Q(1, 100), Q(1, 1000), Q(1, 10000)};
  return g;
}

/// Exact verdicts of one instance, keyed by check name; uniformity tables
/// contribute one entry per ε row as "check@row".
std::map<std::string, Status> oracle(const Instance& I) {
  const auto S = Status::Supported, R = Status::Refuted, X = Status::Inconclusive;
  auto st = [&](bool ok) { return ok ? S : R; };
  std::map<std::string, Status> out;

  Q total_w, total_m;
  bool entrywise = true, below = true;
  for (int j = 0; j < K; ++j) {
    total_w += I.w[j];
    total_m += I.m[j];
    entrywise = entrywise && I.w[j] == I.m[j];
    below = below && I.w[j] <= I.m[j];
  }
  const bool mass = total_w == total_m;
  out["mass_convergence"] = st(mass);
  out["vague"] = out["weak"] = out["setwise"] = st(entrywise);
  out["portmanteau"] = mass ? st(below) : X;

  // Largest null set of the limit carries sup_n m_n(Z) along the sequence.
  Q null_sup;
  for (int n = 1; n <= N; ++n) {
    Q z;
    for (int j = 0; j < K; ++j)
      if (I.m[j] == Q(0)) z += mass_at(I, j, n);
    null_sup = std::max(null_sup, z);
  }
  // lim_n of ∫_{A} |f_n| dm_n and sup_x* ∫_A |s(x*, Γ_n)| dm_n over sets whose
  // m_n-mass vanishes.
  Q spike_f, spike_g;
  bool ui = true;
  for (int j = 0; j < K; ++j) {
    if (I.w[j] == Q(0)) {
      spike_f += Q(I.a[j]) * I.c[j];
      spike_g += Q(I.b[j]) * I.c[j];
    }
    if (I.a[j] > 0 && (I.w[j] > Q(0) || I.c[j] > Q(0))) ui = false;
  }
  auto table = [&](const std::string& name, const std::function<bool(const Q&)>& fails) {
    bool all = true;
    for (std::size_t r = 0; r < eps_grid().size(); ++r) {
      const bool f = fails(eps_grid()[r]);
      out[name + "@" + std::to_string(r)] = st(!f);
      all = all && !f;
    }
    out[name] = st(all);
    return all;
  };
  const bool uac_m = table("uniform_abs_continuity", [&](const Q& eps) { return null_sup >= eps; });
  const bool uac_f = table("uac_integrals", [&](const Q& eps) { return spike_f >= eps; });
  const bool uac_g = table("uac_scalar_integrals", [&](const Q& eps) { return spike_g >= eps; });
  out["uniform_integrability"] = st(ui);
  // sup_n ∫|f_n| dm_n is finite: spikes sit on points of vanishing weight.
  out["ui_equivalence"] = st(ui == uac_f);

  Q escaped;
  for (int j = 0; j < K; ++j) {
    const Q gap = I.f[j] - I.f_lim[j];
    if (I.a[j] > 0 || (gap < Q(0) ? -gap : gap) > Q(1, 20)) escaped += I.m[j];
  }
  out["convergence_in_measure"] = st(escaped == Q(0));
  out["scalar_integrability"] = S;

  out["prop_pw"] = uac_m && entrywise ? S : X;

  bool dominated = true;
  for (int n = 1; n <= N; ++n)
    for (int j = 0; j < K; ++j) dominated = dominated && mass_at(I, j, n) <= I.m[j];
  out["prop_L4"] = dominated && entrywise ? S : X;

  bool pointwise = true, support_pointwise = true;
  for (int j = 0; j < K; ++j) {
    if (I.m[j] == Q(0)) continue;
    pointwise = pointwise && I.a[j] == 0 && I.f[j] == I.f_lim[j];
    support_pointwise = support_pointwise && I.b[j] == 0 && I.L[j] == I.L_lim[j] && I.U[j] == I.U_lim[j];
  }
  out["vitali"] = pointwise && uac_f && entrywise && uac_m ? S : X;
  out["thm42"] = uac_g && support_pointwise && entrywise && uac_m ? S : X;

  // (v) on all subsets reduces to one identity per point and direction.
  bool identity = true;
  for (int j = 0; j < K; ++j) {
    if (I.b[j] > 0 && I.w[j] > Q(0)) identity = false;
    for (int i = 0; i < D; ++i) {
      const Q up = I.U[j][i] * I.w[j] + (i == 0 ? Q(I.b[j]) * I.c[j] : Q(0));
      identity = identity && up == I.U_lim[j][i] * I.m[j] && I.L[j][i] * I.w[j] == I.L_lim[j][i] * I.m[j];
    }
  }
  out["prop44"] = uac_g && uac_m && identity ? S : X;
  out["@identity"] = st(identity);
  return out;
}

std::map<std::string, Status> observe(const Built& B, std::vector<std::string>& value_errors, const Instance& I) {
  CheckConfig cfg;
  std::map<std::string, Status> out;
  out["mass_convergence"] = mass_convergence_check(B.seq, B.m, cfg).status;
  out["vague"] = vague_check(B.seq, B.m, cfg).status;
  out["weak"] = weak_check(B.seq, B.m, cfg).status;
  const Verdict sw = setwise_check(B.seq, B.m, cfg);
  out["setwise"] = sw.status;
  out["portmanteau"] = portmanteau_check(B.seq, B.m, cfg).status;
  auto table = [&](const std::string& name, const UniformityReport& rep) {
    out[name] = rep.overall;
    for (std::size_t r = 0; r < rep.rows.size(); ++r) out[name + "@" + std::to_string(r)] = rep.rows[r].status;
  };
  table("uniform_abs_continuity", uniform_abs_continuity(B.seq, B.m, cfg));
  table("uac_integrals", uac_integrals(B.fseq, B.seq, cfg));
  table("uac_scalar_integrals", uac_scalar_integrals(B.gseq, B.seq, cfg));
  out["uniform_integrability"] = uniform_integrability(B.fseq, B.seq, cfg).status;
  out["ui_equivalence"] = ui_equivalence_check(B.fseq, B.seq, cfg).status;
  out["convergence_in_measure"] = convergence_in_measure_check(B.fseq, B.f, B.m, 0.05, cfg).status;
  out["scalar_integrability"] =
      scalar_integrability_report(B.g, B.m, directions(D), cfg.quad).as_verdict("scalar_integrability").status;
  out["prop_pw"] = prop_pw_verify(B.seq, B.m, cfg).status;
  out["prop_L4"] = prop_L4_verify(B.seq, B.m, B.f, cfg).status;
  out["vitali"] = vitali_verify(B.fseq, B.f, B.seq, B.m, cfg).status;
  out["thm42"] = thm42_verify(B.gseq, B.g, B.seq, B.m, cfg).status;
  const Verdict p44 = prop44_verify(B.gseq, B.g, B.seq, B.m, cfg);
  out["prop44"] = p44.status;
  if (const Verdict* v = p44.find_sub("v_limit_identity")) out["@identity"] = v->status;

  // The setwise error at n is sup_A |m_n(A) - m(A)| = max(positive part, negative part).
  for (int n = 1; n <= N; ++n) {
    Q pos, neg;
    for (int j = 0; j < K; ++j) {
      const Q diff = mass_at(I, j, n) - I.m[j];
      (diff > Q(0) ? pos : neg) += diff > Q(0) ? diff : -diff;
    }
    const double exact = dbl(std::max(pos, neg));
    if (std::abs(sw.trend[static_cast<std::size_t>(n - 1)] - exact) > 1e-12)
      value_errors.push_back("setwise error at n = " + std::to_string(n));
  }
  return out;
}

struct OracleSummary {
  int instances = 0;
  int comparisons = 0;
  std::map<std::string, int> disagreements;
  std::vector<std::string> examples;
  int value_errors = 0;
  int v_instances = 0;
  int v_supported = 0;
  int v_other_hypothesis = 0;
  bool v_consistent = true;
};

struct InstanceRun {
  Instance I;
  std::map<std::string, Status> expected, got;
  std::vector<std::string> value_errors;
};

InstanceRun run_instance(int k) {
  InstanceRun r;
  std::mt19937_64 rng(1000 + k);
  r.I = random_instance(rng);
  r.expected = oracle(r.I);
  r.got = observe(build(r.I), r.value_errors, r.I);
  return r;
}

// Instances are independent, so they are spread over the available cores.
std::vector<InstanceRun> run_instances(int instances) {
  std::vector<InstanceRun> runs(static_cast<std::size_t>(instances));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k; (k = next++) < instances;) runs[static_cast<std::size_t>(k)] = run_instance(k);
  };
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, instances);
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return runs;
}

OracleSummary run_oracle(int instances) {
  OracleSummary s;
  const std::vector<InstanceRun> runs = run_instances(instances);
  for (int k = 0; k < instances; ++k) {
    const auto& [I, expected, got, value_errors] = runs[static_cast<std::size_t>(k)];
    s.value_errors += static_cast<int>(value_errors.size());
    ++s.instances;
    for (const auto& [name, status] : expected) {
      ++s.comparisons;
      const auto it = got.find(name);
      const Status seen = it == got.end() ? Status::Inconclusive : it->second;
      if (it != got.end() && seen == status) continue;
      ++s.disagreements[name];
      if (s.examples.size() < 8)
        s.examples.push_back("seed " + std::to_string(1000 + k) + " " + name + ": expected " + to_string(status) +
                             ", got " + (it == got.end() ? std::string("nothing") : to_string(seen)));
    }
    if (I.v_by_construction) {
      ++s.v_instances;
      if (expected.at("@identity") != Status::Supported) s.v_consistent = false;
      if (got.at("prop44") == Status::Supported)
        ++s.v_supported;
      else if (expected.at("prop44") == Status::Inconclusive && got.at("prop44") == Status::Inconclusive)
        ++s.v_other_hypothesis;
    }
  }
  return s;
}

Outcome brute_force_oracle() {
  Outcome o;
  const OracleSummary s = run_oracle(100);
  int total = 0;
  for (const auto& [name, count] : s.disagreements) total += count;
  o.require(total == 0, std::to_string(total) + " of " + std::to_string(s.comparisons) + " verdicts differ");
  for (const auto& e : s.examples) o.require(false, e);
  o.require(s.value_errors == 0, std::to_string(s.value_errors) + " setwise errors differ from the exact sums");
  o.require(s.v_consistent, "an instance built to satisfy (v) violates it exactly");
  o.require(s.v_supported + s.v_other_hypothesis == s.v_instances,
            "prop44 not SUPPORTED on " + std::to_string(s.v_instances - s.v_supported - s.v_other_hypothesis) +
                " instances with (v) by construction");
  o.require(s.v_supported > 0, "no instance with (v) by construction reached prop44");
  if (o.pass)
    o.detail = std::to_string(s.instances) + " instances, " + std::to_string(s.comparisons) +
               " verdicts equal to the exact ones; prop44 SUPPORTED on " + std::to_string(s.v_supported) + " of " +
               std::to_string(s.v_instances) + " instances with (v) by construction (the other " +
               std::to_string(s.v_other_hypothesis) + " fail uniform absolute continuity and are INCONCLUSIVE)";
  return o;
}

// 8 ------------------------------------------------------------------------

Outcome invariant_suites() {
  Outcome o;
  constexpr int cases = 200;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Space sq = Space::box({0.0, 0.0}, {1.0, 1.0});
  auto random_box = [&]() {
    Point lo(2), hi(2);
    for (int i = 0; i < 2; ++i) {
      const double a = u(rng), b = u(rng);
      lo[i] = std::min(a, b);
      hi[i] = std::max(a, b);
    }
    return Box::half_open(lo, hi);
  };
  auto random_measure = [&]() {
    FiniteMeasure m = FiniteMeasure::zero(sq);
    for (int k = 0; k < 3; ++k) m = m.add(FiniteMeasure::dirac(sq, {std::floor(u(rng) * 8) / 8, std::floor(u(rng) * 8) / 8}, u(rng)));
    for (int k = 0; k < 2; ++k) m = m.add(FiniteMeasure::uniform(sq, random_box(), 2.0 * u(rng)));
    return m;
  };

  int additivity = 0, linearity = 0, sublinear = 0, pettis = 0;
  for (int t = 0; t < cases; ++t) {
    const FiniteMeasure m = random_measure();
    const BorelSet A = BorelSet::of(random_box()), B = BorelSet::of(random_box());
    const double lhs = m.evaluate(A.unite(B)) + m.evaluate(A.intersect(B));
    const double rhs = m.evaluate(A) + m.evaluate(B);
    const double split = m.evaluate(A.subtract(B)) + m.evaluate(A.intersect(B));
    if (std::abs(lhs - rhs) <= 1e-12 * (1.0 + m.total_mass()) && std::abs(split - m.evaluate(A)) <= 1e-12 * (1.0 + m.total_mass()))
      ++additivity;

    const ScalarFn f = fn::affine({u(rng) - 0.5, u(rng) - 0.5}, u(rng));
    const ScalarFn g = fn::indicator(random_box(), u(rng) * 3.0);
    const double alpha = 4.0 * u(rng) - 2.0, beta = 4.0 * u(rng) - 2.0;
    const IntegralResult ifg = integrate(fn::sum({fn::scaled(f, alpha), fn::scaled(g, beta)}), m, A);
    const IntegralResult iff = integrate(f, m, A), igg = integrate(g, m, A);
    const double bound = ifg.error + std::abs(alpha) * iff.error + std::abs(beta) * igg.error + 1e-9;
    if (std::abs(ifg.value - alpha * iff.value - beta * igg.value) <= bound) ++linearity;

    const std::size_t d = 1 + static_cast<std::size_t>(t % 4);
    BoxBody C;
    Point x(d), y(d);
    C.lower.resize(d);
    C.upper.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      C.lower[i] = 4.0 * u(rng) - 2.0;
      C.upper[i] = C.lower[i] + u(rng);
      x[i] = 2.0 * u(rng) - 1.0;
      y[i] = 2.0 * u(rng) - 1.0;
    }
    const double lam = 3.0 * u(rng);
    Point xy(d), lx(d);
    for (std::size_t i = 0; i < d; ++i) {
      xy[i] = x[i] + y[i];
      lx[i] = lam * x[i];
    }
    if (support(xy, C) <= support(x, C) + support(y, C) + 1e-12 &&
        std::abs(support(lx, C) - lam * support(x, C)) <= 1e-12)
      ++sublinear;

    // Pettis additivity and monotonicity against exact sums on Ω = {1..8}.
    std::mt19937_64 prng(5000 + t);
    Instance I = random_instance(prng);
    for (int j = 0; j < K; ++j) I.b[j] = 0;
    const FiniteMeasure mm = measure_of([&](int j) { return I.w[j]; });
    const Multifunction G =
        multifunction_of([&](int j, int i) { return I.L[j][i]; }, [&](int j, int i) { return I.U[j][i]; });
    const Multifunction wide = multifunction_of([&](int j, int i) { return I.L[j][i] - I.e[j][i]; },
                                                [&](int j, int i) { return I.U[j][i] + I.e[j][i]; });
    std::vector<Point> odd, even;
    for (int j = 1; j <= K; ++j) (j % 2 ? odd : even).push_back({double(j)});
    const BorelSet Po = BorelSet::points(1, odd), Pe = BorelSet::points(1, even);
    const PettisIntegral whole = pettis_integral(G, mm), po = pettis_integral(G, mm, Po), pe = pettis_integral(G, mm, Pe);
    bool ok = true;
    for (int i = 0; i < D; ++i) {
      Q lo, hi;
      for (int j = 0; j < K; ++j) {
        lo += I.L[j][i] * I.w[j];
        hi += I.U[j][i] * I.w[j];
      }
      ok = ok && std::abs(whole.body.lower[i] - dbl(lo)) <= 1e-12 && std::abs(whole.body.upper[i] - dbl(hi)) <= 1e-12;
    }
    const BoxBody sum = po.body + pe.body;
    ok = ok && sum.contains(whole.body, 1e-12) && whole.body.contains(sum, 1e-12);
    ok = ok && pettis_integral(wide, mm).body.contains(whole.body, 1e-12);
    if (ok) ++pettis;
  }
  auto line = [&](const char* what, int passed) {
    o.require(passed == cases, std::string(what) + " " + std::to_string(passed) + "/" + std::to_string(cases));
  };
  line("measure additivity", additivity);
  line("integral linearity", linearity);
  line("support sublinearity", sublinear);
  line("Pettis additivity/monotonicity", pettis);
  if (o.pass) o.detail = "4 suites x " + std::to_string(cases) + " cases, no failures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Dirac escape: vague yes, mass and weak no", dirac_escape},
      {"dominated sequence converges setwise with error |A|/n", dominated_setwise},
      {"Vitali theorem on f_n = x + 1/n", vitali_linear},
      {"uniform integrability vs integral continuity", ui_equivalence},
      {"Pettis integral of [-t, t]", pettis_interval},
      {"interval-valued limit theorem", thm42_interval},
      {"brute-force oracle on a finite space", brute_force_oracle},
      {"invariant suites", invariant_suites},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
