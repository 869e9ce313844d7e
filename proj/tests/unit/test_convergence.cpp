#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "measlab/convergence.hpp"
#include "measlab/error.hpp"

using namespace measlab;
using Catch::Approx;

namespace {

constexpr int N = 64;
const Space kUnit = Space::box({0.0}, {1.0});
const FiniteMeasure kLeb = FiniteMeasure::lebesgue(kUnit);

MeasureSequence escape_seq(const Space& s) {
  return MeasureSequence(s, [s](int n) { return FiniteMeasure::dirac(s, {double(n)}); }, N);
}

MeasureSequence dominated_seq() {
  return MeasureSequence(kUnit, [](int n) { return FiniteMeasure::lebesgue(kUnit, 1.0 - 1.0 / n); }, N);
}

MeasureSequence collapse_seq() {
  return MeasureSequence(kUnit, [](int n) { return FiniteMeasure::dirac(kUnit, {1.0 / n}); }, N);
}

FunctionSequence spike_seq() {
  return FunctionSequence([](int n) { return fn::indicator(Box::half_open({0.0}, {1.0 / n}), n); }, N);
}

FunctionSequence linear_seq() {
  return FunctionSequence([](int n) { return fn::affine({1.0}, 1.0 / n); }, N);
}

}  // namespace

TEST_CASE("escaping point masses converge vaguely but not weakly") {
  const Space s = Space::box({0.0}, {double(N)}, {true});
  const auto seq = escape_seq(s);
  const FiniteMeasure zero = FiniteMeasure::zero(s);
  CHECK(vague_check(seq, zero).status == Status::Supported);
  const Verdict mass = mass_convergence_check(seq, zero);
  CHECK(mass.status == Status::Refuted);
  REQUIRE(mass.witness);
  CHECK(mass.witness->value == 1.0);
  CHECK(mass.witness->reference == 0.0);
  const Verdict weak = weak_check(seq, zero);
  CHECK(weak.status == Status::Refuted);
  REQUIRE(weak.witness);
  CHECK(weak.witness->kind == "function");
  CHECK(setwise_check(seq, zero).status == Status::Refuted);
  CHECK(uniform_abs_continuity(seq, zero).overall == Status::Refuted);
  const Verdict pw = prop_pw_verify(seq, zero);
  CHECK(pw.status == Status::Inconclusive);
  CHECK(pw.basis == "not applicable");
}

TEST_CASE("collapsing point masses converge weakly, not setwise") {
  const FiniteMeasure d0 = FiniteMeasure::dirac(kUnit, {0.0});
  CHECK(vague_check(collapse_seq(), d0).status == Status::Supported);
  CHECK(weak_check(collapse_seq(), d0).status == Status::Supported);
  const Verdict sw = setwise_check(collapse_seq(), d0);
  CHECK(sw.status == Status::Refuted);
  REQUIRE(sw.witness);
  CHECK(sw.witness->label == "{0}");
  CHECK(portmanteau_check(collapse_seq(), d0).status == Status::Supported);
}

TEST_CASE("a dominated sequence converges setwise with error |A|/n") {
  const auto seq = dominated_seq();
  const auto ring = default_ring(kUnit, kLeb, {});
  const Verdict sw = setwise_check(seq, kLeb, ring);
  CHECK(sw.status == Status::Supported);
  double worst = 0.0;
  for (const auto& a : ring) worst = std::max(worst, a.set.volume());
  CHECK(sw.trend.back() == Approx(worst / N).margin(1e-12));
  const Verdict l4 = prop_L4_verify(seq, kLeb, fn::coordinate(0, 1), ring);
  CHECK(l4.status == Status::Supported);
  CHECK(l4.find_sub("dominated")->status == Status::Supported);
}

TEST_CASE("prop_L4 is not applicable without domination") {
  const auto up = MeasureSequence(kUnit, [](int n) { return FiniteMeasure::lebesgue(kUnit, 1.0 + 1.0 / n); }, N);
  const Verdict v = prop_L4_verify(up, kLeb, fn::coordinate(0, 1));
  CHECK(v.status == Status::Inconclusive);
  CHECK(v.find_sub("dominated")->status == Status::Refuted);
}

TEST_CASE("uniform absolute continuity tables") {
  const UniformityReport ok = uniform_abs_continuity(dominated_seq(), kLeb);
  CHECK(ok.overall == Status::Supported);
  for (const auto& r : ok.rows) CHECK(r.delta > 0.0);
  CHECK(ok.to_json()["rows"].size() == ok.rows.size());
  const UniformityReport bad = uniform_abs_continuity(collapse_seq(), FiniteMeasure::dirac(kUnit, {0.0}));
  CHECK(bad.overall == Status::Refuted);
}

TEST_CASE("the spike fails uniform integrability and integral continuity") {
  const auto seq = MeasureSequence::constant(kLeb, N);
  const Verdict ui = uniform_integrability(spike_seq(), seq);
  CHECK(ui.status == Status::Refuted);
  for (double t : ui.trend) CHECK(t >= 1.0 - 1e-12);
  const UniformityReport uac = uac_integrals(spike_seq(), seq);
  CHECK(uac.overall == Status::Refuted);
  for (const auto& r : uac.rows) {
    REQUIRE(r.status == Status::Refuted);
    REQUIRE(r.witness);
    const int n = r.witness->index;
    CHECK(r.witness->label == BorelSet::half_open(kUnit, {0.0}, {1.0 / n}).to_string());
  }
  const Verdict eq = ui_equivalence_check(spike_seq(), seq);
  CHECK(eq.status == Status::Supported);
  CHECK(eq.note == "both sides fail");
}

TEST_CASE("a bounded family is uniformly integrable") {
  const auto seq = MeasureSequence::constant(kLeb, N);
  CHECK(uniform_integrability(linear_seq(), seq).status == Status::Supported);
  CHECK(uac_integrals(linear_seq(), seq).overall == Status::Supported);
  const Verdict eq = ui_equivalence_check(linear_seq(), seq);
  CHECK(eq.status == Status::Supported);
  CHECK(eq.note == "both sides hold");
}

TEST_CASE("Vitali on f_n = x + 1/n") {
  const Verdict v = vitali_verify(linear_seq(), fn::coordinate(0, 1), dominated_seq(), kLeb);
  CHECK(v.status == Status::Supported);
  for (const char* h : {"pointwise_ae", "limit_continuous", "uac_integrals_fn", "uac_integrals_f", "vague",
                        "uniform_abs_continuity"}) {
    INFO(h);
    REQUIRE(v.find_sub(h));
    CHECK(v.find_sub(h)->status == Status::Supported);
  }
  CHECK(vitali_cb_verify(linear_seq(), fn::coordinate(0, 1), dominated_seq(), kLeb).status == Status::Supported);
  CHECK(vitali_pm_verify(linear_seq(), fn::coordinate(0, 1), dominated_seq(), kLeb).status == Status::Supported);
}

TEST_CASE("Vitali does not apply to the spike") {
  const Verdict v = vitali_verify(spike_seq(), fn::constant(0.0), MeasureSequence::constant(kLeb, N), kLeb);
  CHECK(v.status == Status::Inconclusive);
  CHECK(v.find_sub("uac_integrals_fn")->status == Status::Refuted);
  CHECK(v.find_sub("limit_all_sets")->status == Status::Refuted);
}

TEST_CASE("convergence in measure") {
  CHECK(convergence_in_measure_check(linear_seq(), fn::coordinate(0, 1), kLeb, 0.05).status == Status::Supported);
  CHECK(convergence_in_measure_check(spike_seq(), fn::constant(1.0), kLeb, 0.5).status == Status::Refuted);
  CHECK_THROWS_AS(convergence_in_measure_check(linear_seq(), fn::constant(0.0), kLeb, 0.0), InvalidArgument);
}

TEST_CASE("mismatched spaces and ranges are rejected") {
  const Space other = Space::box({0.0}, {2.0});
  CHECK_THROWS_AS(setwise_check(dominated_seq(), FiniteMeasure::lebesgue(other)), DomainMismatch);
  const FunctionSequence short_seq([](int) { return fn::constant(1.0); }, 8);
  CHECK_THROWS_AS(uniform_integrability(short_seq, dominated_seq()), InvalidArgument);
}

TEST_CASE("verdicts are deterministic") {
  const Verdict a = vitali_verify(linear_seq(), fn::coordinate(0, 1), dominated_seq(), kLeb);
  const Verdict b = vitali_verify(linear_seq(), fn::coordinate(0, 1), dominated_seq(), kLeb);
  CHECK(a.to_json().dump() == b.to_json().dump());
}

// Random instances m_n = (1 + c/n^p) m + (w/n) δ_{x_n}; they exercise the
// relations that must hold between verdicts on any instance.
TEST_CASE("property: mode hierarchy, prop_L4 and prop_pw consistency on random instances") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CheckConfig cfg;
  cfg.resolution = 3;
  for (int trial = 0; trial < 24; ++trial) {
    const double c = u(rng) < 0.5 ? -u(rng) * 0.9 : u(rng), p = 0.5 + u(rng);
    const double w = u(rng) < 0.5 ? 0.0 : u(rng) * 2.0;
    const double x0 = std::floor(u(rng) * 8.0) / 8.0;
    const bool stick = u(rng) < 0.3;  // a point mass that does not vanish
    const FiniteMeasure m = FiniteMeasure::lebesgue(kUnit).add(
        stick ? FiniteMeasure::dirac(kUnit, {x0}, 0.5) : FiniteMeasure::zero(kUnit));
    const MeasureSequence seq(
        kUnit,
        [=](int n) {
          FiniteMeasure mn = m.scale(1.0 + c * std::pow(n, -p));
          if (w > 0.0) mn = mn.add(FiniteMeasure::dirac(kUnit, {x0 + (1.0 - x0) / (n + 1.0)}, w / n));
          return mn;
        },
        32);
    INFO("trial " << trial);
    const Status vague = vague_check(seq, m, cfg).status;
    const Status weak = weak_check(seq, m, cfg).status;
    const Status setwise = setwise_check(seq, m, cfg).status;
    if (setwise == Status::Supported) REQUIRE(weak != Status::Refuted);
    if (weak == Status::Supported) REQUIRE(vague != Status::Refuted);
    const Verdict l4 = prop_L4_verify(seq, m, fn::constant(1.0), cfg);
    if (l4.find_sub("dominated")->status == Status::Supported && vague == Status::Supported)
      REQUIRE(setwise != Status::Refuted);
    const Verdict pw = prop_pw_verify(seq, m, cfg);
    if (pw.status != Status::Inconclusive) REQUIRE(weak != Status::Refuted);
  }
}

TEST_CASE("property: with f = 1 the Vitali ring statement is setwise convergence") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CheckConfig cfg;
  cfg.resolution = 3;
  for (int trial = 0; trial < 12; ++trial) {
    const double c = u(rng), floor = u(rng) < 0.5 ? 0.0 : 0.3 * u(rng);
    const MeasureSequence seq(
        kUnit,
        [=](int n) {
          return FiniteMeasure::uniform(kUnit, Box::half_open({0.0}, {0.5}), 1.0 + floor + c / n)
              .add(FiniteMeasure::uniform(kUnit, Box::half_open({0.5}, {1.0}), 1.0));
        },
        32);
    const FiniteMeasure m = FiniteMeasure::lebesgue(kUnit);
    const auto ring = default_ring(kUnit, m, cfg);
    const Verdict v = vitali_verify(FunctionSequence::constant(fn::constant(1.0), 32), fn::constant(1.0), seq, m, ring, cfg);
    REQUIRE(v.find_sub("step3_ring")->status == setwise_check(seq, m, ring, cfg).status);
  }
}
