#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "measlab/error.hpp"
#include "measlab/numeric.hpp"
#include "measlab/verdict.hpp"

using namespace measlab;

namespace {

std::vector<double> series(int n, double (*f)(int)) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(f(k));
  return out;
}

}  // namespace

TEST_CASE("trend: zero tail is below tolerance") {
  const auto t = classify_trend(std::vector<double>(64, 0.0), {});
  CHECK(t.status == Status::Supported);
  CHECK(t.basis == "below_tol");
}

TEST_CASE("trend: 1/n decay extrapolates to zero") {
  const auto t = classify_trend(series(64, [](int n) { return 1.0 / n; }), {});
  CHECK(t.status == Status::Supported);
  CHECK(t.basis == "extrapolated");
  CHECK(std::abs(t.limit) < 1e-3);
}

TEST_CASE("trend: a constant tail is refuted") {
  const auto t = classify_trend(std::vector<double>(64, 1.0), {});
  CHECK(t.status == Status::Refuted);
  CHECK(t.final_mean == 1.0);
}

TEST_CASE("trend: decay towards a positive floor is refuted") {
  const auto t = classify_trend(series(64, [](int n) { return 0.5 + 1.0 / n; }), {});
  CHECK(t.status == Status::Refuted);
  CHECK(t.limit > 0.4);
}

TEST_CASE("trend: growth is refuted") {
  CHECK(classify_trend(series(64, [](int n) { return double(n); }), {}).status == Status::Refuted);
}

TEST_CASE("trend: slow logarithmic decay is not supported") {
  const auto t = classify_trend(series(64, [](int n) { return 1.0 / std::log(n + 1.0); }), {});
  CHECK(t.status != Status::Supported);
}

TEST_CASE("trend: short or non-finite series are inconclusive") {
  CHECK(classify_trend({1.0, 0.5, 0.2}, {}).status == Status::Inconclusive);
  std::vector<double> nan(64, 0.0);
  nan[40] = std::nan("");
  CHECK(classify_trend(nan, {}).status == Status::Inconclusive);
  std::vector<double> inf(64, kInf);
  CHECK(classify_trend(inf, {}).status == Status::Refuted);
}

TEST_CASE("trend: config is validated") {
  TrendConfig c;
  c.windows = 2;
  CHECK_THROWS_AS(classify_trend(std::vector<double>(64, 0.0), c), InvalidArgument);
}

TEST_CASE("boundedness heuristic") {
  CHECK(looks_bounded(series(64, [](int n) { return 2.0 - 1.0 / n; }), {}));
  CHECK_FALSE(looks_bounded(series(64, [](int n) { return double(n); }), {}));
  CHECK(looks_bounded(series(64, [](int n) { return 3.0 - 1.0 / (double(n) * n); }), {}));
  CHECK_FALSE(looks_bounded(series(64, [](int n) { return std::sqrt(double(n)); }), {}));
}

TEST_CASE("witness formatting") {
  CHECK(Witness{"function", "1", 64, 1.0, 0.0}.to_string() == "g = 1 at n=64: 1 vs 0");
  CHECK(Witness{"set", "Ω", 64, 1.0, 0.0}.to_string() == "A = Ω at n=64: 1 vs 0");
}

TEST_CASE("status strings round-trip") {
  for (Status s : {Status::Supported, Status::Refuted, Status::Inconclusive}) CHECK(parse_status(to_string(s)) == s);
  CHECK(parse_status("NOT-APPLICABLE") == Status::Inconclusive);
  CHECK_THROWS_AS(parse_status("maybe"), InvalidArgument);
}

TEST_CASE("property: the trend verdict is invariant under joint scaling of errors and scale") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double floor = u(rng) < 0.5 ? 0.0 : u(rng);
    const double p = 0.5 + 2.0 * u(rng), c = u(rng);
    std::vector<double> e;
    for (int n = 1; n <= 64; ++n) e.push_back(floor + c * std::pow(n, -p));
    const double k = std::ldexp(1.0, static_cast<int>(u(rng) * 20) - 10);
    std::vector<double> scaled;
    for (double v : e) scaled.push_back(k * v);
    TrendConfig a, b;
    b.scale = k;
    REQUIRE(classify_trend(e, a).status == classify_trend(scaled, b).status);
    // A floor the transient has already sunk below is a stabilized lower bound.
    if (floor > 0.01 && c * std::pow(64.0, -p) < floor / 4) REQUIRE(classify_trend(e, a).status == Status::Refuted);
  }
}
