#include <catch_amalgamated.hpp>

#include <random>

#include "measlab/error.hpp"
#include "measlab/integration.hpp"
#include "measlab/test_functions.hpp"

using namespace measlab;
using Catch::Approx;

TEST_CASE("an Urysohn bump is 1 on K and 0 off U") {
  const ScalarFn h = urysohn({Box::closed({0.25}, {0.5}), Box::open({0.0}, {0.75})});
  CHECK(h({0.3}) == 1.0);
  CHECK(h({0.8}) == 0.0);
  CHECK(h({0.125}) == Approx(0.5));
  CHECK(h.cls() == FnClass::Cc);
  CHECK(h.traits().lipschitz.value() == Approx(4.0));
}

TEST_CASE("bumps need a positive gap") {
  CHECK_THROWS_AS(urysohn({Box::closed({0.0}, {1.0}), Box::open({0.0}, {2.0})}), InvalidArgument);
}

TEST_CASE("family sizes follow the dyadic lattice") {
  const Space s = Space::box({0.0}, {1.0});
  CHECK(c0_family(s, 3).size() == 1 + 2 + 4 + 8);
  CHECK(cb_family(s, 3).size() == 2 + 15);
  const Space sq = Space::box({0.0, 0.0}, {1.0, 1.0});
  CHECK(c0_family(sq, 2).size() == 1 + 4 + 16);
  const FunctionFamily f = c0_family(s, 2);
  CHECK(f.to_json()["members"].size() == f.size());
}

TEST_CASE("families are deterministic") {
  const Space s = Space::box({0.0}, {2.0});
  const auto a = c0_family(s, 3), b = c0_family(s, 3);
  REQUIRE(a.labels == b.labels);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.members[i]({0.7}) == b.members[i]({0.7}));
}

TEST_CASE("bumps on a truncated axis stay inside the core") {
  const Space s = Space::box({0.0}, {64.0}, {true});
  for (const auto& h : c0_family(s, 4).members) CHECK(h({40.0}) == 0.0);
}

TEST_CASE("a discrete space gets point indicators") {
  const Space d = Space::discrete({{1}, {2}});
  const FunctionFamily f = c0_family(d, 4);
  REQUIRE(f.size() == 2);
  CHECK(f.members[0]({1}) == 1.0);
  CHECK(f.members[0]({2}) == 0.0);
}

TEST_CASE("the continuity probe finds jumps at declared breaks") {
  const Space s = Space::box({0.0}, {1.0});
  CHECK(probe_continuity(fn::coordinate(0, 1), s).continuous);
  const auto p = probe_continuity(fn::indicator(Box::half_open({0.0}, {0.5})), s);
  CHECK_FALSE(p.continuous);
  CHECK(p.where[0] == Approx(0.5));
}

TEST_CASE("property: bumps take values in [0,1] and vanish off U") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = u(rng) * 0.4, b = a + 0.1 + u(rng) * 0.3, g = 0.01 + u(rng) * 0.1;
    const ScalarFn h = urysohn({Box::closed({a}, {b}), Box::open({a - g}, {b + g})});
    const double x = -0.5 + 2.0 * u(rng);
    const double v = h({x});
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    if (x <= a - g || x >= b + g) REQUIRE(v == 0.0);
    if (x >= a && x <= b) REQUIRE(v == 1.0);
  }
}
