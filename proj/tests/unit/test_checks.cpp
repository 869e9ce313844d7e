#include <catch_amalgamated.hpp>

#include <cmath>

#include "measlab/detail/checks.hpp"
#include "measlab/verdict.hpp"

using namespace measlab;
using namespace measlab::detail;

namespace {

constexpr int N = 64;

detail::Series two_members(double (*a)(int), double (*b)(int)) {
  detail::Series s;
  s.labels = {"a", "b"};
  s.resize(2, N);
  for (int n = 1; n <= N; ++n) {
    s.set(0, n, a(n), 0.0);
    s.set(1, n, b(n), 0.0);
  }
  return s;
}

}  // namespace

TEST_CASE("aggregate: a plateau member refutes under a decaying envelope") {
  const auto s = two_members([](int n) { return 10.0 / n; }, [](int) { return 0.01; });
  const Verdict v = aggregate("probe", s, "function", CheckConfig{}.trend(1.0));
  CHECK(v.status == Status::Refuted);
  CHECK(v.basis == "stabilized member");
  REQUIRE(v.witness);
  CHECK(v.witness->label == "b");
}

TEST_CASE("aggregate: decaying members are supported") {
  const auto s = two_members([](int n) { return 10.0 / n; }, [](int n) { return 1.0 / (double(n) * n); });
  CHECK(aggregate("probe", s, "function", CheckConfig{}.trend(1.0)).status == Status::Supported);
}

TEST_CASE("uniformity: bounded mass ratio on vanishing sets is supported") {
  // control and effect shrink together, as for a bounded integrand on a
  // set whose mass is c/n.
  const auto cands = [](int n) {
    return std::vector<Candidate>{{"A", 0.5 / n, 0.25 / n, 1.0}};
  };
  const UniformityReport rep = uniformity("probe", N, cands, 1.0, CheckConfig{});
  CHECK(rep.overall == Status::Supported);
  for (const auto& r : rep.rows) CHECK(r.status == Status::Supported);
  CHECK(rep.rows.back().note == "mass ratio on sets reaching eps stays bounded");
}

TEST_CASE("uniformity: a fixed set keeping its effect while its mass vanishes refutes") {
  const auto cands = [](int n) {
    return std::vector<Candidate>{{"E", 1.0 / n, 1.0, 1.0}, {"B", 0.5, 0.5, 0.5}};
  };
  const UniformityReport rep = uniformity("probe", N, cands, 1.0, CheckConfig{});
  CHECK(rep.overall == Status::Refuted);
  for (const auto& r : rep.rows) {
    REQUIRE(r.status == Status::Refuted);
    REQUIRE(r.witness);
    CHECK(r.witness->label == "E");
  }
}

TEST_CASE("uniformity: a set whose mass stays away from 0 is harmless") {
  const auto cands = [](int) { return std::vector<Candidate>{{"B", 0.5, 0.5, 0.5}}; };
  CHECK(uniformity("probe", N, cands, 1.0, CheckConfig{}).overall == Status::Supported);
}
