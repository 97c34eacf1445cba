// Copyright 2026 The seqqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "seqqkd/eavesdrop.hpp"
#include "seqqkd/errors.hpp"
#include "seqqkd/keyrate.hpp"
#include "support.hpp"

using namespace seqqkd;
using seqqkd::testing::uniform;

namespace {

constexpr std::size_t Q = 2;  // index of "?"

double h(const std::vector<double>& p) {
  double out = 0;
  for (double x : p)
    if (x > 0) out -= x * std::log2(x);
  return out;
}

// Key rate at equal priors and alpha = u = 1 - s written directly from the
// scalar tables, with no use of the library's distributions.
double oracle_key_rate(double s, double eta) {
  const double a = 1 - s;
  const double c = (1 - eta) / (2 * (1 - s * s));
  // P_AB over conclusive b
  const double same = 0.5 * (eta * a + c * a), diff = 0.5 * c * a;
  const double zab = 2 * (same + diff);
  const double hba = h({same / zab, diff / zab, diff / zab, same / zab});
  // P_BE over b in {0,1,?}, e in {0,1}
  const double bb = c * a * a;        // (b, e=b)
  const double qe = c * (1 - a) * a;  // (?, e)
  const double z = 2 * bb + 2 * qe;
  if (z == 0) return std::max(0.0, 1 - hba + 1.0);
  const double pe = (bb + qe) / z;
  const double hbe = h({bb / z, bb / z, qe / z, qe / z});
  return std::max(0.0, 1 - hba - h({pe, pe}) + hbe);
}

ScenarioParams random_feasible() {
  ScenarioParams p;
  p.q0 = uniform(0.1, 0.9);
  p.q1 = 1.0 - p.q0;
  p.s = uniform(0.0, 0.95);
  p.eta_ab = uniform(0.0, 1.0);
  p.alpha0 = uniform(0.0, 1.0 - p.s * p.s);
  p.alpha1 = uniform(0.0, 1.0 - p.s * p.s / (1.0 - p.alpha0));
  p.u1 = uniform(0.0, 1.0 - p.s * p.s);
  p.u0 = uniform(0.0, 1.0 - p.s * p.s / (1.0 - p.u1));
  return p;
}

}  // namespace

TEST_CASE("joint distribution bookkeeping") {
  auto d = JointDistribution::zeros({alice_axis(), outcome_axis("b")}, true);
  d.at({0, 0}) = 0.25;
  d.at({1, 2}) = 0.75;
  CHECK(d.total() == 1.0);
  auto m = d.marginal({"b"});
  CHECK(m.at({0}) == 0.25);
  CHECK(m.at({2}) == 0.75);
  CHECK(m.total() == d.total());
  auto swapped = d.marginal({"b", "a"});
  CHECK(swapped.at({2, 1}) == 0.75);
  CHECK_THROWS_AS(d.at({2, 0}), LabelError);
  CHECK_THROWS_AS(d.marginal({"e"}), LabelError);
  CHECK_THROWS_AS(JointDistribution({alice_axis()}, {0.5, -0.1}, false), ParameterError);
}

TEST_CASE("joint_ab against the scalar formula") {
  for (int i = 0; i < 20; ++i) {
    auto p = random_feasible();
    auto d = joint_ab(p);
    CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-12));
    for (Bit a : kBits) {
      double conclusive = 0;
      for (Bit b : kBits) {
        double v = p.prior(a) * ((a == b ? p.eta_ab * p.alpha(b) : 0.0) +
                                 (1 - p.eta_ab) * p.alpha(b) / (2 * (1 - p.s * p.s)));
        REQUIRE(d.at({index(a), index(b)}) == doctest::Approx(v).epsilon(1e-12));
        conclusive += v;
      }
      REQUIRE(d.at({index(a), Q}) == doctest::Approx(p.prior(a) - conclusive).epsilon(1e-12));
    }
  }
}

TEST_CASE("joint_ab equal-prior examples") {
  for (double s : {0.2, 0.6}) {
    auto d = joint_ab(optimal_scenario(0.5, 0.5, s, 0.7));
    CHECK(d.at({0, 0}) == doctest::Approx(0.5 * (0.7 * (1 - s) + 0.3 / (2 * (1 + s)))));
    CHECK(d.at({0, 1}) == doctest::Approx(0.3 / (4 * (1 + s))));
  }
  auto d = joint_ab(optimal_scenario(0.5, 0.5, 0.0, 0.9));
  CHECK(d.at({0, 0}) == doctest::Approx(0.475));
  CHECK(d.at({0, 1}) == doctest::Approx(0.025));
  auto perfect = joint_ab(optimal_scenario(0.5, 0.5, 0.0, 1.0));
  CHECK(perfect.at({0, 0}) == doctest::Approx(0.5));
  CHECK(perfect.at({0, 1}) == 0.0);
  CHECK(perfect.at({0, Q}) == doctest::Approx(0.0).epsilon(1e-15));
  auto pp = postprocess_ab(d);
  CHECK(pp.at({0, 0}) == doctest::Approx(0.475));
  CHECK(pp.at({0, 1}) == doctest::Approx(0.025));
  CHECK(pp.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint_abe structure") {
  auto p = optimal_scenario(0.5, 0.5, 0.4, 0.7);
  auto t1 = joint_abe(p, Structure::TypeI);
  auto t2 = joint_abe(p, Structure::TypeII);
  CHECK(t1.max_difference(t2) < 1e-12);
  CHECK(t1.marginal({"a", "b"}).max_difference(joint_ab(p)) < 1e-12);
  for (int i = 0; i < 3; ++i) {
    auto q = random_feasible();
    auto t = joint_abe(q);
    for (std::size_t a = 0; a < 2; ++a) {
      REQUIRE(t.at({a, 0, 1}) < 1e-15);
      REQUIRE(t.at({a, 1, 0}) < 1e-15);
    }
    REQUIRE(t.marginal({"a", "b"}).max_difference(joint_ab(q)) < 1e-12);
  }
}

TEST_CASE("bob frame leaves every table unchanged") {
  for (int i = 0; i < 10; ++i) {
    auto p = random_feasible();
    auto u = seqqkd::testing::random_unitary(2);
    REQUIRE(joint_abe(p, Structure::TypeI, u).max_difference(joint_abe(p)) < 1e-12);
    REQUIRE(joint_abe(p, Structure::TypeII, u).max_difference(joint_abe(p, Structure::TypeII)) < 1e-12);
  }
}

TEST_CASE("joint_be entries") {
  for (int i = 0; i < 10; ++i) {
    auto p = random_feasible();
    auto be = joint_be(p);
    const double c = (1 - p.eta_ab) / (2 * (1 - p.s * p.s));
    for (Bit b : kBits) {
      REQUIRE(be.at({index(b), index(b)}) == doctest::Approx(c * p.alpha(b) * p.u(b)).epsilon(1e-12));
      REQUIRE(be.at({Q, index(b)}) == doctest::Approx(c * (1 - p.alpha(b)) * p.u(b)).epsilon(1e-12));
    }
    REQUIRE(be.at({0, 1}) < 1e-15);
    REQUIRE(be.at({1, 0}) < 1e-15);
  }
  SUBCASE("equal-prior closed forms") {
    const double s = 0.5, eta = 0.5;
    auto be = joint_be(optimal_scenario(0.5, 0.5, s, eta));
    CHECK(be.at({0, 0}) == doctest::Approx((1 - eta) * (1 - s) / (2 * (1 + s))));
    CHECK(be.at({1, 1}) == doctest::Approx((1 - eta) * (1 - s) / (2 * (1 + s))));
    CHECK(be.at({Q, 0}) == doctest::Approx((1 - eta) * s / (2 * (1 + s))));
    // conclusive Bob, inconclusive Eve: flag mass plus the entangled remainder
    CHECK(be.at({0, Q}) == doctest::Approx(0.5 * eta * (1 - s) + (1 - eta) * s / (2 * (1 + s))));
    CHECK(be.total() == doctest::Approx(1.0));
  }
  auto s0 = joint_be(optimal_scenario(0.5, 0.5, 0.0, 0.5));
  CHECK(s0.at({0, 0}) == doctest::Approx(0.25));
  CHECK(s0.at({1, 1}) == doctest::Approx(0.25));
  auto clean = joint_be(optimal_scenario(0.5, 0.5, 0.3, 1.0));
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t e = 0; e < 2; ++e) CHECK(clean.at({b, e}) < 1e-15);
}

TEST_CASE("post-processing") {
  auto p = optimal_scenario(0.5, 0.5, 0.5, 0.5);
  auto be = joint_be(p);
  auto pbe = postprocess_be(be);
  CHECK(pbe.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pbe.axes()[0].size() == 3);
  CHECK(pbe.axes()[1].size() == 2);
  const double c = 0.5 / (2 * 0.75);
  const double z = 2 * c * 0.25 + 2 * c * 0.25;
  CHECK(pbe.at({Q, 0}) == doctest::Approx(c * 0.5 * 0.5 / z));
  // Discarding Bob's ? too would give a different table.
  double kept_conclusive = be.at({0, 0}) + be.at({1, 1});
  CHECK(pbe.at({0, 0}) != doctest::Approx(be.at({0, 0}) / kept_conclusive));

  auto already = JointDistribution({alice_axis(), outcome_axis("b")}, {0.4, 0.1, 0, 0.1, 0.4, 0}, true);
  CHECK(postprocess_ab(already).max_difference(
            JointDistribution({alice_axis(), conclusive_axis("b")}, {0.4, 0.1, 0.1, 0.4}, true)) < 1e-15);
  auto empty = JointDistribution({alice_axis(), outcome_axis("b")}, {0, 0, 0.5, 0, 0, 0.5}, true);
  CHECK_THROWS_AS(postprocess_ab(empty), DegenerateDistributionError);
  CHECK_THROWS_AS(postprocess_be(joint_be(optimal_scenario(0.5, 0.5, 0.3, 1.0))), DegenerateDistributionError);
}

TEST_CASE("entropy") {
  CHECK(shannon_entropy({0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(shannon_entropy({1.0, 0.0}) == 0.0);
  CHECK(shannon_entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
}

TEST_CASE("key rate examples") {
  auto clean = secret_key_rate(optimal_scenario(0.5, 0.5, 0.5, 1.0));
  CHECK(clean.key_rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(clean.eve_informative);
  for (double s : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9})
    for (double eta : {0.6, 0.75, 0.9, 1.0}) {
      auto p = optimal_scenario(0.5, 0.5, s, eta);
      REQUIRE(secret_key_rate(p).key_rate == doctest::Approx(oracle_key_rate(s, eta)).epsilon(1e-11));
      REQUIRE(std::abs(secret_key_rate(p, Structure::TypeI).raw - secret_key_rate(p, Structure::TypeII).raw) <
              1e-12);
      REQUIRE(secret_key_rate(p, Structure::TypeI, KeyRateConvention::PostSelectedAlice).key_rate ==
              doctest::Approx(secret_key_rate(p).key_rate).epsilon(1e-12));
    }
}

TEST_CASE("key rate peak at eta = 0.9") {
  double best = -1, arg = 0;
  for (int k = 0; k <= 990; ++k) {
    double s = 0.001 * k;
    double v = oracle_key_rate(s, 0.9);
    if (v > best) {
      best = v;
      arg = s;
    }
  }
  CHECK(std::abs(arg - 0.4585) < 0.01);
  auto lib = [](double s) { return secret_key_rate(optimal_scenario(0.5, 0.5, s, 0.9)).key_rate; };
  CHECK(lib(arg) == doctest::Approx(best).epsilon(1e-11));
  CHECK(lib(0.98) < 0.05);
}

TEST_CASE("key rate invariants on random draws") {
  for (int i = 0; i < 100; ++i) {
    auto p = random_feasible();
    if (p.alpha0 + p.alpha1 == 0) continue;
    for (auto conv : {KeyRateConvention::AsWritten, KeyRateConvention::PostSelectedAlice,
                      KeyRateConvention::MutualInformation}) {
      auto r = secret_key_rate(p, Structure::TypeI, conv);
      REQUIRE(r.key_rate >= 0.0);
      REQUIRE(r.i_ab >= -1e-12);
      REQUIRE(r.i_be >= -1e-12);
      REQUIRE(r.h_ba <= 2.0 + 1e-12);
      REQUIRE(r.h_be <= std::log2(6.0) + 1e-12);
      REQUIRE(r.h_e <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("success probability from the joint table") {
  for (int i = 0; i < 10; ++i) {
    auto p = random_feasible();
    REQUIRE(success_prob_from_joint(joint_be(p)) == doctest::Approx(success_prob_type1(p)).epsilon(1e-12));
  }
  CHECK(success_prob_from_joint(JointDistribution::zeros({outcome_axis("b"), outcome_axis("e")}, false)) == 0.0);
  CHECK(success_prob_from_joint(joint_be(optimal_scenario(0.5, 0.5, 0.5, 0.5))) == doctest::Approx(1.0 / 6.0));
}
