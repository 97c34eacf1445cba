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

#include "seqqkd/errors.hpp"
#include "seqqkd/scenario.hpp"
#include "support.hpp"

using namespace seqqkd;
using seqqkd::testing::uniform;

TEST_CASE("alice states") {
  for (double s : {0.1, 0.5, 0.9}) {
    auto p0 = alice_state(s, Bit::Zero).amplitudes();
    auto p1 = alice_state(s, Bit::One).amplitudes();
    CHECK(inner(p0, p1).real() == doctest::Approx(s).epsilon(1e-14));
    CHECK(norm(p0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(std::abs(inner(alice_state(0.0, Bit::Zero).amplitudes(), alice_state(0.0, Bit::One).amplitudes())) < 1e-15);
  auto near_one = alice_state(0.999999, Bit::Zero).amplitudes();
  CHECK(std::abs(near_one(0, 0)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(near_one(1, 0)) < 1e-3);
  CHECK_THROWS_AS(alice_state(1.0, Bit::Zero), ParameterError);
  CHECK_THROWS_AS(alice_state(-0.1, Bit::Zero), ParameterError);
  for (int i = 0; i < 50; ++i) CHECK(alice_state(uniform(0.0, 0.999), Bit::One).norm() == doctest::Approx(1.0));
}

TEST_CASE("depolarized state limits") {
  auto psi = alice_state(0.3, Bit::One).amplitudes();
  CHECK(depolarized_state(0.3, 1.0, Bit::One).matrix().approx_equal(projector(psi), 1e-15));
  CHECK(depolarized_state(0.3, 0.0, Bit::One).matrix().approx_equal(ComplexMatrix::identity(2) * 0.5, 1e-15));
  auto rho = depolarized_state(0.3, 0.5, Bit::Zero);
  CHECK(rho.trace() == doctest::Approx(1.0));
  CHECK(is_psd(rho.matrix()));
  CHECK_THROWS_AS(depolarized_state(0.3, 1.5, Bit::Zero), ParameterError);
}

TEST_CASE("gamma state") {
  auto flag = ComplexMatrix::basis(3, 0);
  auto g1 = gamma_state(0.4, 1.0, Bit::Zero).amplitudes();
  CHECK(g1.approx_equal(kron(alice_state(0.4, Bit::Zero).amplitudes(), flag), 1e-15));
  auto g0 = gamma_state(0.4, 0.0, Bit::One).amplitudes();
  CHECK(g0.approx_equal(phi_plus().amplitudes(), 1e-15));
  // |phi+> lives on Eve's {|1>,|2>}: Bob 1 with Eve 1, Bob 2 with Eve 2.
  CHECK(std::abs(g0(0 * 3 + 1, 0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(g0(1 * 3 + 2, 0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(gamma_state(0.4, 0.7, Bit::Zero).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sigma state") {
  auto sigma = sigma_state(0.3, 0.5, Bit::Zero);
  CHECK(trace_out(sigma, {"E"}).matrix().approx_equal(depolarized_state(0.3, 0.5, Bit::Zero).matrix(), 1e-12));
  CHECK(sigma.trace() == doctest::Approx(1.0));
  CHECK(numerical_rank(sigma.matrix()) == 2);
  auto pure = sigma_state(0.3, 1.0, Bit::One).matrix();
  CHECK(numerical_rank(pure) == 1);
  CHECK((pure * pure).approx_equal(pure, 1e-12));
}

TEST_CASE("reduced states agree on a 5x5 grid") {
  for (double s : {0.0, 0.2, 0.4, 0.6, 0.8})
    for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (Bit a : kBits) {
        auto target = depolarized_state(s, eta, a).matrix();
        REQUIRE(trace_out(DensityOperator(gamma_state(s, eta, a)), {"E"}).matrix().approx_equal(target, 1e-12));
        REQUIRE(trace_out(sigma_state(s, eta, a), {"E"}).matrix().approx_equal(target, 1e-12));
      }
}

TEST_CASE("bob dual vectors are reciprocal") {
  for (double s : {0.0, 0.3, 0.7}) {
    for (Bit a : kBits)
      for (Bit b : kBits) {
        auto ip = inner(bob_dual_vector(s, b), alice_state(s, a).amplitudes());
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-14);
      }
    CHECK(norm(bob_dual_vector(s, Bit::Zero)) * norm(bob_dual_vector(s, Bit::Zero)) ==
          doctest::Approx(1.0 / (1.0 - s * s)));
  }
}

TEST_CASE("bob kraus operators") {
  SUBCASE("zero weights") {
    auto k = bob_kraus(0.4, 0.0, 0.0);
    CHECK(k.zero.max_abs() == 0.0);
    CHECK(k.one.max_abs() == 0.0);
    CHECK((k.inconclusive.adjoint() * k.inconclusive).approx_equal(ComplexMatrix::identity(2), 1e-12));
  }
  SUBCASE("unambiguity on noiseless input") {
    auto k = bob_kraus(0.5, 0.5, 0.5);
    for (Bit a : kBits)
      for (Bit b : kBits) {
        auto m = k[as_outcome(b)].adjoint() * k[as_outcome(b)];
        double p = expectation(m, alice_state(0.5, a).amplitudes());
        CHECK(p == doctest::Approx(a == b ? 0.5 : 0.0).epsilon(1e-12));
      }
  }
  SUBCASE("completeness at random feasible weights") {
    for (int i = 0; i < 50; ++i) {
      double s = uniform(0.0, 0.95);
      double a0 = uniform(0.0, 1.0 - s * s);
      double a1 = uniform(0.0, 1.0 - s * s / (1.0 - a0));
      REQUIRE(bob_kraus(s, a0, a1).completeness_residual() < 1e-10);
      REQUIRE(bob_kraus(s, a0, a1, seqqkd::testing::random_unitary(2)).completeness_residual() < 1e-10);
    }
  }
  SUBCASE("boundary weights") {
    auto k = bob_kraus(0.6, 1.0 - 0.6, 1.0 - 0.6);
    CHECK(k.completeness_residual() < 1e-10);
  }
  CHECK_THROWS_AS(bob_kraus(0.5, 0.9, 0.9), ConstraintError);
  CHECK_THROWS_AS(bob_kraus(0.5, 1.2, 0.0), ParameterError);
  CHECK_THROWS_AS(bob_kraus(0.5, 0.1, 0.1, ComplexMatrix::diagonal({1.0, 2.0})), ParameterError);
}

TEST_CASE("optimal bob weights") {
  auto w = optimal_bob_alphas(0.5, 0.5, 0.3);
  CHECK(w.w0 == doctest::Approx(0.7));
  CHECK(w.w1 == doctest::Approx(0.7));
  auto z = optimal_bob_alphas(0.4, 0.6, 0.0);
  CHECK(z.w0 == 1.0);
  CHECK(z.w1 == 1.0);
  auto g = optimal_bob_alphas(0.4, 0.6, 0.5);
  CHECK(g.w0 == doctest::Approx(1.0 - std::sqrt(1.5) * 0.5).epsilon(1e-14));
  CHECK(g.w1 == doctest::Approx(1.0 - std::sqrt(2.0 / 3.0) * 0.5).epsilon(1e-14));
  CHECK(measurement_feasible(0.5, g.w0, g.w1));
  CHECK_THROWS_AS(optimal_bob_alphas(0.4, 0.6, 0.82), BranchError);
  CHECK_THROWS_AS(optimal_bob_alphas(0.4, 0.5, 0.3), ParameterError);
}

TEST_CASE("eve povm") {
  auto m = eve_povm(0.3, 0.0, 0.0);
  CHECK(m.inconclusive.approx_equal(ComplexMatrix::identity(3), 1e-15));

  auto e = eve_povm(0.5, 0.5, 0.5);
  CHECK(std::abs(expectation(e.zero, eve_tilde_state(0.5, Bit::One))) < 1e-14);
  CHECK(std::abs(expectation(e.one, eve_tilde_state(0.5, Bit::Zero))) < 1e-14);
  CHECK(expectation(e.zero, eve_tilde_state(0.5, Bit::Zero)) == doctest::Approx(0.5));
  // conclusive elements never see the flag
  auto flag = ComplexMatrix::basis(3, 0);
  CHECK((e.zero * flag).max_abs() < 1e-15);
  CHECK((e.one * flag).max_abs() < 1e-15);
  CHECK(e.completeness_residual() < 1e-10);

  // exactly on the surface (1-u0)(1-u1) = s^2
  const double s = 0.6, u0 = 0.3, u1 = 1.0 - s * s / (1.0 - u0);
  auto b = eve_povm(s, u0, u1);
  auto ev = hermitian_eigenvalues(b.inconclusive);
  CHECK(std::abs(ev.front()) < 1e-10);
  CHECK_THROWS_AS(eve_povm(0.5, 0.8, 0.8), ConstraintError);
}

TEST_CASE("eve tilde overlap is -s") {
  for (int k = 0; k <= 9; ++k) {
    double s = 0.1 * k;
    CHECK(inner(eve_tilde_state(s, Bit::Zero), eve_tilde_state(s, Bit::One)).real() == doctest::Approx(-s));
    CHECK(norm(eve_tilde_state(s, Bit::One)) == doctest::Approx(1.0));
  }
}

TEST_CASE("parameter validation lists every issue") {
  ScenarioParams p{.q0 = 1.3, .q1 = 0.2, .s = 1.0, .eta_ab = -1.0};
  try {
    p.validate();
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(e.issues().size() == 4);
  }
  ScenarioParams q{.q0 = 0.5, .q1 = 0.5, .s = 0.5, .eta_ab = 0.5, .alpha0 = 0.9, .alpha1 = 0.9};
  CHECK_THROWS_AS(q.validate(), ConstraintError);
}
