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

#include <vector>

#include "seqqkd/errors.hpp"
#include "seqqkd/qmath.hpp"
#include "support.hpp"

using namespace seqqkd;
using seqqkd::testing::random_density;
using seqqkd::testing::random_matrix;
using seqqkd::testing::random_unitary;

namespace {

HilbertLabel qubit(const std::string& tag) { return HilbertLabel::single(tag, {"0", "1"}); }

}  // namespace

TEST_CASE("identity tensor identity is the 4x4 identity") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)).approx_equal(ComplexMatrix::identity(4), 0.0));
}

TEST_CASE("kron is associative on random 2x2 operators") {
  auto a = random_matrix(2, 2), b = random_matrix(2, 2), c = random_matrix(2, 2);
  auto lhs = kron(kron(a, b), c);
  auto rhs = kron(a, kron(b, c));
  CHECK(lhs.rows() == 8);
  CHECK(lhs.approx_equal(rhs, 1e-12));
}

TEST_CASE("reduced state of phi+ is maximally mixed") {
  auto label = qubit("B").concat(qubit("E"));
  ComplexMatrix v(4, 1);
  v(0, 0) = 1 / std::sqrt(2.0);
  v(3, 0) = 1 / std::sqrt(2.0);
  DensityOperator rho(PureState(label, v));
  auto rb = partial_trace(rho, {"B"});
  CHECK(rb.matrix().approx_equal(ComplexMatrix::identity(2) * 0.5, 1e-12));
  auto re = trace_out(rho, {"B"});
  CHECK(re.label() == qubit("E"));
  CHECK(re.matrix().approx_equal(ComplexMatrix::identity(2) * 0.5, 1e-12));
}

TEST_CASE("partial trace of a product state returns the factor") {
  auto a = random_density(2), b = random_density(3);
  DensityOperator ra(qubit("A"), a);
  DensityOperator rb(HilbertLabel::single("C", {"x", "y", "z"}), b);
  auto joint = tensor(ra, rb);
  CHECK(partial_trace(joint, {"A"}).matrix().approx_equal(a, 1e-12));
  CHECK(partial_trace(joint, {"C"}).matrix().approx_equal(b, 1e-12));
}

TEST_CASE("partial trace of random products, 100 draws") {
  for (int i = 0; i < 100; ++i) {
    auto a = random_density(2), b = random_density(3), c = random_density(2);
    auto label = qubit("A").concat(HilbertLabel::single("B", {"0", "1", "2"})).concat(qubit("C"));
    auto m = kron(kron(a, b), c);
    std::vector<std::string> keep_ac{"A", "C"};
    std::vector<std::string> keep_b{"B"};
    REQUIRE(partial_trace(m, label, keep_ac).approx_equal(kron(a, c), 1e-12));
    REQUIRE(partial_trace(m, label, keep_b).approx_equal(b, 1e-12));
  }
}

TEST_CASE("is_psd rejects a negative eigenvalue") {
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal({1.0, -0.1})));
  CHECK(is_psd(ComplexMatrix::diagonal({1.0, 0.0})));
  CHECK(is_psd(random_density(4)));
}

TEST_CASE("hermitian eigen reconstructs the matrix") {
  for (int i = 0; i < 20; ++i) {
    auto g = random_matrix(5, 5);
    auto h = g + g.adjoint();
    auto eig = hermitian_eigen(h);
    ComplexMatrix d(5, 5);
    for (std::size_t k = 0; k < 5; ++k) d(k, k) = eig.values[k];
    REQUIRE(isometry_residual(eig.vectors) < 1e-10);
    REQUIRE((eig.vectors * d * eig.vectors.adjoint()).approx_equal(h, 1e-9));
    for (std::size_t k = 1; k < 5; ++k) REQUIRE(eig.values[k - 1] <= eig.values[k]);
  }
}

TEST_CASE("psd_sqrt squares back") {
  auto rho = random_density(3);
  auto r = psd_sqrt(rho);
  CHECK((r * r).approx_equal(rho, 1e-10));
  CHECK(is_psd(r));
  CHECK(psd_sqrt(ComplexMatrix::diagonal({4.0, 0.0})).approx_equal(ComplexMatrix::diagonal({2.0, 0.0}), 1e-12));
}

TEST_CASE("embed places a local operator between spectators") {
  auto label = qubit("A").concat(HilbertLabel::single("B", {"0", "1", "2"})).concat(qubit("C"));
  auto op = random_matrix(2, 2);
  auto full = embed(label, {"C"}, op);
  CHECK(full.approx_equal(kron(ComplexMatrix::identity(6), op), 1e-12));
  auto first = embed(label, {"A"}, op);
  CHECK(first.approx_equal(kron(op, ComplexMatrix::identity(6)), 1e-12));
}

TEST_CASE("embed on non-adjacent targets keeps positions") {
  auto label = qubit("A").concat(qubit("B")).concat(qubit("C"));
  auto x = ComplexMatrix(2, 2, {0, 1, 1, 0});
  auto z = ComplexMatrix::diagonal({1.0, -1.0});
  auto full = embed(label, {"A", "C"}, kron(x, z));
  CHECK(full.approx_equal(kron(kron(x, ComplexMatrix::identity(2)), z), 1e-12));
  auto swapped = embed(label, {"C", "A"}, kron(z, x));
  CHECK(swapped.approx_equal(full, 1e-12));
}

TEST_CASE("embed rejects bad targets") {
  auto label = qubit("A").concat(qubit("B"));
  CHECK_THROWS_AS(embed(label, {"A", "A"}, ComplexMatrix::identity(4)), LabelError);
  CHECK_THROWS_AS(embed(label, {"Z"}, ComplexMatrix::identity(2)), LabelError);
  CHECK_THROWS_AS(embed(label, {"A"}, ComplexMatrix::identity(3)), LabelError);
}

TEST_CASE("concat rejects duplicate tags") {
  CHECK_THROWS_AS(qubit("A").concat(qubit("A")), LabelError);
}

TEST_CASE("local map with empty replacement consumes a register") {
  auto label = qubit("A").concat(qubit("B"));
  auto bra = ComplexMatrix::basis(2, 1).adjoint();
  auto m = local_map(label, {"A"}, bra, {});
  CHECK(m.output == qubit("B"));
  auto ket = kron(ComplexMatrix::basis(2, 1), ComplexMatrix::column({0.6, 0.8}));
  CHECK((m.matrix * ket).approx_equal(ComplexMatrix::column({0.6, 0.8}), 1e-12));
}

TEST_CASE("contract gives the conditional state") {
  auto a = random_density(2), b = random_density(2);
  DensityOperator rho(qubit("A").concat(qubit("B")), kron(a, b));
  auto eff = ComplexMatrix::diagonal({1.0, 0.0});
  auto cond = contract(rho, {"A"}, eff);
  CHECK(cond.matrix().approx_equal(b * a(0, 0), 1e-12));
}

TEST_CASE("apply with a unitary preserves trace and spectrum") {
  auto rho = random_density(4);
  auto u = random_unitary(2);
  DensityOperator r(qubit("A").concat(qubit("B")), rho);
  auto out = apply(r, {"B"}, u);
  CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-12));
  auto e0 = hermitian_eigenvalues(rho);
  auto e1 = hermitian_eigenvalues(out.matrix());
  for (std::size_t k = 0; k < 4; ++k) CHECK(e0[k] == doctest::Approx(e1[k]).epsilon(1e-10));
}

TEST_CASE("complete_unitary fills free columns") {
  ComplexMatrix p(3, 3);
  p(0, 0) = 1 / std::sqrt(2.0);
  p(1, 0) = 1 / std::sqrt(2.0);
  std::vector<std::size_t> fixed{0};
  auto u = complete_unitary(p, fixed);
  CHECK(isometry_residual(u) < 1e-12);
  CHECK(u(0, 0) == p(0, 0));
  CHECK(u(2, 2).real() == doctest::Approx(1.0));
}

TEST_CASE("basis names follow the label order") {
  auto label = HilbertLabel::single("L", {"vac", "h", "v"}).concat(HilbertLabel::single("P", {"b0", "b1"}));
  CHECK(label.basis_name(3) == "h,b1");
  CHECK(label.dimension() == 6);
  CHECK(label.position("P") == 1);
}
