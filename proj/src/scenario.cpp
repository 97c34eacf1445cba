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

#include "seqqkd/scenario.hpp"

#include <cmath>
#include <sstream>

#include "seqqkd/errors.hpp"

namespace seqqkd {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void range_check(std::vector<std::string>& issues, const char* name, double v, double lo, double hi) {
  if (!std::isfinite(v) || v < lo || v > hi) {
    issues.push_back(std::string(name) + "=" + fmt(v) + " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Zero: return "0";
    case Outcome::One: return "1";
    case Outcome::Inconclusive: return "?";
  }
  return "?";
}

std::string to_string(NoiseKind k) { return k == NoiseKind::White ? "white" : "colored"; }
std::string to_string(Structure s) { return s == Structure::TypeI ? "type1" : "type2"; }

std::vector<std::string> ScenarioParams::range_issues() const {
  std::vector<std::string> issues;
  range_check(issues, "q0", q0, 0.0, 1.0);
  range_check(issues, "q1", q1, 0.0, 1.0);
  if (std::isfinite(q0) && std::isfinite(q1) && std::abs(q0 + q1 - 1.0) > kAlgebraicTol) {
    issues.push_back("q0+q1=" + fmt(q0 + q1) + " must equal 1");
  }
  if (!std::isfinite(s) || s < 0.0 || s >= 1.0) issues.push_back("s=" + fmt(s) + " outside [0, 1)");
  range_check(issues, "eta_ab", eta_ab, 0.0, 1.0);
  range_check(issues, "alpha0", alpha0, 0.0, 1.0);
  range_check(issues, "alpha1", alpha1, 0.0, 1.0);
  range_check(issues, "u0", u0, 0.0, 1.0);
  range_check(issues, "u1", u1, 0.0, 1.0);
  return issues;
}

void ScenarioParams::validate() const {
  if (auto issues = range_issues(); !issues.empty()) throw ParameterError(std::move(issues));
  if (!measurement_feasible(s, alpha0, alpha1)) {
    throw ConstraintError("Bob weights infeasible: (1-alpha0)(1-alpha1) < s^2");
  }
  if (!measurement_feasible(s, u0, u1)) {
    throw ConstraintError("Eve weights infeasible: (1-u0)(1-u1) < s^2");
  }
}

void check_overlap(double s) {
  if (!std::isfinite(s) || s < 0.0 || s >= 1.0) throw ParameterError("s=" + fmt(s) + " outside [0, 1)");
}

void check_priors(double q0, double q1) {
  std::vector<std::string> issues;
  range_check(issues, "q0", q0, 0.0, 1.0);
  range_check(issues, "q1", q1, 0.0, 1.0);
  if (issues.empty() && std::abs(q0 + q1 - 1.0) > kAlgebraicTol) {
    issues.push_back("q0+q1=" + fmt(q0 + q1) + " must equal 1");
  }
  if (!issues.empty()) throw ParameterError(std::move(issues));
}

bool measurement_feasible(double s, double w0, double w1, double tol) {
  if (w0 < -tol || w0 > 1.0 + tol || w1 < -tol || w1 > 1.0 + tol) return false;
  return (1.0 - w0) * (1.0 - w1) >= s * s - tol;
}

HilbertLabel bob_label() { return HilbertLabel::single("B", {"1", "2"}); }
HilbertLabel eve_label() { return HilbertLabel::single("E", {"0", "1", "2"}); }
HilbertLabel bob_eve_label() { return bob_label().concat(eve_label()); }

PureState alice_state(double s, Bit a) {
  check_overlap(s);
  return {bob_label(), ComplexMatrix::column({std::sqrt((1.0 + s) / 2.0), sign(a) * std::sqrt((1.0 - s) / 2.0)})};
}

DensityOperator depolarized_state(double s, double eta_ab, Bit a) {
  if (auto issues = ScenarioParams{.s = s, .eta_ab = eta_ab}.range_issues(); !issues.empty()) {
    throw ParameterError(std::move(issues));
  }
  const auto psi = alice_state(s, a).amplitudes();
  auto rho = projector(psi) * eta_ab + ComplexMatrix::identity(2) * ((1.0 - eta_ab) / 2.0);
  return {bob_label(), std::move(rho)};
}

PureState phi_plus() {
  // Bob {1,2} x Eve {0,1,2}: |11> is index 0*3+1, |22> is 1*3+2.
  ComplexMatrix v(6, 1);
  v(1, 0) = 1.0 / std::sqrt(2.0);
  v(5, 0) = 1.0 / std::sqrt(2.0);
  return {bob_eve_label(), std::move(v)};
}

PureState gamma_state(double s, double eta_ab, Bit a) {
  if (auto issues = ScenarioParams{.s = s, .eta_ab = eta_ab}.range_issues(); !issues.empty()) {
    throw ParameterError(std::move(issues));
  }
  const auto flag = ComplexMatrix::basis(3, 0);
  auto v = kron(alice_state(s, a).amplitudes(), flag) * std::sqrt(eta_ab) +
           phi_plus().amplitudes() * std::sqrt(1.0 - eta_ab);
  return {bob_eve_label(), std::move(v)};
}

DensityOperator sigma_state(double s, double eta_ab, Bit a) {
  if (auto issues = ScenarioParams{.s = s, .eta_ab = eta_ab}.range_issues(); !issues.empty()) {
    throw ParameterError(std::move(issues));
  }
  const auto flag = projector(ComplexMatrix::basis(3, 0));
  auto rho = kron(projector(alice_state(s, a).amplitudes()), flag) * eta_ab +
             projector(phi_plus().amplitudes()) * (1.0 - eta_ab);
  return {bob_eve_label(), std::move(rho)};
}

ComplexMatrix bob_dual_vector(double s, Bit b) {
  check_overlap(s);
  return ComplexMatrix::column({1.0 / std::sqrt(2.0 * (1.0 + s)), sign(b) / std::sqrt(2.0 * (1.0 - s))});
}

ComplexMatrix eve_tilde_state(double s, Bit b) {
  check_overlap(s);
  return ComplexMatrix::column({0.0, std::sqrt((1.0 - s) / 2.0), sign(b) * std::sqrt((1.0 + s) / 2.0)});
}

ComplexMatrix eve_dual_vector(double s, Bit e) {
  check_overlap(s);
  return ComplexMatrix::column({0.0, 1.0 / std::sqrt(2.0 * (1.0 - s)), sign(e) / std::sqrt(2.0 * (1.0 + s))});
}

double KrausSet::completeness_residual() const {
  auto sum = zero.adjoint() * zero + one.adjoint() * one + inconclusive.adjoint() * inconclusive;
  return (sum - ComplexMatrix::identity(sum.rows())).max_abs();
}

double Povm::completeness_residual() const {
  auto sum = zero + one + inconclusive;
  return (sum - ComplexMatrix::identity(sum.rows())).max_abs();
}

namespace {

void check_weights(const char* who, double s, double w0, double w1) {
  check_overlap(s);
  std::vector<std::string> issues;
  range_check(issues, (std::string(who) + "0").c_str(), w0, 0.0, 1.0);
  range_check(issues, (std::string(who) + "1").c_str(), w1, 0.0, 1.0);
  if (!issues.empty()) throw ParameterError(std::move(issues));
  if (!measurement_feasible(s, w0, w1)) {
    throw ConstraintError(std::string(who) + " weights infeasible: (1-" + who + "0)(1-" + who + "1) < s^2");
  }
}

}  // namespace

Povm bob_povm(double s, double alpha0, double alpha1) {
  check_weights("alpha", s, alpha0, alpha1);
  Povm m;
  m.zero = projector(bob_dual_vector(s, Bit::Zero)) * alpha0;
  m.one = projector(bob_dual_vector(s, Bit::One)) * alpha1;
  m.inconclusive = ComplexMatrix::identity(2) - m.zero - m.one;
  return m;
}

KrausSet bob_kraus(double s, double alpha0, double alpha1, const ComplexMatrix& frame) {
  const auto povm = bob_povm(s, alpha0, alpha1);
  if (frame.rows() != 2 || frame.cols() != 2 || isometry_residual(frame) > 1e-10) {
    throw ParameterError("Bob output frame must be a 2x2 unitary");
  }
  const auto phi0 = frame * ComplexMatrix::basis(2, 0);
  const auto phi1 = frame * ComplexMatrix::basis(2, 1);
  KrausSet k;
  k.zero = outer(phi0, bob_dual_vector(s, Bit::Zero)) * std::sqrt(alpha0);
  k.one = outer(phi1, bob_dual_vector(s, Bit::One)) * std::sqrt(alpha1);
  k.inconclusive = frame * psd_sqrt(povm.inconclusive);
  return k;
}

Povm eve_povm(double s, double u0, double u1) {
  check_weights("u", s, u0, u1);
  Povm m;
  m.zero = projector(eve_dual_vector(s, Bit::Zero)) * u0;
  m.one = projector(eve_dual_vector(s, Bit::One)) * u1;
  m.inconclusive = ComplexMatrix::identity(3) - m.zero - m.one;
  return m;
}

MeasurementWeights optimal_bob_alphas(double q0, double q1, double s) {
  check_priors(q0, q1);
  check_overlap(s);
  if (q0 == 0.0 || q1 == 0.0) {
    throw BranchError("optimal unambiguous weights need both priors non-zero");
  }
  const double r = std::sqrt(q1 / q0);
  if (!(s < r && s < 1.0 / r)) {
    throw BranchError("s=" + fmt(s) + " outside the optimal-measurement window s < min(sqrt(q1/q0), sqrt(q0/q1))=" +
                      fmt(std::min(r, 1.0 / r)) + "; clamp to the single-state measurement explicitly");
  }
  return {1.0 - r * s, 1.0 - s / r};
}

}  // namespace seqqkd
