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


#include "seqqkd/eavesdrop.hpp"

#include <algorithm>
#include <cmath>

#include "seqqkd/errors.hpp"

namespace seqqkd {

namespace {

const std::vector<std::string> kBob{"B"};

double prefactor(double s, double eta_ab) { return (1.0 - eta_ab) / (2.0 * (1.0 - s * s)); }

// Eve's unnormalized state after Bob's Kraus operator acts on rho_BE.
ComplexMatrix eve_branch(const ComplexMatrix& rho_be, const ComplexMatrix& kraus) {
  const auto label = bob_eve_label();
  const auto k = embed(label, kBob, kraus);
  const auto out = k * rho_be * k.adjoint();
  const std::vector<std::string> keep{"E"};
  return partial_trace(out, label, keep);
}

}  // namespace

double success_prob_closed_form(const ScenarioParams& p) {
  p.validate();
  return prefactor(p.s, p.eta_ab) * (p.alpha0 * p.u0 + p.alpha1 * p.u1);
}

double success_prob_type1(const ScenarioParams& p, const ComplexMatrix& bob_frame) {
  p.validate();
  const auto kraus = bob_kraus(p.s, p.alpha0, p.alpha1, bob_frame);
  const auto eve = eve_povm(p.s, p.u0, p.u1);
  double total = 0.0;
  for (Bit a : kBits) {
    const auto gamma = projector(gamma_state(p.s, p.eta_ab, a).amplitudes());
    for (Bit b : kBits) {
      const auto rho_e = eve_branch(gamma, kraus[as_outcome(b)]);
      total += p.prior(a) * trace_product(eve[as_outcome(b)], rho_e);
    }
  }
  return total;
}

std::optional<ComplexMatrix> tau_evolved(const ScenarioParams& p, Bit a, Bit b, const ComplexMatrix& bob_frame) {
  p.validate();
  const auto kraus = bob_kraus(p.s, p.alpha0, p.alpha1, bob_frame);
  const auto rho_e = eve_branch(sigma_state(p.s, p.eta_ab, a).matrix(), kraus[as_outcome(b)]);
  const double mass = rho_e.trace().real();
  if (mass <= 0.0) return std::nullopt;
  return rho_e * (1.0 / mass);
}

double success_prob_type2(const ScenarioParams& p, const ComplexMatrix& bob_frame) {
  p.validate();
  const auto kraus = bob_kraus(p.s, p.alpha0, p.alpha1, bob_frame);
  const auto eve = eve_povm(p.s, p.u0, p.u1);
  double total = 0.0;
  for (Bit a : kBits) {
    const auto sigma = sigma_state(p.s, p.eta_ab, a).matrix();
    for (Bit b : kBits) {
      const auto rho_e = eve_branch(sigma, kraus[as_outcome(b)]);
      const double p_b = rho_e.trace().real();
      if (p_b <= 0.0) continue;
      const auto tau = rho_e * (1.0 / p_b);
      total += p.prior(a) * p_b * trace_product(tau, eve[as_outcome(b)]);
    }
  }
  return total;
}

ComplexMatrix tau_closed_form(double s, double eta_ab, Bit a, Bit b) {
  if (auto issues = ScenarioParams{.s = s, .eta_ab = eta_ab}.range_issues(); !issues.empty()) {
    throw ParameterError(std::move(issues));
  }
  const auto tilde = projector(eve_tilde_state(s, b));
  if (a != b) return tilde;
  const double w_flag = eta_ab;
  const double w_ent = prefactor(s, eta_ab);
  const double z = w_flag + w_ent;
  return projector(ComplexMatrix::basis(3, 0)) * (w_flag / z) + tilde * (w_ent / z);
}

std::string to_string(Branch b) { return b == Branch::Interior ? "interior" : "boundary"; }

double branch_f0(double q0, double q1, double s) {
  const double r = std::sqrt(q0 * q1);
  return q1 * s * s * s - r * s * s - q0 * s + r;
}

double branch_f1(double q0, double q1, double s) {
  const double r = std::sqrt(q0 * q1);
  return q0 * s * s * s - r * s * s - q1 * s + r;
}

BranchReport branch_report(double q0, double q1, double s) {
  const auto w = optimal_bob_alphas(q0, q1, s);
  BranchReport r;
  r.f0 = branch_f0(q0, q1, s);
  r.f1 = branch_f1(q0, q1, s);
  r.alpha0 = w.w0;
  r.alpha1 = w.w1;
  if (r.f0 > 0.0 && r.f1 > 0.0) {
    r.branch = Branch::Interior;
    r.u0 = 1.0 - std::sqrt(w.w1 / w.w0) * s;
    r.u1 = 1.0 - std::sqrt(w.w0 / w.w1) * s;
  } else {
    r.branch = Branch::Boundary;
    if (w.w0 >= w.w1) {
      r.u0 = 1.0 - s * s;
      r.u1 = 0.0;
    } else {
      r.u0 = 0.0;
      r.u1 = 1.0 - s * s;
    }
  }
  return r;
}

double interior_optimum(double q0, double q1, double s, double eta_ab) {
  const auto w = optimal_bob_alphas(q0, q1, s);
  return prefactor(s, eta_ab) * (w.w0 + w.w1 - 2.0 * std::sqrt(w.w0 * w.w1) * s);
}

double boundary_optimum(double q0, double q1, double s, double eta_ab) {
  const auto w = optimal_bob_alphas(q0, q1, s);
  return (1.0 - eta_ab) / 2.0 * std::max(w.w0, w.w1);
}

OptimalSuccess optimal_success_prob(double q0, double q1, double s, double eta_ab) {
  if (!std::isfinite(eta_ab) || eta_ab < 0.0 || eta_ab > 1.0) {
    throw ParameterError("eta_ab outside [0, 1]");
  }
  OptimalSuccess out;
  out.report = branch_report(q0, q1, s);
  out.probability = out.report.branch == Branch::Interior ? interior_optimum(q0, q1, s, eta_ab)
                                                          : boundary_optimum(q0, q1, s, eta_ab);
  return out;
}

ScenarioParams optimal_scenario(double q0, double q1, double s, double eta_ab) {
  const auto r = branch_report(q0, q1, s);
  ScenarioParams p{q0, q1, s, eta_ab, r.alpha0, r.alpha1, r.u0, r.u1};
  p.validate();
  return p;
}

std::optional<double> branch_point(double q0, double q1) {
  check_priors(q0, q1);
  if (q0 == 0.0 || q1 == 0.0) return std::nullopt;
  const double window = std::min(std::sqrt(q1 / q0), std::sqrt(q0 / q1));
  const auto interior = [&](double s) { return branch_f0(q0, q1, s) > 0.0 && branch_f1(q0, q1, s) > 0.0; };
  // Scan for the first Boundary sample, then bisect the bracket.
  const int samples = 4096;
  const double top = std::min(window, 1.0) * (1.0 - 1e-12);
  double lo = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double hi = top * i / samples;
    if (!interior(hi)) {
      double a = lo, b = hi;
      while (b - a > 1e-14) {
        const double m = 0.5 * (a + b);
        (interior(m) ? a : b) = m;
      }
      return 0.5 * (a + b);
    }
    lo = hi;
  }
  return std::nullopt;
}

GridOptimum brute_force_optimum(double q0, double q1, double s, double eta_ab, std::size_t grid_n,
                                SearchMode mode) {
  if (grid_n < 100) throw ParameterError("grid_n must be at least 100");
  if (!std::isfinite(eta_ab) || eta_ab < 0.0 || eta_ab > 1.0) throw ParameterError("eta_ab outside [0, 1]");
  const auto w = optimal_bob_alphas(q0, q1, s);
  const double c = prefactor(s, eta_ab);
  const double top = 1.0 - s * s;
  const auto u1_max = [&](double u0) {
    const double room = 1.0 - u0;
    if (room <= 0.0) return s == 0.0 ? 1.0 : 0.0;
    return std::max(0.0, 1.0 - s * s / room);
  };

  GridOptimum best{-1.0, 0.0, 0.0};
  const auto consider = [&](double u0, double u1) {
    const double v = c * (w.w0 * u0 + w.w1 * u1);
    if (v > best.probability) best = {v, u0, u1};
  };

  consider(top, 0.0);
  consider(0.0, top);
  if (mode == SearchMode::Boundary) {
    for (std::size_t i = 0; i <= grid_n; ++i) {
      const double u0 = top * static_cast<double>(i) / static_cast<double>(grid_n);
      consider(u0, u1_max(u0));
    }
  } else {
    for (std::size_t i = 0; i <= grid_n; ++i) {
      const double u0 = top * static_cast<double>(i) / static_cast<double>(grid_n);
      const double cap = u1_max(u0);
      for (std::size_t j = 0; j <= grid_n; ++j) {
        consider(u0, cap * static_cast<double>(j) / static_cast<double>(grid_n));
      }
    }
  }
  return best;
}

}  // namespace seqqkd
