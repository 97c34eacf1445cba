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


// Eve's success probability of eavesdropping, its optimum and an independent
// grid optimizer.
//
// The success probability is the chance that Bob and Eve both obtain a
// conclusive result and the two agree: sum_{a,b} q_a P(b|a) P(e=b|a,b).

#pragma once

#include <optional>
#include <utility>

#include "seqqkd/qmath.hpp"
#include "seqqkd/scenario.hpp"

namespace seqqkd {

/// (1-eta)/(2(1-s^2)) (alpha0 u0 + alpha1 u1). Throws on infeasible params.
double success_prob_closed_form(const ScenarioParams& p);

/// Deterministic entangling attack, evaluated by evolving |Gamma_a> through
/// Bob's Kraus operators and measuring Eve's conditional state.
double success_prob_type1(const ScenarioParams& p,
                          const ComplexMatrix& bob_frame = ComplexMatrix::identity(2));

/// Mixture attack, evaluated from sigma_a with Eve's conditional states
/// obtained by evolution.
double success_prob_type2(const ScenarioParams& p,
                          const ComplexMatrix& bob_frame = ComplexMatrix::identity(2));

/// Eve's normalized conditional state tau_ab for conclusive a, b from the
/// tabulated closed form (used to cross-check the evolution route).
ComplexMatrix tau_closed_form(double s, double eta_ab, Bit a, Bit b);

/// Eve's normalized conditional state for conclusive b under the mixture
/// attack, by evolution. Empty when Bob's branch has zero probability.
std::optional<ComplexMatrix> tau_evolved(const ScenarioParams& p, Bit a, Bit b,
                                         const ComplexMatrix& bob_frame = ComplexMatrix::identity(2));

enum class Branch { Interior, Boundary };
std::string to_string(Branch b);

struct BranchReport {
  double f0 = 0.0;
  double f1 = 0.0;
  Branch branch = Branch::Boundary;
  double u0 = 0.0;  ///< optimal Eve weights
  double u1 = 0.0;
  double alpha0 = 0.0;  ///< Bob's optimal weights used
  double alpha1 = 0.0;
};

/// q1 s^3 - sqrt(q0 q1) s^2 - q0 s + sqrt(q0 q1).
double branch_f0(double q0, double q1, double s);
/// q0 s^3 - sqrt(q0 q1) s^2 - q1 s + sqrt(q0 q1).
double branch_f1(double q0, double q1, double s);

/// Selects the optimum branch. Interior iff f0 > 0 and f1 > 0; ties are
/// Boundary. On the Boundary the optimum sits at the feasible corner
/// (1-s^2, 0) when alpha0 >= alpha1, else (0, 1-s^2).
/// Throws BranchError outside the optimal-measurement window.
BranchReport branch_report(double q0, double q1, double s);

/// (1-eta)/(2(1-s^2)) (alpha0 + alpha1 - 2 sqrt(alpha0 alpha1) s).
double interior_optimum(double q0, double q1, double s, double eta_ab);
/// (1-eta)/2 max(alpha0, alpha1).
double boundary_optimum(double q0, double q1, double s, double eta_ab);

struct OptimalSuccess {
  double probability = 0.0;
  BranchReport report;
};
OptimalSuccess optimal_success_prob(double q0, double q1, double s, double eta_ab);

/// Scenario with Bob's optimal weights and Eve's optimal response.
ScenarioParams optimal_scenario(double q0, double q1, double s, double eta_ab);

/// Smallest s in (0, window) where the branch flips to Boundary, located by
/// bisection to 1e-14. Empty when the Interior branch holds on the whole window.
std::optional<double> branch_point(double q0, double q1);

enum class SearchMode {
  Boundary,  ///< sweep the active constraint surface plus the feasible corners
  Audit2D,   ///< n^2 points covering the whole feasible region
};

struct GridOptimum {
  double probability = 0.0;
  double u0 = 0.0;
  double u1 = 0.0;
};

/// Grid maximization of the closed-form objective over Eve's feasible set,
/// with Bob's optimal weights. Requires grid_n >= 100.
///
/// Boundary mode sweeps u0 over [0, 1-s^2] in grid_n steps with
/// u1 = max(0, 1 - s^2/(1-u0)). Audit2D mode samples u0 on the same range and
/// u1 = t * u1max(u0) for t in [0,1], grid_n values per axis.
GridOptimum brute_force_optimum(double q0, double q1, double s, double eta_ab, std::size_t grid_n,
                                SearchMode mode = SearchMode::Boundary);

}  // namespace seqqkd
