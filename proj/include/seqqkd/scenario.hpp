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

// Analytic model of the two-state protocol with an entangling eavesdropper.
//
// Bob's qubit lives on {|1>,|2>}. Eve's register is three-dimensional with
// basis {|0>,|1>,|2>}: |0> flags "no entanglement shared" and {|1>,|2>} holds
// her half of |phi+>. All vectors use real amplitudes with a positive leading
// coefficient.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seqqkd/qmath.hpp"

namespace seqqkd {

/// Alice's bit, and the conclusive half of every outcome alphabet.
enum class Bit : std::uint8_t { Zero = 0, One = 1 };
/// Measurement outcome of Bob or Eve: a conclusive bit or "?".
enum class Outcome : std::uint8_t { Zero = 0, One = 1, Inconclusive = 2 };

inline constexpr std::array<Bit, 2> kBits{Bit::Zero, Bit::One};
inline constexpr std::array<Outcome, 3> kOutcomes{Outcome::Zero, Outcome::One, Outcome::Inconclusive};

constexpr std::size_t index(Bit b) noexcept { return static_cast<std::size_t>(b); }
constexpr std::size_t index(Outcome o) noexcept { return static_cast<std::size_t>(o); }
constexpr Outcome as_outcome(Bit b) noexcept { return static_cast<Outcome>(b); }
constexpr double sign(Bit b) noexcept { return b == Bit::Zero ? 1.0 : -1.0; }
std::string to_string(Outcome o);

enum class NoiseKind { White, Colored };
/// Type-I: deterministic entangling machine. Type-II: intercept-and-share mixture.
enum class Structure { TypeI, TypeII };

std::string to_string(NoiseKind k);
std::string to_string(Structure s);

/// Free parameters of the analytic model.
struct ScenarioParams {
  double q0 = 0.5;
  double q1 = 0.5;
  double s = 0.0;       ///< |<psi_0|psi_1>|
  double eta_ab = 1.0;  ///< depolarizing-channel efficiency
  double alpha0 = 0.0;  ///< Bob's conclusive weights
  double alpha1 = 0.0;
  double u0 = 0.0;  ///< Eve's conclusive weights
  double u1 = 0.0;

  double prior(Bit a) const noexcept { return a == Bit::Zero ? q0 : q1; }
  double alpha(Bit b) const noexcept { return b == Bit::Zero ? alpha0 : alpha1; }
  double u(Bit e) const noexcept { return e == Bit::Zero ? u0 : u1; }

  /// Every range violation, one message per field. Empty when valid.
  std::vector<std::string> range_issues() const;
  /// Throws ParameterError for range violations, ConstraintError when either
  /// measurement violates (1-w0)(1-w1) >= s^2.
  void validate() const;
};

/// Throws ParameterError unless 0 <= s < 1.
void check_overlap(double s);
/// Throws ParameterError unless q0, q1 >= 0 and q0 + q1 = 1.
void check_priors(double q0, double q1);
/// (1-w0)(1-w1) >= s^2 within tol, with w in [0,1].
bool measurement_feasible(double s, double w0, double w1, double tol = kAlgebraicTol);

HilbertLabel bob_label();
HilbertLabel eve_label();
HilbertLabel bob_eve_label();

/// sqrt((1+s)/2)|1> + (-1)^a sqrt((1-s)/2)|2>.
PureState alice_state(double s, Bit a);
/// eta |psi_a><psi_a| + (1-eta) I/2.
DensityOperator depolarized_state(double s, double eta_ab, Bit a);
/// (|11> + |22>)/sqrt(2) on Bob (x) Eve.
PureState phi_plus();
/// sqrt(eta)|psi_a>|0> + sqrt(1-eta)|phi+>.
PureState gamma_state(double s, double eta_ab, Bit a);
/// eta |psi_a><psi_a| (x) |0><0| + (1-eta)|phi+><phi+|.
DensityOperator sigma_state(double s, double eta_ab, Bit a);

/// Unnormalized reciprocal vector |alpha_b> with <psi_a|alpha_b> = delta_ab.
ComplexMatrix bob_dual_vector(double s, Bit b);
/// sqrt(1-s^2)|alpha_b> placed on Eve's {|1>,|2>}; <psi~_0|psi~_1> = -s.
ComplexMatrix eve_tilde_state(double s, Bit b);
/// Unnormalized |u_e> on Eve's {|1>,|2>} with <psi~_b|u_e> = delta_be.
ComplexMatrix eve_dual_vector(double s, Bit e);

/// Three-outcome operator family indexed by Outcome.
struct OperatorTriple {
  ComplexMatrix zero;
  ComplexMatrix one;
  ComplexMatrix inconclusive;

  const ComplexMatrix& operator[](Outcome o) const noexcept {
    return o == Outcome::Zero ? zero : (o == Outcome::One ? one : inconclusive);
  }
};

struct KrausSet : OperatorTriple {
  /// max |sum_b K_b^dagger K_b - I|.
  double completeness_residual() const;
};

struct Povm : OperatorTriple {
  /// max |sum_b M_b - I|.
  double completeness_residual() const;
};

/// Bob's unambiguous measurement as Kraus operators.
///
/// K_b = sqrt(alpha_b)|phi_b><alpha_b| for b in {0,1}; K_? = W sqrt(M_?) with
/// M_? = I - M_0 - M_1. The output frame W has columns |phi_0>, |phi_1> and
/// defaults to the identity. Throws ConstraintError if infeasible.
KrausSet bob_kraus(double s, double alpha0, double alpha1,
                   const ComplexMatrix& frame = ComplexMatrix::identity(2));
Povm bob_povm(double s, double alpha0, double alpha1);
/// Eve's POVM on her three-dimensional register; M_? = I - M_0 - M_1.
Povm eve_povm(double s, double u0, double u1);

struct MeasurementWeights {
  double w0 = 0.0;
  double w1 = 0.0;
};

/// Optimal unambiguous-discrimination weights for priors (q0, q1):
/// alpha0 = 1 - sqrt(q1/q0) s, alpha1 = 1 - sqrt(q0/q1) s.
/// Throws BranchError when s >= min(sqrt(q1/q0), sqrt(q0/q1)); callers that
/// want the single-state measurement in that regime must handle it themselves.
MeasurementWeights optimal_bob_alphas(double q0, double q1, double s);

}  // namespace seqqkd
