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


// Imperfect linear-optical implementation of the protocol.
//
// Each polarization leg is a three-level system {vac, h, v} so that photon
// loss has somewhere to go. Bob's and Eve's unambiguous measurements are
// Sagnac-like interferometers that couple polarization to a two-valued path
// register; the conclusive path then passes a half-wave plate, a polarizing
// beam splitter and two on/off detectors. Fock space is truncated at one
// photon per port.
//
// The interferometers realize the equal-prior optimal measurements
// (alpha = u = 1 - s); priors other than 1/2 only reweight Alice's inputs.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "seqqkd/keyrate.hpp"
#include "seqqkd/qmath.hpp"
#include "seqqkd/scenario.hpp"

namespace seqqkd {

/// What a conclusive-path detection without exactly one click means for Bob.
enum class BobNoClick {
  Discard,       ///< the round is lost; it never reaches the key tables
  Inconclusive,  ///< the round is announced as b = ?
};
std::string to_string(BobNoClick p);

struct NoiseParams {
  double eta_ent = 1.0;  ///< weight of |phi+> in the shared resource
  NoiseKind kind = NoiseKind::White;
  double d0 = 0.0;       ///< photon-loss rate on the Alice-to-Bob leg
  double de = 0.0;       ///< photon-loss rate on each entangled leg
  double eta_det = 1.0;  ///< detector efficiency
  double nu = 0.0;       ///< dark-count rate; only 0 is supported
  BobNoClick bob_no_click = BobNoClick::Discard;

  std::vector<std::string> range_issues() const;
  void validate() const;
  /// Every imperfection switched off.
  static NoiseParams ideal();
};

Subsystem polarization_leg(std::string tag);  ///< {vac, h, v}
Subsystem path_register(std::string tag, const std::string& prefix);  ///< {prefix0, prefix1}
Subsystem photon_port(std::string tag);       ///< {0, 1} photons

/// rho -> (1-d) rho + d |vac><vac| (x) Tr_leg rho.
DensityOperator amplitude_damping(const DensityOperator& rho, double d, const std::string& leg);

/// White: eta |phi+><phi+| + (1-eta) I/4; Colored: eta |phi+><phi+| +
/// (1-eta)(|hh><hh| + |vv><vv|)/2. On legs "B" and "E".
DensityOperator noisy_entangled(double eta_ent, NoiseKind kind);

/// Bob's interferometer on polarization (x) path, index leg*2 + path:
/// |h,b0> -> c|h,b0> + t|v,b1>, |v,b0> -> |v,b0>, vacuum untouched, with
/// c = sqrt((1-s)/(1+s)) and t = sqrt(2s/(1+s)). The two remaining columns
/// come from a deterministic Gram-Schmidt completion; `free_mix` (a 2x2
/// unitary) rotates them so tests can confirm the completion is irrelevant.
ComplexMatrix sagnac_bob(double s, const ComplexMatrix& free_mix = ComplexMatrix::identity(2));
/// Eve's interferometer: |h,e0> -> |h,e0>, |v,e0> -> t|h,e1> + c|v,e0>.
ComplexMatrix sagnac_eve(double s, const ComplexMatrix& free_mix = ComplexMatrix::identity(2));

/// Half-wave plate at angle gamma on {vac, h, v}.
ComplexMatrix hwp(double gamma);
/// Polarizing beam splitter, {vac, h, v} -> ports (n0, n1) with index
/// n0*2 + n1: vac -> |00>, h -> |10>, v -> -|01>.
ComplexMatrix pbs();

struct OnOffPovm {
  ComplexMatrix off;
  ComplexMatrix on;
};
/// Pi_on = eta|1><1|, Pi_off = |0><0| + (1-eta)|1><1|.
OnOffPovm onoff_povm(double eta_det);

/// eta_ab Lambda_d0(psi_a) (x) |vac><vac| + (1-eta_ab)(Lambda_de (x) Lambda_de)(rho_ent).
DensityOperator build_zeta(const ScenarioParams& p, const NoiseParams& n, Bit a);

/// Conditional outcome tables for one input a.
struct DetectionTables {
  std::array<double, 3> bob{};                  ///< P(b|a), b in {0,1,?}
  std::array<std::array<double, 3>, 3> bob_eve{};  ///< P(b,e|a), [b][e]
  double lost = 0.0;        ///< conclusive-path rounds discarded by Bob
  double no_click = 0.0;    ///< conclusive path, neither detector fired
  double both_click = 0.0;  ///< conclusive path, both detectors fired
  double leakage = 0.0;     ///< |1 - total mass| before the consistency check
};

/// Runs the full interferometer and detector pipeline for input a.
/// Throws PipelineError when branch masses fail to add up within 1e-8.
DetectionTables detection_chain(const ScenarioParams& p, const NoiseParams& n, Bit a);

/// Prior-weighted tables over (a, b) and (b, e), both with b, e in {0,1,?}.
/// Lost rounds are absent, so the tables may be sub-normalized.
struct NoisyJoint {
  JointDistribution ab;
  JointDistribution be;
};
NoisyJoint noisy_joint(const ScenarioParams& p, const NoiseParams& n);

double noisy_success_prob(const ScenarioParams& p, const NoiseParams& n);
KeyRateReport noisy_secret_key_rate(const ScenarioParams& p, const NoiseParams& n,
                                    KeyRateConvention convention = KeyRateConvention::AsWritten);

}  // namespace seqqkd
