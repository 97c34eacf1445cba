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


// Joint outcome distributions of Alice, Bob and Eve, inconclusive-discard
// post-processing and the one-way secret key rate.

#pragma once

#include <string>
#include <vector>

#include "seqqkd/scenario.hpp"

namespace seqqkd {

struct Axis {
  std::string name;
  std::vector<std::string> symbols;

  std::size_t size() const noexcept { return symbols.size(); }
  friend bool operator==(const Axis&, const Axis&) = default;
};

Axis alice_axis();          ///< a in {0,1}
Axis outcome_axis(std::string name);    ///< {0,1,?}
Axis conclusive_axis(std::string name); ///< {0,1}

/// Non-negative table over a product of named outcome alphabets.
class JointDistribution {
 public:
  JointDistribution(std::vector<Axis> axes, std::vector<double> table, bool normalized);
  static JointDistribution zeros(std::vector<Axis> axes, bool normalized);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  const std::vector<double>& table() const noexcept { return table_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t axis(const std::string& name) const;

  double at(std::initializer_list<std::size_t> index) const;
  double& at(std::initializer_list<std::size_t> index);
  double total() const;
  /// Table over `keep` (in the given order) summing the other axes.
  JointDistribution marginal(const std::vector<std::string>& keep) const;
  /// max |this - other|; axes must match.
  double max_difference(const JointDistribution& other) const;

 private:
  std::size_t flat(std::initializer_list<std::size_t> index) const;

  std::vector<Axis> axes_;
  std::vector<double> table_;
  bool normalized_;
};

/// P_AB(a,b) = q_a tr{Lambda(psi_a) M_b}, b in {0,1,?}.
JointDistribution joint_ab(const ScenarioParams& p);
/// P_ABE(a,b,e) by evolving the attack state through Bob's Kraus operators
/// (all three outcomes) and measuring Eve's reduced state.
JointDistribution joint_abe(const ScenarioParams& p, Structure structure = Structure::TypeI,
                            const ComplexMatrix& bob_frame = ComplexMatrix::identity(2));
/// Marginal of joint_abe over a.
JointDistribution joint_be(const ScenarioParams& p, Structure structure = Structure::TypeI);

/// Drops b=? and renormalizes over (a,b) in {0,1}^2.
JointDistribution postprocess_ab(const JointDistribution& d);
/// Drops e=? only; Bob's ? row is kept. Renormalizes over b in {0,1,?}, e in {0,1}.
JointDistribution postprocess_be(const JointDistribution& d);

/// Shannon entropy in bits with 0 log 0 = 0.
double shannon_entropy(const std::vector<double>& probabilities);
double shannon_entropy(const JointDistribution& d);

/// Sum_b P_BE(b, e=b) over conclusive b.
double success_prob_from_joint(const JointDistribution& be);

enum class KeyRateConvention {
  AsWritten,          ///< H(A) from the raw priors, H(B,A) from the post-processed table
  PostSelectedAlice,  ///< H(A) from the post-processed (a,b) table
  MutualInformation,  ///< I(A:B) - I(B:E), each from its own post-processed table
};
std::string to_string(KeyRateConvention c);

struct KeyRateReport {
  double key_rate = 0.0;  ///< max(0, raw)
  double raw = 0.0;
  double h_a = 0.0;
  double h_ba = 0.0;
  double h_e = 0.0;
  double h_be = 0.0;
  double h_b = 0.0;   ///< Bob's marginal of the post-processed (a,b) table
  double i_ab = 0.0;  ///< H(A) + H(B) - H(B,A), post-processed
  double i_be = 0.0;
  /// False when Eve retains no conclusive mass; her terms then contribute
  /// H(B|E) = H(B).
  bool eve_informative = true;
};

/// Key rate from pre-processed tables: ab over (a,b), be over (b,e).
KeyRateReport key_rate_from_tables(double q0, double q1, const JointDistribution& ab, const JointDistribution& be,
                                   KeyRateConvention convention = KeyRateConvention::AsWritten);

/// K = max{0, H(A) - H(B,A) - H(E) + H(B,E)} for the analytic model.
KeyRateReport secret_key_rate(const ScenarioParams& p, Structure structure = Structure::TypeI,
                              KeyRateConvention convention = KeyRateConvention::AsWritten);

}  // namespace seqqkd
