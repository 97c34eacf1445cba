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


#include "seqqkd/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqqkd/errors.hpp"

namespace seqqkd {

Axis alice_axis() { return {"a", {"0", "1"}}; }
Axis outcome_axis(std::string name) { return {std::move(name), {"0", "1", "?"}}; }
Axis conclusive_axis(std::string name) { return {std::move(name), {"0", "1"}}; }

JointDistribution::JointDistribution(std::vector<Axis> axes, std::vector<double> table, bool normalized)
    : axes_(std::move(axes)), table_(std::move(table)), normalized_(normalized) {
  std::size_t n = 1;
  for (const auto& ax : axes_) n *= ax.size();
  if (n != table_.size()) throw LabelError("table size does not match axes");
  for (double v : table_) {
    if (!(v >= 0.0)) throw ParameterError("joint distribution entries must be non-negative");
  }
}

JointDistribution JointDistribution::zeros(std::vector<Axis> axes, bool normalized) {
  std::size_t n = 1;
  for (const auto& ax : axes) n *= ax.size();
  return {std::move(axes), std::vector<double>(n, 0.0), normalized};
}

std::size_t JointDistribution::axis(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return i;
  throw LabelError("no axis named " + name);
}

std::size_t JointDistribution::flat(std::initializer_list<std::size_t> index) const {
  if (index.size() != axes_.size()) throw LabelError("index rank mismatch");
  std::size_t f = 0;
  std::size_t k = 0;
  for (std::size_t i : index) {
    if (i >= axes_[k].size()) throw LabelError("index out of range on axis " + axes_[k].name);
    f = f * axes_[k].size() + i;
    ++k;
  }
  return f;
}

double JointDistribution::at(std::initializer_list<std::size_t> index) const { return table_[flat(index)]; }
double& JointDistribution::at(std::initializer_list<std::size_t> index) { return table_[flat(index)]; }

double JointDistribution::total() const { return std::accumulate(table_.begin(), table_.end(), 0.0); }

JointDistribution JointDistribution::marginal(const std::vector<std::string>& keep) const {
  std::vector<std::size_t> pos;
  std::vector<Axis> out_axes;
  for (const auto& name : keep) {
    pos.push_back(axis(name));
    out_axes.push_back(axes_[pos.back()]);
  }
  auto out = zeros(out_axes, normalized_);
  std::vector<std::size_t> digits(axes_.size(), 0);
  for (std::size_t f = 0; f < table_.size(); ++f) {
    std::size_t rem = f;
    for (std::size_t k = axes_.size(); k-- > 0;) {
      digits[k] = rem % axes_[k].size();
      rem /= axes_[k].size();
    }
    std::size_t g = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) g = g * out_axes[k].size() + digits[pos[k]];
    out.table_[g] += table_[f];
  }
  return out;
}

double JointDistribution::max_difference(const JointDistribution& other) const {
  if (axes_ != other.axes_) throw LabelError("axes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < table_.size(); ++i) m = std::max(m, std::abs(table_[i] - other.table_[i]));
  return m;
}

JointDistribution joint_ab(const ScenarioParams& p) {
  p.validate();
  const auto povm = bob_povm(p.s, p.alpha0, p.alpha1);
  auto d = JointDistribution::zeros({alice_axis(), outcome_axis("b")}, true);
  for (Bit a : kBits) {
    const auto rho = depolarized_state(p.s, p.eta_ab, a).matrix();
    for (Outcome b : kOutcomes) {
      d.at({index(a), index(b)}) = std::max(0.0, p.prior(a) * trace_product(povm[b], rho));
    }
  }
  return d;
}

JointDistribution joint_abe(const ScenarioParams& p, Structure structure, const ComplexMatrix& bob_frame) {
  p.validate();
  const auto kraus = bob_kraus(p.s, p.alpha0, p.alpha1, bob_frame);
  const auto eve = eve_povm(p.s, p.u0, p.u1);
  const auto label = bob_eve_label();
  const std::vector<std::string> bob{"B"};
  const std::vector<std::string> keep{"E"};
  auto d = JointDistribution::zeros({alice_axis(), outcome_axis("b"), outcome_axis("e")}, true);
  for (Bit a : kBits) {
    const auto rho = structure == Structure::TypeI ? projector(gamma_state(p.s, p.eta_ab, a).amplitudes())
                                                   : sigma_state(p.s, p.eta_ab, a).matrix();
    for (Outcome b : kOutcomes) {
      const auto k = embed(label, bob, kraus[b]);
      const auto rho_e = partial_trace(k * rho * k.adjoint(), label, keep);
      for (Outcome e : kOutcomes) {
        d.at({index(a), index(b), index(e)}) = std::max(0.0, p.prior(a) * trace_product(eve[e], rho_e));
      }
    }
  }
  return d;
}

JointDistribution joint_be(const ScenarioParams& p, Structure structure) {
  return joint_abe(p, structure).marginal({"b", "e"});
}

JointDistribution postprocess_ab(const JointDistribution& d) {
  if (d.axes().size() != 2 || d.axes()[0].name != "a" || d.axes()[1] != outcome_axis("b")) {
    throw LabelError("postprocess_ab expects a table over (a, b in {0,1,?})");
  }
  auto out = JointDistribution::zeros({alice_axis(), conclusive_axis("b")}, true);
  double mass = 0.0;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) mass += d.at({a, b});
  if (!(mass > 0.0)) throw DegenerateDistributionError("Bob has no conclusive mass to keep");
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) out.at({a, b}) = d.at({a, b}) / mass;
  return out;
}

JointDistribution postprocess_be(const JointDistribution& d) {
  if (d.axes().size() != 2 || d.axes()[0] != outcome_axis("b") || d.axes()[1] != outcome_axis("e")) {
    throw LabelError("postprocess_be expects a table over (b, e in {0,1,?})");
  }
  auto out = JointDistribution::zeros({outcome_axis("b"), conclusive_axis("e")}, true);
  double mass = 0.0;
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t e = 0; e < 2; ++e) mass += d.at({b, e});
  if (!(mass > 0.0)) throw DegenerateDistributionError("Eve has no conclusive mass to keep");
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t e = 0; e < 2; ++e) out.at({b, e}) = d.at({b, e}) / mass;
  return out;
}

double shannon_entropy(const std::vector<double>& probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(0.0, h);
}

double shannon_entropy(const JointDistribution& d) { return shannon_entropy(d.table()); }

double success_prob_from_joint(const JointDistribution& be) {
  if (be.axes().size() != 2) throw LabelError("success_prob_from_joint expects a (b, e) table");
  return be.at({0, 0}) + be.at({1, 1});
}

std::string to_string(KeyRateConvention c) {
  switch (c) {
    case KeyRateConvention::AsWritten: return "as-written";
    case KeyRateConvention::PostSelectedAlice: return "post-selected-alice";
    case KeyRateConvention::MutualInformation: return "mutual-information";
  }
  return "as-written";
}

KeyRateReport key_rate_from_tables(double q0, double q1, const JointDistribution& ab, const JointDistribution& be,
                                   KeyRateConvention convention) {
  check_priors(q0, q1);
  const auto pab = postprocess_ab(ab);
  KeyRateReport r;
  r.h_ba = shannon_entropy(pab);
  r.h_b = shannon_entropy(pab.marginal({"b"}));
  const double h_a_post = shannon_entropy(pab.marginal({"a"}));
  r.i_ab = h_a_post + r.h_b - r.h_ba;

  double be_mass = 0.0;
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t e = 0; e < 2; ++e) be_mass += be.at({b, e});
  r.eve_informative = be_mass > 0.0;
  double h_b_given_e = r.h_b;
  if (r.eve_informative) {
    const auto pbe = postprocess_be(be);
    r.h_be = shannon_entropy(pbe);
    r.h_e = shannon_entropy(pbe.marginal({"e"}));
    h_b_given_e = r.h_be - r.h_e;
    r.i_be = shannon_entropy(pbe.marginal({"b"})) + r.h_e - r.h_be;
  }

  switch (convention) {
    case KeyRateConvention::AsWritten:
      r.h_a = shannon_entropy({q0, q1});
      r.raw = r.h_a - r.h_ba + h_b_given_e;
      break;
    case KeyRateConvention::PostSelectedAlice:
      r.h_a = h_a_post;
      r.raw = r.h_a - r.h_ba + h_b_given_e;
      break;
    case KeyRateConvention::MutualInformation:
      r.h_a = h_a_post;
      r.raw = r.i_ab - r.i_be;
      break;
  }
  r.key_rate = std::max(0.0, r.raw);
  return r;
}

KeyRateReport secret_key_rate(const ScenarioParams& p, Structure structure, KeyRateConvention convention) {
  return key_rate_from_tables(p.q0, p.q1, joint_ab(p), joint_be(p, structure), convention);
}

}  // namespace seqqkd
