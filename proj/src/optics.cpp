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


#include "seqqkd/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "seqqkd/errors.hpp"

namespace seqqkd {

namespace {

constexpr std::size_t kVac = 0;
constexpr std::size_t kH = 1;
constexpr std::size_t kV = 2;

constexpr double kMassTol = 1e-8;

void range_check(std::vector<std::string>& issues, const char* name, double v, double lo, double hi) {
  if (!std::isfinite(v) || v < lo || v > hi) {
    std::ostringstream os;
    os << name << "=" << v << " outside [" << lo << ", " << hi << "]";
    issues.push_back(os.str());
  }
}

HilbertLabel leg_label(const std::string& tag) { return HilbertLabel({polarization_leg(tag)}); }

// Sagnac skeleton: fixes the two columns fed by path 0 and the vacuum columns,
// completes the rest, then rotates the completed pair by free_mix.
ComplexMatrix sagnac(const ComplexMatrix& col_h0, const ComplexMatrix& col_v0, const ComplexMatrix& free_mix) {
  if (free_mix.rows() != 2 || free_mix.cols() != 2 || isometry_residual(free_mix) > 1e-12) {
    throw ParameterError("free_mix must be a 2x2 unitary");
  }
  const auto idx = [](std::size_t leg, std::size_t path) { return leg * 2 + path; };
  ComplexMatrix u(6, 6);
  u(idx(kVac, 0), idx(kVac, 0)) = 1.0;
  u(idx(kVac, 1), idx(kVac, 1)) = 1.0;
  for (std::size_t r = 0; r < 6; ++r) {
    u(r, idx(kH, 0)) = col_h0(r, 0);
    u(r, idx(kV, 0)) = col_v0(r, 0);
  }
  const std::vector<std::size_t> fixed{idx(kVac, 0), idx(kVac, 1), idx(kH, 0), idx(kV, 0)};
  auto full = complete_unitary(u, fixed);
  const std::size_t f0 = idx(kH, 1), f1 = idx(kV, 1);
  ComplexMatrix out = full;
  for (std::size_t r = 0; r < 6; ++r) {
    out(r, f0) = full(r, f0) * free_mix(0, 0) + full(r, f1) * free_mix(1, 0);
    out(r, f1) = full(r, f0) * free_mix(0, 1) + full(r, f1) * free_mix(1, 1);
  }
  return out;
}

void check_overlap_open(double s) { check_overlap(s); }

// Branch of the path register: <path| as a 1x2 bra.
ComplexMatrix path_bra(std::size_t path) { return ComplexMatrix::basis(2, path).adjoint(); }

struct ClickMasses {
  double first_only = 0.0;   // port 0 on, port 1 off
  double second_only = 0.0;  // port 0 off, port 1 on
  double none = 0.0;
  double both = 0.0;
};

}  // namespace

std::string to_string(BobNoClick p) { return p == BobNoClick::Discard ? "discard" : "inconclusive"; }

std::vector<std::string> NoiseParams::range_issues() const {
  std::vector<std::string> issues;
  range_check(issues, "eta_ent", eta_ent, 0.0, 1.0);
  range_check(issues, "d0", d0, 0.0, 1.0);
  range_check(issues, "de", de, 0.0, 1.0);
  range_check(issues, "eta_det", eta_det, 0.0, 1.0);
  if (!(nu == 0.0)) issues.push_back("nu must be 0: dark counts are not modeled");
  return issues;
}

void NoiseParams::validate() const {
  if (auto issues = range_issues(); !issues.empty()) throw ParameterError(std::move(issues));
}

NoiseParams NoiseParams::ideal() { return {}; }

Subsystem polarization_leg(std::string tag) { return {std::move(tag), {"vac", "h", "v"}}; }
Subsystem path_register(std::string tag, const std::string& prefix) {
  return {std::move(tag), {prefix + "0", prefix + "1"}};
}
Subsystem photon_port(std::string tag) { return {std::move(tag), {"0", "1"}}; }

DensityOperator amplitude_damping(const DensityOperator& rho, double d, const std::string& leg) {
  if (!std::isfinite(d) || d < 0.0 || d > 1.0) throw ParameterError("damping rate outside [0, 1]");
  if (!(rho.label().at(leg) == polarization_leg(leg))) {
    throw LabelError("amplitude_damping needs a {vac, h, v} leg, got '" + leg + "'");
  }
  if (d == 0.0) return rho;
  auto out = rho.scaled(1.0 - d);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto kraus = outer(ComplexMatrix::basis(3, kVac), ComplexMatrix::basis(3, k)) * std::sqrt(d);
    out = out + apply(rho, {leg}, kraus);
  }
  return out;
}

DensityOperator noisy_entangled(double eta_ent, NoiseKind kind) {
  if (!std::isfinite(eta_ent) || eta_ent < 0.0 || eta_ent > 1.0) throw ParameterError("eta_ent outside [0, 1]");
  const auto label = leg_label("B").concat(leg_label("E"));
  const auto ket = [](std::size_t b, std::size_t e) { return ComplexMatrix::basis(9, b * 3 + e); };
  const auto phi = (ket(kH, kH) + ket(kV, kV)) * (1.0 / std::sqrt(2.0));
  ComplexMatrix noise(9, 9);
  if (kind == NoiseKind::White) {
    for (std::size_t b : {kH, kV})
      for (std::size_t e : {kH, kV}) noise += projector(ket(b, e)) * 0.25;
  } else {
    noise = (projector(ket(kH, kH)) + projector(ket(kV, kV))) * 0.5;
  }
  return {label, projector(phi) * eta_ent + noise * (1.0 - eta_ent)};
}

ComplexMatrix sagnac_bob(double s, const ComplexMatrix& free_mix) {
  check_overlap_open(s);
  const double c = std::sqrt((1.0 - s) / (1.0 + s));
  const double t = std::sqrt(2.0 * s / (1.0 + s));
  const auto e = [](std::size_t leg, std::size_t path) { return ComplexMatrix::basis(6, leg * 2 + path); };
  return sagnac(e(kH, 0) * c + e(kV, 1) * t, e(kV, 0), free_mix);
}

ComplexMatrix sagnac_eve(double s, const ComplexMatrix& free_mix) {
  check_overlap_open(s);
  const double c = std::sqrt((1.0 - s) / (1.0 + s));
  const double t = std::sqrt(2.0 * s / (1.0 + s));
  const auto e = [](std::size_t leg, std::size_t path) { return ComplexMatrix::basis(6, leg * 2 + path); };
  return sagnac(e(kH, 0), e(kH, 1) * t + e(kV, 0) * c, free_mix);
}

ComplexMatrix hwp(double gamma) {
  const double c = std::cos(2.0 * gamma);
  const double s = std::sin(2.0 * gamma);
  ComplexMatrix u(3, 3);
  u(kVac, kVac) = 1.0;
  u(kH, kH) = c;
  u(kV, kH) = s;
  u(kH, kV) = s;
  u(kV, kV) = -c;
  return u;
}

ComplexMatrix pbs() {
  ComplexMatrix v(4, 3);
  v(0b00, kVac) = 1.0;
  v(0b10, kH) = 1.0;
  v(0b01, kV) = -1.0;
  return v;
}

OnOffPovm onoff_povm(double eta_det) {
  if (!std::isfinite(eta_det) || eta_det < 0.0 || eta_det > 1.0) throw ParameterError("eta_det outside [0, 1]");
  return {ComplexMatrix::diagonal({1.0, 1.0 - eta_det}), ComplexMatrix::diagonal({0.0, eta_det})};
}

DensityOperator build_zeta(const ScenarioParams& p, const NoiseParams& n, Bit a) {
  if (auto issues = p.range_issues(); !issues.empty()) throw ParameterError(std::move(issues));
  n.validate();
  const auto psi = alice_state(p.s, a).amplitudes();
  ComplexMatrix leg(3, 1);
  leg(kH, 0) = psi(0, 0);
  leg(kV, 0) = psi(1, 0);
  const auto bob = amplitude_damping(DensityOperator(leg_label("B"), projector(leg)), n.d0, "B");
  const DensityOperator eve_vac(leg_label("E"), projector(ComplexMatrix::basis(3, kVac)));
  auto shared = amplitude_damping(amplitude_damping(noisy_entangled(n.eta_ent, n.kind), n.de, "B"), n.de, "E");
  return tensor(bob, eve_vac).scaled(p.eta_ab) + shared.scaled(1.0 - p.eta_ab);
}

namespace {

// Half-wave plate at pi/8, beam splitter, then the four click patterns of the
// two output ports. Returns the unnormalized remainder for each pattern.
std::array<DensityOperator, 4> detect(const DensityOperator& rho, const std::string& leg, const OnOffPovm& det) {
  const auto rotated = apply(rho, {leg}, hwp(std::numbers::pi / 8.0));
  const auto split = apply(rotated, {leg}, pbs(), {photon_port(leg + "0"), photon_port(leg + "1")});
  const std::vector<std::string> ports{leg + "0", leg + "1"};
  return {contract(split, ports, kron(det.on, det.off)), contract(split, ports, kron(det.off, det.on)),
          contract(split, ports, kron(det.off, det.off)), contract(split, ports, kron(det.on, det.on))};
}

// Eve's measurement on her conditional leg state; returns masses for e in {0,1,?}.
std::array<double, 3> eve_chain(const DensityOperator& rho_e, double s, const OnOffPovm& det) {
  const DensityOperator path0(HilbertLabel({path_register("PE", "e")}), projector(ComplexMatrix::basis(2, 0)));
  const auto in = apply(tensor(rho_e, path0), {"E", "PE"}, sagnac_eve(s));
  const auto conclusive = apply(in, {"PE"}, path_bra(0), {});
  const auto inconclusive = apply(in, {"PE"}, path_bra(1), {});
  const auto clicks = detect(conclusive, "E", det);
  std::array<double, 3> out{};
  out[0] = std::max(0.0, clicks[0].trace());
  out[1] = std::max(0.0, clicks[1].trace());
  out[2] = std::max(0.0, inconclusive.trace() + clicks[2].trace() + clicks[3].trace());
  return out;
}

}  // namespace

DetectionTables detection_chain(const ScenarioParams& p, const NoiseParams& n, Bit a) {
  const auto zeta = build_zeta(p, n, a);
  const auto det = onoff_povm(n.eta_det);
  const DensityOperator path0(HilbertLabel({path_register("PB", "b")}), projector(ComplexMatrix::basis(2, 0)));

  const auto in = apply(tensor(zeta, path0), {"B", "PB"}, sagnac_bob(p.s));
  const auto conclusive = apply(in, {"PB"}, path_bra(0), {});
  const auto inconclusive = apply(in, {"PB"}, path_bra(1), {});
  const auto clicks = detect(conclusive, "B", det);

  DetectionTables t;
  // Eve's leg conditioned on each Bob event.
  const std::array<DensityOperator, 3> eve_in{clicks[0], clicks[1], trace_out(inconclusive, {"B"})};
  for (std::size_t b = 0; b < 3; ++b) {
    t.bob[b] = std::max(0.0, eve_in[b].trace());
    t.bob_eve[b] = eve_chain(eve_in[b], p.s, det);
    const double eve_total = t.bob_eve[b][0] + t.bob_eve[b][1] + t.bob_eve[b][2];
    if (std::abs(eve_total - t.bob[b]) > kMassTol) {
      throw PipelineError("Eve branch masses do not add up to Bob's branch " + std::to_string(b));
    }
  }
  t.no_click = std::max(0.0, clicks[2].trace());
  t.both_click = std::max(0.0, clicks[3].trace());

  if (n.bob_no_click == BobNoClick::Inconclusive) {
    for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
      const auto extra = eve_chain(clicks[k], p.s, det);
      for (std::size_t e = 0; e < 3; ++e) t.bob_eve[2][e] += extra[e];
      t.bob[2] += std::max(0.0, clicks[k].trace());
    }
  } else {
    t.lost = t.no_click + t.both_click;
  }

  const double total = t.bob[0] + t.bob[1] + t.bob[2] + t.lost;
  t.leakage = std::abs(total - 1.0);
  if (t.leakage > kMassTol) {
    std::ostringstream os;
    os << "detection pipeline leaked probability mass: total " << total;
    throw PipelineError(os.str());
  }
  for (double v : t.bob)
    if (v > 1.0 + 1e-12) throw PipelineError("branch probability above one");
  return t;
}

NoisyJoint noisy_joint(const ScenarioParams& p, const NoiseParams& n) {
  auto ab = JointDistribution::zeros({alice_axis(), outcome_axis("b")}, false);
  auto be = JointDistribution::zeros({outcome_axis("b"), outcome_axis("e")}, false);
  for (Bit a : kBits) {
    const auto t = detection_chain(p, n, a);
    const double q = p.prior(a);
    for (std::size_t b = 0; b < 3; ++b) {
      ab.at({index(a), b}) += q * t.bob[b];
      for (std::size_t e = 0; e < 3; ++e) be.at({b, e}) += q * t.bob_eve[b][e];
    }
  }
  return {std::move(ab), std::move(be)};
}

double noisy_success_prob(const ScenarioParams& p, const NoiseParams& n) {
  return success_prob_from_joint(noisy_joint(p, n).be);
}

KeyRateReport noisy_secret_key_rate(const ScenarioParams& p, const NoiseParams& n, KeyRateConvention convention) {
  const auto j = noisy_joint(p, n);
  return key_rate_from_tables(p.q0, p.q1, j.ab, j.be, convention);
}

}  // namespace seqqkd
