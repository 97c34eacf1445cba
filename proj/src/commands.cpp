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


#include "seqqkd/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "seqqkd/errors.hpp"

namespace seqqkd {

namespace {

constexpr double kEmitTol = 1e-12;

std::string kind_name(NoiseKind k) { return to_string(k); }

nlohmann::json distribution_json(const JointDistribution& d) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& ax : d.axes()) axes.push_back({{"name", ax.name}, {"symbols", ax.symbols}});
  return {{"axes", axes}, {"table", d.table()}, {"total", d.total()}, {"normalized", d.normalized()}};
}

nlohmann::json report_json(const KeyRateReport& r) {
  return {{"key_rate", r.key_rate}, {"raw", r.raw},     {"h_a", r.h_a},   {"h_ba", r.h_ba},
          {"h_e", r.h_e},           {"h_be", r.h_be},   {"h_b", r.h_b},   {"i_ab", r.i_ab},
          {"i_be", r.i_be},         {"eve_informative", r.eve_informative}};
}

bool noise_is_ideal(const NoiseParams& n) {
  return n.eta_ent == 1.0 && n.d0 == 0.0 && n.de == 0.0 && n.eta_det == 1.0;
}

ScenarioParams equal_prior_point(double s, double eta_ab) { return optimal_scenario(0.5, 0.5, s, eta_ab); }

}  // namespace

void Table::check_ranges() const {
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto* v = std::get_if<double>(&row[c]);
      if (v == nullptr) continue;
      const auto& col = columns[c];
      if (!std::isfinite(*v)) throw InvariantError("non-finite value in column " + col.name);
      if (col.kind == ColumnKind::Probability && (*v < -kEmitTol || *v > 1.0 + kEmitTol)) {
        throw InvariantError("probability out of range in column " + col.name + ": " + format_number(*v));
      }
      if (col.kind == ColumnKind::KeyRate && *v < 0.0) {
        throw InvariantError("negative key rate in column " + col.name);
      }
    }
  }
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c].name;
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const auto* v = std::get_if<double>(&row[c])) {
        out += format_number(*v);
      } else {
        out += std::get<std::string>(row[c]);
      }
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* v = std::get_if<double>(&row[c])) {
        r[t.columns[c].name] = *v;
      } else {
        r[t.columns[c].name] = std::get<std::string>(row[c]);
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void Range::validate() const {
  std::vector<std::string> issues;
  if (steps < 2) issues.push_back("steps must be at least 2");
  if (!(std::isfinite(start) && std::isfinite(stop) && start < stop)) issues.push_back("range start must be below stop");
  if (!issues.empty()) throw ParameterError(std::move(issues));
}

double Range::at(std::size_t i) const {
  if (i + 1 == steps) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void SweepConfig::validate() const {
  std::vector<std::string> issues;
  if (variable != "s" && variable != "eta_ab" && variable != "d") {
    issues.push_back("sweep variable must be s, eta_ab or d");
  }
  try {
    range.validate();
  } catch (const ParameterError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
  const auto sp = scenario.range_issues();
  issues.insert(issues.end(), sp.begin(), sp.end());
  const auto np = noise.range_issues();
  issues.insert(issues.end(), np.begin(), np.end());
  if (!issues.empty()) throw ParameterError(std::move(issues));
}

SweepConfig fig3_defaults() {
  SweepConfig c;
  c.range = {0.0, 0.8, 161};
  c.scenario.q0 = 0.4;
  c.scenario.q1 = 0.6;
  c.scenario.eta_ab = 0.5;
  return c;
}

SweepConfig fig5_defaults() {
  SweepConfig c;
  c.range = {0.0, 0.99, 100};
  return c;
}

SweepConfig fig7_defaults() {
  SweepConfig c;
  c.range = {0.0, 0.95, 96};
  c.scenario.eta_ab = 0.5;
  c.noise.eta_ent = 0.5;
  c.noise.eta_det = 0.8;
  return c;
}

SweepConfig sweep_defaults() {
  SweepConfig c;
  c.range = {0.0, 0.9, 91};
  c.scenario.eta_ab = 0.5;
  return c;
}

Table cmd_fig3(const SweepConfig& c) {
  c.validate();
  const double q0 = c.scenario.q0, q1 = c.scenario.q1, eta = c.scenario.eta_ab;
  Table t;
  t.columns = {{"s"},
               {"f0"},
               {"f1"},
               {"p_opt_interior", ColumnKind::Probability},
               {"p_opt_boundary", ColumnKind::Probability},
               {"p_opt", ColumnKind::Probability},
               {"branch", ColumnKind::Label}};
  if (c.audit) {
    t.columns.push_back({"p_brute_boundary", ColumnKind::Probability});
    t.columns.push_back({"p_brute_2d", ColumnKind::Probability});
    t.columns.push_back({"max_abs_diff"});
  }
  t.rows = map_indices(c.range.steps, c.parallel, [&](std::size_t i) {
    const double s = c.range.at(i);
    const auto opt = optimal_success_prob(q0, q1, s, eta);
    std::vector<Cell> row{s,
                          opt.report.f0,
                          opt.report.f1,
                          interior_optimum(q0, q1, s, eta),
                          boundary_optimum(q0, q1, s, eta),
                          opt.probability,
                          to_string(opt.report.branch)};
    if (c.audit) {
      const double b = brute_force_optimum(q0, q1, s, eta, 100000, SearchMode::Boundary).probability;
      const double g = brute_force_optimum(q0, q1, s, eta, 1000, SearchMode::Audit2D).probability;
      row.insert(row.end(), {b, g, std::max(std::abs(b - opt.probability), std::abs(g - opt.probability))});
    }
    return row;
  });
  t.check_ranges();
  return t;
}

Table cmd_fig5(const SweepConfig& c) {
  c.validate();
  Table t;
  t.columns = {{"eta_ab"}, {"s"}, {"K", ColumnKind::KeyRate}, {"p_s", ColumnKind::Probability}};
  const std::vector<double> etas{0.9, 0.8, 0.7, 0.6};
  const std::size_t n = c.range.steps;
  t.rows = map_indices(etas.size() * n, c.parallel, [&](std::size_t k) {
    const double eta = etas[k / n];
    const double s = c.range.at(k % n);
    const auto p = equal_prior_point(s, eta);
    const auto r = secret_key_rate(p, c.structure, c.convention);
    return std::vector<Cell>{eta, s, r.key_rate, success_prob_closed_form(p)};
  });
  t.check_ranges();
  return t;
}

Table cmd_fig7(const SweepConfig& c) {
  c.validate();
  struct Series {
    std::string panel;
    NoiseKind kind;
    double d0;
    double de;
  };
  std::vector<Series> series;
  std::vector<NoiseKind> kinds{NoiseKind::White, NoiseKind::Colored};
  if (c.only_kind) kinds = {*c.only_kind};
  for (NoiseKind k : kinds)
    for (double d : {0.1, 0.2, 0.3}) series.push_back({"a", k, d, d});
  for (NoiseKind k : kinds)
    for (double d0 : {0.1, 0.2}) series.push_back({"b", k, d0, 0.4});

  Table t;
  t.columns = {{"panel", ColumnKind::Label}, {"kind", ColumnKind::Label}, {"d0"}, {"de"}, {"s"},
               {"p_s", ColumnKind::Probability}, {"K", ColumnKind::KeyRate}, {"lost", ColumnKind::Probability}};
  const std::size_t n = c.range.steps;
  t.rows = map_indices(series.size() * n, c.parallel, [&](std::size_t k) {
    const auto& ser = series[k / n];
    const double s = c.range.at(k % n);
    ScenarioParams p = c.scenario;
    p.s = s;
    NoiseParams noise = c.noise;
    noise.kind = ser.kind;
    noise.d0 = ser.d0;
    noise.de = ser.de;
    if (c.ideal) {
      noise.eta_ent = 1.0;
      noise.d0 = noise.de = 0.0;
      noise.eta_det = 1.0;
    }
    const auto j = noisy_joint(p, noise);
    const auto r = key_rate_from_tables(p.q0, p.q1, j.ab, j.be, c.convention);
    const double kept = j.ab.total();
    return std::vector<Cell>{ser.panel, kind_name(ser.kind), noise.d0, noise.de, s,
                             success_prob_from_joint(j.be), r.key_rate, std::max(0.0, 1.0 - kept)};
  });
  t.check_ranges();
  return t;
}

Table cmd_sweep(const SweepConfig& c) {
  c.validate();
  const bool optical = c.variable == "d" || !noise_is_ideal(c.noise);
  Table t;
  t.columns = {{c.variable}, {"p_s", ColumnKind::Probability}, {"K", ColumnKind::KeyRate}};
  t.rows = map_indices(c.range.steps, c.parallel, [&](std::size_t i) {
    const double x = c.range.at(i);
    ScenarioParams p = c.scenario;
    NoiseParams noise = c.noise;
    if (c.variable == "s") p.s = x;
    if (c.variable == "eta_ab") p.eta_ab = x;
    if (c.variable == "d") noise.d0 = noise.de = x;
    if (optical) {
      const auto j = noisy_joint(p, noise);
      return std::vector<Cell>{x, success_prob_from_joint(j.be),
                               key_rate_from_tables(p.q0, p.q1, j.ab, j.be, c.convention).key_rate};
    }
    const auto opt = optimal_scenario(p.q0, p.q1, p.s, p.eta_ab);
    return std::vector<Cell>{x, success_prob_closed_form(opt), secret_key_rate(opt, c.structure, c.convention).key_rate};
  });
  t.check_ranges();
  return t;
}

nlohmann::json cmd_point(const SweepConfig& c) {
  c.validate();
  const auto& in = c.scenario;
  const auto report = branch_report(in.q0, in.q1, in.s);
  const auto p = optimal_scenario(in.q0, in.q1, in.s, in.eta_ab);

  const double ps_closed = success_prob_closed_form(p);
  const double ps1 = success_prob_type1(p);
  const double ps2 = success_prob_type2(p);
  const auto abe1 = joint_abe(p, Structure::TypeI);
  const auto abe2 = joint_abe(p, Structure::TypeII);
  const auto be = abe1.marginal({"b", "e"});
  const auto ab = joint_ab(p);
  const auto k1 = secret_key_rate(p, Structure::TypeI, c.convention);
  const auto k2 = secret_key_rate(p, Structure::TypeII, c.convention);
  const double diff = std::max({std::abs(ps1 - ps2), abe1.max_difference(abe2), std::abs(k1.raw - k2.raw)});

  nlohmann::json out;
  out["schema"] = kPointSchema;
  out["params"] = {{"q0", p.q0}, {"q1", p.q1}, {"s", p.s}, {"eta_ab", p.eta_ab}};
  out["convention"] = to_string(c.convention);
  out["branch"] = {{"f0", report.f0}, {"f1", report.f1}, {"branch", to_string(report.branch)}};
  out["bob"] = {{"alpha0", p.alpha0}, {"alpha1", p.alpha1}};
  out["eve"] = {{"u0", p.u0}, {"u1", p.u1}};
  out["p_s"] = {{"closed_form", ps_closed}, {"type1", ps1}, {"type2", ps2},
                {"optimal", optimal_success_prob(p.q0, p.q1, p.s, p.eta_ab).probability}};
  out["distributions"] = {{"p_ab", distribution_json(ab)},
                          {"p_abe", distribution_json(abe1)},
                          {"p_be", distribution_json(be)},
                          {"p_ab_post", distribution_json(postprocess_ab(ab))}};
  if (k1.eve_informative) out["distributions"]["p_be_post"] = distribution_json(postprocess_be(be));
  out["key_rate"] = {{"type1", report_json(k1)}, {"type2", report_json(k2)}};
  out["structure_max_abs_difference"] = diff;
  out["p_s_value"] = ps1;
  out["K"] = k1.key_rate;

  const auto j = noisy_joint(p, c.noise);
  out["optics"] = {{"noise",
                    {{"eta_ent", c.noise.eta_ent},
                     {"kind", to_string(c.noise.kind)},
                     {"d0", c.noise.d0},
                     {"de", c.noise.de},
                     {"eta_det", c.noise.eta_det},
                     {"bob_no_click", to_string(c.noise.bob_no_click)}}},
                   {"p_ab", distribution_json(j.ab)},
                   {"p_be", distribution_json(j.be)},
                   {"p_s", success_prob_from_joint(j.be)},
                   {"key_rate", report_json(key_rate_from_tables(p.q0, p.q1, j.ab, j.be, c.convention))}};
  return out;
}

// ---------------------------------------------------------------------------
// Self-check

namespace {

struct Check {
  std::string name;
  double tolerance;
  double worst = 0.0;

  void see(double residual) { worst = std::max(worst, std::isfinite(residual) ? residual : 1e300); }
};

ComplexMatrix random_unitary2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979323846);
  const double th = ang(rng) / 4.0, a = ang(rng), b = ang(rng), g = ang(rng);
  const Complex e1 = std::polar(1.0, a), e2 = std::polar(1.0, b), e3 = std::polar(1.0, g);
  return ComplexMatrix(2, 2, {e1 * std::cos(th), -e1 * e2 * std::sin(th), e3 * std::sin(th), e3 * e2 * std::cos(th)});
}

double draw_weight_pair(std::mt19937_64& rng, double s, double& w0, double& w1) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  w0 = u(rng) * (1.0 - s * s);
  const double cap = std::max(0.0, 1.0 - s * s / (1.0 - w0));
  w1 = u(rng) * cap;
  if (u(rng) < 0.5) std::swap(w0, w1);
  return w0;
}

double entropy_violation(const JointDistribution& d) {
  const double h = shannon_entropy(d);
  const double cap = std::log2(static_cast<double>(d.table().size()));
  return std::max({0.0, -h, h - cap});
}

}  // namespace

std::vector<CheckLine> cmd_selfcheck(const SelfcheckOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Check kraus{"bob kraus completeness", 1e-10};
  Check povm_b{"bob povm completeness", 1e-10};
  Check povm_e{"eve povm completeness", 1e-10};
  Check psd{"povm elements and states psd", 1e-10};
  Check tilde{"eve tilde overlap equals -s", 1e-12};
  Check reduce{"reduced attack states equal the channel output", 1e-12};
  Check closed{"closed form equals state evolution", 1e-12};
  Check structure{"type-I equals type-II", 1e-12};
  Check norm{"distribution normalization", 1e-12};
  Check marg{"joint_be is the marginal of joint_abe", 1e-12};
  Check entropy{"entropy bounds", 1e-12};
  Check key{"key rate non-negative", 0.0};
  Check unitary{"interferometers, wave plate and splitter are isometries", 1e-12};
  Check damping{"amplitude damping preserves trace", 1e-10};
  Check ideal{"ideal optics match the analytic model", 1e-10};
  Check optic_mass{"optical branch masses add up", 1e-10};

  for (std::size_t i = 0; i < o.draws; ++i) {
    ScenarioParams p;
    p.q0 = 0.2 + 0.6 * u(rng);
    p.q1 = 1.0 - p.q0;
    p.s = 0.95 * u(rng);
    p.eta_ab = u(rng);
    draw_weight_pair(rng, p.s, p.alpha0, p.alpha1);
    draw_weight_pair(rng, p.s, p.u0, p.u1);

    const auto frame = random_unitary2(rng);
    const auto k = bob_kraus(p.s, p.alpha0, p.alpha1, frame);
    kraus.see(k.completeness_residual());
    const auto mb = bob_povm(p.s, p.alpha0, p.alpha1);
    const auto me = eve_povm(p.s, p.u0, p.u1);
    povm_b.see(mb.completeness_residual());
    povm_e.see(me.completeness_residual());
    for (Outcome x : kOutcomes) {
      psd.see(is_psd(mb[x]) ? 0.0 : 1.0);
      psd.see(is_psd(me[x]) ? 0.0 : 1.0);
    }
    tilde.see(std::abs(inner(eve_tilde_state(p.s, Bit::Zero), eve_tilde_state(p.s, Bit::One)) + p.s));

    for (Bit a : kBits) {
      const auto sigma = sigma_state(p.s, p.eta_ab, a);
      const DensityOperator gamma(gamma_state(p.s, p.eta_ab, a));
      const auto target = depolarized_state(p.s, p.eta_ab, a).matrix();
      psd.see(is_psd(sigma.matrix()) ? 0.0 : 1.0);
      reduce.see((trace_out(sigma, {"E"}).matrix() - target).max_abs());
      reduce.see((trace_out(gamma, {"E"}).matrix() - target).max_abs());
    }

    const double ps = success_prob_closed_form(p);
    const double ps1 = success_prob_type1(p, frame);
    closed.see(std::abs(ps - ps1));
    structure.see(std::abs(ps1 - success_prob_type2(p, frame)));

    const auto ab = joint_ab(p);
    const auto abe1 = joint_abe(p, Structure::TypeI, frame);
    const auto abe2 = joint_abe(p, Structure::TypeII, frame);
    structure.see(abe1.max_difference(abe2));
    norm.see(std::abs(ab.total() - 1.0));
    norm.see(std::abs(abe1.total() - 1.0));
    const auto be = abe1.marginal({"b", "e"});
    marg.see(be.max_difference(joint_be(p)));
    marg.see(abe1.marginal({"a", "b"}).max_difference(ab));

    const bool bob_mass = p.alpha0 + p.alpha1 > 0.0;
    if (bob_mass) {
      const auto pab = postprocess_ab(ab);
      norm.see(std::abs(pab.total() - 1.0));
      entropy.see(entropy_violation(pab));
      const auto r1 = secret_key_rate(p, Structure::TypeI);
      const auto r2 = secret_key_rate(p, Structure::TypeII);
      structure.see(std::abs(r1.raw - r2.raw));
      key.see(r1.key_rate < 0.0 ? -r1.key_rate : 0.0);
      entropy.see(std::max(0.0, -r1.i_ab));
      entropy.see(std::max(0.0, -r1.i_be));
      if (r1.eve_informative) {
        const auto pbe = postprocess_be(be);
        norm.see(std::abs(pbe.total() - 1.0));
        entropy.see(entropy_violation(pbe));
      }
    }

    unitary.see(isometry_residual(sagnac_bob(p.s)));
    unitary.see(isometry_residual(sagnac_eve(p.s)));
    unitary.see(isometry_residual(hwp(2.0 * 3.14159265358979323846 * u(rng))));
    unitary.see(isometry_residual(pbs()));

    NoiseParams n;
    n.eta_ent = u(rng);
    n.kind = u(rng) < 0.5 ? NoiseKind::White : NoiseKind::Colored;
    n.d0 = u(rng);
    n.de = u(rng);
    n.eta_det = u(rng);
    const auto zeta = build_zeta(p, n, Bit::Zero);
    damping.see(std::abs(zeta.trace() - 1.0));
    psd.see(is_psd(zeta.matrix()) ? 0.0 : 1.0);
    for (Bit a : kBits) {
      const auto t = detection_chain(p, n, a);
      optic_mass.see(t.leakage);
      for (std::size_t b = 0; b < 3; ++b) {
        optic_mass.see(std::abs(t.bob_eve[b][0] + t.bob_eve[b][1] + t.bob_eve[b][2] - t.bob[b]));
      }
    }

    if (i % 10 == 0) {
      const auto opt = optimal_scenario(0.5, 0.5, p.s, p.eta_ab);
      const auto j = noisy_joint(opt, NoiseParams::ideal());
      ideal.see(j.ab.max_difference(joint_ab(opt)));
      ideal.see(j.be.max_difference(joint_be(opt)));
      ideal.see(std::abs(success_prob_from_joint(j.be) - success_prob_closed_form(opt)));
      ideal.see(std::abs(key_rate_from_tables(0.5, 0.5, j.ab, j.be).raw - secret_key_rate(opt).raw));
    }
  }

  if (o.inject_failure) closed.see(1.0);

  std::vector<CheckLine> lines;
  for (const Check* c : {&kraus, &povm_b, &povm_e, &psd, &tilde, &reduce, &closed, &structure, &norm, &marg,
                         &entropy, &key, &unitary, &damping, &ideal, &optic_mass}) {
    lines.push_back({c->name, c->worst <= c->tolerance, c->worst, c->tolerance});
  }
  return lines;
}

}  // namespace seqqkd
