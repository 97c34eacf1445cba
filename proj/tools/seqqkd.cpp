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


// Command-line front end: fig3, fig5, fig7, point, sweep, selfcheck.
//
// Exit codes: 0 success, 1 validation error, 2 numerical invariant failure,
// 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "seqqkd/commands.hpp"
#include "seqqkd/errors.hpp"

namespace {

using namespace seqqkd;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

struct Flags {
  double q0 = 0, q1 = 0, s = 0, eta_ab = 0, eta_ent = 0, eta_det = 0, d0 = 0, de = 0;
  double start = 0, stop = 0;
  std::size_t steps = 0;
  std::string noise, structure, format = "csv", out, var = "s", convention, bob_no_click;
  bool audit = false, parallel = false, ideal = false, inject_failure = false;
  std::size_t draws = 100;
};

struct Options {
  CLI::Option *q0, *q1, *s, *eta_ab, *eta_ent, *eta_det, *d0, *de, *start, *stop, *steps, *noise, *structure,
      *convention, *bob_no_click, *var;
};

bool given(const CLI::Option* o) { return o->count() > 0; }

SweepConfig overlay(SweepConfig c, const Flags& f, const Options& o) {
  if (given(o.q0)) {
    c.scenario.q0 = f.q0;
    c.scenario.q1 = 1.0 - f.q0;
  }
  if (given(o.q1)) c.scenario.q1 = f.q1;
  if (given(o.s)) c.scenario.s = f.s;
  if (given(o.eta_ab)) c.scenario.eta_ab = f.eta_ab;
  if (given(o.eta_ent)) c.noise.eta_ent = f.eta_ent;
  if (given(o.eta_det)) c.noise.eta_det = f.eta_det;
  if (given(o.d0)) c.noise.d0 = f.d0;
  if (given(o.de)) c.noise.de = f.de;
  if (given(o.start)) c.range.start = f.start;
  if (given(o.stop)) c.range.stop = f.stop;
  if (given(o.steps)) c.range.steps = f.steps;
  if (given(o.var)) c.variable = f.var;
  if (given(o.noise)) {
    c.noise.kind = f.noise == "colored" ? NoiseKind::Colored : NoiseKind::White;
    c.only_kind = c.noise.kind;
  }
  if (given(o.structure)) c.structure = f.structure == "type2" ? Structure::TypeII : Structure::TypeI;
  if (given(o.convention)) {
    static const std::map<std::string, KeyRateConvention> names{
        {"as-written", KeyRateConvention::AsWritten},
        {"post-selected-alice", KeyRateConvention::PostSelectedAlice},
        {"mutual-information", KeyRateConvention::MutualInformation}};
    c.convention = names.at(f.convention);
  }
  if (given(o.bob_no_click)) {
    c.noise.bob_no_click = f.bob_no_click == "inconclusive" ? BobNoClick::Inconclusive : BobNoClick::Discard;
  }
  c.audit = f.audit;
  c.parallel = f.parallel;
  c.ideal = f.ideal;
  return c;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open output file '" + path + "'");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.close();
  if (!os) throw IoError("failed writing output file '" + path + "'");
}

std::string render(const Table& t, const std::string& format) {
  return format == "json" ? to_json(t).dump(2) + "\n" : to_csv(t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eavesdropping success probability and secret key rate of two-state sequential-discrimination QKD"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.allow_config_extras(false);

  Flags f;
  Options o{};
  const auto unit = CLI::Range(0.0, 1.0);
  o.q0 = app.add_option("--q0", f.q0, "prior of bit 0; q1 defaults to 1 - q0")->check(unit);
  o.q1 = app.add_option("--q1", f.q1, "prior of bit 1, validated against q0")->check(unit);
  o.s = app.add_option("--s", f.s, "state overlap in [0, 1)");
  o.eta_ab = app.add_option("--eta-ab", f.eta_ab, "depolarizing channel efficiency");
  o.eta_ent = app.add_option("--eta-ent", f.eta_ent, "weight of the ideal entangled resource");
  o.eta_det = app.add_option("--eta-det", f.eta_det, "detector efficiency");
  o.d0 = app.add_option("--d0", f.d0, "photon-loss rate on the Alice-to-Bob leg");
  o.de = app.add_option("--de", f.de, "photon-loss rate on the entangled legs");
  o.noise = app.add_option("--noise", f.noise, "entangled-resource noise")->check(CLI::IsMember({"white", "colored"}));
  o.structure =
      app.add_option("--structure", f.structure, "attack structure")->check(CLI::IsMember({"type1", "type2"}));
  o.convention = app.add_option("--convention", f.convention, "key-rate convention")
                     ->check(CLI::IsMember({"as-written", "post-selected-alice", "mutual-information"}));
  o.bob_no_click = app.add_option("--bob-no-click", f.bob_no_click, "fate of conclusive-path rounds with no single click")
                       ->check(CLI::IsMember({"discard", "inconclusive"}));
  o.start = app.add_option("--start", f.start, "sweep start");
  o.stop = app.add_option("--stop", f.stop, "sweep stop");
  o.steps = app.add_option("--steps", f.steps, "number of sweep points (>= 2)");
  o.var = app.add_option("--var", f.var, "sweep variable")->check(CLI::IsMember({"s", "eta_ab", "d"}));
  app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", f.out, "output path (stdout when omitted)");
  app.add_flag("--audit", f.audit, "fig3: add brute-force oracle columns");
  app.add_flag("--parallel", f.parallel, "evaluate sweep points on all cores");
  app.add_flag("--ideal", f.ideal, "fig7: switch every optical imperfection off");

  auto* fig3 = app.add_subcommand("fig3", "optimal success probability and branch functions against s");
  auto* fig5 = app.add_subcommand("fig5", "secret key rate against s for four channel efficiencies");
  auto* fig7 = app.add_subcommand("fig7", "success probability and key rate of the noisy optical setup");
  auto* point = app.add_subcommand("point", "JSON record of every quantity at one parameter point");
  auto* sweep = app.add_subcommand("sweep", "one-variable sweep of success probability and key rate");
  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite");
  selfcheck->add_option("--draws", f.draws, "randomized parameter draws");
  selfcheck->add_flag("--inject-failure", f.inject_failure, "test hook: force one check to fail");
  for (auto* sub : {fig3, fig5, fig7, point, sweep, selfcheck}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*selfcheck) {
      const auto lines = cmd_selfcheck({.draws = f.draws, .inject_failure = f.inject_failure});
      bool ok = true;
      std::string text;
      nlohmann::json js;
      js["schema"] = kSelfcheckSchema;
      for (const auto& l : lines) {
        ok = ok && l.pass;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s  %-58s worst=%.3g tol=%.3g\n", l.pass ? "PASS" : "FAIL", l.name.c_str(),
                      l.measured, l.tolerance);
        text += buf;
        js["checks"].push_back({{"name", l.name}, {"pass", l.pass}, {"worst", l.measured}, {"tolerance", l.tolerance}});
      }
      text += ok ? "selfcheck: all checks passed\n" : "selfcheck: FAILED\n";
      js["pass"] = ok;
      emit(f.format == "json" ? js.dump(2) + "\n" : text, f.out);
      return ok ? kExitOk : kExitInvariant;
    }
    if (*point) {
      auto c = overlay(fig5_defaults(), f, o);
      c.scenario.eta_ab = given(o.eta_ab) ? f.eta_ab : 0.5;
      if (!given(o.s)) c.scenario.s = 0.5;
      emit(cmd_point(c).dump(2) + "\n", f.out);
      return kExitOk;
    }
    Table t;
    if (*fig3) t = cmd_fig3(overlay(fig3_defaults(), f, o));
    if (*fig5) t = cmd_fig5(overlay(fig5_defaults(), f, o));
    if (*fig7) t = cmd_fig7(overlay(fig7_defaults(), f, o));
    if (*sweep) t = cmd_sweep(overlay(sweep_defaults(), f, o));
    emit(render(t, f.format), f.out);
    return kExitOk;
  } catch (const ParameterError& e) {
    std::cerr << "validation error:\n";
    for (const auto& i : e.issues()) std::cerr << "  " << i << "\n";
    return kExitValidation;
  } catch (const ConstraintError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BranchError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const LabelError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const PipelineError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const DegenerateDistributionError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  }
}
