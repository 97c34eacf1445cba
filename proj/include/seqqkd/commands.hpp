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


// Figure sweeps, single-point records and the self-check suite behind the
// command-line tool. Everything here returns data; printing and exit codes
// belong to the tool.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "seqqkd/eavesdrop.hpp"
#include "seqqkd/keyrate.hpp"
#include "seqqkd/optics.hpp"
#include "seqqkd/scenario.hpp"

namespace seqqkd {

/// Output file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An emitted number violated its declared range.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kPointSchema = "seqqkd.point/1";
inline constexpr const char* kSelfcheckSchema = "seqqkd.selfcheck/1";

using Cell = std::variant<double, std::string>;

/// Column kinds drive the range checks applied before emission.
enum class ColumnKind { Plain, Probability, KeyRate, Label };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Plain;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvariantError if a probability leaves [-1e-12, 1+1e-12] or a key
  /// rate is negative.
  void check_ranges() const;
};

/// 12 significant digits, "0" for either signed zero.
std::string format_number(double v);
/// Header row plus data rows, comma separated, LF endings.
std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t);

struct Range {
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;

  /// Throws ParameterError unless steps >= 2 and start < stop.
  void validate() const;
  double at(std::size_t i) const;
};

struct SweepConfig {
  std::string variable = "s";  ///< s | eta_ab | d
  Range range;
  ScenarioParams scenario;
  NoiseParams noise;
  Structure structure = Structure::TypeI;
  KeyRateConvention convention = KeyRateConvention::AsWritten;
  std::optional<NoiseKind> only_kind;  ///< restricts fig7 to one noise kind
  bool audit = false;
  bool parallel = false;
  bool ideal = false;  ///< fig7: switch every imperfection off

  void validate() const;
};

SweepConfig fig3_defaults();
SweepConfig fig5_defaults();
SweepConfig fig7_defaults();
SweepConfig sweep_defaults();

/// Optimal success probability against s; adds brute-force columns on --audit.
Table cmd_fig3(const SweepConfig& c);
/// Key rate against s for eta_ab in {0.9, 0.8, 0.7, 0.6}, equal priors.
Table cmd_fig5(const SweepConfig& c);
/// Noisy success probability and key rate, both panels.
Table cmd_fig7(const SweepConfig& c);
/// Generic one-variable sweep. s and eta_ab use the analytic model unless
/// the noise differs from ideal; d sets d0 = de = d in the optical model.
Table cmd_sweep(const SweepConfig& c);

/// Every intermediate quantity at one parameter point, at the optimal
/// measurements for the given priors.
nlohmann::json cmd_point(const SweepConfig& c);

struct CheckLine {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

struct SelfcheckOptions {
  std::size_t draws = 100;
  unsigned long long seed = 7;
  /// Test hook: push one check past its tolerance.
  bool inject_failure = false;
};

std::vector<CheckLine> cmd_selfcheck(const SelfcheckOptions& o = {});

/// Evaluates f(i) for i in [0, n), optionally on a thread pool; results
/// stay in index order.
template <class F>
auto map_indices(std::size_t n, bool parallel, F&& f) -> std::vector<decltype(f(std::size_t{}))>;

}  // namespace seqqkd

#include "seqqkd/detail/map_indices.hpp"
