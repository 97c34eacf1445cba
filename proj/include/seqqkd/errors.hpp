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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqqkd {

/// A parameter is outside its declared domain. Carries every offending field.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(std::vector<std::string> issues)
      : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}
  explicit ParameterError(const std::string& issue)
      : ParameterError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& i : issues) {
      if (!out.empty()) out += "; ";
      out += i;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

/// A measurement-weight pair violates (1-w0)(1-w1) >= s^2.
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// s lies outside the window where the optimal unambiguous measurement exists.
class BranchError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Subsystem bookkeeping failure (unknown tag, dimension mismatch).
class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Post-selection left no probability mass to renormalize.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Branch masses of the optical detection chain failed to add up.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqqkd
