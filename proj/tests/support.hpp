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


// Shared helpers for the unit tests: seeded random operators.

#pragma once

#include <cmath>
#include <random>

#include "seqqkd/qmath.hpp"

namespace seqqkd::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260914);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(g(rng()), g(rng()));
  return m;
}

/// Random density matrix (trace one, full rank almost surely).
inline ComplexMatrix random_density(std::size_t n) {
  auto g = random_matrix(n, n);
  auto rho = g * g.adjoint();
  return rho * (1.0 / rho.trace().real());
}

/// Haar-ish unitary from Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n) {
  auto g = random_matrix(n, n);
  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
    for (std::size_t k = 0; k < j; ++k) {
      Complex d = 0;
      for (std::size_t i = 0; i < n; ++i) d += std::conj(u(i, k)) * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= d * u(i, k);
    }
    double nv = 0;
    for (auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (std::size_t i = 0; i < n; ++i) u(i, j) = v[i] / nv;
  }
  return u;
}

}  // namespace seqqkd::testing
