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

// Small dense complex linear algebra for few-qudit Hilbert spaces.
//
// Everything here is sized for operators up to a few dozen dimensions:
// storage is a flat row-major vector, products are naive triple loops and the
// eigensolver is cyclic Jacobi. Subsystem bookkeeping lives in HilbertLabel so
// that tensor products, partial traces and local maps can be addressed by tag
// instead of by hand-computed strides.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace seqqkd {

using Complex = std::complex<double>;

/// Default absolute tolerance for algebraic identities.
inline constexpr double kAlgebraicTol = 1e-12;
/// Default eigenvalue tolerance for Hermitian / PSD checks.
inline constexpr double kPsdTol = 1e-10;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(std::initializer_list<Complex> values);
  static ComplexMatrix column(std::span<const Complex> values);
  /// Column basis vector e_index of dimension n.
  static ComplexMatrix basis(std::size_t n, std::size_t index);
  static ComplexMatrix diagonal(std::initializer_list<Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  /// Largest entry modulus.
  double max_abs() const;
  /// Entrywise comparison with an absolute tolerance; shapes must match.
  bool approx_equal(const ComplexMatrix& other, double tol = kAlgebraicTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// <a|b> for column vectors.
Complex inner(const ComplexMatrix& a, const ComplexMatrix& b);
double norm(const ComplexMatrix& v);
/// |ket><bra|.
ComplexMatrix outer(const ComplexMatrix& ket, const ComplexMatrix& bra);
ComplexMatrix projector(const ComplexMatrix& ket);
/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Re <v|op|v>.
double expectation(const ComplexMatrix& op, const ComplexMatrix& v);
/// Re Tr(a b).
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// ---------------------------------------------------------------------------
// Subsystem labels

struct Subsystem {
  std::string tag;
  std::vector<std::string> basis;

  std::size_t dim() const noexcept { return basis.size(); }
};

class HilbertLabel {
 public:
  HilbertLabel() = default;
  explicit HilbertLabel(std::vector<Subsystem> parts);
  static HilbertLabel single(std::string tag, std::vector<std::string> basis);

  const std::vector<Subsystem>& subsystems() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  /// Product of subsystem dimensions (1 for the empty label).
  std::size_t dimension() const noexcept;
  bool contains(const std::string& tag) const noexcept;
  /// Position of `tag` in the ordering; throws LabelError if absent.
  std::size_t position(const std::string& tag) const;
  const Subsystem& at(const std::string& tag) const;
  std::vector<std::string> tags() const;
  /// Tensor-product ordering: this subsystems first. Throws on duplicate tags.
  HilbertLabel concat(const HilbertLabel& other) const;
  /// Human-readable name of a product basis index, e.g. "h,b0".
  std::string basis_name(std::size_t index) const;

  friend bool operator==(const HilbertLabel& a, const HilbertLabel& b);

 private:
  std::vector<Subsystem> parts_;
};

bool operator==(const Subsystem& a, const Subsystem& b);

class PureState {
 public:
  PureState(HilbertLabel label, ComplexMatrix amplitudes);

  const HilbertLabel& label() const noexcept { return label_; }
  const ComplexMatrix& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return amplitudes_.rows(); }
  double norm() const { return seqqkd::norm(amplitudes_); }

 private:
  HilbertLabel label_;
  ComplexMatrix amplitudes_;
};

/// Hermitian PSD operator over a labeled space. Sub-normalized traces are
/// permitted; the trace is whatever the construction produced.
class DensityOperator {
 public:
  DensityOperator(HilbertLabel label, ComplexMatrix matrix);
  explicit DensityOperator(const PureState& psi);

  const HilbertLabel& label() const noexcept { return label_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return matrix_.rows(); }
  double trace() const { return matrix_.trace().real(); }
  DensityOperator scaled(double factor) const;

  friend DensityOperator operator+(const DensityOperator& a, const DensityOperator& b);

 private:
  HilbertLabel label_;
  ComplexMatrix matrix_;
};

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) { return kron(a, b); }

/// Partial trace keeping the subsystems named in `keep` (kept in label order).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const HilbertLabel& label,
                            std::span<const std::string> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<std::string> keep);
/// Partial trace removing the subsystems named in `drop`.
DensityOperator trace_out(const DensityOperator& rho, std::initializer_list<std::string> drop);

/// Full-space matrix of a local map acting on `targets`.
///
/// `op` maps the product space of `targets` (in the order given) to the
/// product space of `replacement`. The output label drops the targets and
/// inserts the replacement subsystems where the first target used to sit.
/// Pass `replacement` equal to the targets' own subsystems for an ordinary
/// local operator; pass an empty list for a bra that consumes a register.
struct LocalMap {
  ComplexMatrix matrix;
  HilbertLabel output;
};
LocalMap local_map(const HilbertLabel& label, const std::vector<std::string>& targets,
                   const ComplexMatrix& op, const std::vector<Subsystem>& replacement);
/// I (x) op (x) I with the same subsystems on both sides.
ComplexMatrix embed(const HilbertLabel& label, const std::vector<std::string>& targets,
                    const ComplexMatrix& op);

/// rho -> F rho F^dagger for the local map F.
DensityOperator apply(const DensityOperator& rho, const std::vector<std::string>& targets,
                      const ComplexMatrix& op, const std::vector<Subsystem>& replacement);
DensityOperator apply(const DensityOperator& rho, const std::vector<std::string>& targets,
                      const ComplexMatrix& op);
/// Tr_targets[(effect (x) I) rho]: unnormalized conditional state of the rest.
DensityOperator contract(const DensityOperator& rho, const std::vector<std::string>& targets,
                         const ComplexMatrix& effect);

// ---------------------------------------------------------------------------
// Spectral helpers

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, orthonormal
};

/// Eigen-decomposition of a Hermitian matrix (only the Hermitian part is used).
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kPsdTol);
/// Hermitian within tol and every eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& m, double tol = kPsdTol);
/// Principal square root of a PSD matrix (negative round-off clipped to 0).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);
/// Number of eigenvalues above tol.
std::size_t numerical_rank(const ComplexMatrix& m, double tol = kPsdTol);

/// max |U^dagger U - I|.
double isometry_residual(const ComplexMatrix& u);

/// Fills the columns of `partial` not listed in `fixed` so that the result is
/// unitary. Each free column j tries e_j first, then e_0, e_1, ... and keeps
/// the first candidate that survives Gram-Schmidt against the columns placed
/// so far. The fixed columns must already be orthonormal.
ComplexMatrix complete_unitary(const ComplexMatrix& partial, std::span<const std::size_t> fixed);

}  // namespace seqqkd
