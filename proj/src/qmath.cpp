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

#include "seqqkd/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqqkd/errors.hpp"

namespace seqqkd {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match rows x cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::initializer_list<Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::basis(std::size_t n, std::size_t index) {
  ComplexMatrix v(n, 1);
  v(index, 0) = 1.0;
  return v;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (const auto& v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (std::abs(data_[i] - other.data_[i]) > tol) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("ComplexMatrix: shape mismatch in +=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("ComplexMatrix: shape mismatch in -=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("ComplexMatrix: shape mismatch in *");
  ComplexMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows()) {
    throw std::invalid_argument("inner: expected column vectors of equal length");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, 0)) * b(i, 0);
  return s;
}

double norm(const ComplexMatrix& v) { return std::sqrt(inner(v, v).real()); }

ComplexMatrix outer(const ComplexMatrix& ket, const ComplexMatrix& bra) { return ket * bra.adjoint(); }

ComplexMatrix projector(const ComplexMatrix& ket) { return outer(ket, ket); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex x = a(i, j);
      if (x == Complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return out;
}

double expectation(const ComplexMatrix& op, const ComplexMatrix& v) { return inner(v, op * v).real(); }

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_product: shape mismatch");
  }
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

// ---------------------------------------------------------------------------
// HilbertLabel

bool operator==(const Subsystem& a, const Subsystem& b) { return a.tag == b.tag && a.basis == b.basis; }

HilbertLabel::HilbertLabel(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].dim() == 0) throw LabelError("subsystem '" + parts_[i].tag + "' has no basis states");
    for (std::size_t j = 0; j < i; ++j) {
      if (parts_[j].tag == parts_[i].tag) throw LabelError("duplicate subsystem tag '" + parts_[i].tag + "'");
    }
  }
}

HilbertLabel HilbertLabel::single(std::string tag, std::vector<std::string> basis) {
  return HilbertLabel({Subsystem{std::move(tag), std::move(basis)}});
}

std::size_t HilbertLabel::dimension() const noexcept {
  std::size_t d = 1;
  for (const auto& p : parts_) d *= p.dim();
  return d;
}

bool HilbertLabel::contains(const std::string& tag) const noexcept {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Subsystem& p) { return p.tag == tag; });
}

std::size_t HilbertLabel::position(const std::string& tag) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].tag == tag) return i;
  throw LabelError("subsystem '" + tag + "' not present in label");
}

const Subsystem& HilbertLabel::at(const std::string& tag) const { return parts_[position(tag)]; }

std::vector<std::string> HilbertLabel::tags() const {
  std::vector<std::string> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.tag);
  return out;
}

HilbertLabel HilbertLabel::concat(const HilbertLabel& other) const {
  std::vector<Subsystem> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return HilbertLabel(std::move(parts));
}

std::string HilbertLabel::basis_name(std::size_t index) const {
  std::vector<std::string> names(parts_.size());
  for (std::size_t k = parts_.size(); k-- > 0;) {
    names[k] = parts_[k].basis[index % parts_[k].dim()];
    index /= parts_[k].dim();
  }
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

bool operator==(const HilbertLabel& a, const HilbertLabel& b) { return a.parts_ == b.parts_; }

// ---------------------------------------------------------------------------
// States

PureState::PureState(HilbertLabel label, ComplexMatrix amplitudes)
    : label_(std::move(label)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.cols() != 1 || amplitudes_.rows() != label_.dimension()) {
    throw LabelError("PureState: amplitude vector does not match label dimension");
  }
}

DensityOperator::DensityOperator(HilbertLabel label, ComplexMatrix matrix)
    : label_(std::move(label)), matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() != label_.dimension()) {
    throw LabelError("DensityOperator: matrix does not match label dimension");
  }
}

DensityOperator::DensityOperator(const PureState& psi)
    : DensityOperator(psi.label(), projector(psi.amplitudes())) {}

DensityOperator DensityOperator::scaled(double factor) const { return {label_, matrix_ * factor}; }

DensityOperator operator+(const DensityOperator& a, const DensityOperator& b) {
  if (!(a.label_ == b.label_)) throw LabelError("DensityOperator: adding operators on different spaces");
  return {a.label_, a.matrix_ + b.matrix_};
}

PureState tensor(const PureState& a, const PureState& b) {
  return {a.label().concat(b.label()), kron(a.amplitudes(), b.amplitudes())};
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return {a.label().concat(b.label()), kron(a.matrix(), b.matrix())};
}

// ---------------------------------------------------------------------------
// Partial trace and local maps

namespace {

std::vector<std::size_t> dims_of(const HilbertLabel& label) {
  std::vector<std::size_t> d;
  for (const auto& p : label.subsystems()) d.push_back(p.dim());
  return d;
}

// Mixed-radix digits of `index`, most significant first.
void to_digits(std::size_t index, const std::vector<std::size_t>& dims, std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

std::size_t from_digits(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, const HilbertLabel& label,
                            std::span<const std::string> keep) {
  if (!rho.is_square() || rho.rows() != label.dimension()) {
    throw LabelError("partial_trace: matrix does not match label dimension");
  }
  std::vector<bool> kept(label.size(), false);
  for (const auto& tag : keep) kept[label.position(tag)] = true;

  const auto dims = dims_of(label);
  std::vector<std::size_t> keep_dims, drop_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? keep_dims : drop_dims).push_back(dims[k]);
  std::size_t keep_total = 1;
  for (auto d : keep_dims) keep_total *= d;

  ComplexMatrix out(keep_total, keep_total);
  std::vector<std::size_t> rd, cd, rk, ck, rt, ct;
  for (std::size_t r = 0; r < rho.rows(); ++r) {
    to_digits(r, dims, rd);
    rk.clear();
    rt.clear();
    for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? rk : rt).push_back(rd[k]);
    for (std::size_t c = 0; c < rho.cols(); ++c) {
      to_digits(c, dims, cd);
      ck.clear();
      ct.clear();
      for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? ck : ct).push_back(cd[k]);
      if (rt != ct) continue;
      out(from_digits(rk, keep_dims), from_digits(ck, keep_dims)) += rho(r, c);
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep) {
  std::vector<Subsystem> parts;
  for (const auto& p : rho.label().subsystems()) {
    if (std::find(keep.begin(), keep.end(), p.tag) != keep.end()) parts.push_back(p);
  }
  return {HilbertLabel(std::move(parts)), partial_trace(rho.matrix(), rho.label(), keep)};
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<std::string> keep) {
  return partial_trace(rho, std::span<const std::string>(keep.begin(), keep.size()));
}

DensityOperator trace_out(const DensityOperator& rho, std::initializer_list<std::string> drop) {
  for (const auto& tag : drop) (void)rho.label().position(tag);
  std::vector<std::string> keep;
  for (const auto& tag : rho.label().tags()) {
    if (std::find(drop.begin(), drop.end(), tag) == drop.end()) keep.push_back(tag);
  }
  return partial_trace(rho, std::span<const std::string>(keep));
}

LocalMap local_map(const HilbertLabel& label, const std::vector<std::string>& targets,
                   const ComplexMatrix& op, const std::vector<Subsystem>& replacement) {
  if (targets.empty()) throw LabelError("local_map: no target subsystems");
  std::vector<std::size_t> target_pos;
  std::size_t in_dim = 1;
  for (const auto& t : targets) {
    const auto pos = label.position(t);
    if (std::find(target_pos.begin(), target_pos.end(), pos) != target_pos.end()) {
      throw LabelError("local_map: target '" + t + "' listed twice");
    }
    target_pos.push_back(pos);
    in_dim *= label.subsystems()[pos].dim();
  }
  std::size_t out_dim = 1;
  for (const auto& r : replacement) out_dim *= r.dim();
  if (op.cols() != in_dim || op.rows() != out_dim) {
    throw LabelError("local_map: operator shape does not match target/replacement dimensions");
  }

  const std::size_t first = *std::min_element(target_pos.begin(), target_pos.end());
  std::vector<Subsystem> out_parts;
  std::vector<int> out_source;  // >=0: original position; -1-k: replacement k
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i == first) {
      for (std::size_t k = 0; k < replacement.size(); ++k) {
        out_parts.push_back(replacement[k]);
        out_source.push_back(-1 - static_cast<int>(k));
      }
    }
    if (std::find(target_pos.begin(), target_pos.end(), i) != target_pos.end()) continue;
    out_parts.push_back(label.subsystems()[i]);
    out_source.push_back(static_cast<int>(i));
  }
  HilbertLabel output(std::move(out_parts));

  const auto in_dims = dims_of(label);
  const auto out_dims = dims_of(output);
  std::vector<std::size_t> target_dims, repl_dims;
  for (auto p : target_pos) target_dims.push_back(in_dims[p]);
  for (const auto& r : replacement) repl_dims.push_back(r.dim());

  ComplexMatrix full(output.dimension(), label.dimension());
  std::vector<std::size_t> in_digits, t_digits(target_pos.size()), r_digits, out_digits(out_dims.size());
  for (std::size_t in = 0; in < label.dimension(); ++in) {
    to_digits(in, in_dims, in_digits);
    for (std::size_t k = 0; k < target_pos.size(); ++k) t_digits[k] = in_digits[target_pos[k]];
    const std::size_t t = from_digits(t_digits, target_dims);
    for (std::size_t r = 0; r < out_dim; ++r) {
      const Complex amp = op(r, t);
      if (amp == Complex{0.0, 0.0}) continue;
      to_digits(r, repl_dims, r_digits);
      for (std::size_t k = 0; k < out_source.size(); ++k) {
        const int src = out_source[k];
        out_digits[k] = src >= 0 ? in_digits[static_cast<std::size_t>(src)]
                                 : r_digits[static_cast<std::size_t>(-1 - src)];
      }
      full(from_digits(out_digits, out_dims), in) += amp;
    }
  }
  return {std::move(full), std::move(output)};
}

ComplexMatrix embed(const HilbertLabel& label, const std::vector<std::string>& targets,
                    const ComplexMatrix& op) {
  if (targets.empty()) throw LabelError("embed: no target subsystems");
  std::vector<std::size_t> target_pos;
  std::vector<std::size_t> target_dims;
  std::size_t dim = 1;
  for (const auto& t : targets) {
    const auto pos = label.position(t);
    if (std::find(target_pos.begin(), target_pos.end(), pos) != target_pos.end()) {
      throw LabelError("embed: target '" + t + "' listed twice");
    }
    target_pos.push_back(pos);
    target_dims.push_back(label.subsystems()[pos].dim());
    dim *= target_dims.back();
  }
  if (op.rows() != dim || op.cols() != dim) {
    throw LabelError("embed: operator shape does not match target dimensions");
  }
  const auto dims = dims_of(label);
  ComplexMatrix full(label.dimension(), label.dimension());
  std::vector<std::size_t> in_digits, t_digits(target_pos.size()), r_digits, out_digits;
  for (std::size_t in = 0; in < label.dimension(); ++in) {
    to_digits(in, dims, in_digits);
    for (std::size_t k = 0; k < target_pos.size(); ++k) t_digits[k] = in_digits[target_pos[k]];
    const std::size_t t = from_digits(t_digits, target_dims);
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex amp = op(r, t);
      if (amp == Complex{0.0, 0.0}) continue;
      to_digits(r, target_dims, r_digits);
      out_digits = in_digits;
      for (std::size_t k = 0; k < target_pos.size(); ++k) out_digits[target_pos[k]] = r_digits[k];
      full(from_digits(out_digits, dims), in) += amp;
    }
  }
  return full;
}

DensityOperator apply(const DensityOperator& rho, const std::vector<std::string>& targets,
                      const ComplexMatrix& op, const std::vector<Subsystem>& replacement) {
  auto lm = local_map(rho.label(), targets, op, replacement);
  return {std::move(lm.output), lm.matrix * rho.matrix() * lm.matrix.adjoint()};
}

DensityOperator apply(const DensityOperator& rho, const std::vector<std::string>& targets,
                      const ComplexMatrix& op) {
  return {rho.label(), [&] {
            const auto f = embed(rho.label(), targets, op);
            return f * rho.matrix() * f.adjoint();
          }()};
}

DensityOperator contract(const DensityOperator& rho, const std::vector<std::string>& targets,
                         const ComplexMatrix& effect) {
  const auto f = embed(rho.label(), targets, effect);
  std::vector<std::string> keep;
  for (const auto& tag : rho.label().tags()) {
    if (std::find(targets.begin(), targets.end(), tag) == targets.end()) keep.push_back(tag);
  }
  DensityOperator weighted(rho.label(), f * rho.matrix());
  auto reduced = partial_trace(weighted, std::span<const std::string>(keep));
  // Hermitize: Tr_T[(E (x) I) rho] is Hermitian in exact arithmetic.
  auto m = reduced.matrix();
  auto h = (m + m.adjoint()) * 0.5;
  return {reduced.label(), std::move(h)};
}

// ---------------------------------------------------------------------------
// Spectral helpers

namespace {

// Cyclic Jacobi on a real symmetric matrix, row-major n x n. Returns
// eigenvalues in `a`'s diagonal and eigenvectors as columns of `v`.
void jacobi_symmetric(std::vector<double>& a, std::vector<double>& v, std::size_t n) {
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto A = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
  auto V = [&](std::size_t r, std::size_t c) -> double& { return v[r * n + c]; };

  double scale = 0.0;
  for (double x : a) scale += x * x;
  if (scale == 0.0) return;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (off <= 1e-32 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
}

}  // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  const std::size_t n = m.rows();
  // Real embedding [[A, -B], [B, A]] of H = A + iB doubles every eigenvalue;
  // (x; y) eigenvectors map back to x + i y.
  const std::size_t N = 2 * n;
  std::vector<double> a(N * N), v;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Complex h = 0.5 * (m(r, c) + std::conj(m(c, r)));
      a[r * N + c] = h.real();
      a[(r + n) * N + (c + n)] = h.real();
      a[r * N + (c + n)] = -h.imag();
      a[(r + n) * N + c] = h.imag();
    }
  }
  jacobi_symmetric(a, v, N);

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i * N + i] < a[j * N + j]; });

  EigenDecomposition out;
  out.vectors = ComplexMatrix(n, n);
  std::vector<ComplexMatrix> accepted;
  for (std::size_t idx : order) {
    if (accepted.size() == n) break;
    ComplexMatrix z(n, 1);
    for (std::size_t k = 0; k < n; ++k) z(k, 0) = Complex{v[k * N + idx], v[(k + n) * N + idx]};
    for (const auto& q : accepted) z -= q * inner(q, z);
    const double len = norm(z);
    if (len < 0.5) continue;
    z *= 1.0 / len;
    out.values.push_back(a[idx * N + idx]);
    accepted.push_back(z);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = accepted[j](k, 0);
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigen(m).values; }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return m.approx_equal(m.adjoint(), tol);
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  const auto ev = hermitian_eigenvalues(m);
  return ev.empty() || ev.front() >= -tol;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eigen(m);
  const std::size_t n = m.rows();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = std::sqrt(std::max(0.0, eig.values[i]));
  return eig.vectors * d * eig.vectors.adjoint();
}

std::size_t numerical_rank(const ComplexMatrix& m, double tol) {
  const auto ev = hermitian_eigenvalues(m);
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double x) { return x > tol; }));
}

double isometry_residual(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::identity(u.cols())).max_abs();
}

ComplexMatrix complete_unitary(const ComplexMatrix& partial, std::span<const std::size_t> fixed) {
  if (!partial.is_square()) throw std::invalid_argument("complete_unitary: matrix is not square");
  const std::size_t n = partial.rows();
  std::vector<bool> is_fixed(n, false);
  for (auto j : fixed) is_fixed.at(j) = true;

  auto col = [&](const ComplexMatrix& m, std::size_t j) {
    ComplexMatrix c(n, 1);
    for (std::size_t k = 0; k < n; ++k) c(k, 0) = m(k, j);
    return c;
  };
  ComplexMatrix out(n, n);
  std::vector<ComplexMatrix> placed;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_fixed[j]) continue;
    placed.push_back(col(partial, j));
    for (std::size_t k = 0; k < n; ++k) out(k, j) = partial(k, j);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (is_fixed[j]) continue;
    bool done = false;
    for (std::size_t attempt = 0; attempt <= n && !done; ++attempt) {
      const std::size_t cand = attempt == 0 ? j : attempt - 1;
      auto z = ComplexMatrix::basis(n, cand);
      for (const auto& q : placed) z -= q * inner(q, z);
      for (const auto& q : placed) z -= q * inner(q, z);  // second pass for stability
      const double len = norm(z);
      if (len < 1e-8) continue;
      z *= 1.0 / len;
      placed.push_back(z);
      for (std::size_t k = 0; k < n; ++k) out(k, j) = z(k, 0);
      done = true;
    }
    if (!done) throw std::invalid_argument("complete_unitary: fixed columns are not orthonormal");
  }
  return out;
}

}  // namespace seqqkd
