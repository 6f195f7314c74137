// Copyright 2026 The kdqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kdqc/densemat.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include "kdqc/errors.hpp"
#include "kdqc/kernels.hpp"

namespace kdqc {

namespace {

std::atomic<std::size_t> g_max_dim{std::size_t{1} << 12};

void require_capacity(std::size_t rows, std::size_t cols) {
  const std::size_t cap = max_dimension();
  if (rows > cap || cols > cap) {
    throw CapacityError("dimension " + std::to_string(std::max(rows, cols)) +
                        " exceeds the configured maximum " + std::to_string(cap));
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

using EigenMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

std::size_t max_dimension() { return g_max_dim.load(std::memory_order_relaxed); }

void set_max_dimension(std::size_t dim) {
  if (dim == 0) throw PreconditionError("maximum dimension must be positive");
  g_max_dim.store(dim, std::memory_order_relaxed);
}

std::size_t max_dimension_from_env() {
  if (const char* env = std::getenv("KDQ_MAX_DIM")) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0) {
      throw ValidationError(std::string("KDQ_MAX_DIM is not a positive integer: ") + env);
    }
    set_max_dimension(value);
  }
  return max_dimension();
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> v) {
  CMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex CMatrix::trace() const {
  if (!is_square()) throw ShapeError("trace of a non-square matrix");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::active().norm2(data_.size(), data_.data()));
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_shape(*this, rhs, "addition");
  kernels::active().axpy(data_.size(), Complex(1.0, 0.0), rhs.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_shape(*this, rhs, "subtraction");
  kernels::active().axpy(data_.size(), Complex(-1.0, 0.0), rhs.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("product: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + " differ");
  }
  CMatrix c(a.rows(), b.cols());
  kernels::active().gemm(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(),
                         c.data().data());
  return c;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Complex hs_dot(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "hs_dot");
  return kernels::active().dotc(a.size(), a.data().data(), b.data().data());
}

Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw ShapeError("trace_of_product: shapes");
  // tr(ab) = sum_ij a_ij b_ji, an unconjugated dot of a with b^T.
  const CMatrix bt = b.transpose();
  return kernels::active().dotu(a.size(), a.data().data(), bt.data().data());
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (!m.is_square()) return false;
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) >= tol * scale) return false;
  return true;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  require_capacity(rows, cols);
  CMatrix out(rows, cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex(0.0, 0.0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (!a.is_square() || !b.is_square()) throw ShapeError("commutator: operands must be square");
  require_same_shape(a, b, "commutator");
  CMatrix out = a * b;
  out -= b * a;
  return out;
}

EigenDecomposition hermitian_eig(const CMatrix& h) {
  if (!h.is_square()) throw ShapeError("hermitian_eig: matrix is not square");
  if (!is_hermitian(h)) throw DomainError("hermitian_eig: matrix is not Hermitian");
  const auto n = static_cast<Eigen::Index>(h.rows());
  Eigen::Map<const EigenMat> view(h.data().data(), n, n);
  // Symmetrize so rounding-level asymmetry cannot leak into the solver.
  const Eigen::MatrixXcd sym = 0.5 * (view + view.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian_eig: solver did not converge");

  EigenDecomposition out;
  out.values.resize(h.rows());
  out.vectors = CMatrix(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < n; ++i) out.values[i] = solver.eigenvalues()(i);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out.vectors(r, c) = solver.eigenvectors()(r, c);
  return out;
}

Propagator::Propagator(const CMatrix& h)
    : eig_(hermitian_eig(h)), vectors_adjoint_(eig_.vectors.adjoint()) {}

CMatrix Propagator::at(double t) const {
  const std::size_t n = dimension();
  // V diag(exp(-i t lambda)) V^dagger
  CMatrix scaled = eig_.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const Complex phase = std::exp(Complex(0.0, -t * eig_.values[c]));
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= phase;
  }
  return scaled * vectors_adjoint_;
}

CMatrix Propagator::heisenberg(const CMatrix& op, double t) const {
  if (op.rows() != dimension() || op.cols() != dimension()) {
    throw ShapeError("heisenberg: operator and Hamiltonian dimensions differ");
  }
  // Work in the eigenbasis: U^dag op U = V (D^* (V^dag op V) D) V^dag.
  const std::size_t n = dimension();
  CMatrix inner = vectors_adjoint_ * op * eig_.vectors;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      inner(r, c) *= std::exp(Complex(0.0, t * (eig_.values[r] - eig_.values[c])));
  return eig_.vectors * inner * vectors_adjoint_;
}

CMatrix evolve(const CMatrix& h, double t) { return Propagator(h).at(t); }

CMatrix heisenberg(const CMatrix& op, const CMatrix& h, double t) {
  if (op.rows() != h.rows() || op.cols() != h.cols()) {
    throw ShapeError("heisenberg: operator and Hamiltonian dimensions differ");
  }
  return Propagator(h).heisenberg(op, t);
}

CMatrix embed_on_sites(const CMatrix& local, std::span<const int> sites, int n_sites) {
  const std::size_t k = sites.size();
  if (n_sites <= 0 || n_sites >= 63) throw CapacityError("embed_on_sites: site count out of range");
  if (!local.is_square() || local.rows() != (std::size_t{1} << k)) {
    throw ShapeError("embed_on_sites: local operator dimension does not match 2^|sites|");
  }
  const std::size_t dim = std::size_t{1} << n_sites;
  require_capacity(dim, dim);
  // bit position (from the least significant end) of each local site in the full index
  std::vector<int> shift(k);
  std::size_t site_mask = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (sites[j] < 1 || sites[j] > n_sites) throw ShapeError("embed_on_sites: site out of range");
    if (j > 0 && sites[j] <= sites[j - 1]) throw ShapeError("embed_on_sites: sites must ascend");
    shift[j] = n_sites - sites[j];
    site_mask |= std::size_t{1} << shift[j];
  }
  auto local_index = [&](std::size_t full) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < k; ++j) idx = (idx << 1) | ((full >> shift[j]) & 1U);
    return idx;
  };
  auto scatter = [&](std::size_t loc) {
    std::size_t full = 0;
    for (std::size_t j = 0; j < k; ++j)
      if ((loc >> (k - 1 - j)) & 1U) full |= std::size_t{1} << shift[j];
    return full;
  };

  CMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t rest = r & ~site_mask;
    const std::size_t lr = local_index(r);
    for (std::size_t lc = 0; lc < local.cols(); ++lc) {
      const Complex v = local(lr, lc);
      if (v == Complex(0.0, 0.0)) continue;
      out(r, rest | scatter(lc)) = v;
    }
  }
  return out;
}

}  // namespace kdqc
