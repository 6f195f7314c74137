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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kdqc {

using Complex = std::complex<double>;

/// Default absolute tolerance for dense "is zero" checks on Frobenius norms.
inline constexpr double kDenseZeroTol = 1e-10;
/// Elementwise tolerance for Hermiticity, scaled by max(1, max|M_ij|).
inline constexpr double kHermitianTol = 1e-12;

/// Largest Hilbert-space dimension any dense operation may produce.
/// Defaults to 2^12.
std::size_t max_dimension();
void set_max_dimension(std::size_t dim);
/// Applies KDQ_MAX_DIM from the environment if set. Returns the active cap.
std::size_t max_dimension_from_env();

/// Dense row-major complex matrix. hbar = 1 throughout.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);
  /// |v><v|
  static CMatrix outer(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator-(CMatrix a) { return a *= Complex(-1.0, 0.0); }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest elementwise |a - b|. Shapes must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// tr(a^dagger b)
Complex hs_dot(const CMatrix& a, const CMatrix& b);

/// tr(a b) without forming the product.
Complex trace_of_product(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// ab - ba
CMatrix commutator(const CMatrix& a, const CMatrix& b);

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< columns are eigenvectors; unitary
};

EigenDecomposition hermitian_eig(const CMatrix& h);

/// U(t) = exp(-i t h).
CMatrix evolve(const CMatrix& h, double t);

/// U(t)^dagger op U(t).
CMatrix heisenberg(const CMatrix& op, const CMatrix& h, double t);

/// Caches the eigendecomposition of a Hamiltonian so that many propagators and
/// Heisenberg-picture operators can be formed without re-diagonalizing.
class Propagator {
 public:
  explicit Propagator(const CMatrix& h);

  std::size_t dimension() const noexcept { return eig_.vectors.rows(); }
  const EigenDecomposition& eigen() const noexcept { return eig_; }

  CMatrix at(double t) const;
  CMatrix heisenberg(const CMatrix& op, double t) const;

 private:
  EigenDecomposition eig_;
  CMatrix vectors_adjoint_;
};

/// Embeds an operator on `sites` (1-based, ascending, first site most
/// significant) into the full n_sites-qubit space with identities elsewhere.
CMatrix embed_on_sites(const CMatrix& local, std::span<const int> sites, int n_sites);

}  // namespace kdqc
