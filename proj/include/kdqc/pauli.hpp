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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kdqc/densemat.hpp"

namespace kdqc {

enum class Letter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);

/// Largest number of sites a PauliString can carry (one bit per site).
inline constexpr int kMaxPauliSites = 64;

/// Relative threshold below which coefficients are dropped.
inline constexpr double kPruneTol = 1e-12;

/// Tensor product of single-qubit Paulis on n sites, without phase. Sites are
/// 1-based; site s is stored in bit s-1 of the x/z masks (X: x, Z: z, Y: both).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_sites);
  PauliString(int n_sites, std::uint64_t x_bits, std::uint64_t z_bits);

  /// "XIZ" -> X on site 1, Z on site 3.
  static PauliString from_letters(std::string_view letters);
  static PauliString single(int n_sites, int site, Letter l);

  int n_sites() const noexcept { return n_; }
  std::uint64_t x_bits() const noexcept { return x_; }
  std::uint64_t z_bits() const noexcept { return z_; }
  std::uint64_t support_mask() const noexcept { return x_ | z_; }

  Letter letter(int site) const;
  PauliString& set(int site, Letter l);

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  int weight() const noexcept;
  std::vector<int> support() const;
  bool commutes_with(const PauliString& other) const;

  /// Same string with every site outside `site_mask` set to I.
  PauliString restricted(std::uint64_t site_mask) const;

  std::string to_letters() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliProduct {
  Complex phase;  ///< one of +1, -1, +i, -i
  PauliString string;
};

/// a * b = phase * string.
PauliProduct mul(const PauliString& a, const PauliString& b);

/// Canonical weighted sum of Pauli strings. Coefficients that cancel, or fall
/// below kPruneTol relative to the operation's scale, are removed.
class PauliSum {
 public:
  using Terms = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n_sites);
  PauliSum(const PauliString& s, Complex coefficient = 1.0);

  static PauliSum identity(int n_sites);

  int n_sites() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex coefficient(const PauliString& s) const;

  /// Accumulates c into the coefficient of s; a sum that cancels to within
  /// kPruneTol of its operands is erased.
  void add_term(const PauliString& s, Complex c);

  /// Drops every coefficient with |c| <= rel_tol * max(scale, largest |c|).
  void prune(double scale = 0.0, double rel_tol = kPruneTol);

  double max_coefficient() const;
  /// Normalized Hilbert-Schmidt norm, sqrt(tr(a^dag a) / 2^n).
  double norm() const;
  PauliSum adjoint() const;
  bool is_hermitian(double tol = kPruneTol) const;
  std::vector<int> support() const;
  std::uint64_t support_mask() const;

  /// Terms restricted to strings whose support lies inside `site_mask`.
  bool supported_within(std::uint64_t site_mask) const;

  /// Text in the Hamiltonian grammar; complex coefficients are written as
  /// (re+imi). Reparses to an identical sum.
  std::string to_text() const;

  PauliSum& operator+=(const PauliSum& rhs);
  PauliSum& operator-=(const PauliSum& rhs);
  PauliSum& operator*=(Complex s);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  int n_ = 0;
  Terms terms_;
};

/// [a, b] computed exactly on strings: only anticommuting pairs contribute,
/// each as 2 * phase * c_a * c_b.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// tr(a^dag b) / 2^n.
Complex hs_inner(const PauliSum& a, const PauliSum& b);

/// 1-based sites where some term carries a non-identity letter.
std::vector<int> support(const PauliSum& a);

CMatrix to_dense(const PauliString& s);
CMatrix to_dense(const PauliSum& a);

/// 1-based site list -> bit mask.
std::uint64_t site_mask(const std::vector<int>& sites);

}  // namespace kdqc
