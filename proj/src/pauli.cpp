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

#include "kdqc/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "kdqc/errors.hpp"

namespace kdqc {

namespace {

void require_sites(int n) {
  if (n < 1 || n > kMaxPauliSites) {
    throw CapacityError("site count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxPauliSites) + "]");
  }
}

void require_same_sites(int a, int b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": site-count mismatch " + std::to_string(a) + " vs " +
                     std::to_string(b));
  }
}

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::string format_real(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(int n_sites) : n_(n_sites) { require_sites(n_sites); }

PauliString::PauliString(int n_sites, std::uint64_t x_bits, std::uint64_t z_bits)
    : n_(n_sites), x_(x_bits), z_(z_bits) {
  require_sites(n_sites);
  if (((x_ | z_) & ~low_mask(n_)) != 0) throw ShapeError("PauliString: bits beyond n_sites");
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString s(static_cast<int>(letters.size()));
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const int site = static_cast<int>(i) + 1;
    switch (letters[i]) {
      case 'I': break;
      case 'X': s.set(site, Letter::X); break;
      case 'Y': s.set(site, Letter::Y); break;
      case 'Z': s.set(site, Letter::Z); break;
      default: throw ValidationError(std::string("invalid Pauli letter '") + letters[i] + "'");
    }
  }
  return s;
}

PauliString PauliString::single(int n_sites, int site, Letter l) {
  PauliString s(n_sites);
  s.set(site, l);
  return s;
}

Letter PauliString::letter(int site) const {
  if (site < 1 || site > n_) throw ShapeError("site " + std::to_string(site) + " out of range");
  const bool x = (x_ >> (site - 1)) & 1U;
  const bool z = (z_ >> (site - 1)) & 1U;
  if (x && z) return Letter::Y;
  if (x) return Letter::X;
  if (z) return Letter::Z;
  return Letter::I;
}

PauliString& PauliString::set(int site, Letter l) {
  if (site < 1 || site > n_) throw ShapeError("site " + std::to_string(site) + " out of range");
  const std::uint64_t bit = std::uint64_t{1} << (site - 1);
  x_ &= ~bit;
  z_ &= ~bit;
  if (l == Letter::X || l == Letter::Y) x_ |= bit;
  if (l == Letter::Z || l == Letter::Y) z_ |= bit;
  return *this;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (std::uint64_t m = x_ | z_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  require_same_sites(n_, other.n_, "commutes_with");
  // Symplectic form: number of sites where the letters anticommute.
  return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

PauliString PauliString::restricted(std::uint64_t mask) const {
  PauliString out = *this;
  out.x_ &= mask;
  out.z_ &= mask;
  return out;
}

std::string PauliString::to_letters() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int s = 1; s <= n_; ++s) out[s - 1] = letter_char(letter(s));
  return out;
}

PauliProduct mul(const PauliString& a, const PauliString& b) {
  require_same_sites(a.n_sites(), b.n_sites(), "mul");
  const std::uint64_t ax = a.x_bits(), az = a.z_bits();
  const std::uint64_t bx = b.x_bits(), bz = b.z_bits();
  const std::uint64_t a_x = ax & ~az, a_y = ax & az, a_z = ~ax & az;
  const std::uint64_t b_x = bx & ~bz, b_y = bx & bz, b_z = ~bx & bz;
  // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
  const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
  const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
  const int k = ((std::popcount(plus) - std::popcount(minus)) % 4 + 4) % 4;
  static constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPhase[k], PauliString(a.n_sites(), ax ^ bx, az ^ bz)};
}

PauliSum::PauliSum(int n_sites) : n_(n_sites) { require_sites(n_sites); }

PauliSum::PauliSum(const PauliString& s, Complex coefficient) : n_(s.n_sites()) {
  add_term(s, coefficient);
}

PauliSum PauliSum::identity(int n_sites) { return PauliSum(PauliString(n_sites), 1.0); }

Complex PauliSum::coefficient(const PauliString& s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void PauliSum::add_term(const PauliString& s, Complex c) {
  require_same_sites(n_, s.n_sites(), "add_term");
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (inserted) return;
  const double scale = std::max(std::abs(it->second), std::abs(c));
  it->second += c;
  if (std::abs(it->second) <= kPruneTol * scale) terms_.erase(it);
}

void PauliSum::prune(double scale, double rel_tol) {
  const double threshold = rel_tol * std::max(scale, max_coefficient());
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) <= threshold; });
}

double PauliSum::max_coefficient() const {
  double m = 0.0;
  for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double PauliSum::norm() const {
  double s = 0.0;
  for (const auto& [str, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

PauliSum PauliSum::adjoint() const {
  PauliSum out = *this;
  for (auto& [s, c] : out.terms_) c = std::conj(c);
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  const double scale = std::max(1.0, max_coefficient());
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& kv) { return std::abs(kv.second.imag()) <= tol * scale; });
}

std::uint64_t PauliSum::support_mask() const {
  std::uint64_t m = 0;
  for (const auto& [s, c] : terms_) m |= s.support_mask();
  return m;
}

std::vector<int> PauliSum::support() const {
  std::vector<int> out;
  for (std::uint64_t m = support_mask(); m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

bool PauliSum::supported_within(std::uint64_t mask) const { return (support_mask() & ~mask) == 0; }

std::string PauliSum::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      coeff = format_real(std::abs(c.real()));
    } else {
      coeff = "(" + format_real(c.real()) + (std::signbit(c.imag()) ? "-" : "+") +
              format_real(std::abs(c.imag())) + "i)";
    }
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    out << coeff;
    if (!s.is_identity()) {
      out << '*';
      bool first_factor = true;
      for (int site : s.support()) {
        if (!first_factor) out << ' ';
        first_factor = false;
        out << letter_char(s.letter(site)) << site;
      }
    }
  }
  return out.str();
}

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
  require_same_sites(n_, rhs.n_, "sum");
  const double scale = std::max(max_coefficient(), rhs.max_coefficient());
  for (const auto& [s, c] : rhs.terms_) add_term(s, c);
  prune(scale);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& rhs) {
  require_same_sites(n_, rhs.n_, "difference");
  const double scale = std::max(max_coefficient(), rhs.max_coefficient());
  for (const auto& [s, c] : rhs.terms_) add_term(s, -c);
  prune(scale);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [str, c] : terms_) c *= s;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  require_same_sites(a.n_sites(), b.n_sites(), "product");
  PauliSum out(a.n_sites());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      const auto [phase, s] = mul(sa, sb);
      out.add_term(s, phase * ca * cb);
    }
  out.prune(a.max_coefficient() * b.max_coefficient());
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  require_same_sites(a.n_sites(), b.n_sites(), "commutator");
  PauliSum out(a.n_sites());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      if (sa.commutes_with(sb)) continue;
      const auto [phase, s] = mul(sa, sb);
      out.add_term(s, 2.0 * phase * ca * cb);
    }
  out.prune(2.0 * a.max_coefficient() * b.max_coefficient());
  return out;
}

Complex hs_inner(const PauliSum& a, const PauliSum& b) {
  require_same_sites(a.n_sites(), b.n_sites(), "hs_inner");
  Complex acc(0.0, 0.0);
  const PauliSum& small = a.size() <= b.size() ? a : b;
  const PauliSum& large = a.size() <= b.size() ? b : a;
  for (const auto& [s, c] : small.terms()) {
    const Complex other = large.coefficient(s);
    if (other == Complex(0.0, 0.0)) continue;
    acc += (&small == &a) ? std::conj(c) * other : std::conj(other) * c;
  }
  return acc;
}

std::vector<int> support(const PauliSum& a) { return a.support(); }

namespace {

std::size_t dense_dimension(int n) {
  if (n < 1) throw ShapeError("to_dense: no sites");
  if (n >= 63 || (std::size_t{1} << n) > max_dimension()) {
    throw CapacityError("to_dense: 2^" + std::to_string(n) + " exceeds the configured maximum " +
                        std::to_string(max_dimension()));
  }
  return std::size_t{1} << n;
}

// out += c * P. Site s (bit s-1 of the masks) is dense bit n-s, so site 1 is
// the most significant qubit.
void accumulate_dense(CMatrix& out, const PauliString& s, Complex c) {
  const int n = s.n_sites();
  std::size_t xd = 0, zd = 0;
  for (int site = 1; site <= n; ++site) {
    const std::size_t bit = std::size_t{1} << (n - site);
    if ((s.x_bits() >> (site - 1)) & 1U) xd |= bit;
    if ((s.z_bits() >> (site - 1)) & 1U) zd |= bit;
  }
  // <r| P |r ^ x> = (-i)^{#Y} (-1)^{|r & z|}
  static constexpr Complex kMinusIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  const Complex base = c * kMinusIPow[std::popcount(s.x_bits() & s.z_bits()) % 4];
  for (std::size_t r = 0; r < out.rows(); ++r) {
    out(r, r ^ xd) += (std::popcount(r & zd) & 1) ? -base : base;
  }
}

}  // namespace

CMatrix to_dense(const PauliString& s) {
  const std::size_t dim = dense_dimension(s.n_sites());
  CMatrix out(dim, dim);
  accumulate_dense(out, s, 1.0);
  return out;
}

CMatrix to_dense(const PauliSum& a) {
  const std::size_t dim = dense_dimension(a.n_sites());
  CMatrix out(dim, dim);
  for (const auto& [s, c] : a.terms()) accumulate_dense(out, s, c);
  return out;
}

std::uint64_t site_mask(const std::vector<int>& sites) {
  std::uint64_t m = 0;
  for (int s : sites) {
    if (s < 1 || s > kMaxPauliSites) throw ShapeError("site " + std::to_string(s) + " out of range");
    m |= std::uint64_t{1} << (s - 1);
  }
  return m;
}

}  // namespace kdqc
