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

#include <cctype>
#include <charconv>
#include <string>

#include "kdqc/errors.hpp"
#include "kdqc/model.hpp"

namespace kdqc {

namespace {

// Grammar (whitespace may appear between any two tokens):
//
//   sum     := [sign] term (sign term)*   |  <empty>
//   term    := coeff ['*'] factors | coeff | factors
//   factors := factor (['*'] factor)*
//   factor  := ('X' | 'Y' | 'Z') site
//   coeff   := number ['i' | 'j'] | '(' [sign] number [('i'|'j')] [sign number ('i'|'j')] ')'
//   number  := decimal or scientific literal, no sign
class HamiltonianParser {
 public:
  HamiltonianParser(std::string_view text, int n_sites) : text_(text), n_sites_(n_sites) {}

  PauliSum parse() {
    PauliSum out(n_sites_);
    skip_ws();
    if (at_end()) return out;
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1.0 : 1.0;
    }
    for (;;) {
      parse_term(out, sign);
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(unexpected(c) + "; expected '+' or '-' between terms");
      sign = take() == '-' ? -1.0 : 1.0;
    }
    out.prune();
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char take() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      line_start_ = pos_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) take();
  }

  std::string current_line() const {
    const std::size_t end = text_.find('\n', line_start_);
    return std::string(text_.substr(line_start_, end == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : end - line_start_));
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, pos_ - line_start_ + 1, current_line());
  }

  static std::string unexpected(char c) {
    return std::string("unexpected character '") + c + "'";
  }

  static bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }
  static bool is_letter(char c) { return c == 'X' || c == 'Y' || c == 'Z'; }
  static bool is_imag_unit(char c) { return c == 'i' || c == 'j'; }

  double parse_number() {
    const std::size_t begin = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        take();
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (!at_end() && peek() == '.') {
      take();
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = begin;
      fail("malformed number");
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      take();
      if (!at_end() && (peek() == '+' || peek() == '-')) take();
      if (digits() == 0) fail("malformed exponent");
    }
    double value = 0.0;
    const char* first = text_.data() + begin;
    const char* last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      pos_ = begin;
      fail("malformed number");
    }
    return value;
  }

  Complex parse_coefficient() {
    if (peek() != '(') {
      const double v = parse_number();
      if (!at_end() && is_imag_unit(peek())) {
        take();
        return {0.0, v};
      }
      return {v, 0.0};
    }
    take();  // '('
    Complex value(0.0, 0.0);
    bool have_real = false;
    bool have_imag = false;
    for (int part = 0; part < 2; ++part) {
      skip_ws();
      if (at_end()) fail("unterminated complex coefficient");
      if (peek() == ')') break;
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1.0 : 1.0;
        skip_ws();
      } else if (part == 1) {
        fail(unexpected(peek()) + "; expected '+' or '-' inside complex coefficient");
      }
      if (at_end() || !starts_number(peek())) fail("expected a number");
      const double v = sign * parse_number();
      if (!at_end() && is_imag_unit(peek())) {
        take();
        if (have_imag) fail("two imaginary parts in one coefficient");
        value.imag(v);
        have_imag = true;
      } else {
        if (have_real || have_imag) fail("real part must come first in a complex coefficient");
        value.real(v);
        have_real = true;
      }
    }
    skip_ws();
    if (at_end() || peek() != ')') fail("expected ')'");
    take();
    if (!have_real && !have_imag) fail("empty coefficient");
    return value;
  }

  void parse_factor(PauliString& string, Complex& phase) {
    const char c = take();
    const Letter l = c == 'X' ? Letter::X : c == 'Y' ? Letter::Y : Letter::Z;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail(std::string("expected a site index after '") + c + "'");
    }
    const std::size_t begin = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) take();
    int site = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, site);
    if (ec != std::errc{} || site < 1 || site > n_sites_) {
      pos_ = begin;
      fail("site index " + std::string(text_.substr(begin, ptr - (text_.data() + begin))) +
           " out of range [1, " + std::to_string(n_sites_) + "]");
    }
    const auto product = mul(string, PauliString::single(n_sites_, site, l));
    phase *= product.phase;
    string = product.string;
  }

  void parse_term(PauliSum& out, double sign) {
    skip_ws();
    if (at_end()) fail("expected a term");
    Complex coeff(1.0, 0.0);
    bool have_coeff = false;
    bool need_factor = false;
    if (starts_number(peek()) || peek() == '(') {
      coeff = parse_coefficient();
      have_coeff = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        take();
        need_factor = true;
      }
    }
    PauliString string(n_sites_);
    Complex phase(1.0, 0.0);
    std::size_t factors = 0;
    for (;;) {
      skip_ws();
      if (at_end() || !is_letter(peek())) {
        if (need_factor) fail(at_end() ? "expected a Pauli factor" : unexpected(peek()) + "; expected a Pauli factor");
        break;
      }
      parse_factor(string, phase);
      ++factors;
      need_factor = false;
      skip_ws();
      if (!at_end() && peek() == '*') {
        take();
        need_factor = true;
      }
    }
    if (!have_coeff && factors == 0) {
      fail(unexpected(peek()) + "; expected a coefficient or Pauli factor");
    }
    out.add_term(string, sign * coeff * phase);
  }

  std::string_view text_;
  int n_sites_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

PauliSum parse_pauli_sum(std::string_view text, int n_sites) {
  if (n_sites < 1 || n_sites > kMaxPauliSites) {
    throw CapacityError("site count " + std::to_string(n_sites) + " outside [1, " +
                        std::to_string(kMaxPauliSites) + "]");
  }
  return HamiltonianParser(text, n_sites).parse();
}

PauliSum parse_hamiltonian(std::string_view text, int n_sites) {
  PauliSum h = parse_pauli_sum(text, n_sites);
  std::vector<std::string> failures;
  for (const auto& [s, c] : h.terms()) {
    if (c.imag() != 0.0) {
      failures.push_back("term " + s.to_letters() + " has non-real coefficient (" +
                         std::to_string(c.real()) + ", " + std::to_string(c.imag()) +
                         "); the Hamiltonian must be Hermitian");
    }
  }
  if (!failures.empty()) throw ValidationError(std::move(failures));
  return h;
}

}  // namespace kdqc
