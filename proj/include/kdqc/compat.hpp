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

// Classical-compatibility checks for a partitioned Hamiltonian.
//
// With H = sum_X (H^X + sum_a V^X_a (x) S^X_a) + H_rest, compatibility of
// disjoint measurements at arbitrary times holds iff every nested commutator
//
//     [S^X_a, C_{mu(k)} ... C_{mu(2)} C_{mu(1)} S^Y_b],   X != Y,
//
// vanishes, where C_0 = [H_rest, .] and C_{(Z,i)} = [S^Z_i, .]. The product
// grows to the left: mu(1) is applied first.
//
// Two independent procedures decide this. check_enumerated walks every
// sequence up to a depth bound. check_closure builds, per observer Y, the
// span of all such nested commutators as a fixed point, which decides the
// whole infinite family at once because operators on the remainder form a
// finite-dimensional space.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kdqc/errors.hpp"
#include "kdqc/model.hpp"

namespace kdqc {

/// One superoperator in a sequence: either [H_rest, .] or [S^block_index, .].
struct SequenceElement {
  enum class Kind { remainder_hamiltonian, coupling };

  Kind kind = Kind::remainder_hamiltonian;
  std::string block;
  std::size_t index = 0;  ///< 0-based index into the block's coupling list

  static SequenceElement hc() { return {}; }
  static SequenceElement coupling(std::string block, std::size_t index) {
    return {Kind::coupling, std::move(block), index};
  }
  bool is_hc() const noexcept { return kind == Kind::remainder_hamiltonian; }

  /// "HC" or "<block>:<1-based index>".
  std::string label() const;
  static SequenceElement from_label(const std::string& label);

  friend auto operator<=>(const SequenceElement&, const SequenceElement&) = default;
};

/// mu(1) is element 0 and is applied first.
using Sequence = std::vector<SequenceElement>;

/// The operators on the remainder that the constraints are built from.
class GeneratorSet {
 public:
  GeneratorSet(PauliSum remainder_hamiltonian,
               std::map<std::string, std::vector<PauliSum>> couplings);

  /// H_rest and the S^X_a of every named block's interaction decomposition.
  /// Requires report.hform_ok.
  static GeneratorSet from_report(const StructureReport& report);

  int n_sites() const noexcept { return hc_.n_sites(); }
  const PauliSum& remainder_hamiltonian() const noexcept { return hc_; }
  const std::map<std::string, std::vector<PauliSum>>& couplings() const noexcept {
    return couplings_;
  }
  std::vector<std::string> observers() const;

  /// Throws ValidationError for an unknown block or index.
  const PauliSum& lookup(const SequenceElement& e) const;

  /// HC followed by every coupling, blocks in name order.
  std::vector<SequenceElement> alphabet() const;

 private:
  PauliSum hc_;
  std::map<std::string, std::vector<PauliSum>> couplings_;
};

/// (prod_n C_{mu(n)}) start, product growing to the left.
PauliSum nested_commutator(const Sequence& mu, const PauliSum& start, const GeneratorSet& gens);

/// A violated constraint [S^left_a, C_mu S^right_b] != 0.
struct ConstraintWitness {
  std::string left_block;
  std::size_t left_index = 0;
  Sequence sequence;
  std::string right_block;
  std::size_t right_index = 0;
  /// Normalized Hilbert-Schmidt norm of the violating commutator.
  double violation_norm = 0.0;
  PauliSum violation;
};

/// Recomputes the constraint named by the witness; returns its commutator.
PauliSum evaluate_constraint(const GeneratorSet& gens, const ConstraintWitness& w);

enum class CheckMethod { structure, enumeration, closure };

std::string to_string(CheckMethod m);

struct CompatReport {
  bool compatible = true;
  CheckMethod method = CheckMethod::closure;
  /// Enumeration: deepest sequence length fully verified.
  int depth = 0;
  std::optional<ConstraintWitness> witness;
  /// Set when a term couples two accessible blocks directly.
  std::optional<OffendingTerm> structure_witness;
  /// Closure: total dimension of the per-observer closures.
  std::size_t closure_dimension = 0;
  std::map<std::string, std::size_t> closure_dimensions;
  std::size_t sequences_evaluated = 0;
};

struct CheckOptions {
  /// A constraint is violated when ||[S, O]|| > violation_tol * ||S|| * ||O||.
  double violation_tol = 1e-12;
  /// Closure candidates whose component orthogonal to the accepted span is
  /// below this fraction of their norm are treated as dependent.
  double independence_tol = 1e-10;
  /// Enumeration budget in nested-commutator evaluations.
  std::size_t max_nodes = 20'000'000;
  /// Closure budget per observer; 0 means 4^|remainder| (the space dimension).
  std::size_t max_closure_dimension = 0;
};

/// Thrown when a check exceeds its budget; carries what was established.
class BudgetExceeded : public ResourceError {
 public:
  BudgetExceeded(const std::string& what, CompatReport partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const CompatReport& partial() const noexcept { return partial_; }

 private:
  CompatReport partial_;
};

/// Every non-trivial sequence with |mu| <= depth over all ordered pairs of
/// distinct observers, shortest first. A sequence is non-trivial when it is
/// empty or its last element is HC; a violation of any other sequence implies
/// a violation of a shorter one.
CompatReport check_enumerated(const StructureReport& report, int depth,
                              const CheckOptions& options = {});

/// Complete decision via per-observer Lie-closure fixed points.
CompatReport check_closure(const StructureReport& report, const CheckOptions& options = {});

/// sum_{n=0}^{order} (i tau)^n / n! ad_H^n(proj), the truncated series for
/// U(tau)^dag proj U(tau). order must lie in [0, 20].
CMatrix bch_partial(const PauliSum& h, const CMatrix& proj, double tau, int order);

}  // namespace kdqc
