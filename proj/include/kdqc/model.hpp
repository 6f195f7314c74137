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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kdqc/pauli.hpp"

namespace kdqc {

/// Assignment of sites to named accessible blocks. Sites in no block form the
/// inaccessible remainder. Sites are 1-based.
class Partition {
 public:
  Partition() = default;
  /// Validates: n_sites in range, at least one nonempty block, blocks pairwise
  /// disjoint and inside [1, n_sites]. Site lists are sorted on the way in.
  Partition(int n_sites, std::map<std::string, std::vector<int>> blocks);

  int n_sites() const noexcept { return n_sites_; }
  const std::map<std::string, std::vector<int>>& blocks() const noexcept { return blocks_; }
  std::vector<std::string> names() const;
  bool has_block(const std::string& name) const { return blocks_.count(name) != 0; }

  const std::vector<int>& sites(const std::string& name) const;
  std::vector<int> remainder() const;
  std::uint64_t mask(const std::string& name) const;
  std::uint64_t remainder_mask() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int n_sites_ = 0;
  std::map<std::string, std::vector<int>> blocks_;
};

/// Parses `coeff * X1 Y3 + ...`. Coefficients may be complex, written as
/// `2i` or `(0.5-1.5i)`. Repeated letters on one site are multiplied out.
PauliSum parse_pauli_sum(std::string_view text, int n_sites);

/// parse_pauli_sum plus the requirement that the result is Hermitian (all
/// coefficients real). Throws ValidationError otherwise.
PauliSum parse_hamiltonian(std::string_view text, int n_sites);

/// Which named blocks a group of terms touches, and whether it touches the
/// remainder.
struct BucketKey {
  std::vector<std::string> blocks;  ///< sorted
  bool remainder = false;

  /// "A", "A+rest", "A+B", "rest", "identity".
  std::string label() const;
  friend auto operator<=>(const BucketKey&, const BucketKey&) = default;
};

struct OffendingTerm {
  PauliString string;
  Complex coefficient;
  BucketKey key;
};

struct StructureReport {
  Partition partition;
  PauliSum hamiltonian;
  std::map<BucketKey, PauliSum> buckets;
  /// True iff no term touches two or more named blocks.
  bool hform_ok = true;
  std::vector<OffendingTerm> offending_terms;

  /// The bucket of terms acting on the remainder only (zero if absent).
  PauliSum remainder_hamiltonian() const;
  /// The bucket coupling `name` to the remainder (zero if absent).
  PauliSum coupling_bucket(const std::string& name) const;
};

StructureReport classify(const PauliSum& h, const Partition& p);

struct CouplingPair {
  PauliSum v;  ///< single Pauli string on the accessible block, coefficient 1
  PauliSum s;  ///< operator on the remainder
};

/// H^{X,rest} = sum_a V_a (x) S_a with the V_a distinct Pauli strings on X,
/// hence pairwise orthogonal.
struct InteractionDecomposition {
  std::string subsystem;
  std::vector<CouplingPair> pairs;

  PauliSum reconstruct(int n_sites) const;
};

InteractionDecomposition interaction_decomposition(const StructureReport& report,
                                                   const std::string& subsystem);

struct Model {
  PauliSum hamiltonian;
  Partition partition;
  std::string name;
  std::string description;
};

}  // namespace kdqc
