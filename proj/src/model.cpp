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

#include "kdqc/model.hpp"

#include <algorithm>
#include <set>

#include "kdqc/errors.hpp"

namespace kdqc {

Partition::Partition(int n_sites, std::map<std::string, std::vector<int>> blocks)
    : n_sites_(n_sites), blocks_(std::move(blocks)) {
  std::vector<std::string> failures;
  if (n_sites < 1 || n_sites > kMaxPauliSites) {
    failures.push_back("n_sites must lie in [1, " + std::to_string(kMaxPauliSites) + "]");
  }
  if (blocks_.empty()) failures.push_back("at least one named block is required");
  std::map<int, std::string> owner;
  for (auto& [name, sites] : blocks_) {
    if (name.empty()) failures.push_back("block names must be nonempty");
    if (sites.empty()) failures.push_back("block '" + name + "' has no sites");
    std::sort(sites.begin(), sites.end());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const int s = sites[i];
      if (s < 1 || s > n_sites) {
        failures.push_back("block '" + name + "' site " + std::to_string(s) + " outside [1, " +
                           std::to_string(n_sites) + "]");
      }
      if (i > 0 && sites[i - 1] == s) {
        failures.push_back("block '" + name + "' lists site " + std::to_string(s) + " twice");
        continue;
      }
      auto [it, inserted] = owner.emplace(s, name);
      if (!inserted) {
        failures.push_back("site " + std::to_string(s) + " belongs to both '" + it->second +
                           "' and '" + name + "'");
      }
    }
  }
  if (!failures.empty()) throw ValidationError(std::move(failures));
}

std::vector<std::string> Partition::names() const {
  std::vector<std::string> out;
  out.reserve(blocks_.size());
  for (const auto& [name, sites] : blocks_) out.push_back(name);
  return out;
}

const std::vector<int>& Partition::sites(const std::string& name) const {
  const auto it = blocks_.find(name);
  if (it == blocks_.end()) throw ValidationError("unknown block '" + name + "'");
  return it->second;
}

std::vector<int> Partition::remainder() const {
  const std::uint64_t rest = remainder_mask();
  std::vector<int> out;
  for (int s = 1; s <= n_sites_; ++s)
    if ((rest >> (s - 1)) & 1U) out.push_back(s);
  return out;
}

std::uint64_t Partition::mask(const std::string& name) const { return site_mask(sites(name)); }

std::uint64_t Partition::remainder_mask() const {
  std::uint64_t all = n_sites_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_sites_) - 1;
  for (const auto& [name, sites] : blocks_) all &= ~site_mask(sites);
  return all;
}

std::string BucketKey::label() const {
  if (blocks.empty()) return remainder ? "rest" : "identity";
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out += '+';
    out += blocks[i];
  }
  if (remainder) out += "+rest";
  return out;
}

PauliSum StructureReport::remainder_hamiltonian() const {
  const auto it = buckets.find(BucketKey{{}, true});
  return it == buckets.end() ? PauliSum(partition.n_sites()) : it->second;
}

PauliSum StructureReport::coupling_bucket(const std::string& name) const {
  const auto it = buckets.find(BucketKey{{name}, true});
  return it == buckets.end() ? PauliSum(partition.n_sites()) : it->second;
}

StructureReport classify(const PauliSum& h, const Partition& p) {
  if (h.n_sites() != p.n_sites()) {
    throw ShapeError("classify: Hamiltonian has " + std::to_string(h.n_sites()) +
                     " sites, partition has " + std::to_string(p.n_sites()));
  }
  StructureReport report;
  report.partition = p;
  report.hamiltonian = h;
  std::vector<std::pair<std::string, std::uint64_t>> masks;
  for (const auto& name : p.names()) masks.emplace_back(name, p.mask(name));
  const std::uint64_t rest = p.remainder_mask();

  for (const auto& [s, c] : h.terms()) {
    BucketKey key;
    const std::uint64_t supp = s.support_mask();
    for (const auto& [name, m] : masks)
      if (supp & m) key.blocks.push_back(name);
    key.remainder = (supp & rest) != 0;
    auto [it, inserted] = report.buckets.try_emplace(key, PauliSum(h.n_sites()));
    it->second.add_term(s, c);
    if (key.blocks.size() >= 2) {
      report.hform_ok = false;
      report.offending_terms.push_back({s, c, key});
    }
  }
  return report;
}

PauliSum InteractionDecomposition::reconstruct(int n_sites) const {
  PauliSum out(n_sites);
  for (const auto& pair : pairs) out += pair.v * pair.s;
  return out;
}

InteractionDecomposition interaction_decomposition(const StructureReport& report,
                                                   const std::string& subsystem) {
  if (!report.hform_ok) {
    throw PreconditionError(
        "interaction_decomposition: the Hamiltonian couples accessible blocks directly");
  }
  const std::uint64_t own = report.partition.mask(subsystem);
  const std::uint64_t rest = report.partition.remainder_mask();
  const int n = report.partition.n_sites();

  const PauliSum bucket = report.coupling_bucket(subsystem);
  std::map<PauliString, PauliSum> grouped;
  for (const auto& [s, c] : bucket.terms()) {
    auto [it, inserted] = grouped.try_emplace(s.restricted(own), PauliSum(n));
    it->second.add_term(s.restricted(rest), c);
  }
  InteractionDecomposition out{subsystem, {}};
  for (auto& [v, s] : grouped) {
    s.prune();
    if (s.is_zero()) continue;
    out.pairs.push_back({PauliSum(v, 1.0), std::move(s)});
  }
  return out;
}

}  // namespace kdqc
