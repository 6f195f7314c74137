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

#include "kdqc/compat.hpp"

#include <charconv>
#include <deque>
#include <functional>

namespace kdqc {

std::string SequenceElement::label() const {
  if (is_hc()) return "HC";
  return block + ":" + std::to_string(index + 1);
}

SequenceElement SequenceElement::from_label(const std::string& label) {
  if (label == "HC") return hc();
  const auto colon = label.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw ValidationError("malformed sequence element '" + label + "'");
  }
  std::size_t one_based = 0;
  const char* first = label.data() + colon + 1;
  const char* last = label.data() + label.size();
  const auto [ptr, ec] = std::from_chars(first, last, one_based);
  if (ec != std::errc{} || ptr != last || one_based == 0) {
    throw ValidationError("malformed sequence element '" + label + "'");
  }
  return coupling(label.substr(0, colon), one_based - 1);
}

GeneratorSet::GeneratorSet(PauliSum remainder_hamiltonian,
                           std::map<std::string, std::vector<PauliSum>> couplings)
    : hc_(std::move(remainder_hamiltonian)), couplings_(std::move(couplings)) {
  for (const auto& [name, ops] : couplings_)
    for (const auto& op : ops)
      if (op.n_sites() != hc_.n_sites()) throw ShapeError("GeneratorSet: site-count mismatch");
}

GeneratorSet GeneratorSet::from_report(const StructureReport& report) {
  std::map<std::string, std::vector<PauliSum>> couplings;
  for (const auto& name : report.partition.names()) {
    auto& ops = couplings[name];
    for (auto& pair : interaction_decomposition(report, name).pairs) ops.push_back(pair.s);
  }
  return GeneratorSet(report.remainder_hamiltonian(), std::move(couplings));
}

std::vector<std::string> GeneratorSet::observers() const {
  std::vector<std::string> out;
  for (const auto& [name, ops] : couplings_) out.push_back(name);
  return out;
}

const PauliSum& GeneratorSet::lookup(const SequenceElement& e) const {
  if (e.is_hc()) return hc_;
  const auto it = couplings_.find(e.block);
  if (it == couplings_.end() || e.index >= it->second.size()) {
    throw ValidationError("unknown sequence element '" + e.label() + "'");
  }
  return it->second[e.index];
}

std::vector<SequenceElement> GeneratorSet::alphabet() const {
  std::vector<SequenceElement> out{SequenceElement::hc()};
  for (const auto& [name, ops] : couplings_)
    for (std::size_t i = 0; i < ops.size(); ++i) out.push_back(SequenceElement::coupling(name, i));
  return out;
}

PauliSum nested_commutator(const Sequence& mu, const PauliSum& start, const GeneratorSet& gens) {
  if (start.n_sites() != gens.n_sites()) throw ShapeError("nested_commutator: site-count mismatch");
  PauliSum op = start;
  for (const auto& e : mu) {
    op = commutator(gens.lookup(e), op);
    if (op.is_zero()) break;
  }
  return op;
}

PauliSum evaluate_constraint(const GeneratorSet& gens, const ConstraintWitness& w) {
  const PauliSum& left = gens.lookup(SequenceElement::coupling(w.left_block, w.left_index));
  const PauliSum& right = gens.lookup(SequenceElement::coupling(w.right_block, w.right_index));
  return commutator(left, nested_commutator(w.sequence, right, gens));
}

std::string to_string(CheckMethod m) {
  switch (m) {
    case CheckMethod::structure: return "structure";
    case CheckMethod::enumeration: return "enumeration";
    case CheckMethod::closure: return "closure";
  }
  return "unknown";
}

namespace {

CompatReport structure_failure(const StructureReport& report) {
  CompatReport out;
  out.compatible = false;
  out.method = CheckMethod::structure;
  out.structure_witness = report.offending_terms.front();
  return out;
}

// Tests [S^X_a, op] for every observer X != right. Returns the first violation.
std::optional<ConstraintWitness> test_against_others(const GeneratorSet& gens,
                                                     const std::string& right,
                                                     std::size_t right_index, const Sequence& mu,
                                                     const PauliSum& op, double tol) {
  const double op_norm = op.norm();
  if (op_norm == 0.0) return std::nullopt;
  for (const auto& [left, ops] : gens.couplings()) {
    if (left == right) continue;
    for (std::size_t a = 0; a < ops.size(); ++a) {
      PauliSum c = commutator(ops[a], op);
      const double norm = c.norm();
      if (norm > tol * ops[a].norm() * op_norm) {
        return ConstraintWitness{left, a, mu, right, right_index, norm, std::move(c)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CompatReport check_enumerated(const StructureReport& report, int depth,
                              const CheckOptions& options) {
  if (depth < 0) throw PreconditionError("check_enumerated: depth must be nonnegative");
  if (!report.hform_ok) return structure_failure(report);

  const GeneratorSet gens = GeneratorSet::from_report(report);
  const std::vector<SequenceElement> alphabet = gens.alphabet();

  CompatReport out;
  out.method = CheckMethod::enumeration;
  out.depth = -1;
  std::size_t nodes = 0;

  // Depth-first over sequences of exactly `length`, testing the leaf.
  Sequence mu;
  std::function<std::optional<ConstraintWitness>(const std::string&, std::size_t,
                                                 const PauliSum&, int)>
      walk = [&](const std::string& right, std::size_t b, const PauliSum& op,
                 int remaining) -> std::optional<ConstraintWitness> {
    if (remaining == 0) {
      if (!mu.empty() && !mu.back().is_hc()) return std::nullopt;
      ++out.sequences_evaluated;
      return test_against_others(gens, right, b, mu, op, options.violation_tol);
    }
    for (const auto& g : alphabet) {
      if (remaining == 1 && !g.is_hc()) continue;  // leaf would be trivial
      if (++nodes > options.max_nodes) {
        throw BudgetExceeded("check_enumerated: node budget of " +
                                 std::to_string(options.max_nodes) + " exceeded at length " +
                                 std::to_string(out.depth + 1),
                             out);
      }
      PauliSum next = commutator(gens.lookup(g), op);
      if (next.is_zero()) continue;
      mu.push_back(g);
      auto found = walk(right, b, next, remaining - 1);
      mu.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  };

  for (int length = 0; length <= depth; ++length) {
    for (const auto& [right, starts] : gens.couplings()) {
      for (std::size_t b = 0; b < starts.size(); ++b) {
        if (auto found = walk(right, b, starts[b], length)) {
          out.compatible = false;
          out.witness = std::move(found);
          return out;
        }
      }
    }
    out.depth = length;
  }
  return out;
}

CompatReport check_closure(const StructureReport& report, const CheckOptions& options) {
  if (!report.hform_ok) return structure_failure(report);

  const GeneratorSet gens = GeneratorSet::from_report(report);
  const std::vector<SequenceElement> alphabet = gens.alphabet();
  const std::size_t rest_sites = report.partition.remainder().size();
  std::size_t cap = options.max_closure_dimension;
  if (cap == 0) cap = rest_sites >= 31 ? ~std::size_t{0} : std::size_t{1} << (2 * rest_sites);

  CompatReport out;
  out.method = CheckMethod::closure;

  struct Candidate {
    PauliSum op;
    Sequence mu;
    std::size_t start;
  };

  for (const auto& [right, starts] : gens.couplings()) {
    std::vector<PauliSum> basis;  // orthonormal
    std::deque<Candidate> queue;
    for (std::size_t b = 0; b < starts.size(); ++b) queue.push_back({starts[b], {}, b});

    while (!queue.empty()) {
      Candidate cand = std::move(queue.front());
      queue.pop_front();
      ++out.sequences_evaluated;

      const double norm0 = cand.op.norm();
      if (norm0 == 0.0) continue;
      // Modified Gram-Schmidt, applied twice.
      PauliSum residual = cand.op * Complex(1.0 / norm0, 0.0);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) {
          const Complex overlap = hs_inner(q, residual);
          if (overlap != Complex(0.0, 0.0)) residual -= q * overlap;
        }
      const double rnorm = residual.norm();
      if (rnorm <= options.independence_tol) continue;

      basis.push_back(residual * Complex(1.0 / rnorm, 0.0));
      ++out.closure_dimension;
      ++out.closure_dimensions[right];
      if (basis.size() > cap) {
        out.compatible = true;
        throw BudgetExceeded("check_closure: closure for '" + right + "' exceeds dimension " +
                                 std::to_string(cap),
                             out);
      }

      if (auto found = test_against_others(gens, right, cand.start, cand.mu, cand.op,
                                           options.violation_tol)) {
        out.compatible = false;
        out.witness = std::move(found);
        return out;
      }

      for (const auto& g : alphabet) {
        PauliSum next = commutator(gens.lookup(g), cand.op);
        if (next.is_zero()) continue;
        Sequence mu = cand.mu;
        mu.push_back(g);
        queue.push_back({std::move(next), std::move(mu), cand.start});
      }
    }
  }
  return out;
}

CMatrix bch_partial(const PauliSum& h, const CMatrix& proj, double tau, int order) {
  if (order < 0 || order > 20) throw PreconditionError("bch_partial: order must lie in [0, 20]");
  const CMatrix hd = to_dense(h);
  if (proj.rows() != hd.rows() || proj.cols() != hd.cols()) {
    throw ShapeError("bch_partial: projector dimension does not match the Hamiltonian");
  }
  CMatrix term = proj;
  CMatrix sum = proj;
  for (int n = 1; n <= order; ++n) {
    term = commutator(hd, term) * Complex(0.0, tau / n);
    sum += term;
  }
  return sum;
}

}  // namespace kdqc
