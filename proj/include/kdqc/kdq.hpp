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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kdqc/densemat.hpp"
#include "kdqc/model.hpp"

namespace kdqc {

/// A projective measurement on one accessible block at a given time.
/// Projectors act on the block's local space (dimension 2^|block|, sites in
/// ascending order) and are embedded with identities elsewhere.
struct MeasurementSpec {
  std::string block;
  std::vector<CMatrix> projectors;
  double time = 0.0;
};

struct Scenario {
  Model model;
  CMatrix initial_state;  ///< density matrix on the full space
  std::vector<MeasurementSpec> measurements;
};

struct NonClassicality {
  double l1_negativity = 0.0;  ///< sum |q| - 1
  double max_imag = 0.0;       ///< max |Im q|
  double min_real = 0.0;       ///< min Re q
};

NonClassicality measure(std::span<const Complex> q);

/// Joint KDQ distribution with its TPM counterpart. Axes follow the
/// time-sorted measurement order (stable for ties); the flat arrays are
/// row-major with the last axis fastest.
struct QuasiDistribution {
  std::vector<std::size_t> outcome_shape;
  std::vector<std::size_t> order;  ///< declaration index of the measurement on each axis
  std::vector<std::string> blocks;
  std::vector<double> times;
  std::vector<Complex> q;
  std::vector<double> tpm;
  NonClassicality measures;

  std::size_t flat_index(std::span<const std::size_t> outcome) const;
  Complex q_at(std::span<const std::size_t> outcome) const { return q[flat_index(outcome)]; }
  double tpm_at(std::span<const std::size_t> outcome) const { return tpm[flat_index(outcome)]; }
};

/// Throws ValidationError listing every failed check. With
/// require_unit_trace false the state only needs to be Hermitian and PSD.
void validate(const Scenario& s, bool require_unit_trace = true);

/// Diagonalizes the model once; evaluates many measurement settings on it.
/// Performs no validation.
class KdqEvaluator {
 public:
  explicit KdqEvaluator(const Model& model);

  const Model& model() const noexcept { return model_; }
  const Propagator& propagator() const noexcept { return propagator_; }

  /// Projectors of `m` embedded in the full space and moved to the Heisenberg
  /// picture at m.time.
  std::vector<CMatrix> heisenberg_projectors(const MeasurementSpec& m) const;

  QuasiDistribution evaluate(const CMatrix& state,
                             const std::vector<MeasurementSpec>& measurements) const;

 private:
  Model model_;
  Propagator propagator_;
};

/// q = tr[P_n(t_n) ... P_1(t_1) rho], tpm = tr[P_n(t_n) ... P_1 rho P_1 ... P_n(t_n)].
QuasiDistribution kdq_distribution(const Scenario& s);

/// As kdq_distribution but accepts states of any trace (e.g. post-selected).
QuasiDistribution kdq_distribution_unnormalized(const Scenario& s);

/// Sums out every axis not in `keep` (axis indices of d, any order).
QuasiDistribution marginal(const QuasiDistribution& d, std::span<const std::size_t> keep);

struct ModifiedState {
  std::size_t outcome = 0;
  CMatrix state;     ///< P_i(t_1) rho P_i(t_1), unnormalized
  Scenario reduced;  ///< remaining measurements on `state`
};

/// For the earliest measurement, one reduced scenario per outcome. When all
/// measured blocks are mutually compatible, q_{i,rest} = kdq(reduced_i)_{rest}.
std::vector<ModifiedState> modified_state_reduction(const Scenario& s);

/// sum over outcomes of |q - tpm|.
double kdq_tpm_residual(const QuasiDistribution& d);

}  // namespace kdqc
