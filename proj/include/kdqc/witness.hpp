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

// Randomized search for measurement settings whose KDQ distribution is
// non-classical. A hit rules out classical compatibility of the model, and
// with it any Hamiltonian structure that supports redundant classical records
// in environment fragments. A miss certifies nothing.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "kdqc/kdq.hpp"

namespace kdqc {

/// How outcome ranks are drawn for each sampled projector family.
enum class RankPolicy {
  rank_one,  ///< complete rank-1 basis
  binary,    ///< two projectors of random complementary ranks
  random,    ///< uniformly random composition of the block dimension
};

/// Unit of the sampled measurement times.
enum class TimeUnits {
  inverse_norm,  ///< times are multiples of 1 / ||H|| (operator norm)
  absolute,
};

struct SearchBudget {
  std::size_t samples = 1000;
  double t_min = 0.0;
  double t_max = 10.0;
  TimeUnits time_units = TimeUnits::inverse_norm;
  RankPolicy ranks = RankPolicy::rank_one;
  std::uint64_t seed = 0;
  /// Each sample measures between 2 and this many distinct blocks.
  std::size_t max_observers = 2;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct WitnessRecord {
  Scenario scenario;
  NonClassicality measures;
  /// max(max_imag, -min_real, l1_negativity), clamped at 0.
  double best = 0.0;
  std::size_t sample_index = 0;
  std::size_t samples = 0;
};

double witness_score(const NonClassicality& m);

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix with the phases of R's diagonal divided out.
CMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

/// Complete orthogonal projector family: the columns of a Haar unitary,
/// grouped consecutively by `ranks`.
std::vector<CMatrix> random_projectors(std::size_t dim, std::span<const std::size_t> ranks,
                                       std::mt19937_64& rng);

/// Independent stream for sample `index` of a search seeded with `seed`.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// Maximizes witness_score over sampled scenarios. Deterministic given the
/// budget, independent of the thread count.
WitnessRecord search(const Model& model, const SearchBudget& budget);

enum class ScreeningVerdict { cannot_support_qd, no_violation_found };

const char* to_string(ScreeningVerdict v);

struct ScreeningResult {
  ScreeningVerdict verdict = ScreeningVerdict::no_violation_found;
  double threshold = 0.0;
  std::size_t samples_tested = 0;
  WitnessRecord record;
};

/// One-sided test: cannot_support_qd when the search exceeds `threshold`,
/// otherwise no_violation_found with the number of samples tried.
ScreeningResult screen_darwinism(const Model& model, const SearchBudget& budget,
                                 double threshold);

}  // namespace kdqc
