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

#include "kdqc/witness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "kdqc/errors.hpp"

namespace kdqc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Complex> haar_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& z : v) {
    z = Complex(normal(rng), normal(rng));
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

std::vector<Complex> product_state(int n_sites, std::mt19937_64& rng) {
  std::vector<Complex> psi{Complex(1.0, 0.0)};
  for (int s = 0; s < n_sites; ++s) {
    const auto q = haar_state(2, rng);
    std::vector<Complex> next(psi.size() * 2);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      next[2 * i] = psi[i] * q[0];
      next[2 * i + 1] = psi[i] * q[1];
    }
    psi = std::move(next);
  }
  return psi;
}

std::vector<std::size_t> draw_ranks(std::size_t dim, RankPolicy policy, std::mt19937_64& rng) {
  if (dim == 1) return {1};
  switch (policy) {
    case RankPolicy::rank_one:
      return std::vector<std::size_t>(dim, 1);
    case RankPolicy::binary: {
      std::uniform_int_distribution<std::size_t> cut(1, dim - 1);
      const std::size_t k = cut(rng);
      return {k, dim - k};
    }
    case RankPolicy::random: {
      std::bernoulli_distribution split(0.5);
      std::vector<std::size_t> ranks{1};
      for (std::size_t i = 1; i < dim; ++i) {
        if (split(rng)) ranks.push_back(1);
        else ++ranks.back();
      }
      return ranks;
    }
  }
  return std::vector<std::size_t>(dim, 1);
}

struct Sample {
  double score = -1.0;
  std::size_t index = 0;
  CMatrix state;
  std::vector<MeasurementSpec> measurements;
  NonClassicality measures;
};

Sample draw_and_score(const KdqEvaluator& eval, const std::vector<std::string>& names,
                      const SearchBudget& budget, double time_scale, std::size_t index) {
  std::mt19937_64 rng = sample_stream(budget.seed, index);
  const Partition& p = eval.model().partition;

  std::vector<std::string> blocks = names;
  std::shuffle(blocks.begin(), blocks.end(), rng);
  const std::size_t most = std::min(std::max<std::size_t>(budget.max_observers, 2), blocks.size());
  std::uniform_int_distribution<std::size_t> count(2, most);
  blocks.resize(count(rng));

  std::uniform_real_distribution<double> when(budget.t_min, budget.t_max);
  Sample s;
  s.index = index;
  for (const auto& b : blocks) {
    const std::size_t dim = std::size_t{1} << p.sites(b).size();
    const auto ranks = draw_ranks(dim, budget.ranks, rng);
    s.measurements.push_back({b, random_projectors(dim, ranks, rng), when(rng) * time_scale});
  }
  std::bernoulli_distribution global(0.5);
  const auto psi = global(rng) ? haar_state(std::size_t{1} << p.n_sites(), rng)
                               : product_state(p.n_sites(), rng);
  s.state = CMatrix::outer(psi);

  const QuasiDistribution d = eval.evaluate(s.state, s.measurements);
  s.measures = d.measures;
  s.score = witness_score(d.measures);
  return s;
}

bool better(const Sample& a, const Sample& b) {
  return a.score > b.score || (a.score == b.score && a.index < b.index);
}

}  // namespace

double witness_score(const NonClassicality& m) {
  return std::max({0.0, m.max_imag, -m.min_real, m.l1_negativity});
}

CMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw PreconditionError("haar_unitary: dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  CMatrix out(dim, dim);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Complex d = r(c, c);
    const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
    for (Eigen::Index row = 0; row < n; ++row) out(row, c) = q(row, c) * phase;
  }
  return out;
}

std::vector<CMatrix> random_projectors(std::size_t dim, std::span<const std::size_t> ranks,
                                       std::mt19937_64& rng) {
  if (ranks.empty() || std::any_of(ranks.begin(), ranks.end(), [](auto r) { return r == 0; })) {
    throw ValidationError("random_projectors: ranks must be positive");
  }
  if (std::accumulate(ranks.begin(), ranks.end(), std::size_t{0}) != dim) {
    throw ValidationError("random_projectors: ranks must sum to the block dimension " +
                          std::to_string(dim));
  }
  const CMatrix u = haar_unitary(dim, rng);
  std::vector<CMatrix> out;
  std::size_t col = 0;
  for (std::size_t rank : ranks) {
    CMatrix p(dim, dim);
    for (std::size_t k = col; k < col + rank; ++k)
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) p(r, c) += u(r, k) * std::conj(u(c, k));
    col += rank;
    out.push_back(std::move(p));
  }
  return out;
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

WitnessRecord search(const Model& model, const SearchBudget& budget) {
  std::vector<std::string> failures;
  if (budget.samples == 0) failures.push_back("samples must be at least 1");
  if (!(budget.t_max >= budget.t_min) || !std::isfinite(budget.t_min) ||
      !std::isfinite(budget.t_max)) {
    failures.push_back("time range must be a finite, nonempty interval");
  }
  if (model.partition.blocks().size() < 2) failures.push_back("at least two accessible blocks are required");
  if (!failures.empty()) throw ValidationError(std::move(failures));

  const KdqEvaluator eval(model);
  double time_scale = 1.0;
  if (budget.time_units == TimeUnits::inverse_norm) {
    const auto& values = eval.propagator().eigen().values;
    const double norm = values.empty() ? 0.0 : std::max(std::abs(values.front()), std::abs(values.back()));
    if (norm > 0.0) time_scale = 1.0 / norm;
  }
  const std::vector<std::string> names = model.partition.names();

  unsigned threads = budget.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                         : budget.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, budget.samples));

  std::vector<Sample> best(threads);
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < budget.samples; i += threads) {
      Sample s = draw_and_score(eval, names, budget, time_scale, i);
      if (best[w].score < 0.0 || better(s, best[w])) best[w] = std::move(s);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  const Sample& top = *std::min_element(best.begin(), best.end(), better);

  WitnessRecord rec;
  rec.scenario = Scenario{model, top.state, top.measurements};
  rec.measures = top.measures;
  rec.best = top.score;
  rec.sample_index = top.index;
  rec.samples = budget.samples;
  return rec;
}

const char* to_string(ScreeningVerdict v) {
  return v == ScreeningVerdict::cannot_support_qd ? "CANNOT_SUPPORT_QD" : "NO_VIOLATION_FOUND";
}

ScreeningResult screen_darwinism(const Model& model, const SearchBudget& budget,
                                 double threshold) {
  if (!(threshold > 0.0)) throw ValidationError("screening threshold must be positive");
  ScreeningResult out;
  out.threshold = threshold;
  out.record = search(model, budget);
  out.samples_tested = out.record.samples;
  out.verdict = out.record.best > threshold ? ScreeningVerdict::cannot_support_qd
                                            : ScreeningVerdict::no_violation_found;
  return out;
}

}  // namespace kdqc
