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

#include <gtest/gtest.h>

#include <cmath>

#include "kdqc/compat.hpp"
#include "kdqc/errors.hpp"
#include "kdqc/io.hpp"
#include "support/generators.hpp"
#include "support/zoo.hpp"

namespace kdqc {
namespace {

const testing::ZooModel& find(const char* name) {
  for (const auto& z : testing::zoo())
    if (std::string(z.name) == name) return z;
  throw std::logic_error(name);
}

TEST(Projectors, Examples) {
  std::mt19937_64 rng(1);
  const std::size_t whole[] = {4};
  const auto id = random_projectors(4, whole, rng);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_LT(max_abs_diff(id[0], CMatrix::identity(4)), 1e-12);

  const std::size_t ones[] = {1, 1};
  const auto pair = random_projectors(2, ones, rng);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_LT(max_abs_diff(pair[0] + pair[1], CMatrix::identity(2)), 1e-12);
  EXPECT_LT((pair[0] * pair[1]).frobenius_norm(), 1e-12);

  const std::size_t short_sum[] = {1, 1};
  EXPECT_THROW(random_projectors(3, short_sum, rng), ValidationError);
  const std::size_t zero[] = {0, 2};
  EXPECT_THROW(random_projectors(2, zero, rng), ValidationError);
}

TEST(Projectors, FamiliesAreComplete) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t ranks[] = {2, 1, 3, 2};
    const auto ps = random_projectors(8, ranks, rng);
    CMatrix total(8, 8);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      EXPECT_TRUE(is_hermitian(ps[i], 1e-12));
      EXPECT_LT((ps[i] * ps[i] - ps[i]).frobenius_norm(), 1e-12);
      EXPECT_NEAR(ps[i].trace().real(), double(ranks[i]), 1e-12);
      for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_LT((ps[i] * ps[j]).frobenius_norm(), 1e-12);
      total += ps[i];
    }
    EXPECT_LT(max_abs_diff(total, CMatrix::identity(8)), 1e-12);
  }
}

TEST(Haar, UnitaryAndFirstMoment) {
  std::mt19937_64 rng(3);
  const CMatrix u = haar_unitary(6, rng);
  EXPECT_LT((u.adjoint() * u - CMatrix::identity(6)).frobenius_norm(), 1e-12);

  // tr(P rho) for a Haar rank-1 P on a qubit is uniform on [0, 1].
  const CMatrix rho = CMatrix::outer(std::vector<Complex>{0.6, Complex(0.0, 0.8)});
  const std::size_t ones[] = {1, 1};
  const int draws = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    const double p = trace_of_product(random_projectors(2, ones, rng)[0], rho).real();
    sum += p;
    sum2 += p * p;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
  EXPECT_LT(std::abs(mean - 0.5), 3.0 * se);
  // Second moment of a uniform variable: 1/3.
  EXPECT_NEAR(sum2 / draws, 1.0 / 3.0, 0.01);
}

// Haar measure is invariant under left multiplication: |U_00|^2 has mean 1/d.
TEST(Haar, ColumnMoments) {
  std::mt19937_64 rng(4);
  const int draws = 4000;
  double s = 0.0;
  for (int k = 0; k < draws; ++k) s += std::norm(haar_unitary(4, rng)(0, 0));
  EXPECT_NEAR(s / draws, 0.25, 0.02);
}

TEST(Search, Examples) {
  SearchBudget budget;
  budget.samples = 1000;
  budget.seed = 7;
  const auto compatible = search(find("shared-z").model(), budget);
  EXPECT_LT(compatible.best, 1e-9);
  EXPECT_EQ(compatible.samples, 1000u);

  budget.time_units = TimeUnits::absolute;
  const auto mediated = search(find("mediated-depth2").model(), budget);
  EXPECT_GT(mediated.best, 1e-3);
  EXPECT_GT(mediated.best, 0.25 * find("mediated-depth2").oracle_best);
}

TEST(Search, RecordReproducesItsMeasures) {
  SearchBudget budget;
  budget.samples = 200;
  budget.seed = 8;
  budget.ranks = RankPolicy::random;
  const auto rec = search(find("wide-block").model(), budget);
  const auto d = kdq_distribution(rec.scenario);
  EXPECT_NEAR(d.measures.max_imag, rec.measures.max_imag, 1e-10);
  EXPECT_NEAR(d.measures.min_real, rec.measures.min_real, 1e-10);
  EXPECT_NEAR(d.measures.l1_negativity, rec.measures.l1_negativity, 1e-10);
  EXPECT_DOUBLE_EQ(witness_score(rec.measures), rec.best);
  EXPECT_LT(rec.sample_index, 200u);
}

TEST(Search, DeterministicAcrossRunsAndThreads) {
  SearchBudget budget;
  budget.samples = 120;
  budget.seed = 99;
  budget.max_observers = 3;
  budget.ranks = RankPolicy::binary;
  const Model m = find("three-observers-bad").model();
  const auto a = search(m, budget);
  const auto b = search(m, budget);
  budget.threads = 4;
  const auto c = search(m, budget);
  const std::string ja = io::to_json(a).dump();
  EXPECT_EQ(ja, io::to_json(b).dump());
  EXPECT_EQ(ja, io::to_json(c).dump());
  budget.seed = 100;
  EXPECT_NE(ja, io::to_json(search(m, budget)).dump());
}

TEST(Search, SampleStreamsAreIndependentOfOrder) {
  auto s1 = sample_stream(5, 17);
  auto s2 = sample_stream(5, 17);
  auto s3 = sample_stream(5, 18);
  const auto x = s1();
  EXPECT_EQ(x, s2());
  EXPECT_NE(x, s3());
}

TEST(Search, Errors) {
  const Model m = find("shared-z").model();
  SearchBudget budget;
  budget.samples = 0;
  EXPECT_THROW(search(m, budget), ValidationError);
  budget.samples = 10;
  budget.t_min = 3.0;
  budget.t_max = 1.0;
  EXPECT_THROW(search(m, budget), ValidationError);
  budget.t_max = 3.0;
  EXPECT_NO_THROW(search(m, budget));
  const Model single{parse_hamiltonian("Z1 Z2", 2), Partition(2, {{"A", {1}}}), "", ""};
  EXPECT_THROW(search(single, SearchBudget{}), ValidationError);
  EXPECT_THROW(screen_darwinism(m, SearchBudget{}, 0.0), ValidationError);
  EXPECT_THROW(screen_darwinism(m, SearchBudget{}, -1.0), ValidationError);
}

TEST(Screening, OneSidedVerdicts) {
  SearchBudget budget;
  budget.samples = 300;
  const auto bad = screen_darwinism(find("zx-conflict").model(), budget, 1e-3);
  EXPECT_EQ(bad.verdict, ScreeningVerdict::cannot_support_qd);
  EXPECT_STREQ(to_string(bad.verdict), "CANNOT_SUPPORT_QD");
  const auto good = screen_darwinism(find("shared-z").model(), budget, 1e-3);
  EXPECT_EQ(good.verdict, ScreeningVerdict::no_violation_found);
  EXPECT_EQ(good.samples_tested, 300u);
  EXPECT_STREQ(to_string(good.verdict), "NO_VIOLATION_FOUND");
}

// Search verdicts at 1e-6 match the exact closure verdicts across the zoo.
TEST(Screening, AgreesWithClosureOnZoo) {
  ASSERT_GE(testing::zoo().size(), 20u);
  int compatible = 0;
  for (const auto& z : testing::zoo()) {
    SCOPED_TRACE(z.name);
    const Model m = z.model();
    const auto report = classify(m.hamiltonian, m.partition);
    ASSERT_TRUE(report.hform_ok);
    const bool closure = check_closure(report).compatible;
    EXPECT_EQ(closure, z.compatible);
    SearchBudget budget;
    budget.samples = 400;
    budget.seed = 2026;
    budget.max_observers = m.partition.blocks().size();
    const auto r = screen_darwinism(m, budget, 1e-6);
    EXPECT_EQ(r.verdict == ScreeningVerdict::no_violation_found, closure) << r.record.best;
    compatible += closure;
  }
  EXPECT_GE(compatible, 10);
  EXPECT_GE(int(testing::zoo().size()) - compatible, 10);
}

}  // namespace
}  // namespace kdqc
