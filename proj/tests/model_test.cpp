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

#include <gtest/gtest.h>

#include "kdqc/errors.hpp"
#include "support/generators.hpp"

namespace kdqc {
namespace {

using testing::Rng;

PauliString letters(const char* s) { return PauliString::from_letters(s); }

Partition abc3() { return Partition(3, {{"A", {1}}, {"B", {2}}}); }

TEST(Parser, GrammarExamples) {
  const PauliSum zz = parse_hamiltonian("Z1 Z2", 2);
  ASSERT_EQ(zz.size(), 1u);
  EXPECT_EQ(zz.coefficient(letters("ZZ")), Complex(1.0));

  const PauliSum two = parse_hamiltonian("1.0*Z1 + Z1", 1);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.coefficient(letters("Z")), Complex(2.0));

  const PauliSum id = parse_hamiltonian("X1 X1", 1);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id.coefficient(letters("I")), Complex(1.0));
}

TEST(Parser, FullGrammar) {
  const PauliSum h = parse_hamiltonian("1.5*Z1 Z3 + 0.7*X2 - 0.25*Y1 Y2 Y4", 4);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.coefficient(letters("ZIZI")), Complex(1.5));
  EXPECT_EQ(h.coefficient(letters("IXII")), Complex(0.7));
  EXPECT_EQ(h.coefficient(letters("YYIY")), Complex(-0.25));

  const PauliSum sci = parse_hamiltonian("  -2.5e-1 X1\n+\t3E2*Z2  +.5 Y1 ", 2);
  EXPECT_EQ(sci.coefficient(letters("XI")), Complex(-0.25));
  EXPECT_EQ(sci.coefficient(letters("IZ")), Complex(300.0));
  EXPECT_EQ(sci.coefficient(letters("YI")), Complex(0.5));

  EXPECT_EQ(parse_hamiltonian("2 X1*Z2", 2), parse_hamiltonian("2*X1 Z2", 2));
  EXPECT_EQ(parse_hamiltonian("Z2 X1", 2), parse_hamiltonian("X1 Z2", 2));
  EXPECT_EQ(parse_hamiltonian("3", 2).coefficient(letters("II")), Complex(3.0));
  EXPECT_TRUE(parse_hamiltonian("X1 - X1", 1).is_zero());
}

TEST(Parser, ComplexCoefficients) {
  const PauliSum a = parse_pauli_sum("(0.5-1.5i)*X1 + 2i Z2", 2);
  EXPECT_EQ(a.coefficient(letters("XI")), Complex(0.5, -1.5));
  EXPECT_EQ(a.coefficient(letters("IZ")), Complex(0.0, 2.0));
  // X Y = i Z on one site.
  EXPECT_EQ(parse_pauli_sum("X1 Y1", 1).coefficient(letters("Z")), Complex(0.0, 1.0));
}

TEST(Parser, NonHermitianIsValidationError) {
  EXPECT_THROW(parse_hamiltonian("2i Z1", 1), ValidationError);
  EXPECT_THROW(parse_hamiltonian("X1 Y1", 1), ValidationError);
  EXPECT_NO_THROW(parse_hamiltonian("X1 Y1 + Y1 X1", 1));
}

struct BadInput {
  const char* text;
  std::size_t line;
  std::size_t column;
};

TEST(Parser, SyntaxErrorsCarryLocation) {
  const BadInput cases[] = {
      {"Q3", 1, 1},
      {"Z1 + Q3", 1, 6},
      {"Z1 Z", 1, 5},
      {"Z1 Z9", 1, 5},
      {"Z0", 1, 2},
      {"1.5*", 1, 5},
      {"Z1 +", 1, 5},
      {"Z1\n + 2*Z2 Q", 2, 9},
      {"(1+2i", 1, 6},
      {"1e X1", 1, 3},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(c.text);
    try {
      parse_hamiltonian(c.text, 3);
      ADD_FAILURE() << "no error";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line);
      EXPECT_EQ(e.column(), c.column);
    }
  }
}

TEST(Parser, ErrorMessageShowsCaret) {
  try {
    parse_hamiltonian("Z1 + Q3", 3);
    FAIL();
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("line 1, column 6"), std::string::npos) << what;
    EXPECT_NE(what.find("Z1 + Q3\n       ^"), std::string::npos) << what;
  }
}

TEST(Parser, RoundTripThroughText) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = testing::uniform_int(rng, 1, 6);
    const PauliSum a = testing::random_sum(n, testing::uniform_int(rng, 0, 6), rng, trial % 2 == 0);
    EXPECT_EQ(parse_pauli_sum(a.to_text(), n), a) << a.to_text();
    if (trial % 2 == 0) EXPECT_EQ(parse_hamiltonian(a.to_text(), n), a);
  }
}

TEST(PartitionTest, Validation) {
  const Partition p(4, {{"A", {2, 1}}, {"B", {4}}});
  EXPECT_EQ(p.sites("A"), (std::vector<int>{1, 2}));
  EXPECT_EQ(p.remainder(), (std::vector<int>{3}));
  EXPECT_EQ(p.mask("A"), 0b0011u);
  EXPECT_EQ(p.remainder_mask(), 0b0100u);
  EXPECT_EQ(p.names(), (std::vector<std::string>{"A", "B"}));
  EXPECT_THROW(p.sites("Q"), ValidationError);

  EXPECT_THROW(Partition(3, {}), ValidationError);
  EXPECT_THROW(Partition(3, {{"A", {1}}, {"B", {1}}}), ValidationError);
  EXPECT_THROW(Partition(3, {{"A", {4}}}), ValidationError);
  EXPECT_THROW(Partition(3, {{"A", {}}}), ValidationError);
  try {
    Partition(3, {{"A", {0}}, {"B", {0, 5}}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_GE(e.failures().size(), 2u);
  }
}

TEST(Classify, Examples) {
  const Partition p = abc3();
  const auto direct = classify(parse_hamiltonian("Z1 Z2", 3), p);
  EXPECT_FALSE(direct.hform_ok);
  ASSERT_EQ(direct.offending_terms.size(), 1u);
  EXPECT_EQ(direct.offending_terms[0].string, letters("ZZI"));
  EXPECT_EQ(direct.offending_terms[0].key.label(), "A+B");

  const auto ok = classify(parse_hamiltonian("Z1 Z3 + X2 Z3", 3), p);
  EXPECT_TRUE(ok.hform_ok);
  ASSERT_EQ(ok.buckets.size(), 2u);
  EXPECT_EQ(ok.coupling_bucket("A"), parse_hamiltonian("Z1 Z3", 3));
  EXPECT_EQ(ok.coupling_bucket("B"), parse_hamiltonian("X2 Z3", 3));
  EXPECT_TRUE(ok.remainder_hamiltonian().is_zero());

  const auto labels = classify(parse_hamiltonian("2 + X1 + Y3 + Z1 Z2 Z3", 3), p);
  std::vector<std::string> got;
  for (const auto& [key, sum] : labels.buckets) got.push_back(key.label());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"A", "A+B+rest", "identity", "rest"}));

  EXPECT_THROW(classify(parse_hamiltonian("Z1", 2), p), ShapeError);
}

// A user block named like the remainder label must not collide with it.
TEST(Classify, BlockNamedCIsNotTheRemainder) {
  const Partition p(3, {{"A", {1}}, {"C", {2}}});
  const auto r = classify(parse_hamiltonian("Z1 Z3 + X2 Z3 + Y3", 3), p);
  EXPECT_TRUE(r.hform_ok);
  EXPECT_EQ(r.buckets.size(), 3u);
  EXPECT_EQ(r.remainder_hamiltonian(), parse_hamiltonian("Y3", 3));
  EXPECT_EQ(r.coupling_bucket("C"), parse_hamiltonian("X2 Z3", 3));
}

TEST(Classify, BucketsPartitionTheTerms) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(rng, 2, 6);
    const Partition p = testing::random_partition(n, 2, testing::uniform_int(rng, 0, n - 2), rng);
    const PauliSum h = testing::random_sum(n, 10, rng, true);
    const auto r = classify(h, p);
    PauliSum total(n);
    bool expect_ok = true;
    for (const auto& [s, c] : h.terms()) {
      int touched = 0;
      for (const auto& name : p.names()) touched += (s.support_mask() & p.mask(name)) != 0;
      if (touched >= 2) expect_ok = false;
    }
    for (const auto& [key, sum] : r.buckets) {
      total += sum;
      for (const auto& [s, c] : sum.terms()) {
        int touched = 0;
        for (const auto& name : p.names()) touched += (s.support_mask() & p.mask(name)) != 0;
        EXPECT_EQ(std::size_t(touched), key.blocks.size());
        EXPECT_EQ((s.support_mask() & p.remainder_mask()) != 0, key.remainder);
      }
    }
    EXPECT_EQ(total, h);
    EXPECT_EQ(r.hform_ok, expect_ok);
    EXPECT_EQ(r.hform_ok, r.offending_terms.empty());
  }
}

TEST(Classify, InjectedCouplingIsAlwaysDetected) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Partition p = testing::random_partition(5, 2, 1, rng);
    PauliSum h = testing::random_structured_hamiltonian(p, 8, rng);
    ASSERT_TRUE(classify(h, p).hform_ok);
    const std::uint64_t ab =
        testing::random_subset(p.mask("A"), rng) | testing::random_subset(p.mask("B"), rng);
    const PauliString bad = testing::full_string(5, ab, rng);
    h.add_term(bad, 0.5);
    const auto r = classify(h, p);
    EXPECT_FALSE(r.hform_ok);
    ASSERT_FALSE(r.offending_terms.empty());
  }
}

TEST(Decomposition, Examples) {
  const Partition p(3, {{"A", {1}}, {"B", {2}}});
  const auto grouped = interaction_decomposition(classify(parse_hamiltonian("Z1 Z3 + X1 X3", 3), p), "A");
  ASSERT_EQ(grouped.pairs.size(), 2u);
  // Pairs come out in PauliString order on V: Z before X.
  EXPECT_EQ(grouped.pairs[0].v, parse_hamiltonian("Z1", 3));
  EXPECT_EQ(grouped.pairs[0].s, parse_hamiltonian("Z3", 3));
  EXPECT_EQ(grouped.pairs[1].v, parse_hamiltonian("X1", 3));
  EXPECT_EQ(grouped.pairs[1].s, parse_hamiltonian("X3", 3));

  const auto shared = interaction_decomposition(classify(parse_hamiltonian("Z1 Z3 + Z1 X3", 3), p), "A");
  ASSERT_EQ(shared.pairs.size(), 1u);
  EXPECT_EQ(shared.pairs[0].v, parse_hamiltonian("Z1", 3));
  EXPECT_EQ(shared.pairs[0].s, parse_hamiltonian("Z3 + X3", 3));

  const auto local_only = interaction_decomposition(classify(parse_hamiltonian("Z1 + X3", 3), p), "A");
  EXPECT_TRUE(local_only.pairs.empty());

  EXPECT_THROW(interaction_decomposition(classify(parse_hamiltonian("Z1 Z2", 3), p), "A"),
               PreconditionError);
}

TEST(Decomposition, RoundTripAndOrthogonality) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(rng, 3, 6);
    const Partition p = testing::random_partition(n, 2, testing::uniform_int(rng, 1, n - 2), rng);
    const auto r = classify(testing::random_structured_hamiltonian(p, 12, rng), p);
    for (const auto& name : p.names()) {
      const auto d = interaction_decomposition(r, name);
      EXPECT_EQ(d.reconstruct(n), r.coupling_bucket(name));
      for (std::size_t a = 0; a < d.pairs.size(); ++a) {
        EXPECT_TRUE(d.pairs[a].v.supported_within(p.mask(name)));
        EXPECT_TRUE(d.pairs[a].s.supported_within(p.remainder_mask()));
        EXPECT_EQ(hs_inner(d.pairs[a].v, d.pairs[a].v), Complex(1.0));
        for (std::size_t b = a + 1; b < d.pairs.size(); ++b) {
          EXPECT_EQ(hs_inner(d.pairs[a].v, d.pairs[b].v), Complex(0.0));
        }
      }
    }
  }
}

}  // namespace
}  // namespace kdqc
