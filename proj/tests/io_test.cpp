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

#include "kdqc/io.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "kdqc/errors.hpp"
#include "support/generators.hpp"
#include "support/zoo.hpp"

namespace kdqc {
namespace {

using io::json;

const char* kModel = R"({
  "name": "mediated", "description": "demo",
  "hamiltonian": "Z1 Z3 + X2 Z4 + X3 X4",
  "partition": {"n_sites": 4, "blocks": {"A": [1], "B": [2]}}
})";

TEST(Io, ComplexAndMatrix) {
  EXPECT_EQ(io::complex_from_json(json::parse("[1.5, -2]")), Complex(1.5, -2.0));
  EXPECT_EQ(io::complex_from_json(json::parse("3")), Complex(3.0, 0.0));
  EXPECT_THROW(io::complex_from_json(json::parse("[1, 2, 3]")), ValidationError);
  EXPECT_THROW(io::complex_from_json(json::parse("\"x\"")), ValidationError);
  const CMatrix m{{1, Complex(0, 2)}, {3, 4}};
  EXPECT_EQ(max_abs_diff(io::matrix_from_json(io::to_json(m)), m), 0.0);
  EXPECT_THROW(io::matrix_from_json(json::parse("[[1, 2], [3]]")), ValidationError);
  EXPECT_THROW(io::matrix_from_json(json::parse("[]")), ValidationError);
}

TEST(Io, ModelRoundTrip) {
  const Model m = io::model_from_json(json::parse(kModel));
  EXPECT_EQ(m.name, "mediated");
  EXPECT_EQ(m.description, "demo");
  EXPECT_EQ(m.partition.remainder(), (std::vector<int>{3, 4}));
  const Model back = io::model_from_json(io::to_json(m));
  EXPECT_EQ(back.hamiltonian, m.hamiltonian);
  EXPECT_EQ(back.partition, m.partition);
}

TEST(Io, ModelErrors) {
  EXPECT_THROW(io::model_from_json(json::parse(R"({"hamiltonian": "Z1"})")), ValidationError);
  EXPECT_THROW(io::model_from_json(json::parse(
                   R"({"hamiltonian": "Z1", "partition": {"n_sites": "two", "blocks": {"A": [1]}}})")),
               ValidationError);
  EXPECT_THROW(io::model_from_json(json::parse(
                   R"({"hamiltonian": "Q1", "partition": {"n_sites": 2, "blocks": {"A": [1]}}})")),
               ParseError);
  EXPECT_THROW(io::load_model("/nonexistent/model.json"), ValidationError);
}

TEST(Io, ScenarioFormsAndRoundTrip) {
  json j = {{"model", json::parse(kModel)},
            {"initial_state", {{"pure", {{0.6, 0}, {0, 0.8}, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}}}},
            {"measurements",
             {{{"block", "A"}, {"time", 0.5}, {"projectors", "computational"}},
              {{"block", "B"},
               {"time", 1.5},
               {"projectors", {{"basis", {{{0.6, 0}, {0.8, 0}}, {{0.8, 0}, {-0.6, 0}}}}, {"ranks", {1, 1}}}}}}}};
  const Scenario s = io::scenario_from_json(j);
  EXPECT_NO_THROW(validate(s));
  EXPECT_NEAR(s.initial_state(1, 1).real(), 0.64, 1e-15);
  EXPECT_EQ(s.measurements[1].projectors.size(), 2u);

  const Scenario back = io::scenario_from_json(io::to_json(s));
  EXPECT_EQ(max_abs_diff(back.initial_state, s.initial_state), 0.0);
  ASSERT_EQ(back.measurements.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(back.measurements[k].block, s.measurements[k].block);
    EXPECT_EQ(back.measurements[k].time, s.measurements[k].time);
    for (std::size_t i = 0; i < s.measurements[k].projectors.size(); ++i)
      EXPECT_EQ(max_abs_diff(back.measurements[k].projectors[i], s.measurements[k].projectors[i]), 0.0);
  }

  json bad = j;
  bad["measurements"][0]["projectors"] = "fourier";
  EXPECT_THROW(io::scenario_from_json(bad), ValidationError);
  bad = j;
  bad["measurements"][0]["block"] = "Q";
  EXPECT_THROW(io::scenario_from_json(bad), ValidationError);
  bad = j;
  bad["initial_state"] = json::object();
  EXPECT_THROW(io::scenario_from_json(bad), ValidationError);
  bad = j;
  bad["measurements"][1]["projectors"]["ranks"] = {2, 1};
  EXPECT_THROW(io::scenario_from_json(bad), ValidationError);
}

TEST(Io, ScenarioModelByRelativePath) {
  const auto dir = std::filesystem::temp_directory_path() / "kdqc_io_test";
  std::filesystem::create_directories(dir / "models");
  std::ofstream(dir / "models" / "m.json") << kModel;
  std::ofstream(dir / "s.json") << R"({"model": "models/m.json",
    "initial_state": {"density": [[1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]]},
    "measurements": [{"block": "A", "projectors": "computational"},
                     {"block": "B", "time": 2, "projectors": "computational"}]})";
  const Scenario s = io::load_scenario(dir / "s.json");
  EXPECT_EQ(s.model.name, "mediated");
  EXPECT_EQ(s.measurements[0].time, 0.0);
  const auto d = kdq_distribution(s);
  ASSERT_EQ(d.q.size(), 4u);
  EXPECT_NEAR(std::abs(d.q[0] + d.q[1]), 1.0, 1e-12);
  std::filesystem::remove_all(dir);
}

TEST(Io, ReportsCarryTheDocumentedFields) {
  const Model m = io::model_from_json(json::parse(kModel));
  const auto r = classify(m.hamiltonian, m.partition);
  const json jr = io::to_json(r);
  EXPECT_TRUE(jr["hform_ok"].get<bool>());
  EXPECT_EQ(jr["buckets"].size(), 3u);
  EXPECT_EQ(jr["interaction_decompositions"]["A"][0]["S"], "1*Z3");

  const auto c = check_closure(r);
  const GeneratorSet gens = GeneratorSet::from_report(r);
  const json jc = io::to_json(c, &gens);
  EXPECT_FALSE(jc["compatible"].get<bool>());
  EXPECT_EQ(jc["witness"]["sequence"], json::array({"HC"}));
  EXPECT_EQ(jc["witness"]["violation_norm"].get<double>(), 4.0);
  EXPECT_EQ(jc["witness"]["left"]["index"].get<int>(), 1);
  EXPECT_TRUE(jc["structure_witness"].is_null());
}

TEST(Io, DistributionJsonAndCsv) {
  const auto& z = testing::zoo().front();
  const Model m = z.model();
  const CMatrix rho = CMatrix::identity(8) * Complex(0.125);
  const std::vector<CMatrix> comp = testing::basis_projectors(CMatrix::identity(2));
  const Scenario s{m, rho, {{"B", comp, 1.0}, {"A", comp, 0.0}}};
  const auto d = kdq_distribution(s);
  const json j = io::to_json(d);
  EXPECT_EQ(j["blocks"], json::array({"A", "B"}));
  EXPECT_EQ(j["q"].size(), 2u);
  EXPECT_EQ(j["q"][0][1].size(), 2u);  // [re, im]
  const std::string csv = io::distribution_csv(d);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "outcome_A,outcome_B,q_re,q_im,tpm");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

}  // namespace
}  // namespace kdqc
