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

// File formats.
//
// Model file:
//   {"name": "...", "description": "...",
//    "hamiltonian": "1.5*Z1 Z3 + 0.7*X2",
//    "partition": {"n_sites": 3, "blocks": {"A": [1], "B": [2]}}}
//
// Scenario file:
//   {"model": <model object> | "path/relative/to/scenario.json",
//    "initial_state": {"pure": [[re, im], ...]} | {"density": [[[re, im], ...], ...]},
//    "measurements": [
//      {"block": "A", "time": 0.0, "projectors": "computational"},
//      {"block": "B", "time": 1.0, "projectors": [<matrix>, ...]},
//      {"block": "C", "time": 2.0, "projectors": {"basis": <unitary>, "ranks": [1, 1]}}]}
//
// Complex numbers are [re, im] pairs; a bare number is read as real.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "kdqc/compat.hpp"
#include "kdqc/kdq.hpp"
#include "kdqc/model.hpp"
#include "kdqc/witness.hpp"

namespace kdqc::io {

using json = nlohmann::ordered_json;

json to_json(Complex z);
json to_json(const CMatrix& m);
Complex complex_from_json(const json& j);
CMatrix matrix_from_json(const json& j);

Partition partition_from_json(const json& j);
json to_json(const Partition& p);

Model model_from_json(const json& j);
json to_json(const Model& m);
Model load_model(const std::filesystem::path& path);

/// `base_dir` resolves a model given by path.
Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir = {});
/// Explicit projectors and density matrix; reloads to an identical scenario.
json to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

json to_json(const StructureReport& r);
json to_json(const CompatReport& r, const GeneratorSet* gens = nullptr);
json to_json(const QuasiDistribution& d);
json to_json(const WitnessRecord& r);
json to_json(const ScreeningResult& r);

/// One row per joint outcome: axis indices, Re q, Im q, tpm.
std::string distribution_csv(const QuasiDistribution& d);

/// Reads a whole file; throws ValidationError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace kdqc::io
