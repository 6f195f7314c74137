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

// Subcommand bodies for the kdqc CLI. Each writes one JSON document to `out`,
// diagnostics to `err`, and returns the process exit code.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "kdqc/compat.hpp"
#include "kdqc/witness.hpp"

namespace kdqc::cli {

enum ExitCode : int {
  kOk = 0,               ///< classical / structure satisfied / no violation found
  kInputError = 1,       ///< unreadable file, parse or validation failure
  kStructureViolation = 2,
  kNonClassical = 3,
  kResourceExceeded = 4,
};

int run_classify(const std::filesystem::path& model_path, std::ostream& out, std::ostream& err);

struct CheckArgs {
  std::string method = "closure";  ///< "closure" or "enumerate"
  int depth = 6;
  CheckOptions options;
};

int run_check(const std::filesystem::path& model_path, const CheckArgs& args, std::ostream& out,
              std::ostream& err);

struct KdqArgs {
  std::optional<std::filesystem::path> csv;
  /// Exit 3 when max|Im q| or -min Re q exceeds this.
  double tolerance = 1e-9;
};

int run_kdq(const std::filesystem::path& scenario_path, const KdqArgs& args, std::ostream& out,
            std::ostream& err);

struct ScreenArgs {
  SearchBudget budget;
  double threshold = 1e-6;
};

int run_screen(const std::filesystem::path& model_path, const ScreenArgs& args, std::ostream& out,
               std::ostream& err);

}  // namespace kdqc::cli
