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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kdqc/commands.hpp"
#include "kdqc/densemat.hpp"
#include "kdqc/errors.hpp"
#include "kdqc/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{"kdqc: classical compatibility of disjoint quantum measurements"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads for parallel stages (0 = auto)");

  std::string model_path;
  std::string scenario_path;

  auto* classify = app.add_subcommand("classify", "Bucket Hamiltonian terms by the blocks they couple");
  classify->add_option("model", model_path, "Model JSON file")->required();

  kdqc::cli::CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Decide compatibility from the nested-commutator constraints");
  check->add_option("model", model_path, "Model JSON file")->required();
  check->add_option("--method", check_args.method, "closure | enumerate")
      ->check(CLI::IsMember({"closure", "enumerate"}));
  check->add_option("--depth", check_args.depth, "Maximum sequence length for enumerate")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--max-nodes", check_args.options.max_nodes,
                    "Enumeration budget in commutator evaluations");
  check->add_option("--max-closure-dim", check_args.options.max_closure_dimension,
                    "Closure dimension cap per observer (0 = 4^|remainder|)");

  kdqc::cli::KdqArgs kdq_args;
  std::string csv_path;
  auto* kdq = app.add_subcommand("kdq", "Compute the KDQ and TPM distributions of a scenario");
  kdq->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  kdq->add_option("--csv", csv_path, "Also write an outcome table as CSV");
  kdq->add_option("--tolerance", kdq_args.tolerance, "Classicality tolerance for the exit code");

  kdqc::cli::ScreenArgs screen_args;
  std::string units = "inverse-norm";
  std::string ranks = "rank-one";
  auto* screen = app.add_subcommand("screen", "Randomized search for KDQ non-classicality");
  screen->add_option("model", model_path, "Model JSON file")->required();
  screen->add_option("--samples", screen_args.budget.samples, "Number of sampled scenarios");
  screen->add_option("--seed", screen_args.budget.seed, "Master random seed");
  screen->add_option("--threshold", screen_args.threshold, "Violation threshold");
  screen->add_option("--tmin", screen_args.budget.t_min, "Earliest measurement time");
  screen->add_option("--tmax", screen_args.budget.t_max, "Latest measurement time");
  screen->add_option("--time-units", units, "inverse-norm | absolute")
      ->check(CLI::IsMember({"inverse-norm", "absolute"}));
  screen->add_option("--ranks", ranks, "rank-one | binary | random")
      ->check(CLI::IsMember({"rank-one", "binary", "random"}));
  screen->add_option("--observers", screen_args.budget.max_observers,
                     "Largest number of blocks measured per sample");

  CLI11_PARSE(app, argc, argv);

  try {
    kdqc::max_dimension_from_env();
  } catch (const kdqc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kdqc::cli::kInputError;
  }

  if (*classify) return kdqc::cli::run_classify(model_path, std::cout, std::cerr);
  if (*check) return kdqc::cli::run_check(model_path, check_args, std::cout, std::cerr);
  if (*kdq) {
    if (!csv_path.empty()) kdq_args.csv = csv_path;
    return kdqc::cli::run_kdq(scenario_path, kdq_args, std::cout, std::cerr);
  }
  screen_args.budget.threads = threads;
  screen_args.budget.time_units =
      units == "absolute" ? kdqc::TimeUnits::absolute : kdqc::TimeUnits::inverse_norm;
  screen_args.budget.ranks = ranks == "binary"   ? kdqc::RankPolicy::binary
                             : ranks == "random" ? kdqc::RankPolicy::random
                                                 : kdqc::RankPolicy::rank_one;
  return kdqc::cli::run_screen(model_path, screen_args, std::cout, std::cerr);
}
