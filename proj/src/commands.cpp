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

#include "kdqc/commands.hpp"

#include <fstream>
#include <ostream>

#include "kdqc/io.hpp"

namespace kdqc::cli {

namespace {

using io::json;

// Maps library errors onto the exit-code contract.
template <typename F>
int guarded(std::ostream& out, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    json j = io::to_json(e.partial());
    j["error"] = e.what();
    out << j.dump(2) << '\n';
    return kResourceExceeded;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceExceeded;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int run_classify(const std::filesystem::path& model_path, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&] {
    const Model model = io::load_model(model_path);
    const StructureReport report = classify(model.hamiltonian, model.partition);
    out << io::to_json(report).dump(2) << '\n';
    return report.hform_ok ? kOk : kStructureViolation;
  });
}

int run_check(const std::filesystem::path& model_path, const CheckArgs& args, std::ostream& out,
              std::ostream& err) {
  return guarded(out, err, [&] {
    if (args.method != "closure" && args.method != "enumerate") {
      throw ValidationError("--method must be 'closure' or 'enumerate'");
    }
    const Model model = io::load_model(model_path);
    const StructureReport report = classify(model.hamiltonian, model.partition);
    const CompatReport result = args.method == "closure"
                                     ? check_closure(report, args.options)
                                     : check_enumerated(report, args.depth, args.options);
    if (result.method == CheckMethod::structure) {
      out << io::to_json(result).dump(2) << '\n';
      return kStructureViolation;
    }
    const GeneratorSet gens = GeneratorSet::from_report(report);
    out << io::to_json(result, &gens).dump(2) << '\n';
    return result.compatible ? kOk : kNonClassical;
  });
}

int run_kdq(const std::filesystem::path& scenario_path, const KdqArgs& args, std::ostream& out,
            std::ostream& err) {
  return guarded(out, err, [&] {
    const Scenario scenario = io::load_scenario(scenario_path);
    const QuasiDistribution d = kdq_distribution(scenario);
    json j = io::to_json(d);
    const bool classical =
        d.measures.max_imag <= args.tolerance && d.measures.min_real >= -args.tolerance;
    j["classical"] = classical;
    out << j.dump(2) << '\n';
    if (args.csv) {
      std::ofstream csv(*args.csv);
      if (!csv) throw ValidationError("cannot write '" + args.csv->string() + "'");
      csv << io::distribution_csv(d);
    }
    return classical ? kOk : kNonClassical;
  });
}

int run_screen(const std::filesystem::path& model_path, const ScreenArgs& args, std::ostream& out,
               std::ostream& err) {
  return guarded(out, err, [&] {
    const Model model = io::load_model(model_path);
    const ScreeningResult r = screen_darwinism(model, args.budget, args.threshold);
    out << io::to_json(r).dump(2) << '\n';
    return r.verdict == ScreeningVerdict::cannot_support_qd ? kNonClassical : kOk;
  });
}

}  // namespace kdqc::cli
