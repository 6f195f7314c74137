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

#include <fstream>
#include <sstream>

#include "kdqc/errors.hpp"

namespace kdqc::io {

namespace {

// nlohmann reports type errors with its own exception types; surface them as
// validation failures with the field that was being read.
template <typename F>
auto field(const std::string& what, F&& read) -> decltype(read()) {
  try {
    return read();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(context + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::vector<CMatrix> computational_projectors(std::size_t dim) {
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < dim; ++k) {
    CMatrix p(dim, dim);
    p(k, k) = 1.0;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CMatrix> basis_projectors(const CMatrix& u, const std::vector<std::size_t>& ranks) {
  std::vector<CMatrix> out;
  std::size_t col = 0;
  for (std::size_t rank : ranks) {
    if (rank == 0 || col + rank > u.cols()) throw ValidationError("basis ranks do not fit the basis");
    CMatrix p(u.rows(), u.rows());
    for (std::size_t k = col; k < col + rank; ++k)
      for (std::size_t r = 0; r < u.rows(); ++r)
        for (std::size_t c = 0; c < u.rows(); ++c) p(r, c) += u(r, k) * std::conj(u(c, k));
    out.push_back(std::move(p));
    col += rank;
  }
  if (col != u.cols()) throw ValidationError("basis ranks must sum to the basis size");
  return out;
}

json nested(const std::vector<std::size_t>& shape, std::size_t axis, std::size_t& flat,
            const auto& leaf) {
  json arr = json::array();
  for (std::size_t i = 0; i < shape[axis]; ++i) {
    if (axis + 1 == shape.size()) arr.push_back(leaf(flat++));
    else arr.push_back(nested(shape, axis + 1, flat, leaf));
  }
  return arr;
}

json witness_term(const OffendingTerm& t) {
  return {{"term", PauliSum(t.string, t.coefficient).to_text()},
          {"letters", t.string.to_letters()},
          {"coefficient", to_json(t.coefficient)},
          {"blocks", t.key.blocks},
          {"remainder", t.key.remainder}};
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("expected a complex number as [re, im], got " + j.dump());
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected a nonempty matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Partition partition_from_json(const json& j) {
  const int n = field("partition.n_sites", [&] { return require(j, "n_sites", "partition").get<int>(); });
  const auto blocks = field("partition.blocks", [&] {
    return require(j, "blocks", "partition").get<std::map<std::string, std::vector<int>>>();
  });
  return Partition(n, blocks);
}

json to_json(const Partition& p) {
  json blocks = json::object();
  for (const auto& [name, sites] : p.blocks()) blocks[name] = sites;
  return {{"n_sites", p.n_sites()}, {"blocks", blocks}};
}

Model model_from_json(const json& j) {
  Model m;
  m.partition = partition_from_json(require(j, "partition", "model"));
  const auto text = field("model.hamiltonian", [&] { return require(j, "hamiltonian", "model").get<std::string>(); });
  m.hamiltonian = parse_hamiltonian(text, m.partition.n_sites());
  if (j.contains("name")) m.name = field("model.name", [&] { return j.at("name").get<std::string>(); });
  if (j.contains("description")) {
    m.description = field("model.description", [&] { return j.at("description").get<std::string>(); });
  }
  return m;
}

json to_json(const Model& m) {
  json j = json::object();
  if (!m.name.empty()) j["name"] = m.name;
  if (!m.description.empty()) j["description"] = m.description;
  j["hamiltonian"] = m.hamiltonian.to_text();
  j["partition"] = to_json(m.partition);
  return j;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

json parse_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

Model load_model(const std::filesystem::path& path) { return model_from_json(parse_json_file(path)); }

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  Scenario s;
  const json& model = require(j, "model", "scenario");
  if (model.is_string()) {
    s.model = load_model(base_dir / model.get<std::string>());
  } else {
    s.model = model_from_json(model);
  }
  const int n = s.model.partition.n_sites();
  if (n >= 63 || (std::size_t{1} << n) > max_dimension()) {
    throw CapacityError("scenario dimension 2^" + std::to_string(n) + " exceeds the configured maximum " +
                        std::to_string(max_dimension()));
  }

  const json& state = require(j, "initial_state", "scenario");
  if (state.contains("pure")) {
    const json& amps = state.at("pure");
    if (!amps.is_array()) throw ValidationError("initial_state.pure must be an array");
    std::vector<Complex> psi;
    for (const auto& a : amps) psi.push_back(complex_from_json(a));
    s.initial_state = CMatrix::outer(psi);
  } else if (state.contains("density")) {
    s.initial_state = matrix_from_json(state.at("density"));
  } else {
    throw ValidationError("initial_state needs either 'pure' or 'density'");
  }

  const json& ms = require(j, "measurements", "scenario");
  if (!ms.is_array()) throw ValidationError("measurements must be an array");
  for (const auto& mj : ms) {
    MeasurementSpec m;
    m.block = field("measurement.block", [&] { return require(mj, "block", "measurement").get<std::string>(); });
    m.time = mj.contains("time") ? field("measurement.time", [&] { return mj.at("time").get<double>(); }) : 0.0;
    const std::size_t dim = std::size_t{1} << s.model.partition.sites(m.block).size();
    const json& pj = require(mj, "projectors", "measurement");
    if (pj.is_string()) {
      if (pj.get<std::string>() != "computational") {
        throw ValidationError("unknown projector family '" + pj.get<std::string>() + "'");
      }
      m.projectors = computational_projectors(dim);
    } else if (pj.is_object()) {
      const CMatrix u = matrix_from_json(require(pj, "basis", "projectors"));
      if (u.rows() != dim || u.cols() != dim) {
        throw ValidationError("basis for block '" + m.block + "' must be " + std::to_string(dim) +
                              "x" + std::to_string(dim));
      }
      std::vector<std::size_t> ranks(dim, 1);
      if (pj.contains("ranks")) {
        ranks = field("projectors.ranks", [&] { return pj.at("ranks").get<std::vector<std::size_t>>(); });
      }
      m.projectors = basis_projectors(u, ranks);
    } else if (pj.is_array()) {
      for (const auto& pm : pj) m.projectors.push_back(matrix_from_json(pm));
    } else {
      throw ValidationError("projectors must be \"computational\", a list of matrices, or {\"basis\": ...}");
    }
    s.measurements.push_back(std::move(m));
  }
  return s;
}

json to_json(const Scenario& s) {
  json ms = json::array();
  for (const auto& m : s.measurements) {
    json projs = json::array();
    for (const auto& p : m.projectors) projs.push_back(to_json(p));
    ms.push_back({{"block", m.block}, {"time", m.time}, {"projectors", projs}});
  }
  return {{"model", to_json(s.model)},
          {"initial_state", {{"density", to_json(s.initial_state)}}},
          {"measurements", ms}};
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(parse_json_file(path), path.parent_path());
}

json to_json(const StructureReport& r) {
  json buckets = json::array();
  for (const auto& [key, sum] : r.buckets) {
    buckets.push_back({{"label", key.label()},
                       {"blocks", key.blocks},
                       {"remainder", key.remainder},
                       {"terms", sum.to_text()}});
  }
  json offending = json::array();
  for (const auto& t : r.offending_terms) offending.push_back(witness_term(t));
  json j = {{"n_sites", r.partition.n_sites()},
            {"partition", to_json(r.partition)},
            {"hform_ok", r.hform_ok},
            {"buckets", buckets},
            {"offending_terms", offending}};
  if (r.hform_ok) {
    json decomps = json::object();
    for (const auto& name : r.partition.names()) {
      json pairs = json::array();
      for (const auto& p : interaction_decomposition(r, name).pairs) {
        pairs.push_back({{"V", p.v.to_text()}, {"S", p.s.to_text()}});
      }
      decomps[name] = pairs;
    }
    j["interaction_decompositions"] = decomps;
  }
  return j;
}

json to_json(const CompatReport& r, const GeneratorSet* gens) {
  json j = {{"compatible", r.compatible}, {"method", to_string(r.method)}};
  if (r.method == CheckMethod::enumeration) j["verified_depth"] = r.depth;
  if (r.method == CheckMethod::closure) {
    j["closure_dimension"] = r.closure_dimension;
    j["closure_dimensions"] = r.closure_dimensions;
  }
  j["sequences_evaluated"] = r.sequences_evaluated;
  if (r.witness) {
    const auto& w = *r.witness;
    json seq = json::array();
    for (const auto& e : w.sequence) seq.push_back(e.label());
    auto side = [&](const std::string& block, std::size_t index) {
      json s = {{"block", block}, {"index", index + 1}};
      if (gens) s["S"] = gens->lookup(SequenceElement::coupling(block, index)).to_text();
      return s;
    };
    j["witness"] = {{"left", side(w.left_block, w.left_index)},
                    {"sequence", seq},
                    {"right", side(w.right_block, w.right_index)},
                    {"violation_norm", w.violation_norm},
                    {"commutator", w.violation.to_text()}};
  } else {
    j["witness"] = nullptr;
  }
  j["structure_witness"] = r.structure_witness ? witness_term(*r.structure_witness) : json(nullptr);
  return j;
}

json to_json(const QuasiDistribution& d) {
  std::size_t flat = 0;
  json q = d.outcome_shape.empty() ? json::array()
                                   : nested(d.outcome_shape, 0, flat, [&](std::size_t i) { return to_json(d.q[i]); });
  flat = 0;
  json tpm = d.outcome_shape.empty() ? json::array()
                                     : nested(d.outcome_shape, 0, flat, [&](std::size_t i) { return json(d.tpm[i]); });
  return {{"outcome_shape", d.outcome_shape},
          {"order", d.order},
          {"blocks", d.blocks},
          {"times", d.times},
          {"q", q},
          {"tpm", tpm},
          {"measures",
           {{"l1_negativity", d.measures.l1_negativity},
            {"max_imag", d.measures.max_imag},
            {"min_real", d.measures.min_real}}},
          {"kdq_tpm_residual", kdq_tpm_residual(d)}};
}

json to_json(const WitnessRecord& r) {
  return {{"best", r.best},
          {"sample_index", r.sample_index},
          {"samples", r.samples},
          {"measures",
           {{"l1_negativity", r.measures.l1_negativity},
            {"max_imag", r.measures.max_imag},
            {"min_real", r.measures.min_real}}},
          {"scenario", to_json(r.scenario)}};
}

json to_json(const ScreeningResult& r) {
  return {{"verdict", to_string(r.verdict)},
          {"threshold", r.threshold},
          {"samples_tested", r.samples_tested},
          {"best", r.record.best},
          {"record", to_json(r.record)}};
}

std::string distribution_csv(const QuasiDistribution& d) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t k = 0; k < d.outcome_shape.size(); ++k) out << "outcome_" << d.blocks[k] << ',';
  out << "q_re,q_im,tpm\n";
  std::vector<std::size_t> idx(d.outcome_shape.size(), 0);
  for (std::size_t flat = 0; flat < d.q.size(); ++flat) {
    for (std::size_t v : idx) out << v << ',';
    out << d.q[flat].real() << ',' << d.q[flat].imag() << ',' << d.tpm[flat] << '\n';
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < d.outcome_shape[k]) break;
      idx[k] = 0;
    }
  }
  return out.str();
}

}  // namespace kdqc::io
