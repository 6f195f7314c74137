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

#include "kdqc/kdq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "kdqc/errors.hpp"

namespace kdqc {

namespace {

constexpr double kTol = 1e-10;

std::vector<std::size_t> time_order(const std::vector<MeasurementSpec>& ms) {
  std::vector<std::size_t> order(ms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ms[a].time < ms[b].time; });
  return order;
}

void check_projectors(const MeasurementSpec& m, std::size_t dim, std::vector<std::string>& out) {
  const std::string where = "measurement on block '" + m.block + "'";
  if (m.projectors.empty()) {
    out.push_back(where + ": no projectors");
    return;
  }
  CMatrix total(dim, dim);
  for (std::size_t i = 0; i < m.projectors.size(); ++i) {
    const CMatrix& p = m.projectors[i];
    const std::string tag = where + ", projector " + std::to_string(i + 1);
    if (p.rows() != dim || p.cols() != dim) {
      out.push_back(tag + ": dimension " + std::to_string(p.rows()) + "x" +
                    std::to_string(p.cols()) + ", expected " + std::to_string(dim));
      return;
    }
    if (!is_hermitian(p, kTol)) out.push_back(tag + ": not Hermitian");
    if ((p * p - p).frobenius_norm() >= kTol) out.push_back(tag + ": not idempotent");
    for (std::size_t j = i + 1; j < m.projectors.size(); ++j) {
      const CMatrix& r = m.projectors[j];
      if (r.rows() == dim && r.cols() == dim && (p * r).frobenius_norm() >= kTol) {
        out.push_back(tag + " and projector " + std::to_string(j + 1) + ": not orthogonal");
      }
    }
    total += p;
  }
  if ((total - CMatrix::identity(dim)).frobenius_norm() >= kTol) {
    out.push_back(where + ": projectors do not sum to the identity");
  }
}

void check_state(const CMatrix& rho, std::size_t dim, bool unit_trace,
                 std::vector<std::string>& out) {
  if (rho.rows() != dim || rho.cols() != dim) {
    out.push_back("initial state has dimension " + std::to_string(rho.rows()) + "x" +
                  std::to_string(rho.cols()) + ", expected " + std::to_string(dim));
    return;
  }
  if (!is_hermitian(rho, kTol)) {
    out.push_back("initial state is not Hermitian");
    return;
  }
  const Complex tr = rho.trace();
  if (unit_trace && std::abs(tr - Complex(1.0, 0.0)) >= kTol) {
    out.push_back("initial state trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const auto eig = hermitian_eig(rho);
  if (!eig.values.empty() && eig.values.front() < -kTol) {
    out.push_back("initial state is not positive semidefinite (smallest eigenvalue " +
                  std::to_string(eig.values.front()) + ")");
  }
}

}  // namespace

NonClassicality measure(std::span<const Complex> q) {
  NonClassicality m;
  if (q.empty()) return m;
  double abs_sum = 0.0;
  m.min_real = q.front().real();
  for (const auto& z : q) {
    abs_sum += std::abs(z);
    m.max_imag = std::max(m.max_imag, std::abs(z.imag()));
    m.min_real = std::min(m.min_real, z.real());
  }
  m.l1_negativity = abs_sum - 1.0;
  return m;
}

std::size_t QuasiDistribution::flat_index(std::span<const std::size_t> outcome) const {
  if (outcome.size() != outcome_shape.size()) throw ShapeError("outcome rank mismatch");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < outcome.size(); ++k) {
    if (outcome[k] >= outcome_shape[k]) throw ShapeError("outcome index out of range");
    idx = idx * outcome_shape[k] + outcome[k];
  }
  return idx;
}

void validate(const Scenario& s, bool require_unit_trace) {
  std::vector<std::string> failures;
  const Partition& p = s.model.partition;
  const int n = p.n_sites();
  if (s.model.hamiltonian.n_sites() != n) {
    failures.push_back("Hamiltonian and partition disagree on the number of sites");
  }
  if (n < 1 || n >= 63 || (std::size_t{1} << n) > max_dimension()) {
    throw CapacityError("scenario dimension 2^" + std::to_string(n) +
                        " exceeds the configured maximum " + std::to_string(max_dimension()));
  }
  if (!s.model.hamiltonian.is_hermitian()) failures.push_back("Hamiltonian is not Hermitian");
  const std::size_t dim = std::size_t{1} << n;
  if (s.measurements.size() < 2) failures.push_back("at least two measurements are required");
  std::set<std::string> seen;
  for (const auto& m : s.measurements) {
    if (!p.has_block(m.block)) {
      failures.push_back("measurement names unknown block '" + m.block + "'");
      continue;
    }
    if (!seen.insert(m.block).second) {
      failures.push_back("block '" + m.block + "' is measured more than once");
    }
    if (!std::isfinite(m.time)) failures.push_back("measurement time on '" + m.block + "' is not finite");
    check_projectors(m, std::size_t{1} << p.sites(m.block).size(), failures);
  }
  check_state(s.initial_state, dim, require_unit_trace, failures);
  if (!failures.empty()) throw ValidationError(std::move(failures));
}

KdqEvaluator::KdqEvaluator(const Model& model)
    : model_(model), propagator_(to_dense(model.hamiltonian)) {}

std::vector<CMatrix> KdqEvaluator::heisenberg_projectors(const MeasurementSpec& m) const {
  const auto& sites = model_.partition.sites(m.block);
  std::vector<CMatrix> out;
  out.reserve(m.projectors.size());
  for (const auto& p : m.projectors) {
    out.push_back(propagator_.heisenberg(embed_on_sites(p, sites, model_.partition.n_sites()),
                                         m.time));
  }
  return out;
}

QuasiDistribution KdqEvaluator::evaluate(const CMatrix& state,
                                         const std::vector<MeasurementSpec>& measurements) const {
  QuasiDistribution d;
  d.order = time_order(measurements);
  std::vector<std::vector<CMatrix>> heis;
  for (std::size_t axis : d.order) {
    const auto& m = measurements[axis];
    heis.push_back(heisenberg_projectors(m));
    d.outcome_shape.push_back(m.projectors.size());
    d.blocks.push_back(m.block);
    d.times.push_back(m.time);
  }
  const std::size_t total = std::accumulate(d.outcome_shape.begin(), d.outcome_shape.end(),
                                            std::size_t{1}, std::multiplies<>());
  d.q.assign(total, Complex(0.0, 0.0));
  d.tpm.assign(total, 0.0);
  if (heis.empty()) return d;

  // chain = P_k ... P_1 rho, sandwich = P_k ... P_1 rho P_1 ... P_k. The last
  // level only needs traces, and tr(P S P) = tr(P S) for a projector P.
  const std::size_t levels = heis.size();
  auto recurse = [&](auto&& self, std::size_t level, const CMatrix& chain,
                     const CMatrix& sandwich, std::size_t flat) -> void {
    const auto& projs = heis[level];
    for (std::size_t i = 0; i < projs.size(); ++i) {
      const std::size_t idx = flat * projs.size() + i;
      if (level + 1 == levels) {
        d.q[idx] = trace_of_product(projs[i], chain);
        d.tpm[idx] = trace_of_product(projs[i], sandwich).real();
      } else {
        self(self, level + 1, projs[i] * chain, projs[i] * sandwich * projs[i], idx);
      }
    }
  };
  recurse(recurse, 0, state, state, 0);
  d.measures = measure(d.q);
  return d;
}

QuasiDistribution kdq_distribution(const Scenario& s) {
  validate(s, true);
  return KdqEvaluator(s.model).evaluate(s.initial_state, s.measurements);
}

QuasiDistribution kdq_distribution_unnormalized(const Scenario& s) {
  validate(s, false);
  return KdqEvaluator(s.model).evaluate(s.initial_state, s.measurements);
}

QuasiDistribution marginal(const QuasiDistribution& d, std::span<const std::size_t> keep) {
  if (keep.empty()) throw PreconditionError("marginal: keep set is empty");
  std::vector<bool> kept(d.outcome_shape.size(), false);
  for (std::size_t k : keep) {
    if (k >= d.outcome_shape.size()) throw PreconditionError("marginal: axis out of range");
    kept[k] = true;
  }
  QuasiDistribution out;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (!kept[k]) continue;
    out.outcome_shape.push_back(d.outcome_shape[k]);
    out.order.push_back(d.order[k]);
    out.blocks.push_back(d.blocks[k]);
    out.times.push_back(d.times[k]);
  }
  const std::size_t total = std::accumulate(out.outcome_shape.begin(), out.outcome_shape.end(),
                                            std::size_t{1}, std::multiplies<>());
  out.q.assign(total, Complex(0.0, 0.0));
  out.tpm.assign(total, 0.0);

  std::vector<std::size_t> idx(d.outcome_shape.size(), 0);
  for (std::size_t flat = 0; flat < d.q.size(); ++flat) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (kept[k]) target = target * d.outcome_shape[k] + idx[k];
    out.q[target] += d.q[flat];
    out.tpm[target] += d.tpm[flat];
    for (std::size_t k = idx.size(); k-- > 0;) {  // odometer, last axis fastest
      if (++idx[k] < d.outcome_shape[k]) break;
      idx[k] = 0;
    }
  }
  out.measures = measure(out.q);
  return out;
}

std::vector<ModifiedState> modified_state_reduction(const Scenario& s) {
  if (s.measurements.size() < 3) {
    throw PreconditionError("modified_state_reduction: at least three measurements are required");
  }
  validate(s, false);
  const auto order = time_order(s.measurements);
  const std::size_t first = order.front();
  const KdqEvaluator eval(s.model);
  const auto projs = eval.heisenberg_projectors(s.measurements[first]);

  Scenario base = s;
  base.measurements.erase(base.measurements.begin() + static_cast<std::ptrdiff_t>(first));

  std::vector<ModifiedState> out;
  for (std::size_t i = 0; i < projs.size(); ++i) {
    ModifiedState m;
    m.outcome = i;
    m.state = projs[i] * s.initial_state * projs[i];
    m.reduced = base;
    m.reduced.initial_state = m.state;
    out.push_back(std::move(m));
  }
  return out;
}

double kdq_tpm_residual(const QuasiDistribution& d) {
  if (d.q.size() != d.tpm.size()) throw ShapeError("kdq_tpm_residual: size mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < d.q.size(); ++i) r += std::abs(d.q[i] - Complex(d.tpm[i], 0.0));
  return r;
}

}  // namespace kdqc
