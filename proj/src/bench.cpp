// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcoss/bench.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mcoss/mcoss_solver.hpp"
#include "mcoss/rng.hpp"
#include "mcoss/submodular.hpp"
#include "mcoss/thresh_solver.hpp"

namespace mcoss {

SelectionInstance generate_synthetic(Index m, Index r, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_synthetic: m must be >= 1");
  if (r < 0) throw std::invalid_argument("generate_synthetic: r must be >= 0");
  CounterRng rng(seed);

  // Draw order is part of the format: d_old row-major, d_new upper
  // triangle row-major (mirrored), loss_old, loss_new.
  Matrix d_old(m, r);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < r; ++j) d_old(i, j) = rng.next_double();
  Matrix d_new = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      const double v = rng.next_double();
      d_new(i, j) = v;
      d_new(j, i) = v;
    }
  Vector loss_old(r);
  for (Index j = 0; j < r; ++j) loss_old(j) = rng.next_double();
  Vector loss_new(m);
  for (Index j = 0; j < m; ++j) loss_new(j) = rng.next_double();

  return SelectionInstance::create(std::move(d_old), std::move(d_new),
                                   std::move(loss_old), std::move(loss_new));
}

std::vector<Batch> generate_synthetic_stream(int batches, Index frames_per_batch,
                                             Index dim, std::uint64_t seed) {
  if (batches < 1 || frames_per_batch < 1 || dim < 1)
    throw std::invalid_argument("generate_synthetic_stream: sizes must be >= 1");
  CounterRng rng(seed);

  Vector walk(dim);
  for (Index k = 0; k < dim; ++k) walk(k) = rng.next_double();

  std::vector<Batch> stream;
  for (int t = 1; t <= batches; ++t) {
    Batch batch;
    for (Index f = 0; f < frames_per_batch; ++f) {
      for (Index k = 0; k < dim; ++k)
        walk(k) += 0.3 * (rng.next_double() - 0.5);
      FrameRecord frame;
      frame.id = "b" + std::to_string(t) + "f" + std::to_string(f);
      frame.features = walk;
      frame.batch_index = t;
      batch.push_back(std::move(frame));
    }
    stream.push_back(std::move(batch));
  }
  return stream;
}

namespace {

constexpr std::string_view kCommonMetric = "set_min_q";

// Budget constant above which the thresholded solve prunes candidates to
// keep the p=inf epigraph rows dense-tableau sized.
constexpr Index kAutoCandidateLimit = 15;
constexpr Index kFullLpLimit = 40;

}  // namespace

std::vector<ComparisonRow> compare_methods(std::span<const NamedInstance> instances,
                                           const SelectionConfig& config,
                                           const CompareOptions& options) {
  config.validate();
  if (options.submod_runs < 1)
    throw std::invalid_argument("compare_methods: submod_runs must be >= 1");

  std::vector<ComparisonRow> rows;
  std::uint64_t instance_counter = 0;
  for (const auto& named : instances) {
    ++instance_counter;
    const SelectionInstance& instance = named.instance;
    const Index m = instance.m();
    const QMatrices q = build_q(instance, config.rho);

    ComparisonRow row;
    row.instance_id = named.id;
    row.common_metric = std::string(kCommonMetric);
    auto note = [&row](const std::string& text) {
      if (!row.error.empty()) row.error += "; ";
      row.error += text;
    };

    try {
      const McossResult res = solve_mcoss(instance, config);
      row.f_mcoss = eval_f(res.report.selected_new, q);
    } catch (const std::exception& e) {
      row.f_mcoss = std::nan("");
      note(std::string("mcoss: ") + e.what());
    }

    try {
      SelectionConfig thresh_config = config;
      if (instance.r() == 0 && config.p == NormP::l1 && config.frac < 1.0 - 1e-12) {
        // With no old set the l1 budget equals m for every feasible z, so
        // it cannot express a compression target. Fall back to the
        // support-counting norm, which is what frac measures.
        thresh_config.p = NormP::linf;
        note("threshmcoss: l1 budget is structurally infeasible at r=0; "
             "budget norm switched to inf");
      }
      ThreshOptions topt;
      topt.max_candidates_per_row = options.thresh_candidates_per_row;
      if (topt.max_candidates_per_row == 0 && thresh_config.p == NormP::linf &&
          m > kFullLpLimit)
        topt.max_candidates_per_row = kAutoCandidateLimit;
      const ThreshResult res = solve_threshmcoss(instance, thresh_config, topt);
      row.f_thresh = eval_f(res.report.selected_new, q);
    } catch (const std::exception& e) {
      row.f_thresh = std::nan("");
      note(std::string("threshmcoss: ") + e.what());
    }

    Index k = static_cast<Index>(std::ceil(config.frac * static_cast<double>(m) - 1e-12));
    k = std::max<Index>(1, std::min(k, m));
    for (int run = 1; run <= options.submod_runs; ++run) {
      const std::uint64_t run_seed = CounterRng::mix(
          CounterRng::mix(options.seed, instance_counter), static_cast<std::uint64_t>(run));
      try {
        const std::vector<Index> picked = greedy_select(q, k, run_seed);
        row.f_submod_runs.push_back(eval_f(picked, q));
      } catch (const std::exception& e) {
        row.f_submod_runs.push_back(std::nan(""));
        note("submcoss run " + std::to_string(run) + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string comparison_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "instance_id,method,run,f_value\n";
  for (const auto& row : rows) {
    out << row.instance_id << ",mcoss,0," << format_double(row.f_mcoss) << "\n";
    out << row.instance_id << ",threshmcoss,0," << format_double(row.f_thresh) << "\n";
    for (size_t run = 0; run < row.f_submod_runs.size(); ++run)
      out << row.instance_id << ",submcoss," << run + 1 << ","
          << format_double(row.f_submod_runs[run]) << "\n";
  }
  return out.str();
}

}  // namespace mcoss
