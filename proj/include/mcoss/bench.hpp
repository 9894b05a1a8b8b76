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

#ifndef MCOSS_BENCH_HPP_
#define MCOSS_BENCH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcoss/instance.hpp"
#include "mcoss/stream.hpp"

namespace mcoss {

// Synthetic instance: d entries i.i.d. uniform [0,1] with the new block
// symmetrized and zero on the diagonal; losses i.i.d. uniform [0,1].
// Fully determined by the seed.
SelectionInstance generate_synthetic(Index m, Index r, std::uint64_t seed);

// Synthetic frame stream for online runs: features follow a random walk
// so later batches partially revisit earlier regions, the shape a frame
// stream actually has.
std::vector<Batch> generate_synthetic_stream(int batches, Index frames_per_batch,
                                             Index dim, std::uint64_t seed);

struct NamedInstance {
  std::string id;
  SelectionInstance instance;
};

// Three-way comparison for one instance. All methods are mapped to the
// one objective defined on bare sets (the set function over cumulative
// dissimilarities), recorded as common_metric in every row.
struct ComparisonRow {
  std::string instance_id;
  double f_mcoss = 0.0;
  double f_thresh = 0.0;
  std::vector<double> f_submod_runs;  // one value per randomized run
  std::string common_metric;
  std::string error;  // per-row failure note; empty on success
};

struct CompareOptions {
  int submod_runs = 100;
  std::uint64_t seed = 0;                // base for per-run greedy seeds
  Index thresh_candidates_per_row = 0;   // 0 = auto (full LP for small m)
};

// Runs all three methods on every instance; solver failures are recorded
// in the row's error field and the run continues. Output is a pure
// function of (instances, config, options).
std::vector<ComparisonRow> compare_methods(std::span<const NamedInstance> instances,
                                           const SelectionConfig& config,
                                           const CompareOptions& options = {});

// Long-format CSV: instance_id,method,run,f_value (17 significant digits,
// LF endings).
std::string comparison_csv(std::span<const ComparisonRow> rows);

}  // namespace mcoss

#endif  // MCOSS_BENCH_HPP_
