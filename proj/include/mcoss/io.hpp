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

#ifndef MCOSS_IO_HPP_
#define MCOSS_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mcoss/instance.hpp"
#include "mcoss/mcoss_solver.hpp"
#include "mcoss/oracle.hpp"
#include "mcoss/stream.hpp"
#include "mcoss/thresh_solver.hpp"

namespace mcoss {

// Instance JSON: {"d_old": m x r rows, "d_new": m x m, "loss_old": [r],
// "loss_new": [m]}; absent d_old/loss_old means r = 0. Round-trips are
// bit-exact for finite doubles.
nlohmann::json instance_to_json(const SelectionInstance& instance);
SelectionInstance instance_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SelectionConfig& config);
SelectionConfig config_from_json(const nlohmann::json& j);

nlohmann::json mcoss_solution_to_json(const McossResult& result,
                                      const SelectionConfig& config);
nlohmann::json thresh_solution_to_json(const ThreshResult& result,
                                       const SelectionConfig& config);
nlohmann::json submod_solution_to_json(const std::vector<Index>& selected,
                                       double f_value, std::uint64_t seed,
                                       Index k);

nlohmann::json theorem_report_to_json(const std::vector<TheoremColumnReport>& report);

// Stream CSV: header `id,batch,loss,f0,f1,...`; the loss column may be
// empty (filled later by a scorer). Batches come back grouped by batch
// index in ascending order.
std::vector<Batch> parse_stream_csv(std::istream& in);
void write_frames_csv(const std::vector<FrameRecord>& frames, std::ostream& out);

// One JSON object per line, one line per step.
void write_history_jsonl(const StreamState& state, std::ostream& out);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mcoss

#endif  // MCOSS_IO_HPP_
