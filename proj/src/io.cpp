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

#include "mcoss/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mcoss {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw std::invalid_argument(std::string(name) + " must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument(std::string(name) + " rows must be arrays");
    if (cols < 0)
      cols = static_cast<Index>(row.size());
    else if (cols != static_cast<Index>(row.size()))
      throw std::invalid_argument(std::string(name) + " has ragged rows");
  }
  Matrix m(rows, std::max<Index>(cols, 0));
  for (Index i = 0; i < rows; ++i)
    for (Index jj = 0; jj < m.cols(); ++jj) m(i, jj) = j[i][jj].get<double>();
  return m;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw std::invalid_argument(std::string(name) + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

json report_to_json(const RepresentativeReport& report) {
  json j;
  j["selected_new"] = json::array();
  for (Index idx : report.selected_new) j["selected_new"].push_back(idx);
  j["column_mass"] = vector_to_json(report.column_mass);
  j["objective"] = report.objective_value;
  j["status"] = std::string(to_string(report.status));
  j["iterations"] = report.iterations;
  return j;
}

}  // namespace

json instance_to_json(const SelectionInstance& instance) {
  json j;
  if (instance.r() > 0) {
    j["d_old"] = matrix_to_json(instance.d_old);
    j["loss_old"] = vector_to_json(instance.loss_old);
  }
  j["d_new"] = matrix_to_json(instance.d_new);
  j["loss_new"] = vector_to_json(instance.loss_new);
  return j;
}

SelectionInstance instance_from_json(const json& j) {
  if (!j.contains("d_new") || !j.contains("loss_new"))
    throw std::invalid_argument("instance JSON requires d_new and loss_new");
  Matrix d_new = matrix_from_json(j.at("d_new"), "d_new");
  Vector loss_new = vector_from_json(j.at("loss_new"), "loss_new");
  Matrix d_old(d_new.rows(), 0);
  Vector loss_old(0);
  if (j.contains("d_old") != j.contains("loss_old"))
    throw std::invalid_argument("instance JSON must have both or neither of d_old/loss_old");
  if (j.contains("d_old")) {
    d_old = matrix_from_json(j.at("d_old"), "d_old");
    loss_old = vector_from_json(j.at("loss_old"), "loss_old");
  }
  return SelectionInstance::create(std::move(d_old), std::move(d_new),
                                   std::move(loss_old), std::move(loss_new));
}

json config_to_json(const SelectionConfig& config) {
  json j;
  j["rho"] = config.rho;
  j["lambda"] = config.lambda;
  j["p"] = std::string(to_string(config.p));
  j["epsilon"] = config.epsilon;
  j["frac"] = config.frac;
  j["rounding_threshold"] = config.rounding();
  j["feasibility_tol"] = config.feasibility_tol;
  return j;
}

SelectionConfig config_from_json(const json& j) {
  SelectionConfig config;
  if (j.contains("rho")) config.rho = j.at("rho").get<double>();
  if (j.contains("lambda")) config.lambda = j.at("lambda").get<double>();
  if (j.contains("p")) config.p = norm_from_string(j.at("p").get<std::string>());
  if (j.contains("epsilon")) config.epsilon = j.at("epsilon").get<double>();
  if (j.contains("frac")) config.frac = j.at("frac").get<double>();
  if (j.contains("rounding_threshold"))
    config.rounding_threshold = j.at("rounding_threshold").get<double>();
  if (j.contains("feasibility_tol"))
    config.feasibility_tol = j.at("feasibility_tol").get<double>();
  config.validate();
  return config;
}

json mcoss_solution_to_json(const McossResult& result, const SelectionConfig& config) {
  json j = report_to_json(result.report);
  j["method"] = "mcoss";
  j["z_old"] = matrix_to_json(result.assignment.z_old);
  j["z_new"] = matrix_to_json(result.assignment.z_new);
  j["config"] = config_to_json(config);
  return j;
}

json thresh_solution_to_json(const ThreshResult& result, const SelectionConfig& config) {
  json j = report_to_json(result.report);
  j["method"] = "threshmcoss";
  j["z_old"] = matrix_to_json(result.solution.assignment.z_old);
  j["z_new"] = matrix_to_json(result.solution.assignment.z_new);
  j["s_old"] = vector_to_json(result.solution.s_old);
  j["s_new"] = vector_to_json(result.solution.s_new);
  j["budget_usage"] = result.solution.budget_usage;
  j["config"] = config_to_json(config);
  return j;
}

json submod_solution_to_json(const std::vector<Index>& selected, double f_value,
                             std::uint64_t seed, Index k) {
  json j;
  j["method"] = "submcoss";
  j["selected"] = json::array();
  for (Index idx : selected) j["selected"].push_back(idx);
  j["f_value"] = f_value;
  j["seed"] = seed;
  j["k"] = k;
  return j;
}

json theorem_report_to_json(const std::vector<TheoremColumnReport>& report) {
  json arr = json::array();
  for (const auto& entry : report) {
    json j;
    j["j"] = entry.j;
    j["cond1"] = std::string(to_string(entry.cond1));
    j["cond2"] = std::string(to_string(entry.cond2));
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<Batch> parse_stream_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("stream CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 4 || header[0] != "id" || header[1] != "batch" || header[2] != "loss")
    throw std::invalid_argument("stream CSV: header must be id,batch,loss,f0,...");
  const Index dim = static_cast<Index>(header.size()) - 3;

  std::map<int, Batch> grouped;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    while (cells.size() < header.size()) cells.push_back("");
    if (cells.size() != header.size())
      throw std::invalid_argument("stream CSV: wrong cell count at line " +
                                  std::to_string(line_no));
    FrameRecord frame;
    frame.id = cells[0];
    frame.batch_index = std::stoi(cells[1]);
    if (!cells[2].empty()) frame.loss = std::stod(cells[2]);
    frame.features.resize(dim);
    for (Index k = 0; k < dim; ++k)
      frame.features(k) = std::stod(cells[static_cast<size_t>(k) + 3]);
    grouped[frame.batch_index].push_back(std::move(frame));
  }
  if (grouped.empty()) throw std::invalid_argument("stream CSV: no frames");

  std::vector<Batch> batches;
  for (auto& [batch_index, frames] : grouped) batches.push_back(std::move(frames));
  return batches;
}

void write_frames_csv(const std::vector<FrameRecord>& frames, std::ostream& out) {
  const Index dim = frames.empty() ? 0 : frames.front().features.size();
  out << "id,batch,loss";
  for (Index k = 0; k < dim; ++k) out << ",f" << k;
  out << "\n";
  for (const auto& frame : frames) {
    out << frame.id << "," << frame.batch_index << ",";
    if (frame.loss) out << format_double(*frame.loss);
    for (Index k = 0; k < dim; ++k) out << "," << format_double(frame.features(k));
    out << "\n";
  }
}

void write_history_jsonl(const StreamState& state, std::ostream& out) {
  for (const auto& record : state.history) {
    json j;
    j["t"] = record.t;
    j["objective"] = record.objective;
    j["selected"] = record.selected_ids;
    j["r_size"] = record.r_size;
    j["ms"] = record.ms;
    out << j.dump() << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

}  // namespace mcoss
