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

#include "mcoss/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mcoss/bench.hpp"
#include "mcoss/io.hpp"
#include "mcoss/oracle.hpp"
#include "mcoss/rng.hpp"
#include "mcoss/solver_detail.hpp"
#include "mcoss/submodular.hpp"

namespace mcoss {

namespace {

using nlohmann::json;

struct ConfigFlags {
  double rho = 0.5;
  double lambda = 0.5;
  std::string p = "inf";
  double epsilon = 0.9;
  double frac = 1.0;
  double threshold = -1.0;  // <0 means "track epsilon"
  double feastol = 1e-8;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rho", rho, "pairwise/pointwise weight in [0,1]");
    cmd->add_option("--lambda", lambda, "group-norm weight (mcoss)");
    cmd->add_option("--p", p, "group norm: 1 or inf")->check(CLI::IsMember({"1", "inf"}));
    cmd->add_option("--epsilon", epsilon, "credit saturation level in (0,1]");
    cmd->add_option("--frac", frac, "cardinality budget fraction in (0,1]");
    cmd->add_option("--threshold", threshold, "rounding threshold (default: epsilon)");
    cmd->add_option("--feastol", feastol, "LP feasibility tolerance");
  }

  SelectionConfig to_config() const {
    SelectionConfig config;
    config.rho = rho;
    config.lambda = lambda;
    config.p = norm_from_string(p);
    config.epsilon = epsilon;
    config.frac = frac;
    if (threshold >= 0.0) config.rounding_threshold = threshold;
    config.feasibility_tol = feastol;
    config.validate();
    return config;
  }
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("seed range is empty: " + text);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) seeds.push_back(std::stoull(cell));
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty())
    std::cout << contents;
  else
    write_file(out_path, contents);
}

SelectionInstance load_instance(const std::string& path) {
  return instance_from_json(json::parse(read_file(path)));
}

int run_gen(Index m, Index r, std::uint64_t seed, const std::string& out,
            int stream_batches, Index frames, Index dim) {
  if (stream_batches > 0) {
    const auto batches = generate_synthetic_stream(stream_batches, frames, dim, seed);
    std::ostringstream csv;
    std::vector<FrameRecord> flat;
    for (const auto& batch : batches)
      flat.insert(flat.end(), batch.begin(), batch.end());
    write_frames_csv(flat, csv);
    emit(out, csv.str());
    return 0;
  }
  const SelectionInstance instance = generate_synthetic(m, r, seed);
  json j = instance_to_json(instance);
  j["seed"] = seed;
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& method_name,
              const ConfigFlags& flags, std::uint64_t seed, Index candidates,
              const std::string& out, const std::string& dump_lp_path) {
  const SelectionConfig config = flags.to_config();
  const SelectionInstance instance = load_instance(instance_path);
  const Method method = method_from_string(method_name);

  if (!dump_lp_path.empty() && method != Method::submcoss) {
    const LpProblem lp =
        method == Method::mcoss
            ? detail::build_mcoss_lp(instance, config)
            : detail::build_thresh_lp(instance, config,
                                      ThreshOptions{candidates}, nullptr);
    std::ostringstream dump;
    dump_lp_csv(lp, dump);
    write_file(dump_lp_path, dump.str());
  }

  json j;
  switch (method) {
    case Method::mcoss:
      j = mcoss_solution_to_json(solve_mcoss(instance, config), config);
      break;
    case Method::threshmcoss:
      j = thresh_solution_to_json(
          solve_threshmcoss(instance, config, ThreshOptions{candidates}), config);
      break;
    case Method::submcoss: {
      const QMatrices q = build_q(instance, config.rho);
      Index k = static_cast<Index>(
          std::ceil(config.frac * static_cast<double>(instance.m()) - 1e-12));
      k = std::max<Index>(1, std::min(k, instance.m()));
      const auto selected = greedy_select(q, k, seed);
      j = submod_solution_to_json(selected, eval_f(selected, q), seed, k);
      j["config"] = config_to_json(config);
      break;
    }
  }
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_compare(Index m, Index r, const std::string& seeds_text, int runs,
                const ConfigFlags& flags, std::uint64_t seed, Index candidates,
                const std::string& out) {
  const SelectionConfig config = flags.to_config();
  const auto seeds = parse_seed_list(seeds_text);

  std::vector<NamedInstance> instances;
  for (const auto s : seeds)
    instances.push_back({std::to_string(s), generate_synthetic(m, r, s)});

  CompareOptions options;
  options.submod_runs = runs;
  options.seed = seed;
  options.thresh_candidates_per_row = candidates;
  const auto rows = compare_methods(instances, config, options);
  emit(out, comparison_csv(rows));

  json meta;
  meta["config"] = config_to_json(config);
  meta["m"] = m;
  meta["r"] = r;
  meta["seeds"] = seeds;
  meta["submod_runs"] = runs;
  meta["seed"] = seed;
  meta["common_metric"] = rows.empty() ? "" : rows.front().common_metric;
  json notes = json::array();
  for (const auto& row : rows)
    if (!row.error.empty()) notes.push_back(row.instance_id + ": " + row.error);
  meta["notes"] = notes;
  if (out.empty())
    std::cerr << meta.dump(2) << "\n";
  else
    write_file(out + ".meta.json", meta.dump(2) + "\n");
  return 0;
}

int run_stream_cmd(const std::string& input_path, const std::string& method_name,
                   const std::string& scorer_name, const ConfigFlags& flags,
                   std::uint64_t seed, Index candidates, bool timing,
                   const std::string& out_history, const std::string& out_reps) {
  const SelectionConfig config = flags.to_config();
  std::ifstream in(input_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + input_path);
  const auto batches = parse_stream_csv(in);

  std::unique_ptr<Scorer> scorer;
  if (scorer_name == "residual")
    scorer = std::make_unique<ResidualScorer>();
  else if (scorer_name == "precomputed")
    scorer = std::make_unique<PrecomputedScorer>();
  else
    throw std::invalid_argument("unknown scorer '" + scorer_name + "'");

  StreamOptions options;
  options.seed = seed;
  options.record_timing = timing;
  options.max_candidates_per_row = candidates;
  const StreamState state = run_stream(batches, *scorer,
                                       config, method_from_string(method_name), options);

  std::ostringstream history;
  write_history_jsonl(state, history);
  emit(out_history, history.str());
  if (!out_reps.empty()) {
    std::ostringstream reps;
    write_frames_csv(state.representatives, reps);
    write_file(out_reps, reps.str());
  }

  // Per-step objective table for human consumption.
  for (const auto& record : state.history)
    std::cerr << "t = " << record.t << ": objective " << format_double(record.objective)
              << ", |R| = " << record.r_size << "\n";

  json meta;
  meta["config"] = config_to_json(config);
  meta["method"] = method_name;
  meta["scorer"] = scorer->name();
  meta["seed"] = seed;
  meta["steps"] = state.t;
  meta["r_size"] = state.representatives.size();
  if (out_history.empty())
    std::cerr << meta.dump(2) << "\n";
  else
    write_file(out_history + ".meta.json", meta.dump(2) + "\n");
  return 0;
}

int run_verify(const std::string& check, const std::string& instance_path,
               const ConfigFlags& flags, int trials, std::uint64_t seed,
               Index candidates, const std::string& out) {
  const SelectionConfig config = flags.to_config();
  const SelectionInstance instance = load_instance(instance_path);
  json j;
  j["check"] = check;
  j["config"] = config_to_json(config);
  int failures = 0;

  if (check == "submodularity") {
    const QMatrices q = build_q(instance, config.rho);
    const auto report = check_submodularity(q, trials, seed);
    j["trials"] = report.trials;
    j["violations"] = report.total();
    j["dr_violations"] = report.dr_violations;
    j["monotonicity_violations"] = report.monotonicity_violations;
    failures = report.total();
  } else if (check == "theorem1") {
    const OracleResult oracle = brute_force_optimum(instance, config, Formulation::mcoss);
    const auto report = check_theorem1(oracle.best_assignment, instance, config);
    j["oracle_objective"] = oracle.best_objective;
    j["columns"] = theorem_report_to_json(report);
    // Condition 2 is the literal printed form, whose norm-term sign
    // disagrees with the corollary's; its failures are reported in the
    // output but do not fail the run.
    int cond2_failures = 0;
    for (const auto& entry : report) {
      failures += entry.cond1 == Verdict::fail;
      cond2_failures += entry.cond2 == Verdict::fail;
    }
    j["cond2_failures_logged"] = cond2_failures;
  } else if (check == "corollary1") {
    SelectionConfig c0 = config;
    c0.rho = 0.0;
    const OracleResult oracle = brute_force_optimum(instance, c0, Formulation::mcoss);
    const auto report = check_corollary1(oracle.best_assignment, instance, c0);
    j["oracle_objective"] = oracle.best_objective;
    j["columns"] = theorem_report_to_json(report.columns);
    j["selected_count"] = report.selected_count;
    j["count_claim"] = std::string(to_string(report.count_claim));
    int cond2_failures = 0;
    for (const auto& entry : report.columns) {
      failures += entry.cond1 == Verdict::fail;
      cond2_failures += entry.cond2 == Verdict::fail;
    }
    j["cond2_failures_logged"] = cond2_failures;
    failures += report.count_claim == Verdict::fail;
  } else if (check == "thresh-conditions") {
    const ThreshResult result =
        solve_threshmcoss(instance, config, ThreshOptions{candidates});
    const auto reports = check_supp_theorem_conditions(result, instance, config);
    json columns = json::array();
    for (const auto& rep : reports) {
      json entry;
      entry["j"] = rep.j;
      entry["mass_condition"] = std::string(to_string(rep.mass_condition));
      entry["best_old"] = rep.best_old;
      json per_row = json::array();
      for (const auto v : rep.cost_condition_per_row)
        per_row.push_back(std::string(to_string(v)));
      entry["cost_condition_per_row"] = per_row;
      columns.push_back(std::move(entry));
      failures += rep.mass_condition == Verdict::fail;
    }
    j["columns"] = columns;
    j["objective"] = result.solution.objective_value;
  } else if (check == "constraints") {
    // Row stochasticity, box bounds, budget, and credit recomputation on
    // a fresh thresholded solve.
    const ThreshResult result =
        solve_threshmcoss(instance, config, ThreshOptions{candidates});
    const Assignment& z = result.solution.assignment;
    Vector row_sums = z.z_new.rowwise().sum();
    if (instance.r() > 0) row_sums += z.z_old.rowwise().sum();
    const double row_err = (row_sums.array() - 1.0).abs().maxCoeff();
    const double z_min = std::min(instance.r() > 0 ? z.z_old.minCoeff() : 0.0,
                                  z.z_new.minCoeff());
    const double z_max = std::max(instance.r() > 0 ? z.z_old.maxCoeff() : 0.0,
                                  z.z_new.maxCoeff());
    double s_err = 0.0;
    for (Index col = 0; col < instance.m(); ++col)
      s_err = std::max(s_err, std::abs(result.solution.s_new(col) -
                                       compute_s(std::max(0.0, z.z_new.col(col).sum()),
                                                 config.epsilon)));
    const double budget_slack =
        config.frac * static_cast<double>(instance.m()) - result.solution.budget_usage;
    j["row_stochastic_error"] = row_err;
    j["z_min"] = z_min;
    j["z_max"] = z_max;
    j["s_recompute_error"] = s_err;
    j["budget_usage"] = result.solution.budget_usage;
    j["budget_slack"] = budget_slack;
    failures += row_err > 1e-6;
    failures += z_min < -1e-9 || z_max > 1.0 + 1e-9;
    failures += s_err > 1e-6;
    failures += budget_slack < -1e-6;
  } else {
    throw std::invalid_argument("unknown check '" + check + "'");
  }

  j["failures"] = failures;
  emit(out, j.dump(2) + "\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"multi-criteria online subset selection toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic instance or stream");
  Index gen_m = 100, gen_r = 0, gen_frames = 6, gen_dim = 4;
  std::uint64_t gen_seed = 0;
  int gen_stream = 0;
  std::string gen_out;
  gen->add_option("--m", gen_m, "incoming frames");
  gen->add_option("--r", gen_r, "existing representatives");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--stream-batches", gen_stream, "emit a frame stream CSV with this many batches");
  gen->add_option("--frames", gen_frames, "frames per batch (stream mode)");
  gen->add_option("--dim", gen_dim, "feature dimension (stream mode)");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance");
  std::string solve_instance, solve_method = "threshmcoss", solve_out, solve_dump;
  std::uint64_t solve_seed = 0;
  Index solve_candidates = 0;
  ConfigFlags solve_flags;
  solve->add_option("instance", solve_instance, "instance JSON path")->required();
  solve->add_option("--method", solve_method, "mcoss|threshmcoss|submcoss")
      ->check(CLI::IsMember({"mcoss", "threshmcoss", "submcoss"}));
  solve_flags.attach(solve);
  solve->add_option("--seed", solve_seed, "greedy seed (submcoss)");
  solve->add_option("--candidates", solve_candidates, "candidate columns per row (0 = full LP)");
  solve->add_option("--out", solve_out, "output path (default stdout)");
  solve->add_option("--dump-lp", solve_dump, "write the LP reduction as CSV");

  // compare
  auto* compare = app.add_subcommand("compare", "three-way method comparison");
  Index cmp_m = 100, cmp_r = 0, cmp_candidates = 0;
  int cmp_runs = 100;
  std::uint64_t cmp_seed = 0;
  std::string cmp_seeds = "1..10", cmp_out;
  ConfigFlags cmp_flags;
  cmp_flags.frac = 0.2;  // 100:20 compression default
  compare->add_option("--m", cmp_m, "incoming frames per instance");
  compare->add_option("--r", cmp_r, "existing representatives per instance");
  compare->add_option("--seeds", cmp_seeds, "instance seeds, e.g. 1..10 or 3,5,9");
  compare->add_option("--runs", cmp_runs, "randomized greedy runs per instance");
  cmp_flags.attach(compare);
  compare->add_option("--seed", cmp_seed, "greedy seed base");
  compare->add_option("--candidates", cmp_candidates, "thresh candidate columns per row");
  compare->add_option("--out", cmp_out, "CSV output path (default stdout)");

  // stream
  auto* stream = app.add_subcommand("stream", "run the online loop over a frame CSV");
  std::string stream_input, stream_method = "threshmcoss", stream_scorer = "residual";
  std::string stream_history, stream_reps;
  std::uint64_t stream_seed = 0;
  Index stream_candidates = 0;
  bool stream_timing = false;
  ConfigFlags stream_flags;
  stream->add_option("input", stream_input, "stream CSV path")->required();
  stream->add_option("--method", stream_method, "mcoss|threshmcoss|submcoss")
      ->check(CLI::IsMember({"mcoss", "threshmcoss", "submcoss"}));
  stream->add_option("--scorer", stream_scorer, "residual|precomputed")
      ->check(CLI::IsMember({"residual", "precomputed"}));
  stream_flags.attach(stream);
  stream->add_option("--seed", stream_seed, "greedy seed base");
  stream->add_option("--candidates", stream_candidates, "thresh candidate columns per row");
  stream->add_flag("--timing", stream_timing,
                   "record wall-clock ms per step (breaks byte reproducibility)");
  stream->add_option("--out-history", stream_history, "history JSONL path (default stdout)");
  stream->add_option("--out-reps", stream_reps, "final representative CSV path");

  // verify
  auto* verify = app.add_subcommand("verify", "run a property or theorem check");
  std::string verify_check, verify_instance, verify_out;
  int verify_trials = 1000;
  std::uint64_t verify_seed = 0;
  Index verify_candidates = 0;
  ConfigFlags verify_flags;
  verify->add_option("--check", verify_check,
                     "submodularity|theorem1|corollary1|thresh-conditions|constraints")
      ->required()
      ->check(CLI::IsMember({"submodularity", "theorem1", "corollary1",
                             "thresh-conditions", "constraints"}));
  verify->add_option("instance", verify_instance, "instance JSON path")->required();
  verify_flags.attach(verify);
  verify->add_option("--trials", verify_trials, "sampled triples (submodularity)");
  verify->add_option("--seed", verify_seed, "sampler seed");
  verify->add_option("--candidates", verify_candidates, "thresh candidate columns per row");
  verify->add_option("--out", verify_out, "report path (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("mcoss");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_m, gen_r, gen_seed, gen_out, gen_stream, gen_frames, gen_dim);
    if (solve->parsed())
      return run_solve(solve_instance, solve_method, solve_flags, solve_seed,
                       solve_candidates, solve_out, solve_dump);
    if (compare->parsed())
      return run_compare(cmp_m, cmp_r, cmp_seeds, cmp_runs, cmp_flags, cmp_seed,
                         cmp_candidates, cmp_out);
    if (stream->parsed())
      return run_stream_cmd(stream_input, stream_method, stream_scorer, stream_flags,
                            stream_seed, stream_candidates, stream_timing,
                            stream_history, stream_reps);
    if (verify->parsed())
      return run_verify(verify_check, verify_instance, verify_flags, verify_trials,
                        verify_seed, verify_candidates, verify_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace mcoss
