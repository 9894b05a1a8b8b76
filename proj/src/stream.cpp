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

#include "mcoss/stream.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mcoss/mcoss_solver.hpp"
#include "mcoss/rng.hpp"
#include "mcoss/submodular.hpp"
#include "mcoss/thresh_solver.hpp"

namespace mcoss {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::mcoss:
      return "mcoss";
    case Method::threshmcoss:
      return "threshmcoss";
    case Method::submcoss:
      return "submcoss";
  }
  return "unknown";
}

Method method_from_string(std::string_view s) {
  if (s == "mcoss") return Method::mcoss;
  if (s == "threshmcoss") return Method::threshmcoss;
  if (s == "submcoss") return Method::submcoss;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

Vector ResidualScorer::score(const Batch& frames, const Batch& representatives) const {
  if (frames.empty()) return Vector(0);
  Vector losses(frames.size());
  if (representatives.empty()) {
    Vector mean = Vector::Zero(frames.front().features.size());
    for (const auto& f : frames) mean += f.features;
    mean /= static_cast<double>(frames.size());
    for (size_t i = 0; i < frames.size(); ++i)
      losses(static_cast<Index>(i)) = (frames[i].features - mean).squaredNorm();
  } else {
    for (size_t i = 0; i < frames.size(); ++i) {
      double best = kInf;
      for (const auto& rep : representatives)
        best = std::min(best, (frames[i].features - rep.features).squaredNorm());
      losses(static_cast<Index>(i)) = best;
    }
  }
  const double peak = losses.maxCoeff();
  if (peak > 0.0) losses /= peak;
  return losses;
}

Vector PrecomputedScorer::score(const Batch& frames, const Batch&) const {
  Vector losses(frames.size());
  for (size_t i = 0; i < frames.size(); ++i) {
    if (!frames[i].loss)
      throw std::invalid_argument("precomputed scorer: missing loss for frame '" +
                                  frames[i].id + "'");
    losses(static_cast<Index>(i)) = *frames[i].loss;
  }
  const double low = losses.size() > 0 ? losses.minCoeff() : 0.0;
  if (low < 0.0) losses.array() -= low;  // shift scores nonnegative
  return losses;
}

StreamState run_stream(std::span<const Batch> batches, const Scorer& scorer,
                       const SelectionConfig& config, Method method,
                       const StreamOptions& options) {
  config.validate();
  if (batches.empty()) throw std::invalid_argument("run_stream: no batches");

  StreamState state;
  std::set<std::string> seen_ids;

  for (size_t step = 0; step < batches.size(); ++step) {
    const int t = static_cast<int>(step) + 1;
    const Batch& incoming = batches[step];
    if (incoming.empty())
      throw std::invalid_argument("run_stream: empty batch at step " + std::to_string(t));
    {
      std::set<std::string> batch_ids;
      for (const auto& f : incoming)
        if (!batch_ids.insert(f.id).second)
          throw std::invalid_argument("run_stream: duplicate frame id '" + f.id +
                                      "' in batch " + std::to_string(t));
    }

    const auto started = std::chrono::steady_clock::now();
    const Index m = static_cast<Index>(incoming.size());
    const Index r = static_cast<Index>(state.representatives.size());

    Vector loss_new;
    Vector loss_old;
    try {
      loss_new = scorer.score(incoming, state.representatives);
      loss_old = r > 0 ? scorer.score(state.representatives, state.representatives)
                       : Vector(0);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_stream: scorer failed at step " +
                               std::to_string(t) + ": " + e.what());
    }

    // Dissimilarities over X_t x (R_{t-1} union X_t) in one normalization.
    Matrix d_old(m, r);
    Matrix d_new(m, m);
    if (r > 0) {
      Batch all = state.representatives;
      all.insert(all.end(), incoming.begin(), incoming.end());
      Matrix d = dissimilarity_from_features(incoming, all);
      d_old = d.leftCols(r);
      d_new = d.rightCols(m);
      d_new.diagonal().setZero();  // same frames, exact zeros
    } else {
      d_new = dissimilarity_from_features(incoming);
    }

    SelectionInstance instance =
        SelectionInstance::create(std::move(d_old), std::move(d_new),
                                  std::move(loss_old), loss_new);

    std::vector<Index> picked;
    double objective = 0.0;
    switch (method) {
      case Method::mcoss: {
        const McossResult res = solve_mcoss(instance, config);
        picked = res.report.selected_new;
        objective = res.report.objective_value;
        break;
      }
      case Method::threshmcoss: {
        ThreshOptions topt;
        topt.max_candidates_per_row = options.max_candidates_per_row;
        const ThreshResult res = solve_threshmcoss(instance, config, topt);
        picked = res.report.selected_new;
        objective = res.report.objective_value;
        break;
      }
      case Method::submcoss: {
        const QMatrices q = build_q(instance, config.rho);
        Index k = static_cast<Index>(
            std::ceil(config.frac * static_cast<double>(m) - 1e-12));
        k = std::max<Index>(1, std::min(k, m));
        picked = greedy_select(q, k, CounterRng::mix(options.seed, static_cast<std::uint64_t>(t)));
        objective = eval_f(picked, q);
        break;
      }
    }

    StepRecord record;
    record.t = t;
    record.objective = objective;
    for (Index j : picked) {
      FrameRecord frame = incoming[static_cast<size_t>(j)];
      frame.loss = loss_new(j);
      if (!seen_ids.insert(frame.id).second)
        throw std::invalid_argument("run_stream: frame id '" + frame.id +
                                    "' already present in the representative set");
      record.selected_ids.push_back(frame.id);
      state.representatives.push_back(std::move(frame));
    }
    record.r_size = static_cast<Index>(state.representatives.size());
    if (options.record_timing) {
      record.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    }
    state.history.push_back(std::move(record));
    state.t = t;
  }
  return state;
}

}  // namespace mcoss
