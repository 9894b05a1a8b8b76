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

#include "mcoss/instance.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mcoss {

namespace {

std::string join_messages(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid instance:";
  for (const auto& v : violations) out << " [" << v.message << "]";
  return out.str();
}

}  // namespace

SelectionInstance SelectionInstance::create(Matrix d_old, Matrix d_new,
                                            Vector loss_old, Vector loss_new) {
  SelectionInstance instance{std::move(d_old), std::move(d_new),
                             std::move(loss_old), std::move(loss_new)};
  if (instance.d_old.size() == 0 && instance.d_old.rows() != instance.d_new.rows()) {
    // Normalize an empty old block to m x 0 so dimension checks line up.
    instance.d_old.resize(instance.d_new.rows(), 0);
  }
  auto violations = validate(instance);
  if (!violations.empty()) throw std::invalid_argument(join_messages(violations));
  return instance;
}

SelectionInstance SelectionInstance::create(Matrix d_new, Vector loss_new) {
  Matrix d_old(d_new.rows(), 0);
  return create(std::move(d_old), std::move(d_new), Vector(0), std::move(loss_new));
}

std::vector<Violation> validate(const SelectionInstance& instance) {
  std::vector<Violation> out;
  auto add = [&out](std::string message) { out.push_back({std::move(message)}); };

  const Index m = instance.d_new.rows();
  if (instance.d_new.cols() != m) add("d_new is not square");
  if (instance.d_old.rows() != m)
    add("d_old row count " + std::to_string(instance.d_old.rows()) +
        " does not match m=" + std::to_string(m));
  const Index r = instance.d_old.cols();
  if (instance.loss_old.size() != r)
    add("loss_old length " + std::to_string(instance.loss_old.size()) +
        " does not match r=" + std::to_string(r));
  if (instance.loss_new.size() != m)
    add("loss_new length " + std::to_string(instance.loss_new.size()) +
        " does not match m=" + std::to_string(m));

  for (Index i = 0; i < instance.d_old.rows(); ++i)
    for (Index j = 0; j < instance.d_old.cols(); ++j) {
      const double v = instance.d_old(i, j);
      if (!std::isfinite(v) || v < 0.0)
        add("negative dissimilarity in d_old at i=" + std::to_string(i) +
            ",j=" + std::to_string(j));
    }
  for (Index i = 0; i < instance.d_new.rows(); ++i)
    for (Index j = 0; j < instance.d_new.cols(); ++j) {
      const double v = instance.d_new(i, j);
      if (!std::isfinite(v) || v < 0.0)
        add("negative dissimilarity in d_new at i=" + std::to_string(i) +
            ",j=" + std::to_string(j));
    }
  for (Index i = 0; i < std::min(instance.d_new.rows(), instance.d_new.cols()); ++i)
    if (instance.d_new(i, i) != 0.0)
      add("nonzero diagonal at i=" + std::to_string(i));
  for (Index j = 0; j < instance.loss_old.size(); ++j) {
    const double v = instance.loss_old(j);
    if (!std::isfinite(v) || v < 0.0)
      add("negative loss in loss_old at j=" + std::to_string(j));
  }
  for (Index j = 0; j < instance.loss_new.size(); ++j) {
    const double v = instance.loss_new(j);
    if (!std::isfinite(v) || v < 0.0)
      add("negative loss at j=" + std::to_string(j));
  }
  return out;
}

std::string_view to_string(NormP p) { return p == NormP::l1 ? "1" : "inf"; }

NormP norm_from_string(std::string_view s) {
  if (s == "1" || s == "l1") return NormP::l1;
  if (s == "inf" || s == "linf") return NormP::linf;
  throw std::invalid_argument("unknown norm '" + std::string(s) + "' (expected 1 or inf)");
}

void SelectionConfig::validate() const {
  auto fail = [](const std::string& message) { throw std::invalid_argument("invalid config: " + message); };
  if (!(rho >= 0.0 && rho <= 1.0)) fail("rho must lie in [0,1]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be nonnegative");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail("epsilon must lie in (0,1]");
  if (!(frac > 0.0 && frac <= 1.0)) fail("frac must lie in (0,1]");
  if (rounding_threshold && !(*rounding_threshold > 0.0 && *rounding_threshold <= 1.0))
    fail("rounding_threshold must lie in (0,1]");
  if (!(feasibility_tol > 0.0)) fail("feasibility_tol must be positive");
}

QMatrices build_q(const SelectionInstance& instance, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::invalid_argument("rho must lie in [0,1]");
  QMatrices q;
  q.q_old = rho * instance.d_old;
  q.q_old.rowwise() -= (1.0 - rho) * instance.loss_old.transpose();
  q.q_new = rho * instance.d_new;
  q.q_new.rowwise() -= (1.0 - rho) * instance.loss_new.transpose();
  return q;
}

namespace {

Matrix raw_distances(const std::vector<FrameRecord>& frames_a,
                     const std::vector<FrameRecord>& frames_b) {
  if (frames_a.empty() || frames_b.empty())
    throw std::invalid_argument("dissimilarity: empty frame list");
  const Index dim = frames_a.front().features.size();
  for (const auto* list : {&frames_a, &frames_b})
    for (const auto& f : *list)
      if (f.features.size() != dim)
        throw std::invalid_argument("dissimilarity: feature dimension mismatch at frame '" +
                                    f.id + "'");
  Matrix d(frames_a.size(), frames_b.size());
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      d(i, j) = (frames_a[i].features - frames_b[j].features).norm();
  return d;
}

void min_max_normalize(Matrix& d) {
  const double lo = d.minCoeff();
  const double hi = d.maxCoeff();
  const double range = hi - lo;
  if (range <= 0.0) {
    d.setZero();
    return;
  }
  d = (d.array() - lo) / range;
}

}  // namespace

Matrix dissimilarity_from_features(const std::vector<FrameRecord>& frames_a,
                                   const std::vector<FrameRecord>& frames_b) {
  Matrix d = raw_distances(frames_a, frames_b);
  min_max_normalize(d);
  return d;
}

Matrix dissimilarity_from_features(const std::vector<FrameRecord>& frames) {
  Matrix d = raw_distances(frames, frames);
  min_max_normalize(d);
  // Identical inputs give exact zeros; pin the diagonal anyway so the
  // instance invariant holds bit-exactly.
  d.diagonal().setZero();
  return d;
}

}  // namespace mcoss
