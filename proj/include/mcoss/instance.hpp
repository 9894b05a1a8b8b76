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

#ifndef MCOSS_INSTANCE_HPP_
#define MCOSS_INSTANCE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mcoss/common.hpp"

namespace mcoss {

// Problem data for one batch step: m incoming frames against r existing
// representatives. Dissimilarities are nonnegative; d_new has a zero
// diagonal; losses are nonnegative (the thresholded solver's LP
// linearization is exact only under that sign convention).
//
// r = 0 (the cold start) is legal everywhere; old-block sums are empty.
struct SelectionInstance {
  Matrix d_old;     // m x r
  Matrix d_new;     // m x m
  Vector loss_old;  // r
  Vector loss_new;  // m

  Index m() const { return d_new.rows(); }
  Index r() const { return d_old.cols(); }

  // Validates and moves; throws std::invalid_argument on any violation.
  static SelectionInstance create(Matrix d_old, Matrix d_new, Vector loss_old,
                                  Vector loss_new);
  // Cold-start convenience: r = 0.
  static SelectionInstance create(Matrix d_new, Vector loss_new);
};

struct Violation {
  std::string message;
};

// Reports every violated invariant with index locations. Violations are
// data, not errors; an empty list means the instance is well formed.
std::vector<Violation> validate(const SelectionInstance& instance);

// Norm used for the group term over new-frame columns.
enum class NormP { l1, linf };

std::string_view to_string(NormP p);
NormP norm_from_string(std::string_view s);

// Formulation knobs shared by all solvers. Field ranges are enforced by
// validate(); solvers call it on entry.
struct SelectionConfig {
  double rho = 0.5;     // weight between pairwise d and pointwise L
  double lambda = 0.5;  // group-norm weight (baseline formulation only)
  NormP p = NormP::linf;
  double epsilon = 0.9;  // saturation level of the thresholded credit
  double frac = 1.0;    // cardinality budget as a fraction of m
  std::optional<double> rounding_threshold;  // defaults to epsilon
  double feasibility_tol = 1e-8;

  double rounding() const { return rounding_threshold.value_or(epsilon); }
  void validate() const;  // throws std::invalid_argument
};

// Cumulative dissimilarity blocks Q = rho*d - (1-rho)*L_column.
struct QMatrices {
  Matrix q_old;  // m x r
  Matrix q_new;  // m x m
};

QMatrices build_q(const SelectionInstance& instance, double rho);

// One annotated frame. Labels are represented only through the loss
// scalar; features are whatever embedding the caller provides.
struct FrameRecord {
  std::string id;
  Vector features;
  std::optional<double> loss;
  int batch_index = 1;
};

// Pairwise Euclidean distances min-max normalized into [0,1] over the
// whole matrix. Stands in for any image-level dissimilarity.
Matrix dissimilarity_from_features(const std::vector<FrameRecord>& frames_a,
                                   const std::vector<FrameRecord>& frames_b);

// Self-pairing variant: symmetric with an exactly zero diagonal.
Matrix dissimilarity_from_features(const std::vector<FrameRecord>& frames);

}  // namespace mcoss

#endif  // MCOSS_INSTANCE_HPP_
