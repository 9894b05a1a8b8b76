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

#ifndef MCOSS_COMMON_HPP_
#define MCOSS_COMMON_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>

namespace mcoss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Outcome of a single strict-inequality check. Theorems assume generic
// position, so exact ties get their own verdict instead of a coin flip.
enum class Verdict { pass, fail, inconclusive, not_applicable };

std::string_view to_string(Verdict v);

// Margin under which a strict inequality is reported inconclusive.
inline constexpr double kTieMargin = 1e-9;

// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

}  // namespace mcoss

#endif  // MCOSS_COMMON_HPP_
