// Copyright 2026 The resint Authors
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

// Operation-set analytics: parameter sweeps, per-row metrics and the
// extrema that separate the cheapest operation from the one binding the
// least resources.

#ifndef RESINT_ANALYSIS_H_
#define RESINT_ANALYSIS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resint/calculus.h"
#include "resint/op_model.h"

namespace resint::analysis {

inline constexpr double kDefaultHorizon = 1150.0;

struct SetReport {
  std::vector<std::string> ids;
  std::vector<OperationMetrics> rows;
  // Lowest index among equal extremal values; the *_tie flags record
  // whether another row shares the extremum.
  std::optional<std::size_t> argmin_cost;
  std::optional<std::size_t> argmin_r;
  std::optional<std::size_t> argmax_profit;  // only with a horizon
  bool cost_tie = false;
  bool r_tie = false;
  bool profit_tie = false;
  // Spearman correlation between R and horizon profit; unset without a
  // horizon or when either column is constant.
  std::optional<double> mirror_rank_stat;
};

// Operations base-with-one-field-overwritten for i = 0..count-1. Varying
// op_time puts t_r = 0, t_p = T. Throws kSweepDomain naming the first
// index whose operation is invalid or has pe <= re.
std::vector<SimpleOperation> generate_sweep(const SweepSpec& spec);

// Metrics for one operation via the closed forms.
OperationMetrics evaluate_operation(const SimpleOperation& op,
                                    std::optional<double> horizon);

// `ids` labels the rows; empty means "1".."n". Throws kEmptyInput for an
// empty set.
SetReport evaluate_set(std::span<const SimpleOperation> ops,
                       std::optional<double> horizon = std::nullopt,
                       std::vector<std::string> ids = {});

// Spearman rank correlation with average ranks for ties. Unset when the
// sizes differ, n < 2, or either sample is constant.
std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y);

// Thread curves of a simple operation via its impulse signals, for plots.
ThreadProfile thread_series(
    const SimpleOperation& op, double step,
    calculus::DifMode mode = calculus::DifMode::kSigned,
    const calculus::Tolerances& tol = {});

}  // namespace resint::analysis

#endif  // RESINT_ANALYSIS_H_
