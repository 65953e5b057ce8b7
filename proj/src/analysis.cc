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

#include "resint/analysis.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <utility>

#include "resint/analytic.h"

namespace resint::analysis {
namespace {

// Relative closeness under which two extremal values count as a tie.
constexpr double kTieRelTol = 1e-12;

bool same_value(double a, double b) {
  return std::fabs(a - b) <=
         kTieRelTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Index of the best value under `better`, lowest index on ties.
template <typename Better>
std::pair<std::size_t, bool> extremum(const std::vector<double>& values,
                                      Better better) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (better(values[i], values[best]) && !same_value(values[i], values[best]))
      best = i;
  }
  bool tie = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != best && same_value(values[i], values[best])) {
      tie = true;
      best = std::min(best, i);
    }
  }
  return {best, tie};
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

}  // namespace

std::vector<SimpleOperation> generate_sweep(const SweepSpec& spec) {
  if (spec.count < 1) {
    throw Error(ErrorCode::kSweepDomain, "sweep count must be >= 1");
  }
  if (!std::isfinite(spec.start) || !std::isfinite(spec.step)) {
    throw Error(ErrorCode::kSweepDomain, "sweep start/step must be finite");
  }
  std::vector<SimpleOperation> ops;
  ops.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    const double value = spec.start + spec.step * i;
    SimpleOperation op = spec.base;
    switch (spec.varied_field) {
      case VariedField::kReValue:
        op.re_value = value;
        break;
      case VariedField::kPeValue:
        op.pe_value = value;
        break;
      case VariedField::kOpTime:
        op.t_r = 0.0;
        op.t_p = value;
        break;
    }
    std::ostringstream os;
    os << "sweep operation " << i << " (" << varied_field_name(spec.varied_field)
       << " = " << value << "): ";
    try {
      validate(op);
    } catch (const Error& e) {
      throw Error(ErrorCode::kSweepDomain, os.str() + e.what());
    }
    if (!(op.pe_value > op.re_value)) {
      os << "pe=" << op.pe_value << " <= re=" << op.re_value;
      throw Error(ErrorCode::kSweepDomain, os.str());
    }
    ops.push_back(op);
  }
  return ops;
}

OperationMetrics evaluate_operation(const SimpleOperation& op,
                                    std::optional<double> horizon) {
  OperationMetrics m;
  m.re_total = op.re_value;
  m.pe_total = op.pe_value;
  m.t_r = op.t_r;
  m.t_p = op.t_p;
  m.t_f = op.t_p;
  m.t_a = analytic::actual_completion_simple(op);
  m.op_time = op.op_time();
  m.resource_intensity = analytic::resource_intensity_simple(op);
  if (m.op_time > 0.0) m.profit_rate = (op.pe_value - op.re_value) / m.op_time;
  if (horizon) m.horizon_profit = analytic::cycle_profit(op, *horizon);
  return m;
}

SetReport evaluate_set(std::span<const SimpleOperation> ops,
                       std::optional<double> horizon,
                       std::vector<std::string> ids) {
  if (ops.empty()) {
    throw Error(ErrorCode::kEmptyInput, "operation set is empty");
  }
  if (!ids.empty() && ids.size() != ops.size()) {
    throw Error(ErrorCode::kDomain, "one id per operation required");
  }
  SetReport report;
  if (ids.empty()) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      ids.push_back(std::to_string(i + 1));
    }
  }
  report.ids = std::move(ids);
  report.rows.reserve(ops.size());
  for (const SimpleOperation& op : ops) {
    report.rows.push_back(evaluate_operation(op, horizon));
  }

  std::vector<double> cost, intensity, profit;
  for (const OperationMetrics& m : report.rows) {
    cost.push_back(m.re_total);
    intensity.push_back(m.resource_intensity);
    if (m.horizon_profit) profit.push_back(*m.horizon_profit);
  }
  std::tie(report.argmin_cost, report.cost_tie) =
      extremum(cost, std::less<double>());
  std::tie(report.argmin_r, report.r_tie) =
      extremum(intensity, std::less<double>());
  if (horizon) {
    std::tie(report.argmax_profit, report.profit_tie) =
        extremum(profit, std::greater<double>());
    report.mirror_rank_stat = spearman(intensity, profit);
  }
  return report;
}

std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

ThreadProfile thread_series(const SimpleOperation& op, double step,
                            calculus::DifMode mode,
                            const calculus::Tolerances& tol) {
  // Rejects pe <= re before any grid work.
  analytic::actual_completion_simple(op);
  const SignalOperation signals = simple_to_signals(op, step);
  const double t_a = calculus::actual_completion_numeric(signals, tol);
  return calculus::mismatch_thread(signals, t_a, mode, tol);
}

}  // namespace resint::analysis
