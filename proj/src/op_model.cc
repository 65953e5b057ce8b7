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

#include "resint/op_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace resint {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOperation:
      return "invalid-operation";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kGrid:
      return "grid";
    case ErrorCode::kNonEffective:
      return "non-effective";
    case ErrorCode::kHorizon:
      return "horizon";
    case ErrorCode::kEmptyInput:
      return "empty-input";
    case ErrorCode::kSweepDomain:
      return "sweep-domain";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

const char* varied_field_name(VariedField field) {
  switch (field) {
    case VariedField::kReValue:
      return "re";
    case VariedField::kPeValue:
      return "pe";
    case VariedField::kOpTime:
      return "time";
  }
  return "unknown";
}

void validate(const SimpleOperation& op) {
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "invalid operation {re=" << op.re_value << ", pe=" << op.pe_value
       << ", t_r=" << op.t_r << ", t_p=" << op.t_p << "}: " << why;
    throw Error(ErrorCode::kInvalidOperation, os.str());
  };
  if (!std::isfinite(op.re_value) || !std::isfinite(op.pe_value) ||
      !std::isfinite(op.t_r) || !std::isfinite(op.t_p)) {
    fail("non-finite field");
  }
  if (op.re_value <= 0.0) fail("input value magnitude must be > 0");
  if (op.pe_value <= 0.0) fail("output value must be > 0");
  if (op.t_p < op.t_r) fail("output registered before input (t_p < t_r)");
}

SimpleOperation normalize_simple(double raw_re, double pe, double t_r,
                                 double t_p) {
  SimpleOperation op{std::fabs(raw_re), pe, t_r, t_p};
  validate(op);
  return op;
}

namespace {

void check_grid(double t0, double step) {
  if (!std::isfinite(t0)) {
    throw Error(ErrorCode::kGrid, "signal origin must be finite");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kGrid, "signal step must be finite and > 0");
  }
}

}  // namespace

SampledSignal::SampledSignal(double t0, double step, std::vector<double> values)
    : t0_(t0), step_(step), values_(std::move(values)) {
  check_grid(t0_, step_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      std::ostringstream os;
      os << "signal sample " << i << " = " << values_[i]
         << " is not a finite nonnegative rate";
      throw Error(ErrorCode::kDomain, os.str());
    }
  }
  if (!std::isfinite(total())) {
    throw Error(ErrorCode::kDomain, "signal total is not finite");
  }
}

SampledSignal SampledSignal::unchecked(double t0, double step,
                                       std::vector<double> values) {
  check_grid(t0, step);
  SampledSignal s;
  s.t0_ = t0;
  s.step_ = step;
  s.values_ = std::move(values);
  return s;
}

double SampledSignal::total() const {
  return step_ * std::accumulate(values_.begin(), values_.end(), 0.0);
}

SignalOperation::SignalOperation(SampledSignal re_signal,
                                 SampledSignal pe_signal)
    : re_(std::move(re_signal)), pe_(std::move(pe_signal)) {
  if (re_.t0() != pe_.t0() || re_.step() != pe_.step()) {
    std::ostringstream os;
    os << "channels are not on a common grid (re: t0=" << re_.t0()
       << " step=" << re_.step() << "; pe: t0=" << pe_.t0()
       << " step=" << pe_.step() << ")";
    throw Error(ErrorCode::kGrid, os.str());
  }
}

std::size_t SignalOperation::size() const {
  return std::max(re_.size(), pe_.size());
}

SignalOperation simple_to_signals(const SimpleOperation& op, double step) {
  validate(op);
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kGrid, "step must be finite and > 0");
  }
  const double span = op.op_time();
  if (span > 0.0 && step > span / 10.0) {
    std::ostringstream os;
    os << "step " << step << " is coarser than (t_p - t_r)/10 = "
       << span / 10.0;
    throw Error(ErrorCode::kGrid, os.str());
  }
  const double t0 = std::min(0.0, op.t_r);
  // Slack absorbs representation error when an instant lies on the grid.
  auto bin_of = [&](double t) {
    return static_cast<std::size_t>(std::floor((t - t0) / step + 1e-9));
  };
  const std::size_t kr = bin_of(op.t_r);
  const std::size_t kp = bin_of(op.t_p);
  const std::size_t n = std::max(kr, kp) + 1;

  std::vector<double> re(n, 0.0);
  std::vector<double> pe(n, 0.0);
  re[kr] = op.re_value / step;
  pe[kp] = op.pe_value / step;
  return SignalOperation(SampledSignal(t0, step, std::move(re)),
                         SampledSignal(t0, step, std::move(pe)));
}

}  // namespace resint
