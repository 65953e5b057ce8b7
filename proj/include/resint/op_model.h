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

// Domain types shared by the numeric engine, the closed forms and the
// set analytics: lumped ("simple") operations, uniformly sampled
// registration signals, and the derived thread and metric records.

#ifndef RESINT_OP_MODEL_H_
#define RESINT_OP_MODEL_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resint {

enum class ErrorCode {
  kInvalidOperation,
  kParse,
  kDomain,
  kGrid,
  kNonEffective,  // pe <= re: consumption is never compensated
  kHorizon,
  kEmptyInput,
  kSweepDomain,
  kIo,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A lumped operation: one input registration of value |RE| at t_r and one
// output registration of value PE at t_p. Magnitudes are stored unsigned.
struct SimpleOperation {
  double re_value = 0.0;
  double pe_value = 0.0;
  double t_r = 0.0;
  double t_p = 0.0;

  double op_time() const { return t_p - t_r; }
  friend bool operator==(const SimpleOperation&,
                         const SimpleOperation&) = default;
};

// Throws kInvalidOperation unless the invariants hold.
void validate(const SimpleOperation& op);

// Accepts the signed input-cost convention (RE = -2) and stores |raw_re|.
SimpleOperation normalize_simple(double raw_re, double pe, double t_r,
                                 double t_p);

// Uniformly sampled value-rate series. Sample i is the constant rate over
// the bin [t0 + i*step, t0 + (i+1)*step).
class SampledSignal {
 public:
  SampledSignal() = default;
  // Throws kDomain for non-finite/negative samples, kGrid for step <= 0.
  SampledSignal(double t0, double step, std::vector<double> values);

  // Like the checked constructor but admits negative samples; used for
  // derived curves such as the mismatch thread.
  static SampledSignal unchecked(double t0, double step,
                                 std::vector<double> values);

  double t0() const { return t0_; }
  double step() const { return step_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double bin_start(std::size_t i) const { return t0_ + step_ * i; }
  double end_time() const { return bin_start(values_.size()); }

  // Rectangle sum step * sum(values).
  double total() const;

 private:
  double t0_ = 0.0;
  double step_ = 1.0;
  std::vector<double> values_;
};

// A resource consumption channel and a resource return channel on one grid.
class SignalOperation {
 public:
  // Throws kGrid unless both channels share t0 and step.
  SignalOperation(SampledSignal re_signal, SampledSignal pe_signal);

  const SampledSignal& re_signal() const { return re_; }
  const SampledSignal& pe_signal() const { return pe_; }
  double t0() const { return re_.t0(); }
  double step() const { return re_.step(); }
  // Number of bins covered by the longer channel.
  std::size_t size() const;

 private:
  SampledSignal re_;
  SampledSignal pe_;
};

// Impulse representation of a simple operation: each registration becomes
// one bin of height magnitude/step, placed in the bin containing its
// instant. The grid starts at min(0, t_r).
SignalOperation simple_to_signals(const SimpleOperation& op, double step);

// Curves over [t0, t_a]. Point k sits at grid[k]; the first point is the
// origin where every integral is zero. The last point is t_a itself.
struct ThreadProfile {
  std::vector<double> grid;
  std::vector<double> ire;
  std::vector<double> ipe;
  std::vector<double> vre;
  std::vector<double> vpe;
  std::vector<double> dif;
  std::vector<double> r;

  std::size_t size() const { return grid.size(); }
};

struct OperationMetrics {
  double re_total = 0.0;
  double pe_total = 0.0;
  double t_r = 0.0;
  double t_p = 0.0;
  double t_f = 0.0;
  double t_a = 0.0;
  double op_time = 0.0;
  double resource_intensity = 0.0;  // CTT
  // (pe - re) per unit time; unset for zero-length operations.
  std::optional<double> profit_rate;
  std::optional<double> horizon_profit;
};

enum class VariedField { kReValue, kPeValue, kOpTime };

const char* varied_field_name(VariedField field);

struct SweepSpec {
  SimpleOperation base;
  VariedField varied_field = VariedField::kOpTime;
  double start = 0.0;
  double step = 0.0;
  int count = 1;
  std::optional<double> horizon;
};

}  // namespace resint

#endif  // RESINT_OP_MODEL_H_
