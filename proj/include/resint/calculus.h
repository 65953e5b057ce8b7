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

// Numeric engine for general (distributed) registration signals.
//
// Every integral is a running rectangle sum on the signal grid. A running
// value out[i] = step * (v[0] + ... + v[i]) is the exact integral of the
// piecewise-constant rate over [t0, t0 + (i+1)*step], i.e. it belongs to
// the END of bin i. Between grid points running values are interpolated
// linearly. Under this convention a one-bin impulse of mass M starting at
// t_k has a second integral equal to M*(v - t_k) at every grid point past
// t_k, so impulse operations whose instants lie on the grid are integrated
// without discretization error in the ramps.

#ifndef RESINT_CALCULUS_H_
#define RESINT_CALCULUS_H_

#include <cstddef>
#include <optional>

#include "resint/op_model.h"

namespace resint::calculus {

struct Tolerances {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  // The actual-completion search is bounded by
  // t_f + max_horizon_factor * max(t_f - t_start, step).
  double max_horizon_factor = 100.0;
};

void validate(const Tolerances& tol);

// Integrand used for the losses integral r(v).
enum class DifMode { kSigned, kMagnitude };

SampledSignal cumulative_integral(const SampledSignal& s);
SampledSignal second_integral(const SampledSignal& s);

// Pads with zero-rate bins up to `bins` samples (never truncates).
SampledSignal zero_extend(const SampledSignal& s, std::size_t bins);

// Value of a running-sum curve (output of cumulative_integral) at time v,
// with the end-of-bin convention and 0 at t0. v must lie in
// [t0, end_time()].
double running_value_at(const SampledSignal& running, double v);

// Redistributes bin masses onto the grid (t0, step) by overlap length.
// Totals are preserved. Requires t0 <= s.t0().
SampledSignal resample(const SampledSignal& s, double t0, double step);

// Puts both channels on one grid: origin = earlier origin, step = `step`
// if given, else the finer channel step. Channels are zero-extended to a
// common length.
SignalOperation align_signals(const SampledSignal& re, const SampledSignal& pe,
                              std::optional<double> step = std::nullopt);

// First and last bin-start instants holding a nonzero sample on either
// channel. Throws kDomain when both channels are identically zero.
double operation_start(const SignalOperation& op);
double physical_completion(const SignalOperation& op);

double horizon_limit(const SignalOperation& op, const Tolerances& tol);

// Smallest v >= t_f with vpe(v) >= vre(v), refined linearly between grid
// points. Beyond the data both second integrals are straight lines, so the
// crossing is extrapolated exactly instead of scanned.
//
// Throws kNonEffective when the return never compensates the consumption
// and kHorizon when the crossing lies past horizon_limit().
double actual_completion_numeric(const SignalOperation& op,
                                 const Tolerances& tol = {});

// Curves ire, ipe, vre, vpe, dif and r from t0 to t_a, zero-extending the
// signals past their data. Throws kHorizon when t_a lies past
// horizon_limit() or would need an unreasonable number of samples.
ThreadProfile mismatch_thread(const SignalOperation& op, double t_a,
                              DifMode mode = DifMode::kSigned,
                              const Tolerances& tol = {});

// r(t_a) of the mismatch thread.
double resource_intensity_numeric(const SignalOperation& op,
                                  const Tolerances& tol = {},
                                  DifMode mode = DifMode::kSigned);

}  // namespace resint::calculus

#endif  // RESINT_CALCULUS_H_
