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

// Closed forms for simple operations. All of them require pe > re and
// throw Error(kNonEffective) otherwise: the consumption is never
// compensated, so neither t_a nor R is a number.

#ifndef RESINT_ANALYTIC_H_
#define RESINT_ANALYTIC_H_

#include "resint/op_model.h"

namespace resint::analytic {

// t_a = (PE*t_p - |RE|*t_r) / (PE - |RE|).
double actual_completion_simple(const SimpleOperation& op);

// Height of the mismatch triangle at t_p:
// BD = |RE|*PE*(t_p - t_r) / (PE - |RE|).
double bd_height(const SimpleOperation& op);

// R = PE*|RE|*(t_p - t_r)^2 / (2*(PE - |RE|)), in CTT.
double resource_intensity_simple(const SimpleOperation& op);

// Value added over `horizon` at (horizon / T) cycles, fractional cycles
// included. Throws kDomain for T == 0 or horizon <= 0.
double cycle_profit(const SimpleOperation& op, double horizon);

// Upper bound on |R_numeric - R_analytic| when `op` is integrated through
// its impulse signals at `step`. Impulses snap to the bin holding their
// instant, so the numeric operation time is within one step of T; the
// remaining term covers the partial last bin before t_a.
double numeric_error_bound(const SimpleOperation& op, double step);

}  // namespace resint::analytic

#endif  // RESINT_ANALYTIC_H_
