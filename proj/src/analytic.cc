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

#include "resint/analytic.h"

#include <cmath>
#include <sstream>

namespace resint::analytic {
namespace {

void require_effective(const SimpleOperation& op, const char* what) {
  validate(op);
  if (!(op.pe_value > op.re_value)) {
    std::ostringstream os;
    os << what << " undefined: operation does not compensate consumption (pe="
       << op.pe_value << " <= re=" << op.re_value << ")";
    throw Error(ErrorCode::kNonEffective, os.str());
  }
}

}  // namespace

double actual_completion_simple(const SimpleOperation& op) {
  require_effective(op, "MFZO");
  return (op.pe_value * op.t_p - op.re_value * op.t_r) /
         (op.pe_value - op.re_value);
}

double bd_height(const SimpleOperation& op) {
  require_effective(op, "BD height");
  return op.re_value * op.pe_value * op.op_time() /
         (op.pe_value - op.re_value);
}

double resource_intensity_simple(const SimpleOperation& op) {
  require_effective(op, "resource intensity");
  const double t = op.op_time();
  return op.pe_value * op.re_value * t * t /
         (2.0 * (op.pe_value - op.re_value));
}

double cycle_profit(const SimpleOperation& op, double horizon) {
  validate(op);
  if (!(op.op_time() > 0.0)) {
    throw Error(ErrorCode::kDomain,
                "profit rate undefined for a zero-length operation");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::kDomain, "horizon must be finite and > 0");
  }
  return horizon / op.op_time() * (op.pe_value - op.re_value);
}

double numeric_error_bound(const SimpleOperation& op, double step) {
  const double r = resource_intensity_simple(op);
  const double t = op.op_time();
  const double time_term =
      t > 0.0 ? r * ((1.0 + step / t) * (1.0 + step / t) - 1.0)
              : 0.0;
  const double tail_term = (op.pe_value - op.re_value) * step * step +
                           op.re_value * op.pe_value /
                               (op.pe_value - op.re_value) * step * step;
  return time_term + tail_term + 1e-9 * (1.0 + r);
}

}  // namespace resint::analytic
