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

#include "resint/calculus.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace resint::calculus {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Upper bound on profile points a single thread may materialize.
constexpr std::size_t kMaxProfilePoints = std::size_t{1} << 27;
// Slack when deciding whether an instant sits on a grid point.
constexpr double kGridSlack = 1e-9;

// Profile points p = 0..last; point p sits at t0 + p*step and holds the
// integrals over bins 0..p-1.
struct Curves {
  std::vector<double> ire, ipe, vre, vpe, dif, r;
};

Curves build_curves(const SignalOperation& op, std::size_t last,
                    DifMode mode) {
  const double h = op.step();
  const auto& re = op.re_signal().values();
  const auto& pe = op.pe_signal().values();
  Curves c;
  for (auto* v : {&c.ire, &c.ipe, &c.vre, &c.vpe, &c.dif, &c.r}) {
    v->assign(last + 1, 0.0);
  }
  double sum_re = 0.0, sum_pe = 0.0;
  double sum_ire = 0.0, sum_ipe = 0.0;
  double sum_dif = 0.0;
  for (std::size_t p = 1; p <= last; ++p) {
    const std::size_t bin = p - 1;
    if (bin < re.size()) sum_re += re[bin];
    if (bin < pe.size()) sum_pe += pe[bin];
    c.ire[p] = h * sum_re;
    c.ipe[p] = h * sum_pe;
    sum_ire += c.ire[p];
    sum_ipe += c.ipe[p];
    c.vre[p] = h * sum_ire;
    c.vpe[p] = h * sum_ipe;
    c.dif[p] = c.vre[p] - c.vpe[p];
    sum_dif += mode == DifMode::kSigned ? c.dif[p] : std::fabs(c.dif[p]);
    c.r[p] = h * sum_dif;
  }
  return c;
}

// Round-off level of vre - vpe at one point.
double cancellation_noise(double vre, double vpe) {
  return 64.0 * kEps * (std::fabs(vre) + std::fabs(vpe));
}

bool is_nonzero_bin(const SignalOperation& op, std::size_t i) {
  const auto& re = op.re_signal().values();
  const auto& pe = op.pe_signal().values();
  return (i < re.size() && re[i] != 0.0) || (i < pe.size() && pe[i] != 0.0);
}

std::size_t first_nonzero_bin(const SignalOperation& op) {
  for (std::size_t i = 0; i < op.size(); ++i) {
    if (is_nonzero_bin(op, i)) return i;
  }
  throw Error(ErrorCode::kDomain,
              "operation has no registrations on either channel");
}

std::size_t last_nonzero_bin(const SignalOperation& op) {
  for (std::size_t i = op.size(); i-- > 0;) {
    if (is_nonzero_bin(op, i)) return i;
  }
  throw Error(ErrorCode::kDomain,
              "operation has no registrations on either channel");
}

}  // namespace

void validate(const Tolerances& tol) {
  if (!(tol.rel_tol > 0.0) || !(tol.abs_tol > 0.0) ||
      !(tol.max_horizon_factor > 0.0)) {
    throw Error(ErrorCode::kDomain, "tolerances must be strictly positive");
  }
}

SampledSignal cumulative_integral(const SampledSignal& s) {
  std::vector<double> out(s.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sum += s.values()[i];
    out[i] = s.step() * sum;
  }
  return SampledSignal::unchecked(s.t0(), s.step(), std::move(out));
}

SampledSignal second_integral(const SampledSignal& s) {
  return cumulative_integral(cumulative_integral(s));
}

SampledSignal zero_extend(const SampledSignal& s, std::size_t bins) {
  if (bins <= s.size()) return s;
  std::vector<double> values = s.values();
  values.resize(bins, 0.0);
  return SampledSignal::unchecked(s.t0(), s.step(), std::move(values));
}

double running_value_at(const SampledSignal& running, double v) {
  const double h = running.step();
  const double x = (v - running.t0()) / h;
  const double n = static_cast<double>(running.size());
  if (!(x >= -kGridSlack) || !(x <= n + kGridSlack)) {
    std::ostringstream os;
    os << "time " << v << " outside [" << running.t0() << ", "
       << running.end_time() << "]";
    throw Error(ErrorCode::kHorizon, os.str());
  }
  const double clamped = std::clamp(x, 0.0, n);
  // Point p holds running[p-1]; point 0 is the origin.
  auto at_point = [&](std::size_t p) {
    return p == 0 ? 0.0 : running.values()[p - 1];
  };
  const auto lo = static_cast<std::size_t>(std::floor(clamped));
  if (static_cast<double>(lo) >= n) return at_point(running.size());
  const double w = clamped - static_cast<double>(lo);
  return at_point(lo) + w * (at_point(lo + 1) - at_point(lo));
}

SampledSignal resample(const SampledSignal& s, double t0, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kGrid, "resample step must be finite and > 0");
  }
  if (t0 > s.t0() + kGridSlack * step) {
    throw Error(ErrorCode::kGrid, "resample origin lies after the signal");
  }
  if (s.empty()) return SampledSignal(t0, step, {});
  const double src_h = s.step();
  const auto bins = static_cast<std::size_t>(
      std::ceil((s.end_time() - t0) / step - kGridSlack));
  std::vector<double> mass(std::max<std::size_t>(bins, 1), 0.0);

  for (std::size_t i = 0; i < s.size(); ++i) {
    const double m = s.values()[i] * src_h;
    if (m == 0.0) continue;
    const double a = s.bin_start(i);
    const double b = a + src_h;
    const double first = std::floor((a - t0) / step + kGridSlack);
    auto j = static_cast<std::size_t>(std::max(0.0, first));
    // Collect overlaps, then normalize so the bin mass is kept exactly.
    std::vector<std::pair<std::size_t, double>> parts;
    double covered = 0.0;
    for (; j < mass.size(); ++j) {
      const double lo = std::max(a, t0 + step * j);
      const double hi = std::min(b, t0 + step * (j + 1));
      if (hi <= lo) {
        if (t0 + step * j >= b) break;
        continue;
      }
      parts.emplace_back(j, hi - lo);
      covered += hi - lo;
    }
    if (parts.empty()) {
      parts.emplace_back(std::min(mass.size() - 1,
                                  static_cast<std::size_t>(std::max(0.0, first))),
                         1.0);
      covered = 1.0;
    }
    for (const auto& [bin, len] : parts) mass[bin] += m * (len / covered);
  }
  for (double& m : mass) m /= step;
  return SampledSignal(t0, step, std::move(mass));
}

SignalOperation align_signals(const SampledSignal& re, const SampledSignal& pe,
                              std::optional<double> step) {
  const double h = step.value_or(std::min(re.step(), pe.step()));
  const double t0 = std::min(re.t0(), pe.t0());
  SampledSignal a = (re.t0() == t0 && re.step() == h) ? re : resample(re, t0, h);
  SampledSignal b = (pe.t0() == t0 && pe.step() == h) ? pe : resample(pe, t0, h);
  const std::size_t n = std::max(a.size(), b.size());
  return SignalOperation(zero_extend(a, n), zero_extend(b, n));
}

double operation_start(const SignalOperation& op) {
  return op.re_signal().bin_start(first_nonzero_bin(op));
}

double physical_completion(const SignalOperation& op) {
  return op.re_signal().bin_start(last_nonzero_bin(op));
}

double horizon_limit(const SignalOperation& op, const Tolerances& tol) {
  const double t_start = operation_start(op);
  const double t_f = physical_completion(op);
  return t_f + tol.max_horizon_factor * std::max(t_f - t_start, op.step());
}

double actual_completion_numeric(const SignalOperation& op,
                                 const Tolerances& tol) {
  validate(tol);
  const double h = op.step();
  const double re_total = op.re_signal().total();
  const double pe_total = op.pe_signal().total();
  if (!(re_total > 0.0) || !(pe_total > 0.0)) {
    throw Error(ErrorCode::kDomain,
                "both channels need a positive total to analyze an operation");
  }
  if (pe_total < re_total * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "no compensation: operation not effective (return " << pe_total
       << " < consumption " << re_total << ")";
    throw Error(ErrorCode::kNonEffective, os.str());
  }

  const std::size_t kf = last_nonzero_bin(op);
  const double t_f = op.re_signal().bin_start(kf);
  const std::size_t n = op.size();
  const Curves c = build_curves(op, n, DifMode::kSigned);
  auto grid = [&](std::size_t p) { return op.t0() + h * p; };

  std::optional<double> t_a;
  for (std::size_t p = kf; p <= n; ++p) {
    const double d = c.dif[p];
    if (d > cancellation_noise(c.vre[p], c.vpe[p])) continue;
    if (p > kf && d < 0.0 && c.dif[p - 1] > 0.0) {
      t_a = grid(p - 1) + h * c.dif[p - 1] / (c.dif[p - 1] - d);
    } else {
      t_a = grid(p);
    }
    break;
  }
  if (!t_a) {
    if (pe_total <= re_total * (1.0 + 1e-12)) {
      throw Error(ErrorCode::kNonEffective,
                  "no compensation: operation not effective (return equals "
                  "consumption but the mismatch never closes)");
    }
    // Past the data dif falls with slope (re_total - pe_total).
    t_a = grid(n) + c.dif[n] / (pe_total - re_total);
  }

  const double limit = horizon_limit(op, tol);
  if (*t_a > limit) {
    std::ostringstream os;
    os << "actual completion " << *t_a << " lies past the search horizon "
       << limit << " (t_f=" << t_f << ")";
    throw Error(ErrorCode::kHorizon, os.str());
  }
  return *t_a;
}

ThreadProfile mismatch_thread(const SignalOperation& op, double t_a,
                              DifMode mode, const Tolerances& tol) {
  validate(tol);
  const double h = op.step();
  const double t0 = op.t0();
  if (!std::isfinite(t_a) || t_a < t0) {
    throw Error(ErrorCode::kDomain, "t_a must be finite and >= grid origin");
  }
  bool has_mass = false;
  for (std::size_t i = 0; i < op.size() && !has_mass; ++i) {
    has_mass = is_nonzero_bin(op, i);
  }
  const double limit = has_mass ? std::max(horizon_limit(op, tol),
                                           op.re_signal().bin_start(op.size()))
                                : op.re_signal().bin_start(op.size());
  const double x = (t_a - t0) / h;
  if (t_a > limit + kGridSlack * h ||
      x > static_cast<double>(kMaxProfilePoints)) {
    std::ostringstream os;
    os << "t_a=" << t_a << " beyond the extendable span (limit " << limit
       << ", step " << h << ")";
    throw Error(ErrorCode::kHorizon, os.str());
  }

  auto last = static_cast<std::size_t>(std::floor(x + kGridSlack));
  const double frac = x - static_cast<double>(last);
  const bool on_grid = frac <= kGridSlack;
  const Curves c = build_curves(op, on_grid ? last : last + 1, mode);

  ThreadProfile tp;
  const std::size_t keep = last + 1;
  tp.grid.resize(keep);
  for (std::size_t p = 0; p < keep; ++p) tp.grid[p] = t0 + h * p;
  tp.ire.assign(c.ire.begin(), c.ire.begin() + keep);
  tp.ipe.assign(c.ipe.begin(), c.ipe.begin() + keep);
  tp.vre.assign(c.vre.begin(), c.vre.begin() + keep);
  tp.vpe.assign(c.vpe.begin(), c.vpe.begin() + keep);
  tp.dif.assign(c.dif.begin(), c.dif.begin() + keep);
  tp.r.assign(c.r.begin(), c.r.begin() + keep);

  if (on_grid) {
    tp.grid.back() = t_a;
    return tp;
  }
  const double w = frac;
  auto lerp = [&](const std::vector<double>& v) {
    return v[last] + w * (v[last + 1] - v[last]);
  };
  tp.grid.push_back(t_a);
  tp.ire.push_back(lerp(c.ire));
  tp.ipe.push_back(lerp(c.ipe));
  tp.vre.push_back(lerp(c.vre));
  tp.vpe.push_back(lerp(c.vpe));
  tp.dif.push_back(tp.vre.back() - tp.vpe.back());
  // Right-rectangle over the partial cell [t_N, t_a], like every full cell.
  const double end = tp.dif.back();
  tp.r.push_back(c.r[last] + (t_a - (t0 + h * last)) *
                                 (mode == DifMode::kSigned ? end
                                                           : std::fabs(end)));
  return tp;
}

double resource_intensity_numeric(const SignalOperation& op,
                                  const Tolerances& tol, DifMode mode) {
  const double t_a = actual_completion_numeric(op, tol);
  return mismatch_thread(op, t_a, mode, tol).r.back();
}

}  // namespace resint::calculus
