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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "resint/analytic.h"

namespace resint::calculus {
namespace {

// Independent reference for the distributed example: consumption rate 1 on
// [0, 2), return rate 1.5 on [6, 8). Plain running sums at a fine step,
// scanned for the first non-positive mismatch after t = 8.
struct OracleResult {
  double t_a;
  double r;
};

OracleResult distributed_oracle(double dt) {
  double ire = 0, ipe = 0, vre = 0, vpe = 0, r = 0, prev = 0, t_prev = 0;
  for (long i = 0;; ++i) {
    const double t = i * dt;
    const double re = t < 2.0 - 1e-12 ? 1.0 : 0.0;
    const double pe = (t >= 6.0 - 1e-12 && t < 8.0 - 1e-12) ? 1.5 : 0.0;
    ire += re * dt;
    ipe += pe * dt;
    vre += ire * dt;
    vpe += ipe * dt;
    const double d = vre - vpe;
    const double t_end = t + dt;
    if (t_end > 8.0 && d <= 0) {
      const double t_a = t_prev + dt * prev / (prev - d);
      return {t_a, r + (t_a - t_prev) * d};
    }
    r += d * dt;
    prev = d;
    t_prev = t_end;
  }
}

// Frozen from distributed_oracle(1e-5). The continuous solution is
// t_a = 19, R = 647/6.
constexpr double kOracleTa = 18.9999949991;
constexpr double kOracleR = 107.8333333276;

SignalOperation distributed_op(double step) {
  const auto bins = [&](double t) {
    return static_cast<std::size_t>(std::llround(t / step));
  };
  std::vector<double> re(bins(8.0), 0.0), pe(bins(8.0), 0.0);
  std::fill(re.begin(), re.begin() + bins(2.0), 1.0);
  std::fill(pe.begin() + bins(6.0), pe.end(), 1.5);
  return SignalOperation(SampledSignal(0, step, re), SampledSignal(0, step, pe));
}

TEST(DistributedOracle, ReproducesFrozenValues) {
  const OracleResult o = distributed_oracle(1e-5);
  EXPECT_NEAR(o.t_a, kOracleTa, 1e-9);
  EXPECT_NEAR(o.r, kOracleR, 1e-8);
  EXPECT_NEAR(o.t_a, 19.0, 1e-5);
  EXPECT_NEAR(o.r, 647.0 / 6.0, 1e-5);
}

TEST(CumulativeIntegral, ImpulseBecomesStep) {
  std::vector<double> v(30, 0.0);
  v[20] = 2.0 / 0.1;
  const SampledSignal c = cumulative_integral(SampledSignal(0, 0.1, v));
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_DOUBLE_EQ(c.values()[i], i < 20 ? 0.0 : 2.0) << i;
  }
  EXPECT_DOUBLE_EQ(running_value_at(c, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(running_value_at(c, 2.1), 2.0);
}

TEST(CumulativeIntegral, ZeroSignal) {
  const SampledSignal c = cumulative_integral(SampledSignal(0, 0.5, {0, 0, 0}));
  for (double x : c.values()) {
    EXPECT_EQ(x, 0.0);
  }
}

TEST(CumulativeIntegral, ConstantRateRamp) {
  // Rate 1 on [0, 4) at step 0.5; running sums by hand: 0.5, 1.0, ..., 4.0.
  const SampledSignal c =
      cumulative_integral(SampledSignal(0, 0.5, std::vector<double>(8, 1.0)));
  const std::vector<double> expected{0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4};
  ASSERT_EQ(c.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_DOUBLE_EQ(c.values()[i], expected[i]);
  }
  EXPECT_DOUBLE_EQ(running_value_at(c, 4.0), 4.0);
  EXPECT_DOUBLE_EQ(running_value_at(c, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(running_value_at(c, 1.25), 1.25);
  EXPECT_THROW(running_value_at(c, 4.5), Error);
}

TEST(CumulativeIntegral, NondecreasingAndConservesTotal) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(0, 5), step(1e-4, 1);
  std::bernoulli_distribution zero(0.4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + trial * 37);
    for (double& x : v) x = zero(rng) ? 0.0 : val(rng);
    const SampledSignal s(0, step(rng), v);
    const SampledSignal c = cumulative_integral(s);
    EXPECT_TRUE(std::is_sorted(c.values().begin(), c.values().end()));
    EXPECT_NEAR(c.values().back(), s.total(),
                1e-12 * std::max(1.0, s.total()));
  }
}

TEST(SecondIntegral, ImpulseRamps) {
  const double h = 1e-3;
  for (auto [mass, at] : {std::pair{2.0, 2.0}, std::pair{3.0, 8.0}}) {
    std::vector<double> v(static_cast<std::size_t>(std::llround(20 / h)), 0.0);
    v[static_cast<std::size_t>(std::llround(at / h))] = mass / h;
    const SampledSignal s2 = second_integral(SampledSignal(0, h, v));
    EXPECT_NEAR(running_value_at(s2, 20.0), 36.0, 1e-9);
    // Ramp M*(v - t*) everywhere past the impulse.
    EXPECT_NEAR(running_value_at(s2, at + 1.0), mass, 1e-9);
    EXPECT_EQ(running_value_at(s2, at), 0.0);
  }
}

TEST(SecondIntegral, ZeroSignal) {
  const SampledSignal s2 = second_integral(SampledSignal(0, 1, {0, 0}));
  for (double x : s2.values()) EXPECT_EQ(x, 0.0);
}

TEST(SecondIntegral, ZeroExtensionNeverTruncates) {
  const SampledSignal s(0, 1, {1, 2, 3});
  EXPECT_EQ(zero_extend(s, 2).size(), 3u);
  const SampledSignal e = zero_extend(s, 5);
  EXPECT_EQ(e.size(), 5u);
  EXPECT_EQ(e.values()[4], 0.0);
}

TEST(MismatchThread, WorkedOperationShape) {
  const SignalOperation op = simple_to_signals({2, 3, 2, 8}, 1e-3);
  const ThreadProfile tp = mismatch_thread(op, 20.0);
  ASSERT_GT(tp.size(), 3u);
  EXPECT_EQ(tp.grid.front(), 0.0);
  EXPECT_EQ(tp.dif.front(), 0.0);
  EXPECT_DOUBLE_EQ(tp.grid.back(), 20.0);
  auto dif_at = [&](double t) {
    const auto it = std::lower_bound(tp.grid.begin(), tp.grid.end(), t - 1e-9);
    return tp.dif[static_cast<std::size_t>(it - tp.grid.begin())];
  };
  EXPECT_NEAR(dif_at(1.0), 0.0, 1e-12);
  EXPECT_NEAR(dif_at(2.0), 0.0, 1e-9);
  // Slope +2 between t_r and t_p, slope -1 afterwards.
  EXPECT_NEAR(dif_at(5.0), 6.0, 1e-9);
  EXPECT_NEAR(dif_at(8.0), 12.0, 1e-9);
  EXPECT_NEAR(dif_at(14.0), 6.0, 1e-9);
  const auto peak = std::max_element(tp.dif.begin(), tp.dif.end());
  EXPECT_NEAR(*peak, 12.0, 1e-9);
  EXPECT_NEAR(tp.grid[static_cast<std::size_t>(peak - tp.dif.begin())], 8.0,
              1e-3);
  const Tolerances tol;
  EXPECT_LE(std::fabs(tp.dif.back()),
            tol.abs_tol + tol.rel_tol * std::max(tp.vre.back(), tp.vpe.back()));
  EXPECT_NEAR(tp.r.back(), 108.0, 1e-6);
}

TEST(MismatchThread, PeakMatchesRampDifferenceOnFineGrid) {
  // |RE|*(t_p - t_r) for the worked operation, at a step that puts the
  // instants off the coarse bins.
  const ThreadProfile tp = mismatch_thread(simple_to_signals({2, 3, 2, 8}, 1e-4), 20.0);
  EXPECT_NEAR(*std::max_element(tp.dif.begin(), tp.dif.end()), 12.0, 1e-6);
}

TEST(MismatchThread, IdenticalChannelsGiveZeroMismatch) {
  std::vector<double> v{0, 1, 3, 0.5, 0, 2};
  const SignalOperation op(SampledSignal(0, 0.25, v), SampledSignal(0, 0.25, v));
  const ThreadProfile tp = mismatch_thread(op, 10.0);
  for (double d : tp.dif) EXPECT_EQ(d, 0.0);
  for (double r : tp.r) EXPECT_EQ(r, 0.0);
}

TEST(MismatchThread, HorizonError) {
  const SignalOperation op = simple_to_signals({2, 3, 2, 8}, 1e-2);
  // Limit is t_f + 100 * (t_f - t_start) = 608.
  EXPECT_NO_THROW(mismatch_thread(op, 600.0));
  try {
    mismatch_thread(op, 700.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHorizon);
  }
}

TEST(ActualCompletion, WorkedExample) {
  const double t_a =
      actual_completion_numeric(simple_to_signals({2, 3, 2, 8}, 1e-3));
  EXPECT_NEAR(t_a, 20.0, 5e-3);
}

TEST(ActualCompletion, TupleAsPrintedGivesFourteen) {
  const double t_a =
      actual_completion_numeric(simple_to_signals({2, 4, 2, 8}, 1e-3));
  EXPECT_NEAR(t_a, 14.0, 5e-3);
}

TEST(ActualCompletion, EqualImpulsesCompensateImmediately) {
  std::vector<double> v(10, 0.0);
  v[4] = 30.0;
  const SignalOperation op(SampledSignal(0, 0.1, v), SampledSignal(0, 0.1, v));
  EXPECT_NEAR(actual_completion_numeric(op), 0.4, 1e-12);
}

TEST(ActualCompletion, DistributedMatchesOracle) {
  const double t_a = actual_completion_numeric(distributed_op(1e-3));
  // Second integrals carry an h/2 * (ire - ipe) offset; here that moves
  // t_a by h/2.
  EXPECT_NEAR(t_a, kOracleTa, 2e-3);
}

TEST(ActualCompletion, NonEffective) {
  for (const SimpleOperation& op :
       {SimpleOperation{3, 2, 2, 8}, SimpleOperation{3, 3, 2, 8}}) {
    try {
      actual_completion_numeric(simple_to_signals(op, 1e-2));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNonEffective);
    }
  }
}

TEST(ActualCompletion, AllZeroSignalsAreADomainError) {
  const SignalOperation op(SampledSignal(0, 1, {0, 0}), SampledSignal(0, 1, {0, 0}));
  try {
    actual_completion_numeric(op);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(ActualCompletion, HorizonBoundUsesOperationSpan) {
  // pe/re = 1.005 puts t_a at t_f + 200*T, past the default factor of 100.
  const SignalOperation slow = simple_to_signals({1, 1.005, 0, 1}, 1e-2);
  try {
    actual_completion_numeric(slow);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHorizon);
  }
  Tolerances wide;
  wide.max_horizon_factor = 250;
  EXPECT_NEAR(actual_completion_numeric(slow, wide), 201.0, 1e-6);
  // pe/re = 1.0101 stays inside.
  EXPECT_NO_THROW(actual_completion_numeric(simple_to_signals({1, 1.0101, 0, 1}, 1e-3)));
}

TEST(ActualCompletion, InvalidTolerances) {
  Tolerances bad;
  bad.rel_tol = 0;
  EXPECT_THROW(actual_completion_numeric(simple_to_signals({2, 3, 2, 8}, 1e-2), bad),
               Error);
}

TEST(ResourceIntensity, WorkedExample) {
  EXPECT_NEAR(resource_intensity_numeric(simple_to_signals({2, 3, 2, 8}, 1e-3)),
              108.0, 0.5);
}

TEST(ResourceIntensity, DuplicatedChannelIsZero) {
  std::vector<double> v{0, 2, 0, 1};
  const SignalOperation op(SampledSignal(1, 0.5, v), SampledSignal(1, 0.5, v));
  EXPECT_EQ(resource_intensity_numeric(op), 0.0);
}

TEST(ResourceIntensity, DistributedMatchesOracle) {
  EXPECT_NEAR(resource_intensity_numeric(distributed_op(1e-3)), kOracleR, 0.05);
  EXPECT_NEAR(resource_intensity_numeric(distributed_op(1e-4)), kOracleR, 0.005);
}

TEST(ResourceIntensity, MagnitudeModeCountsNegativeMismatch) {
  // Return arrives before most of the consumption: dif goes negative and
  // t_a = t_f.
  std::vector<double> re(40, 1.0), pe(40, 0.0);
  pe[5] = 50.0;  // mass 5 at t = 0.5 on step 0.1
  const SignalOperation op(SampledSignal(0, 0.1, re), SampledSignal(0, 0.1, pe));
  const double signed_r = resource_intensity_numeric(op, {}, DifMode::kSigned);
  const double magnitude_r =
      resource_intensity_numeric(op, {}, DifMode::kMagnitude);
  EXPECT_LT(signed_r, 0.0);
  EXPECT_GT(magnitude_r, std::fabs(signed_r));
  EXPECT_NEAR(actual_completion_numeric(op), physical_completion(op), 1e-12);
}

TEST(ResourceIntensity, MagnitudeModeMatchesSignedForSimpleOps) {
  const SignalOperation op = simple_to_signals({1.772, 2.5, 0, 1.15}, 1e-4);
  EXPECT_NEAR(resource_intensity_numeric(op, {}, DifMode::kMagnitude),
              resource_intensity_numeric(op, {}, DifMode::kSigned), 1e-9);
}

TEST(SimpleOperations, NumericAgreesWithClosedForm) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> re_dist(0.1, 10), ratio(1.01, 4),
      time(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    const double re = re_dist(rng);
    const double t = time(rng);
    const SimpleOperation op{re, re * ratio(rng), 0, t};
    const double step = t / 1e4;
    const SignalOperation s = simple_to_signals(op, step);
    const double r = analytic::resource_intensity_simple(op);
    EXPECT_NEAR(resource_intensity_numeric(s), r, 1e-3 * r);
    EXPECT_NEAR(actual_completion_numeric(s),
                analytic::actual_completion_simple(op), 2 * step);
  }
}

TEST(SimpleOperations, MismatchStaysNonnegativeAndLossesNondecrease) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> re_dist(0.1, 5), ratio(1.05, 4),
      time(0.1, 5), off(0, 3);
  const Tolerances tol;
  for (int i = 0; i < 50; ++i) {
    const double re = re_dist(rng);
    const double tr = off(rng);
    const SimpleOperation op{re, re * ratio(rng), tr, tr + time(rng)};
    const SignalOperation s = simple_to_signals(op, op.op_time() / 500);
    const ThreadProfile tp = mismatch_thread(s, actual_completion_numeric(s));
    for (std::size_t k = 0; k < tp.size(); ++k) {
      ASSERT_GE(tp.dif[k], -tol.abs_tol) << k;
      if (k) {
        ASSERT_GE(tp.r[k], tp.r[k - 1] - tol.abs_tol) << k;
        ASSERT_GE(tp.ire[k], tp.ire[k - 1]);
        ASSERT_GE(tp.vpe[k], tp.vpe[k - 1]);
      }
    }
    EXPECT_LE(std::fabs(tp.dif.back()),
              tol.abs_tol + tol.rel_tol * std::max(tp.vre.back(), tp.vpe.back()));
  }
}

TEST(SimpleOperations, FirstOrderGridConvergence) {
  // Off-grid instants make the impulse snapping visible.
  const SimpleOperation op{2, 3, 2.0037, 8.0091};
  const double exact = analytic::resource_intensity_simple(op);
  double prev_err = INFINITY;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const double err =
        std::fabs(resource_intensity_numeric(simple_to_signals(op, h)) - exact);
    EXPECT_LE(err, analytic::numeric_error_bound(op, h));
    EXPECT_LT(err, prev_err);
    prev_err = err;
  }
  // Halving h moves each snapped instant by less than h, so R changes by
  // less than C*h with C = 4*R/T.
  const double c = 4.0 * exact / op.op_time();
  for (double h : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
    const double coarse = resource_intensity_numeric(simple_to_signals(op, h));
    const double fine = resource_intensity_numeric(simple_to_signals(op, h / 2));
    EXPECT_LT(std::fabs(coarse - fine), c * h) << h;
  }
}

TEST(DifTendsToZero, AtCompletionAsStepShrinks) {
  const SimpleOperation op{1.3, 2.2, 0.0123, 1.4567};
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const SignalOperation s = simple_to_signals(op, h);
    const ThreadProfile tp = mismatch_thread(s, actual_completion_numeric(s));
    EXPECT_LE(std::fabs(tp.dif.back()), 1e-9);
    EXPECT_NEAR(tp.grid.back(), analytic::actual_completion_simple(op),
                h * (1 + op.pe_value / (op.pe_value - op.re_value)));
  }
}

TEST(Resample, ConservesTotalsAcrossGrids) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(0, 3), off(0, 1), step(0.01, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(50);
    for (double& x : v) x = val(rng);
    const SampledSignal s(off(rng), step(rng), v);
    const double target_step = step(rng);
    const SampledSignal out = resample(s, 0.0, target_step);
    EXPECT_NEAR(out.total(), s.total(), 1e-9 * s.total());
    EXPECT_GE(out.end_time(), s.end_time() - 1e-9);
  }
}

TEST(Resample, IdentityOnSameGrid) {
  const SampledSignal s(0, 0.25, {1, 2, 3});
  const SampledSignal out = resample(s, 0, 0.25);
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(out.values()[i], s.values()[i]);
  EXPECT_THROW(resample(s, 1.0, 0.25), Error);
}

TEST(AlignSignals, CommonOriginAndFinerStep) {
  const SampledSignal re(0, 0.2, {1, 1, 1});
  const SampledSignal pe(1, 0.1, {2, 2});
  const SignalOperation op = align_signals(re, pe);
  EXPECT_EQ(op.t0(), 0.0);
  EXPECT_EQ(op.step(), 0.1);
  EXPECT_EQ(op.re_signal().size(), op.pe_signal().size());
  EXPECT_NEAR(op.re_signal().total(), re.total(), 1e-12);
  EXPECT_NEAR(op.pe_signal().total(), pe.total(), 1e-12);
  EXPECT_NEAR(physical_completion(op), 1.1, 1e-9);
  EXPECT_NEAR(operation_start(op), 0.0, 1e-12);
}

}  // namespace
}  // namespace resint::calculus
