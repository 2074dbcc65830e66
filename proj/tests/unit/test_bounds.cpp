/* Copyright 2026 The mcbounds Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cmath>

#include <gtest/gtest.h>

#include "mcbounds/bounds.hpp"
#include "mcbounds/cumulants.hpp"
#include "mcbounds/errors.hpp"
#include "mcbounds/harness.hpp"
#include "test_support.hpp"

namespace {

mcb::BoundInputs inputs(mcb::TheoremId id, int q, long n, double gamma = 0) {
  mcb::FiniteContext ctx("two-state", mcbtest::two_state());
  return ctx.inputs(id, q, gamma, n, mcb::McOptions{});
}

TEST(Bounds, FirstOrderIsVariance) {
  for (auto id : {mcb::TheoremId::T1, mcb::TheoremId::T3}) {
    auto in = inputs(id, 1, 25);
    auto r = mcb::evaluate(id, in);
    EXPECT_NEAR(r.raw, *in.var_Sn, 1e-12 * *in.var_Sn);
    EXPECT_TRUE(r.remainder.is_zero());
  }
  auto in = inputs(mcb::TheoremId::T6, 1, 25);
  auto r = mcb::evaluate(mcb::TheoremId::T6, in);
  EXPECT_NEAR(r.raw, *in.var_Sn, 1e-12 * *in.var_Sn);
}

TEST(Bounds, FourthMomentDominatesExact) {
  auto c = mcbtest::two_state();
  for (long n = 2; n <= 40; ++n) {
    auto in = inputs(mcb::TheoremId::T1, 2, n);
    auto r = mcb::rosenthal_v(in);
    double exact = mcb::exact_sn_moments(c, n, 4)[4];
    EXPECT_LE(std::log(exact), r.value.log_abs()) << n;
  }
}

TEST(Bounds, ShiftedBoundAboveStationaryOne) {
  auto in = inputs(mcb::TheoremId::T2, 2, 20);
  in.xi_V = in.pi_V;
  in.stationary_moment.reset();
  auto shifted = mcb::rosenthal_v_shift(in);
  in.norm_kind = mcb::NormKind::VPow;
  auto stat = mcb::rosenthal_v(inputs(mcb::TheoremId::T1, 2, 20));
  EXPECT_TRUE(std::isfinite(shifted.value.log_abs()));
  EXPECT_GE(shifted.value.log_abs(), stat.value.log_abs());
}

TEST(Bounds, MissingPiVIsAnError) {
  auto in = inputs(mcb::TheoremId::T1, 2, 10);
  in.pi_V.reset();
  EXPECT_THROW(mcb::rosenthal_v(in), mcb::InvalidArgument);
}

TEST(Bounds, BernsteinConstant) {
  auto in = inputs(mcb::TheoremId::T5, 1, 100);
  auto B = mcb::bernstein_constant_v(in);
  EXPECT_TRUE(std::isfinite(B.log_abs()));
  auto big = in;
  *big.var_Sn *= 1e60;
  auto big2 = big;
  big2.n = 1000;
  *big2.var_Sn *= 10;
  // Once the variance ratio is clamped at 1 the constant no longer depends on n.
  EXPECT_NEAR(mcb::bernstein_constant_v(big).log_abs(), mcb::bernstein_constant_v(big2).log_abs(), 1e-12);
  in.var_Sn = 0.0;
  EXPECT_THROW(mcb::bernstein_constant_v(in), mcb::InvalidArgument);
}

TEST(Bounds, BernsteinTail) {
  auto B = mcb::LogValue::from_double(3.0);
  auto r0 = mcb::bernstein_tail(0.0, 5.0, B, 0.5);
  EXPECT_DOUBLE_EQ(r0.raw, 2.0);
  ASSERT_TRUE(r0.clamped);
  EXPECT_DOUBLE_EQ(*r0.clamped, 1.0);
  double prev = 0;
  for (double var : {1.0, 10.0, 100.0, 1e4, 1e8}) {
    double v = mcb::bernstein_tail(20.0, var, B, 0.5).raw;
    EXPECT_GT(v, prev);
    EXPECT_LT(v, 2.0);
    prev = v;
  }
  double t = 30, var = 4, g = 1;
  double want = 2 * std::exp(-(t * t / 2) /
                             (var + std::pow(3.0, 1 / (g + 3)) * std::pow(t, 2 - 1 / (g + 3))));
  EXPECT_NEAR(mcb::bernstein_tail(t, var, B, g).raw, want, 1e-14);
}

TEST(Bounds, DeviationRadius) {
  auto B = mcb::LogValue::from_double(0.7);
  for (double delta : {0.9, 0.05, 1e-6}) {
    for (double g : {0.0, 1.0}) {
      double L = std::log(4 / delta);
      double want = 2 * 3.0 * std::sqrt(L) + std::pow(4.0, g + 3) * 0.7 * std::pow(L, g + 3);
      EXPECT_NEAR(mcb::deviation_radius(delta, 9.0, B, g), want, 1e-12 * want);
    }
  }
  // delta = 4/e would give a unit log but lies outside (0,1).
  EXPECT_THROW(mcb::deviation_radius(4 / std::exp(1.0), 9.0, B, 0.0), mcb::InvalidArgument);
  EXPECT_THROW(mcb::deviation_radius(0.0, 9.0, B, 0.0), mcb::InvalidArgument);
}

TEST(Bounds, NonstationaryTailsAtZero) {
  auto in = inputs(mcb::TheoremId::T5NS, 1, 50);
  auto r = mcb::nonstationary_tail_v(0.0, in);
  ASSERT_TRUE(r.clamped);
  EXPECT_DOUBLE_EQ(*r.clamped, 1.0);
  auto inw = inputs(mcb::TheoremId::T11, 1, 50);
  auto w = mcb::nonstationary_tail_w(0.0, inw);
  ASSERT_TRUE(w.clamped);
  EXPECT_DOUBLE_EQ(*w.clamped, 1.0);
  auto g0 = mcb::nonstationary_tail_v(1e3, in);
  EXPECT_TRUE(std::isfinite(g0.raw));
}

TEST(Bounds, SupFactorClosedForm) {
  for (double u : {0.05, 0.1, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(mcb::sup_factor(u), mcb::sup_factor_grid(u, 400.0, 400001),
                1e-6 * mcb::sup_factor(u)) << u;
  }
}

TEST(Bounds, TheoremNames) {
  for (auto id : {mcb::TheoremId::T1, mcb::TheoremId::T5NS, mcb::TheoremId::T11,
                  mcb::TheoremId::HPRadius}) {
    EXPECT_EQ(mcb::theorem_from_string(mcb::to_string(id)), id);
  }
  EXPECT_THROW(mcb::sup_factor(1.5), mcb::InvalidArgument);
  EXPECT_THROW(mcb::theorem_from_string("T99"), mcb::InvalidArgument);
}

}  // namespace
