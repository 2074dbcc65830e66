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
#include <sstream>

#include <gtest/gtest.h>

#include "mcbounds/cumulants.hpp"
#include "mcbounds/errors.hpp"
#include "mcbounds/harness.hpp"
#include "test_support.hpp"

namespace {

mcb::SnSampler gaussian_sampler() {
  return [](mcb::Rng& rng) { return mcb::std_normal(rng); };
}

TEST(Harness, ReplicasIndependentOfWorkers) {
  auto a = mcb::sample_replicas(gaussian_sampler(), 5000, 42, 1);
  auto b = mcb::sample_replicas(gaussian_sampler(), 5000, 42, 4);
  EXPECT_EQ(a, b);
  auto c = mcb::sample_replicas(gaussian_sampler(), 5000, 43, 1);
  EXPECT_NE(a, c);
}

TEST(Harness, TailEstimate) {
  std::vector<double> x{-3, -1, 0.5, 2, 4};
  auto zero = mcb::tail_estimate(x, 0.0, 0.99, 1);
  EXPECT_EQ(zero.point, 1.0);
  EXPECT_EQ(zero.ci_low, 1.0);
  auto t = mcb::tail_estimate(x, 2.0, 0.99, 1);
  EXPECT_DOUBLE_EQ(t.point, 0.6);
  EXPECT_LE(t.ci_low, 0.6);
  EXPECT_GE(t.ci_high, 0.6);
  auto g = mcb::mc_tail(gaussian_sampler(), 1.959963984540054, {20000, 7, 0.999, 2});
  EXPECT_LE(g.ci_low, 0.05);
  EXPECT_GE(g.ci_high, 0.05);
}

TEST(Harness, MomentEstimate) {
  std::vector<double> x{-2, 1, 3};
  auto p0 = mcb::moment_estimate(x, 0, 0.9, mcb::MomentCi::Normal, 1);
  EXPECT_EQ(p0.point, 1.0);
  auto m2 = mcb::moment_estimate(x, 2, 0.9, mcb::MomentCi::Normal, 1);
  EXPECT_NEAR(m2.point, 14.0 / 3, 1e-14);
  auto g = mcb::mc_moment(gaussian_sampler(), 4, {40000, 3, 0.999, 1});
  EXPECT_LE(g.ci_low, 3.0);
  EXPECT_GE(g.ci_high, 3.0);
}

TEST(Harness, CompareVerdicts) {
  mcb::BoundReport r;
  r.value = mcb::LogValue::from_double(10.0);
  r.raw = 10.0;
  r.provenance = 77;
  mcb::McEstimate e;
  e.config_hash = 77;
  e.ci_low = 11;
  e.ci_high = 12;
  EXPECT_EQ(mcb::compare(r, e).status, mcb::Status::Violated);
  e.ci_low = 8;
  e.ci_high = 10;
  EXPECT_EQ(mcb::compare(r, e).status, mcb::Status::Dominates);
  e.ci_high = 10.5;
  EXPECT_EQ(mcb::compare(r, e).status, mcb::Status::Inconclusive);
  e.config_hash = 78;
  EXPECT_THROW(mcb::compare(r, e), mcb::InvalidArgument);
  r.clamped = 1.0;
  r.raw = 2.0;
  e.config_hash = 77;
  e.ci_low = 0.1;
  e.ci_high = 0.2;
  EXPECT_EQ(mcb::compare(r, e).status, mcb::Status::Dominates);
  EXPECT_EQ(mcb::compare_exact(r, 1.0, 77).status, mcb::Status::Dominates);
  EXPECT_THROW(mcb::compare_exact(r, 1.0, 76), mcb::InvalidArgument);
}

TEST(Harness, FiniteSamplerMatchesExactVariance) {
  auto c = mcbtest::two_state();
  const long n = 20;
  auto s = mcb::finite_sampler(c, n, c.pi);
  auto m = mcb::mc_moment(s, 2, {40000, 11, 0.999, 1, mcb::MomentCi::Normal});
  double exact = mcb::exact_sn_moments(c, n, 2)[2];
  EXPECT_LE(m.ci_low, exact);
  EXPECT_GE(m.ci_high, exact);
}

TEST(Harness, SweepGridShape) {
  mcb::FiniteContext ctx("two-state", mcbtest::two_state());
  mcb::SweepSpec spec;
  spec.theorems = {mcb::TheoremId::T1, mcb::TheoremId::T3, mcb::TheoremId::T5};
  spec.n = {10, 20};
  spec.q = {1, 2};
  spec.gamma = {0.0, 1.0};
  spec.t = {50.0};
  spec.mc.replicas = 2000;
  auto rows = mcb::sweep(ctx, spec);
  // T1: 2 n x 2 q; T3: 2 n x 2 q x 2 gamma; T5: 2 n x 2 gamma x 1 t.
  EXPECT_EQ(rows.size(), 4u + 8u + 4u);
  for (const auto& r : rows) {
    EXPECT_NE(r.status, mcb::Status::Violated) << r.theorem_id << " " << r.n << " " << r.q;
    EXPECT_NE(r.status, mcb::Status::Error) << r.error;
  }
  std::ostringstream a, b;
  mcb::write_csv(a, rows);
  spec.mc.workers = 3;
  mcb::write_csv(b, mcb::sweep(ctx, spec));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Harness, CsvFormat) {
  EXPECT_EQ(mcb::csv_header(),
            "config_hash,theorem_id,model_id,n,q,gamma,t,bound_log,bound_clamped,"
            "est_point,ci_low,ci_high,status,seed");
  EXPECT_EQ(mcb::format_double(INFINITY), "inf");
  EXPECT_EQ(mcb::format_double(-INFINITY), "-inf");
  EXPECT_EQ(mcb::format_double(NAN), "nan");
  EXPECT_EQ(std::stod(mcb::format_double(0.1)), 0.1);
  EXPECT_EQ(mcb::to_string(mcb::Status::Dominates), "dominates");
  EXPECT_EQ(mcb::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(mcb::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
