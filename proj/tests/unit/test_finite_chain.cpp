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

#include "mcbounds/errors.hpp"
#include "mcbounds/finite_chain.hpp"
#include "test_support.hpp"

namespace {

TEST(FiniteChain, TwoStateStationary) {
  auto c = mcbtest::two_state();
  EXPECT_NEAR(c.pi(0), 2.0 / 3, 1e-14);
  EXPECT_NEAR(c.pi(1), 1.0 / 3, 1e-14);
  EXPECT_NEAR(c.pi_g(), 0.0, 1e-14);
}

TEST(FiniteChain, SymmetricChainsHaveUniformLaw) {
  Eigen::MatrixXd Q(3, 3);
  Q << 0.2, 0.5, 0.3, 0.3, 0.2, 0.5, 0.5, 0.3, 0.2;
  auto pi = mcb::finite_stationary(Q);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pi(i), 1.0 / 3, 1e-14);
  const int S = 5;
  const double d = 0.3;
  Eigen::MatrixXd P = (1 - d) * Eigen::MatrixXd::Identity(S, S) +
                      d * Eigen::MatrixXd::Constant(S, S, 1.0 / S);
  pi = mcb::finite_stationary(P);
  for (int i = 0; i < S; ++i) EXPECT_NEAR(pi(i), 1.0 / S, 1e-14);
}

TEST(FiniteChain, RejectsBadInput) {
  Eigen::MatrixXd Q(2, 2);
  Q << 1, 0, 0, 1;
  Eigen::VectorXd V = Eigen::VectorXd::Constant(2, 3.0), g = Eigen::VectorXd::Zero(2);
  EXPECT_ANY_THROW(mcb::FiniteChain::make(Q, V, g));
  Q << 0.5, 0.6, 0.5, 0.5;
  EXPECT_ANY_THROW(mcb::FiniteChain::make(Q, V, g));
  Q << 0.5, 0.5, 0.5, 0.5;
  V << 1.0, 3.0;
  EXPECT_ANY_THROW(mcb::FiniteChain::make(Q, V, g));
}

TEST(FiniteChain, ConstantLyapunovDrift) {
  Eigen::MatrixXd Q(2, 2);
  Q << 0.9, 0.1, 0.2, 0.8;
  Eigen::VectorXd V = Eigen::VectorXd::Constant(2, std::exp(1.0));
  Eigen::VectorXd g(2);
  g << 1, 0;
  auto c = mcb::FiniteChain::make(Q, V, g);
  for (double lam : {0.2, 0.5, 0.9}) {
    auto fit = mcb::certify_drift(c, lam);
    EXPECT_NEAR(fit.b, std::exp(1.0) * (1 - lam), 1e-12);
  }
}

TEST(FiniteChain, DoeblinMinSum) {
  auto c = mcbtest::two_state();
  auto s = mcb::certify_small_set(c, 1, 100.0);
  EXPECT_EQ(s.members.size(), 2u);
  EXPECT_NEAR(s.eps, 0.3, 1e-14);
  EXPECT_NEAR(s.nu.sum(), 1.0, 1e-14);
  auto one = mcb::certify_small_set(c, 1, 5.0);
  ASSERT_EQ(one.members.size(), 1u);
  EXPECT_NEAR(one.eps, 1.0, 1e-14);
  EXPECT_ANY_THROW(mcb::certify_small_set(c, 1, 1.0));
}

TEST(FiniteChain, CertifiedRateBoundsExactDistance) {
  auto c = mcbtest::two_state();
  auto fc = mcb::certify_finite_chain(c);
  double piV = c.pi_of(c.V);
  for (long n = 0; n <= 60; ++n) {
    auto dist = mcb::exact_v_distance(c, n, 1.0);
    for (int x = 0; x < 2; ++x) {
      EXPECT_LE(dist(x), fc.rate.c * (c.V(x) + piV) * std::pow(fc.rate.rho, n)) << n;
    }
  }
}

TEST(FiniteChain, MaximalCouplingMarginals) {
  auto c = mcbtest::two_state();
  auto K = mcb::maximal_coupling(c);
  for (int x = 0; x < 2; ++x) {
    for (int xp = 0; xp < 2; ++xp) {
      Eigen::VectorXd row = K.K.row(K.index(x, xp));
      EXPECT_NEAR(row.sum(), 1.0, 1e-14);
      for (int y = 0; y < 2; ++y) {
        EXPECT_NEAR(row(K.index(y, 0)) + row(K.index(y, 1)), c.Q(x, y), 1e-14);
        EXPECT_NEAR(row(K.index(0, y)) + row(K.index(1, y)), c.Q(xp, y), 1e-14);
      }
    }
    EXPECT_NEAR(K.K(K.index(x, x), K.index(x, x)) + K.K(K.index(x, x), K.index(1 - x, 1 - x)),
                1.0, 1e-14);
  }
}

TEST(FiniteChain, CouplingContractionHolds) {
  auto c = mcbtest::two_state();
  auto K = mcb::maximal_coupling(c);
  auto fit = mcb::certify_drift(c);
  double d = std::max(4 * fit.b / (1 - fit.lambda) - 1, c.V.minCoeff());
  auto wc = mcb::certify_coupling(c, K, 1, fit, d);
  for (int q = 1; q <= 3; ++q) {
    EXPECT_LE(mcb::contraction_worst_ratio(c, K, wc, 1, q, 30), 1.0);
    EXPECT_LE(mcb::contraction_worst_ratio(c, K, wc, 2 * q, q, 30), 1.0);
  }
}

}  // namespace
