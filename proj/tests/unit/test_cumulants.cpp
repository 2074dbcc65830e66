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
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "mcbounds/cumulants.hpp"
#include "mcbounds/vgeom.hpp"
#include "test_support.hpp"

namespace {

// E_pi[f(X_{t_1}, ..., X_{t_k})] by enumerating every path on [0, t_k].
double path_sum(const mcb::FiniteChain& c, const std::vector<long>& times,
                const std::function<double(const std::vector<int>&)>& f) {
  const long T = times.back();
  std::vector<int> path(T + 1);
  double total = 0;
  std::function<void(long, double)> rec = [&](long s, double w) {
    if (s > T) {
      std::vector<int> xs;
      for (long t : times) xs.push_back(path[t]);
      total += w * f(xs);
      return;
    }
    for (int y = 0; y < c.size(); ++y) {
      path[s] = y;
      double p = s == 0 ? c.pi(y) : c.Q(path[s - 1], y);
      rec(s + 1, w * p);
    }
  };
  rec(0, 1.0);
  return total;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

TEST(Cumulants, LowOrderCenteredMoments) {
  auto c = mcbtest::two_state();
  auto h1 = vec({0.5, 2.0}), h2 = vec({-1.0, 3.0});
  mcb::IndexTuple one{{2}, {h1}};
  EXPECT_NEAR(mcb::centered_moment(c, one), c.pi_of(h1), 1e-14);
  mcb::IndexTuple two{{1, 4}, {h1, h2}};
  double e12 = path_sum(c, {1, 4}, [&](auto& x) { return h1(x[0]) * h2(x[1]); });
  EXPECT_NEAR(mcb::centered_moment(c, two), e12 - c.pi_of(h1) * c.pi_of(h2), 1e-13);
}

TEST(Cumulants, ThreePointMomentByPaths) {
  auto c = mcbtest::two_state();
  auto h1 = vec({0.5, 2.0}), h2 = vec({-1.0, 3.0}), h3 = vec({1.0, -0.5});
  mcb::IndexTuple tup{{0, 1, 3}, {h1, h2, h3}};
  double m3 = c.pi_of(h3);
  // Z_3 = h3 - pi(h3); Z_2 = h2 Z_3 - E[h2 Z_3]; moment = E[h1 Z_2].
  double e23 = path_sum(c, {1, 3}, [&](auto& x) { return h2(x[0]) * (h3(x[1]) - m3); });
  double want = path_sum(c, {0, 1, 3}, [&](auto& x) {
    return h1(x[0]) * (h2(x[1]) * (h3(x[2]) - m3) - e23);
  });
  EXPECT_NEAR(mcb::centered_moment(c, tup), want, 1e-13);
  double raw = path_sum(c, {0, 1, 3}, [&](auto& x) { return h1(x[0]) * h2(x[1]) * h3(x[2]); });
  EXPECT_NEAR(mcb::raw_joint_moment(c, tup), raw, 1e-13);
}

TEST(Cumulants, MarkovReductionRandomChains) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 1.0), s(-1.0, 1.0);
  for (int seed = 0; seed < 100; ++seed) {
    const int S = 3;
    Eigen::MatrixXd Q(S, S);
    for (int i = 0; i < S; ++i) {
      for (int j = 0; j < S; ++j) Q(i, j) = u(rng);
      Q.row(i) /= Q.row(i).sum();
    }
    auto c = mcb::FiniteChain::make(Q, Eigen::VectorXd::Constant(S, 3.0), Eigen::VectorXd::Zero(S));
    mcb::IndexTuple tup;
    long t = 0;
    for (int k = 0; k < 3; ++k) {
      t += static_cast<long>(u(rng) * 4);
      tup.times.push_back(t);
      Eigen::VectorXd h(S);
      for (int i = 0; i < S; ++i) h(i) = s(rng);
      tup.observables.push_back(h);
    }
    auto r = mcb::markov_reduction_check(c, tup);
    EXPECT_NEAR(r.lhs, r.rhs, 1e-12) << seed;
  }
}

TEST(Cumulants, ExactRationalReduction) {
  using R = mcb::Rational;
  mcb::RationalMatrix Q{{R(9, 10), R(1, 10)}, {R(2, 10), R(8, 10)}};
  auto c = mcb::RationalChain::make(Q);
  EXPECT_EQ(c.pi[0], R(2, 3));
  EXPECT_EQ(c.pi[1], R(1, 3));
  mcb::RationalTuple tup{{0, 2, 20, 45}, {{R(1), R(-2)}, {R(1, 2), R(3)}, {R(-1), R(1)}, {R(2), R(5)}}};
  auto chk = mcb::markov_reduction_check_exact(c, tup);
  EXPECT_TRUE(chk.equal);
  EXPECT_EQ(chk.lhs, chk.rhs);
}

TEST(Cumulants, SingleStepMoments) {
  auto c = mcbtest::two_state();
  auto m = mcb::exact_sn_moments(c, 1, 4);
  Eigen::VectorXd gb = c.g_bar();
  for (int j = 0; j <= 4; ++j) {
    EXPECT_NEAR(m[j], c.pi_of(gb.array().pow(j).matrix()), 1e-12) << j;
  }
}

TEST(Cumulants, MomentsMatchPathEnumeration) {
  auto c = mcbtest::two_state();
  Eigen::VectorXd gb = c.g_bar();
  const long n = 8;
  std::vector<long> times;
  for (long t = 0; t < n; ++t) times.push_back(t);
  auto m = mcb::exact_sn_moments(c, n, 4);
  for (int j = 2; j <= 4; ++j) {
    double want = path_sum(c, times, [&](auto& x) {
      double s = 0;
      for (int v : x) s += gb(v);
      return std::pow(s, j);
    });
    EXPECT_NEAR(m[j], want, 1e-10 * std::abs(want)) << j;
  }
  EXPECT_NEAR(mcb::variance_by_autocovariance(c, n), m[2], 1e-10 * m[2]);
}

TEST(Cumulants, LeonovShiryaev) {
  auto c = mcbtest::two_state();
  auto r1 = mcb::leonov_check(c, 1, 1);
  EXPECT_NEAR(r1.exact, c.pi_of(c.g_bar().array().square().matrix()), 1e-12);
  EXPECT_NEAR(r1.assembled, r1.exact, 1e-12);
  auto r2 = mcb::leonov_check(c, 10, 2);
  EXPECT_TRUE(r2.pass);
  EXPECT_LE(r2.rel_err, 1e-10);
}

TEST(Cumulants, SpectralDensityIid) {
  Eigen::MatrixXd Q(3, 3);
  Q.rowwise() = Eigen::RowVector3d(0.2, 0.5, 0.3);
  Eigen::VectorXd V(3), g(3);
  V << 3, 4, 5;
  g << 1, -1, 2;
  auto c = mcb::FiniteChain::make(Q, V, g);
  auto fc = mcb::certify_finite_chain(c);
  auto sd = mcb::spectral_density(c, mcb::default_spectral_grid(65), fc.rate, c.pi_of(c.V));
  double want = c.pi_of(c.g_bar().array().square().matrix()) / (2 * M_PI);
  for (double v : sd.values) EXPECT_NEAR(v, want, 1e-12);
}

TEST(Cumulants, SpectralDensityAtZero) {
  auto c = mcbtest::two_state();
  auto fc = mcb::certify_finite_chain(c);
  auto sd = mcb::spectral_density(c, {0.0}, fc.rate, c.pi_of(c.V));
  double per_step = mcb::variance_by_autocovariance(c, 500) / 500;
  // Var(S_n)/n approaches 2 pi f(0) at rate 1/n.
  EXPECT_NEAR(2 * M_PI * sd.values[0], per_step, 0.01 * per_step);
  EXPECT_GE(sd.f_min, 0.0);
}

}  // namespace
