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
#include <vector>

#include <gtest/gtest.h>

#include "mcbounds/combinatorics.hpp"
#include "mcbounds/log_value.hpp"

namespace {

using mcb::BigInt;

// Brute force over all tuples of u parts in [2, 2q].
std::vector<std::vector<int>> brute_compositions(int u, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(u, 2);
  std::function<void(int)> rec = [&](int i) {
    if (i == u) {
      int s = 0;
      for (int p : cur) s += p;
      if (s == 2 * q) out.push_back(cur);
      return;
    }
    for (int p = 2; p <= 2 * q; ++p) {
      cur[i] = p;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

BigInt fact(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt ipow(const BigInt& b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// (2q)!/u! * sum over compositions of prod (k_i!)^(2 + gamma).
BigInt b_oracle(int gamma, int u, int q) {
  BigInt sum = 0;
  for (const auto& c : brute_compositions(u, q)) {
    BigInt p = 1;
    for (int k : c) p *= ipow(fact(k), 2 + gamma);
    sum += p;
  }
  return fact(2 * q) / fact(u) * sum;
}

TEST(Combinatorics, GaussianMoments) {
  EXPECT_EQ(mcb::gaussian_moment(1), 1);
  EXPECT_EQ(mcb::gaussian_moment(2), 3);
  EXPECT_EQ(mcb::gaussian_moment(3), 15);
  for (int q = 1; q <= 10; ++q) {
    BigInt dbl = 1;
    for (int k = 2 * q - 1; k > 0; k -= 2) dbl *= k;
    EXPECT_EQ(mcb::gaussian_moment(q), dbl) << q;
  }
}

TEST(Combinatorics, CompositionsMatchEnumeration) {
  auto c12 = mcb::compositions(1, 2);
  ASSERT_EQ(c12.size(), 1u);
  EXPECT_EQ(c12[0].parts, std::vector<int>({4}));
  auto c23 = mcb::compositions(2, 3);
  ASSERT_EQ(c23.size(), 3u);
  EXPECT_EQ(c23[0].parts, std::vector<int>({2, 4}));
  EXPECT_EQ(c23[1].parts, std::vector<int>({3, 3}));
  EXPECT_EQ(c23[2].parts, std::vector<int>({4, 2}));
  for (int q = 2; q <= 6; ++q) {
    for (int u = 1; u <= q - 1; ++u) {
      auto got = mcb::compositions(u, q);
      auto want = brute_compositions(u, q);
      ASSERT_EQ(got.size(), want.size()) << u << "," << q;
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].parts, want[i]);
      EXPECT_EQ(BigInt(got.size()), mcb::binomial(2 * q - u - 1, u - 1));
    }
  }
}

TEST(Combinatorics, BCoefficientExact) {
  EXPECT_EQ(*mcb::b_coefficient(0, 1, 2).exact, 13824);
  EXPECT_EQ(*mcb::b_coefficient(1, 1, 2).exact, 331776);
  EXPECT_EQ(*mcb::b_coefficient(0, 2, 3).exact, 2125440);
  for (int g = 0; g <= 2; ++g) {
    for (int q = 2; q <= 5; ++q) {
      for (int u = 1; u <= q - 1; ++u) {
        auto b = mcb::b_coefficient(g, u, q);
        ASSERT_TRUE(b.exact.has_value());
        EXPECT_EQ(*b.exact, b_oracle(g, u, q));
        EXPECT_NEAR(b.value.log_abs(), std::log(b_oracle(g, u, q).convert_to<double>()), 1e-9);
      }
    }
  }
  EXPECT_FALSE(mcb::b_coefficient(0.5, 1, 2).exact.has_value());
  EXPECT_ANY_THROW(mcb::b_coefficient(0, 2, 2));
  EXPECT_ANY_THROW(mcb::compositions(1, 1));
}

TEST(Combinatorics, UpperBounds) {
  EXPECT_NEAR(mcb::b_coefficient_upper(0, 1, 2).to_double(), 13824, 1e-6);
  EXPECT_NEAR(mcb::b_coefficient_upper(0, 2, 3).to_double(), 2488320, 1e-3);
  EXPECT_NEAR(mcb::b_coefficient_upper(1, 1, 2).to_double(), 331776, 1e-4);
  double want = std::exp(2.0) * std::sqrt(2.0) * 256 * 729 * std::exp(-3.0);
  EXPECT_NEAR(mcb::b0_scaling_bound(1, 2).to_double() / want, 1.0, 1e-12);
  EXPECT_GE(mcb::b0_scaling_bound(2, 3).to_double(), 2125440);
  for (double g : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (int q = 2; q <= 5; ++q) {
      for (int u = 1; u <= q - 1; ++u) {
        EXPECT_LE(mcb::b_coefficient(g, u, q).value.log_abs(),
                  mcb::b_coefficient_upper(g, u, q).log_abs() + 1e-12);
      }
    }
  }
}

TEST(Combinatorics, MomentCumulantConversion) {
  double s2 = 2.5;
  auto k = mcb::moments_to_cumulants({0, s2, 0, 3 * s2 * s2});
  EXPECT_NEAR(k[0], 0, 1e-12);
  EXPECT_NEAR(k[1], s2, 1e-12);
  EXPECT_NEAR(k[2], 0, 1e-12);
  EXPECT_NEAR(k[3], 0, 1e-12);
  double c = 1.7;
  k = mcb::moments_to_cumulants({c, c * c, c * c * c});
  EXPECT_NEAR(k[0], c, 1e-12);
  EXPECT_NEAR(k[1], 0, 1e-12);
  EXPECT_NEAR(k[2], 0, 1e-12);
  double p = 0.3;
  k = mcb::moments_to_cumulants({p, p, p});
  EXPECT_NEAR(k[1], p * (1 - p), 1e-14);
  EXPECT_NEAR(k[2], p * (1 - p) * (1 - 2 * p), 1e-14);
  auto m = mcb::cumulants_to_moments(mcb::moments_to_cumulants({0.2, 1.1, 0.7, 3.9, 2.2}));
  std::vector<double> want{0.2, 1.1, 0.7, 3.9, 2.2};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(m[i], want[i], 1e-12);
}

TEST(Combinatorics, ZeroPowerConvention) {
  EXPECT_EQ(mcb::pow0(0.0, 0.0), 1.0);
  EXPECT_EQ(mcb::pow0(0.0, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(mcb::pow0(2.0, 3.0), 8.0);
}

TEST(LogValue, ArithmeticMatchesDoubles) {
  const double xs[] = {-3.5, -1e-3, 0.0, 2e-7, 1.0, 42.0};
  for (double a : xs) {
    for (double b : xs) {
      auto A = mcb::LogValue::from_double(a), B = mcb::LogValue::from_double(b);
      EXPECT_NEAR((A + B).to_double(), a + b, 1e-12 * (1 + std::abs(a) + std::abs(b)));
      EXPECT_NEAR((A - B).to_double(), a - b, 1e-12 * (1 + std::abs(a) + std::abs(b)));
      EXPECT_NEAR((A * B).to_double(), a * b, 1e-12 * (1 + std::abs(a * b)));
      if (b != 0) EXPECT_NEAR((A / B).to_double(), a / b, 1e-12 * (1 + std::abs(a / b)));
      EXPECT_EQ(A < B, a < b);
    }
  }
  auto big = mcb::LogValue::from_log(5000.0);
  EXPECT_TRUE(std::isinf(big.to_double()));
  EXPECT_NEAR((big * mcb::LogValue::from_log(-4999.0)).to_double(), std::exp(1.0), 1e-9);
  EXPECT_NEAR(mcb::log_factorial(10), std::log(3628800.0), 1e-10);
}

}  // namespace
