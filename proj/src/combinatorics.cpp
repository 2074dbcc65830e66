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

#include "mcbounds/combinatorics.hpp"

#include <cmath>
#include <functional>

#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

constexpr int kMaxTransformOrder = 20;

void check_uq(int u, int q) {
  if (q < 2 || u < 1 || u > q - 1) {
    throw InvalidArgument("need q >= 2 and 1 <= u <= q-1, got u=" +
                          std::to_string(u) + " q=" + std::to_string(q));
  }
}

bool is_nonneg_integer(double x) {
  return x >= 0 && x == std::floor(x) && x < 64;
}

}  // namespace

BigInt factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of negative");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt gaussian_moment(int q) {
  if (q < 1) throw InvalidArgument("gaussian_moment needs q >= 1");
  BigInt r = factorial(2 * q) / factorial(q);
  return r >> q;
}

std::vector<std::vector<int>> enumerate_compositions(int total, int length,
                                                     int min_part) {
  std::vector<std::vector<int>> out;
  if (length < 1 || total < length * min_part) return out;
  std::vector<int> cur(length);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == length - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    int rest = length - pos - 1;
    for (int k = min_part; k <= left - rest * min_part; ++k) {
      cur[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, total);
  return out;
}

std::vector<Composition> compositions(int u, int q) {
  check_uq(u, q);
  std::vector<Composition> out;
  for (auto& p : enumerate_compositions(2 * q, u, 2)) out.push_back({p});
  return out;
}

BCoefficient b_coefficient(double gamma, int u, int q) {
  check_uq(u, q);
  if (!(gamma >= 0)) throw InvalidArgument("gamma must be >= 0");
  auto comps = compositions(u, q);
  BCoefficient res;
  LogValue sum;
  for (const auto& c : comps) {
    double l = 0;
    for (int k : c.parts) l += (gamma + 2) * log_factorial(k);
    sum += LogValue::from_log(l);
  }
  res.value = sum * LogValue::from_log(log_factorial(2 * q) -
                                       log_factorial(u));
  if (is_nonneg_integer(gamma)) {
    unsigned e = static_cast<unsigned>(gamma) + 2;
    BigInt s = 0;
    for (const auto& c : comps) {
      BigInt prod = 1;
      for (int k : c.parts) prod *= boost::multiprecision::pow(factorial(k), e);
      s += prod;
    }
    res.exact = factorial(2 * q) / factorial(u) * s;
  }
  return res;
}

LogValue b_coefficient_upper(double gamma, int u, int q) {
  check_uq(u, q);
  double card = std::log(binomial(2 * q - u - 1, u - 1).convert_to<double>());
  double l = log_factorial(2 * q) - log_factorial(u) + card +
             (2 + gamma) * log_factorial(2 * q - 2 * u + 2) +
             (u - 1) * (2 + gamma) * std::log(2.0);
  return LogValue::from_log(l);
}

LogValue b0_scaling_bound(int u, int q) {
  check_uq(u, q);
  double lc1 = 2.0 + 0.5 * std::log(2.0);
  double a = 2.0 * q, b = 2.0 * q - u;
  return LogValue::from_log(lc1 + a * std::log(a) + 2 * b * std::log(b) - b);
}

LogValue b0_scaling_bound_uniform(int q) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  double lc1 = 2.0 + 0.5 * std::log(2.0);
  return LogValue::from_log(lc1 + 6.0 * q * std::log(double(q)) +
                            7.0 * q * std::log(2.0) - 2.0 * q);
}

std::vector<double> moments_to_cumulants(const std::vector<double>& m) {
  const int k = static_cast<int>(m.size());
  if (k == 0) throw InvalidArgument("empty moment sequence");
  if (k > kMaxTransformOrder) throw InvalidArgument("order above 20");
  // m_n = sum_{j=1}^{n} C(n-1,j-1) kappa_j m_{n-j}, m_0 = 1.
  std::vector<double> mom(k + 1, 1.0), kap(k + 1, 0.0);
  for (int i = 0; i < k; ++i) mom[i + 1] = m[i];
  for (int n = 1; n <= k; ++n) {
    double s = mom[n];
    for (int j = 1; j < n; ++j) {
      s -= binomial(n - 1, j - 1).convert_to<double>() * kap[j] * mom[n - j];
    }
    kap[n] = s;
  }
  return {kap.begin() + 1, kap.end()};
}

std::vector<double> cumulants_to_moments(const std::vector<double>& c) {
  const int k = static_cast<int>(c.size());
  if (k == 0) throw InvalidArgument("empty cumulant sequence");
  if (k > kMaxTransformOrder) throw InvalidArgument("order above 20");
  std::vector<double> mom(k + 1, 1.0), kap(k + 1, 0.0);
  for (int i = 0; i < k; ++i) kap[i + 1] = c[i];
  for (int n = 1; n <= k; ++n) {
    double s = 0;
    for (int j = 1; j <= n; ++j) {
      s += binomial(n - 1, j - 1).convert_to<double>() * kap[j] * mom[n - j];
    }
    mom[n] = s;
  }
  return {mom.begin() + 1, mom.end()};
}

double pow0(double x, double y) {
  if (y == 0.0) return 1.0;
  return std::pow(x, y);
}

}  // namespace mcb
