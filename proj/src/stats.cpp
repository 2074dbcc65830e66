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

#include "mcbounds/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "mcbounds/errors.hpp"
#include "mcbounds/random.hpp"

namespace mcb {

namespace {

void check_level(double level) {
  if (!(level > 0 && level < 1)) throw InvalidArgument("level must be in (0,1)");
}

double sum_sorted_order(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v;
  return s;
}

}  // namespace

Interval clopper_pearson(long k, long n, double level) {
  check_level(level);
  if (n <= 0 || k < 0 || k > n) throw InvalidArgument("bad binomial counts");
  const double a = 1 - level;
  Interval r;
  r.low = k == 0 ? 0.0
                 : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1), a / 2);
  r.high = k == n ? 1.0
                  : boost::math::quantile(boost::math::beta_distribution<>(k + 1, n - k), 1 - a / 2);
  return r;
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<>(), p);
}

double student_t_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::students_t_distribution<>(dof), p);
}

MeanCi bootstrap_mean_ci(const std::vector<double>& x, double level,
                         int resamples, std::uint64_t seed) {
  check_level(level);
  if (x.empty()) throw InvalidArgument("bootstrap of empty sample");
  const size_t n = x.size();
  MeanCi r;
  r.mean = sum_sorted_order(x) / n;
  std::vector<double> means(resamples);
  Rng rng = make_rng(seed, 0xb007);
  for (int b = 0; b < resamples; ++b) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += x[rng() % n];
    means[b] = s / n;
  }
  std::sort(means.begin(), means.end());
  const double a = (1 - level) / 2;
  size_t lo = static_cast<size_t>(std::floor(a * (resamples - 1)));
  size_t hi = static_cast<size_t>(std::ceil((1 - a) * (resamples - 1)));
  r.ci.low = std::min(means[lo], r.mean);
  r.ci.high = std::max(means[hi], r.mean);
  return r;
}

MeanCi normal_mean_ci(const std::vector<double>& x, double level) {
  check_level(level);
  if (x.size() < 2) throw InvalidArgument("need at least two samples");
  const double n = x.size();
  double m = sum_sorted_order(x) / n;
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  double se = std::sqrt(ss / (n - 1) / n);
  double z = normal_quantile(1 - (1 - level) / 2);
  return {m, {m - z * se, m + z * se}};
}

MeanCi batch_means_ci(const std::vector<double>& x, int batches, double level) {
  check_level(level);
  if (batches < 2 || x.size() < static_cast<size_t>(batches)) {
    throw InvalidArgument("not enough samples for batch means");
  }
  const size_t len = x.size() / batches;
  std::vector<double> bm(batches);
  for (int b = 0; b < batches; ++b) {
    double s = 0;
    for (size_t i = 0; i < len; ++i) s += x[b * len + i];
    bm[b] = s / len;
  }
  double m = sum_sorted_order(bm) / batches;
  double ss = 0;
  for (double v : bm) ss += (v - m) * (v - m);
  double se = std::sqrt(ss / (batches - 1) / batches);
  double t = student_t_quantile(1 - (1 - level) / 2, batches - 1);
  return {m, {m - t * se, m + t * se}};
}

}  // namespace mcb
