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

#ifndef MCBOUNDS_STATS_HPP_
#define MCBOUNDS_STATS_HPP_

#include <cstdint>
#include <vector>

namespace mcb {

struct Interval {
  double low = 0;
  double high = 1;
};

// Exact two-sided binomial interval for k successes out of n.
Interval clopper_pearson(long k, long n, double level);

double normal_quantile(double p);
double student_t_quantile(double p, double dof);

struct MeanCi {
  double mean = 0;
  Interval ci;
};

// Percentile bootstrap of the mean.
MeanCi bootstrap_mean_ci(const std::vector<double>& x, double level,
                         int resamples, std::uint64_t seed);

// Normal-theory interval for the mean.
MeanCi normal_mean_ci(const std::vector<double>& x, double level);

// Batch-means interval for the mean with t quantiles.
MeanCi batch_means_ci(const std::vector<double>& x, int batches, double level);

}  // namespace mcb

#endif  // MCBOUNDS_STATS_HPP_
