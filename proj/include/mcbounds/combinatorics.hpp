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

#ifndef MCBOUNDS_COMBINATORICS_HPP_
#define MCBOUNDS_COMBINATORICS_HPP_

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcbounds/log_value.hpp"

namespace mcb {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n);
BigInt binomial(int n, int k);

// (2q)! / (q! 2^q), the 2q-th moment of a standard Gaussian.
BigInt gaussian_moment(int q);

struct Composition {
  std::vector<int> parts;
};

// All ordered sequences of 'length' integers >= min_part summing to total,
// in lexicographic order.
std::vector<std::vector<int>> enumerate_compositions(int total, int length,
                                                     int min_part);

// Compositions of 2q into u parts, each part >= 2.
std::vector<Composition> compositions(int u, int q);

struct BCoefficient {
  std::optional<BigInt> exact;  // set when gamma is a nonnegative integer
  LogValue value;
};

// (2q)!/u! * sum over compositions of prod (k_i!)^(gamma+2).
BCoefficient b_coefficient(double gamma, int u, int q);

// Closed-form upper bound on b_coefficient.
LogValue b_coefficient_upper(double gamma, int u, int q);

// c1 (2q)^{2q} (2q-u)^{2(2q-u)} e^{-(2q-u)}, c1 = e^2 sqrt(2).
LogValue b0_scaling_bound(int u, int q);
// c1 q^{6q} 2^{7q} e^{-2q}, uniform in u.
LogValue b0_scaling_bound_uniform(int q);

// Raw moments (m_1..m_k) to cumulants (k_1..k_k) and back. k <= 20.
std::vector<double> moments_to_cumulants(const std::vector<double>& moments);
std::vector<double> cumulants_to_moments(const std::vector<double>& cumulants);

// x^y with 0^0 = 1.
double pow0(double x, double y);

}  // namespace mcb

#endif  // MCBOUNDS_COMBINATORICS_HPP_
