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

#ifndef MCBOUNDS_CUMULANTS_HPP_
#define MCBOUNDS_CUMULANTS_HPP_

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "mcbounds/finite_chain.hpp"
#include "mcbounds/vgeom.hpp"

namespace mcb {

struct IndexTuple {
  std::vector<long> times;                    // nondecreasing
  std::vector<Eigen::VectorXd> observables;   // one per time
};

// Nested-centering moment under P_pi, evaluated on the exact joint law of
// (X_{t_1}, ..., X_{t_k}). k <= 8.
double centered_moment(const FiniteChain& chain, const IndexTuple& tuple);

// E_pi[prod h_i(X_{t_i})] for any order of the tuple.
double raw_joint_moment(const FiniteChain& chain, const IndexTuple& tuple);

// Joint cumulant by the set-partition formula. k <= 8.
double joint_cumulant(const FiniteChain& chain, const IndexTuple& tuple);

struct ReductionCheck {
  double lhs = 0;
  double rhs = 0;
  double rel_err = 0;
  bool pass = false;
};

// Compares the moment of (h_1..h_k) with that of (h_1..h_{k-1} * h~_k),
// h~_k = Q^{t_k - t_{k-1}} h_k - pi(h_k).
ReductionCheck markov_reduction_check(const FiniteChain& chain,
                                      const IndexTuple& tuple,
                                      double tol = 1e-12);

// Exact arithmetic counterparts on chains with rational transition matrices.
// Nested centering cancels heavily once the gaps are large; these avoid it.
using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

struct RationalChain {
  RationalMatrix Q;
  RationalVector pi;
  int size() const { return static_cast<int>(Q.size()); }
  // Validates Q (rows sum to 1, entries >= 0) and solves pi Q = pi exactly.
  static RationalChain make(const RationalMatrix& Q);
};

struct RationalTuple {
  std::vector<long> times;
  std::vector<RationalVector> observables;
};

Rational centered_moment_exact(const RationalChain& chain, const RationalTuple& tuple);

struct ExactReductionCheck {
  Rational lhs;
  Rational rhs;
  bool equal = false;
  double rel_err = 0;
};
ExactReductionCheck markov_reduction_check_exact(const RationalChain& chain,
                                                 const RationalTuple& tuple);

// table[t](x, j) = E[S_{t+1}^j ; X_t = x], S built from g - pi(g).
struct ExactMomentTable {
  std::vector<Eigen::MatrixXd> by_time;
};

// initial defaults to pi.
ExactMomentTable exact_moment_table(const FiniteChain& chain, long n,
                                    int max_power,
                                    const std::optional<Eigen::VectorXd>& initial = std::nullopt);

// E[S_n^j], j = 0..max_power.
std::vector<double> exact_sn_moments(const FiniteChain& chain, long n,
                                     int max_power,
                                     const std::optional<Eigen::VectorXd>& initial = std::nullopt);

// E[S_t^j] for every t = 1..n, j = 0..max_power; row t-1.
std::vector<std::vector<double>> exact_sn_moment_path(
    const FiniteChain& chain, long n, int max_power,
    const std::optional<Eigen::VectorXd>& initial = std::nullopt);

// Cumulants Gamma_1..Gamma_{k_max} of S_n under P_pi.
std::vector<double> sn_cumulants(const FiniteChain& chain, long n, int k_max);

// Var_pi(S_n) from autocovariances.
double variance_by_autocovariance(const FiniteChain& chain, long n);

// pi(g_bar * Q^l g_bar), l = 0..L.
std::vector<double> autocovariances(const FiniteChain& chain, long L);

struct LeonovResult {
  double exact = 0;
  double assembled = 0;   // full composition sum
  double simplified = 0;  // m_q Var^q + sum over parts >= 2, u < q
  double variance_term = 0;
  double rel_err = 0;
  double rel_err_simplified = 0;
  std::vector<double> cumulants;
  bool pass = false;
};

LeonovResult leonov_check(const FiniteChain& chain, long n, int q,
                          double tol = 1e-10);

struct SpectralDensity {
  std::vector<double> grid;
  std::vector<double> values;
  long L = 0;
  double truncation_slack = 0;
  double grid_slack = 0;
  double f_min = 0;
  bool warning = false;
};

// f(lambda) = (2 pi)^{-1} sum_{|l| <= L} cov(l) e^{-i l lambda}; f_min is the
// grid minimum minus certified truncation and grid slack.
SpectralDensity spectral_density(const FiniteChain& chain,
                                 const std::vector<double>& grid,
                                 const GeomRate& rate, double pi_V);

std::vector<double> default_spectral_grid(int points = 2049);

}  // namespace mcb

#endif  // MCBOUNDS_CUMULANTS_HPP_
