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

#ifndef MCBOUNDS_FINITE_CHAIN_HPP_
#define MCBOUNDS_FINITE_CHAIN_HPP_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mcbounds/vgeom.hpp"
#include "mcbounds/wasserstein.hpp"

namespace mcb {

// Finite-state chain with Lyapunov values V >= e, observable g and its exact
// stationary law.
struct FiniteChain {
  Eigen::MatrixXd Q;
  Eigen::VectorXd V;
  Eigen::VectorXd g;
  Eigen::VectorXd pi;

  // Validates Q, V and computes pi.
  static FiniteChain make(const Eigen::MatrixXd& Q, const Eigen::VectorXd& V,
                          const Eigen::VectorXd& g);

  int size() const { return static_cast<int>(Q.rows()); }
  double pi_g() const { return pi.dot(g); }
  Eigen::VectorXd g_bar() const;
  double pi_of(const Eigen::VectorXd& f) const { return pi.dot(f); }
};

// Stationary vector of an irreducible row-stochastic matrix.
Eigen::VectorXd finite_stationary(const Eigen::MatrixXd& Q);

struct DriftFit {
  double lambda = 0;
  double b = 0;
  int witness = 0;  // state attaining max (QV - lambda V)
};

// With target_lambda: b = max_x (QV - lambda V)^+. Without: lambda chosen on a
// grid to minimize b/(1-lambda).
DriftFit certify_drift(const FiniteChain& chain,
                       std::optional<double> target_lambda = std::nullopt);

struct SmallSet {
  double eps = 0;
  Eigen::VectorXd nu;        // normalized minorizing measure
  std::vector<int> members;  // states of {V <= d}
};

// Doeblin min-sum: eps = sum_y min_{x in C} Q^m(x, y).
SmallSet certify_small_set(const FiniteChain& chain, int m, double d);

struct FiniteCertificate {
  DriftCertificate cert;
  int witness = 0;
  SmallSet small;
  GeomRate rate;
};

// Drift fit, d = max(4b/(1-lambda) - 1, min V), then the m in [1, m_max]
// giving the smallest rho.
FiniteCertificate certify_finite_chain(const FiniteChain& chain, int m_max = 4,
                                       std::optional<double> target_lambda = std::nullopt);

// sum_y W(y) |Q^n(x, y) - pi(y)| for each x, W = V^alpha.
Eigen::VectorXd exact_v_distance(const FiniteChain& chain, long n, double alpha);

// Coupling kernel on pairs, index x*S + x'.
struct CoupledChain {
  int S = 0;
  Eigen::MatrixXd K;
  int index(int x, int xp) const { return x * S + xp; }
};

// Maximal coupling of the rows, sticky on the diagonal.
CoupledChain maximal_coupling(const FiniteChain& chain);

struct FiniteWassCertificate {
  WassCertificate cert;
  WassRate rate;
  double pi_V = 0;
  double pi_sqrtV = 0;
};

// kappa = max Kc/c over off-diagonal pairs; eps = 1 - max over Cbar of K^m c,
// discrete cost.
FiniteWassCertificate certify_coupling(const FiniteChain& chain,
                                       const CoupledChain& K, int m,
                                       const DriftFit& drift, double d);

// Worst ratio LHS/RHS of the contraction inequality over off-diagonal pairs,
// n in [m, n_max]. Values <= 1 mean the inequality holds.
double contraction_worst_ratio(const FiniteChain& chain, const CoupledChain& K,
                               const FiniteWassCertificate& wc, int p, int q,
                               int n_max);

}  // namespace mcb

#endif  // MCBOUNDS_FINITE_CHAIN_HPP_
