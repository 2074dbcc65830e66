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

#ifndef MCBOUNDS_SGD_HPP_
#define MCBOUNDS_SGD_HPP_

#include <Eigen/Dense>

#include "mcbounds/random.hpp"
#include "mcbounds/wasserstein.hpp"

namespace mcb {

// Constant-stepsize SGD on f(theta) = (theta - theta*)^T A (theta - theta*)/2
// with sample field H_theta(Y) = A (theta - theta*) + xi_Y, xi_Y a symmetric
// Gaussian truncated to norm <= sigma sqrt(2 log 2).
struct SgdModel {
  double mu = 1.0;
  double L = 3.0;
  double sigma2 = 1.0;
  double gamma_step = 0.1;
  int dim = 2;
  Eigen::MatrixXd A;           // spectrum in [mu, L)
  Eigen::VectorXd theta_star;
  Eigen::VectorXd u;           // observable direction, unit norm
  double hessian_lipschitz = 0.0;

  // Diagonal curvature spread over [mu, mu + 0.9 (L - mu)], theta* = 0.
  static SgdModel make(double mu, double L, double sigma2, double gamma_step,
                       int dim);

  void validate() const;
  double kappa_f() const { return mu * L / (mu + L); }
  double gamma_f() const;
  double noise_radius() const;
};

struct SgdConstants {
  double sigma_tilde2 = 0;
  double kappa_f = 0;
  double gamma_f = 0;
  double lambda = 0;
  double b = 0;
  double R = 0;
  double d = 0;
  double eps = 0;
  int m = 1;
  double bias_bound = 0;
  bool bias_step_ok = false;           // gamma < 1/L
  bool hessian_lipschitz_assumed = true;
  bool level_set_in_ball = false;      // {V <= d} inside B(theta*, R)
  WassCertificate wass;
  double pi_V_upper = 0;               // b/(1-lambda)
  double pi_sqrtV_upper = 0;           // sqrt(b/(1-lambda))
};

SgdConstants sgd_constants(const SgdModel& model);

double sgd_V(const SgdModel& model, const SgdConstants& k,
             const Eigen::VectorXd& theta);

Eigen::VectorXd sgd_noise(const SgdModel& model, Rng& rng);
Eigen::VectorXd sgd_step(const SgdModel& model, const Eigen::VectorXd& theta,
                         Rng& rng);
void sgd_coupled_step(const SgdModel& model, Eigen::VectorXd& theta,
                      Eigen::VectorXd& theta_p, Rng& rng);

// Observable clamp(<u, theta - theta*>, -1, 1); pi(g) = 0 by symmetry.
double sgd_observable(const SgdModel& model, const Eigen::VectorXd& theta);

// 1 ^ |theta - theta'|^2.
double sgd_cost(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace mcb

#endif  // MCBOUNDS_SGD_HPP_
