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

#include "mcbounds/sgd.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mcbounds/errors.hpp"

namespace mcb {

SgdModel SgdModel::make(double mu, double L, double sigma2, double gamma_step,
                        int dim) {
  if (dim < 1) throw InvalidArgument("dimension must be >= 1");
  SgdModel m;
  m.mu = mu;
  m.L = L;
  m.sigma2 = sigma2;
  m.gamma_step = gamma_step;
  m.dim = dim;
  m.A = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    double f = dim == 1 ? 0.0 : double(i) / (dim - 1);
    m.A(i, i) = mu + 0.9 * f * (L - mu);
  }
  m.theta_star = Eigen::VectorXd::Zero(dim);
  m.u = Eigen::VectorXd::Zero(dim);
  m.u(0) = 1.0;
  return m;
}

double SgdModel::gamma_f() const {
  return std::min({0.5, kappa_f() / 2, 1.0 / (mu + L)});
}

double SgdModel::noise_radius() const {
  return std::sqrt(sigma2 * 2 * std::log(2.0));
}

void SgdModel::validate() const {
  if (!(mu > 0 && L > mu)) throw InvalidArgument("need 0 < mu < L");
  if (!(sigma2 >= 0)) throw InvalidArgument("sigma2 must be >= 0");
  if (A.rows() != dim || A.cols() != dim || theta_star.size() != dim ||
      u.size() != dim) {
    throw InvalidArgument("SGD model dimensions do not match");
  }
  if (std::fabs(u.norm() - 1) > 1e-12) throw InvalidArgument("u must be a unit vector");
  if (!(gamma_step > 0 && gamma_step <= gamma_f() * (1 + 1e-15))) {
    throw InvalidArgument("step size must lie in (0, gamma_f], gamma_f=" +
                          std::to_string(gamma_f()));
  }
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("curvature must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.eigenvalues().minCoeff() < mu * (1 - 1e-12) ||
      !(es.eigenvalues().maxCoeff() < L)) {
    throw InvalidArgument("curvature spectrum must lie in [mu, L)");
  }
  // Co-coercivity with C_S = 1/L on probe pairs.
  Rng rng = make_rng(0x5eed, 0xc0c0);
  for (int k = 0; k < 64; ++k) {
    Eigen::VectorXd d(dim);
    for (int i = 0; i < dim; ++i) d(i) = 3 * std_normal(rng);
    Eigen::VectorXd h = A * d;
    if (h.dot(d) < h.squaredNorm() / L * (1 - 1e-12)) {
      throw InvalidArgument("sample field is not co-coercive with C_S = 1/L");
    }
  }
}

SgdConstants sgd_constants(const SgdModel& model) {
  model.validate();
  if (!(model.sigma2 > 0)) throw InvalidArgument("sgd_constants needs sigma2 > 0");
  SgdConstants k;
  const double e = std::exp(1.0);
  const double g = model.gamma_step;
  k.sigma_tilde2 = 2 * model.sigma2 * (e + 1) / (e - 1);
  k.kappa_f = model.kappa_f();
  k.gamma_f = model.gamma_f();
  k.lambda = std::exp(-g * k.kappa_f / (2 * k.sigma_tilde2));
  k.b = g * (1 / k.kappa_f + 2 * g + k.kappa_f / (2 * k.sigma_tilde2)) *
        std::exp(2 + 1 / (2 * k.sigma_tilde2) +
                 (2 * g * k.kappa_f + 1) / (k.kappa_f * k.kappa_f));
  k.d = 4 * k.b / (1 - k.lambda) - 1;
  k.R = std::log(k.d);
  k.eps = 2 * model.mu * g * (1 - g * model.L / 2);
  k.m = static_cast<int>(std::ceil(std::log(4 * k.R * k.R) /
                                   std::log(1 / (1 - k.eps)) + 1));
  k.m = std::max(k.m, 1);
  k.bias_step_ok = g < 1 / model.L;
  k.bias_bound = g * model.sigma2 / (model.mu * model.mu * (1 - g * model.L));
  k.hessian_lipschitz_assumed = true;
  double r_level = std::sqrt(std::max(0.0, k.sigma_tilde2 * (k.R - 1)));
  k.level_set_in_ball = r_level + model.theta_star.norm() <= k.R;
  k.wass = WassCertificate{k.lambda, k.b, k.d, k.m, k.eps, 1.0};
  k.wass.validate();
  k.pi_V_upper = k.b / (1 - k.lambda);
  k.pi_sqrtV_upper = std::sqrt(k.pi_V_upper);
  return k;
}

double sgd_V(const SgdModel& model, const SgdConstants& k,
             const Eigen::VectorXd& theta) {
  return std::exp(1 + (theta - model.theta_star).squaredNorm() / k.sigma_tilde2);
}

Eigen::VectorXd sgd_noise(const SgdModel& model, Rng& rng) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(model.dim);
  const double r = model.noise_radius();
  if (r == 0) return z;
  const double s = r / std::sqrt(double(model.dim));
  for (;;) {
    for (int i = 0; i < model.dim; ++i) z(i) = s * std_normal(rng);
    if (z.norm() <= r) return z;
  }
}

Eigen::VectorXd sgd_step(const SgdModel& model, const Eigen::VectorXd& theta,
                         Rng& rng) {
  Eigen::VectorXd xi = sgd_noise(model, rng);
  return theta - model.gamma_step * (model.A * (theta - model.theta_star) + xi);
}

void sgd_coupled_step(const SgdModel& model, Eigen::VectorXd& theta,
                      Eigen::VectorXd& theta_p, Rng& rng) {
  Eigen::VectorXd xi = sgd_noise(model, rng);
  theta -= model.gamma_step * (model.A * (theta - model.theta_star) + xi);
  theta_p -= model.gamma_step * (model.A * (theta_p - model.theta_star) + xi);
}

double sgd_observable(const SgdModel& model, const Eigen::VectorXd& theta) {
  return std::clamp(model.u.dot(theta - model.theta_star), -1.0, 1.0);
}

double sgd_cost(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::min(1.0, (a - b).squaredNorm());
}

}  // namespace mcb
