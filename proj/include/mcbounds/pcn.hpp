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

#ifndef MCBOUNDS_PCN_HPP_
#define MCBOUNDS_PCN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcbounds/random.hpp"
#include "mcbounds/stats.hpp"
#include "mcbounds/wasserstein.hpp"

namespace mcb {

struct PcnPotential {
  enum class Kind { Zero, CappedNorm, Quadratic };
  Kind kind = Kind::Zero;
  double lipschitz = 0.0;  // CappedNorm: Phi = lipschitz * min(|x|, cap)
  double cap = 0.0;
  double curvature = 0.0;  // Quadratic: Phi = curvature |x|^2 / 2

  double value(const Eigen::VectorXd& x) const;
  // Lipschitz constant; infinite for Quadratic.
  double lipschitz_constant() const;
  double sup_on_ball(double r) const;
  double inf_on_ball(double r) const;
  // Lower bound on log acceptance everywhere (valid alpha_bar), -inf if none.
  double oscillation_alpha_bar() const;
};

struct PcnModel {
  int dim = 2;
  Eigen::VectorXd cov;   // diagonal Gaussian covariance
  double rho = 0.5;
  PcnPotential phi;
  double alpha_bar = 0.0;
  double r_bar = 0.3;
  double a = 0.95;
  double obs_scale = 1.0;  // observable clamp(x_0 / obs_scale, -1, 1)

  void validate() const;
  // pCN-1 radius (2 r_bar / (1 - rho))^{1/(1-a)}.
  double pcn1_radius() const;
};

// Ball measures of the reference Gaussian from a fixed sorted sample.
class BallMeasure {
 public:
  BallMeasure(const PcnModel& model, long samples, std::uint64_t seed,
              double level);
  Interval measure(double r) const;
  // Smallest sample radius whose lower endpoint reaches p.
  double conservative_quantile(double p) const;
  long samples() const { return static_cast<long>(norms_.size()); }

 private:
  std::vector<double> norms_;
  double level_;
};

struct PcnConstants {
  double tau = 0;
  double alpha_tau = 0;
  double D_tau = 0;
  double K1 = 0;
  double R_pcn1 = 0;       // radius of the acceptance condition
  double lambda = 0;
  double b1 = 0;
  double b2 = 0;
  double b = 0;
  double t_star = 0;
  double g_t_star = 0;
  double C_alpha_beta = 0;
  double p1 = 0;
  double contraction_gamma = 0;
  double eps_H = 0;
  double R = 0;            // log(4b/(1-lambda) - 1)
  double d = 0;            // 4b/(1-lambda) - 1, unscaled
  int m = 1;
  bool m_floored = false;
  double R_m = 0;
  double eps = 0;
  WassCertificate wass;    // for V = exp(1 + |x|): b and d times e
  double pi_V_upper = 0;
  double pi_sqrtV_upper = 0;
  double level = 0;
  long mc_samples = 0;
  std::vector<std::string> annotations;  // direction of each MC endpoint
};

PcnConstants pcn_constants(const PcnModel& model, long mc_budget,
                           std::uint64_t seed, double level = 0.999);

Eigen::VectorXd pcn_reference_sample(const PcnModel& model, Rng& rng);
Eigen::VectorXd pcn_step(const PcnModel& model, const Eigen::VectorXd& x,
                         Rng& rng);
void pcn_coupled_step(const PcnModel& model, Eigen::VectorXd& x,
                      Eigen::VectorXd& xp, Rng& rng);

// exp(1 + |x|).
double pcn_V(const Eigen::VectorXd& x);
double pcn_cost(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double eps_H);
double pcn_observable(const PcnModel& model, const Eigen::VectorXd& x);

}  // namespace mcb

#endif  // MCBOUNDS_PCN_HPP_
