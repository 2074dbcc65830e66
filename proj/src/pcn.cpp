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

#include "mcbounds/pcn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcbounds/errors.hpp"

namespace mcb {

double PcnPotential::value(const Eigen::VectorXd& x) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::CappedNorm: return lipschitz * std::min(x.norm(), cap);
    case Kind::Quadratic: return 0.5 * curvature * x.squaredNorm();
  }
  return 0.0;
}

double PcnPotential::lipschitz_constant() const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::CappedNorm: return lipschitz;
    case Kind::Quadratic:
      return curvature == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double PcnPotential::sup_on_ball(double r) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::CappedNorm: return lipschitz * std::min(r, cap);
    case Kind::Quadratic: return 0.5 * curvature * r * r;
  }
  return 0.0;
}

double PcnPotential::inf_on_ball(double) const { return 0.0; }

double PcnPotential::oscillation_alpha_bar() const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::CappedNorm: return -lipschitz * cap;
    case Kind::Quadratic: return -std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

void PcnModel::validate() const {
  if (dim < 1 || cov.size() != dim) throw InvalidArgument("covariance size must equal dim");
  for (int i = 0; i < dim; ++i) {
    if (!(cov(i) > 0)) throw InvalidArgument("covariance eigenvalues must be positive");
  }
  if (!(rho > 0 && rho < 1)) throw InvalidArgument("rho must be in (0,1)");
  if (!(a > 0.5 && a < 1)) throw InvalidArgument("a must be in (1/2,1)");
  if (!(r_bar > 0)) throw InvalidArgument("r_bar must be > 0");
  if (!(obs_scale > 0)) throw InvalidArgument("obs_scale must be > 0");
  if (phi.kind == PcnPotential::Kind::CappedNorm &&
      !(phi.lipschitz >= 0 && phi.cap >= 0)) {
    throw InvalidArgument("capped-norm potential needs lipschitz, cap >= 0");
  }
}

double PcnModel::pcn1_radius() const {
  return std::pow(2 * r_bar / (1 - rho), 1 / (1 - a));
}

BallMeasure::BallMeasure(const PcnModel& model, long samples,
                         std::uint64_t seed, double level)
    : level_(level) {
  Rng rng = make_rng(seed, 0xba11);
  norms_.resize(samples);
  for (long i = 0; i < samples; ++i) norms_[i] = pcn_reference_sample(model, rng).norm();
  std::sort(norms_.begin(), norms_.end());
}

Interval BallMeasure::measure(double r) const {
  long k = std::upper_bound(norms_.begin(), norms_.end(), r) - norms_.begin();
  return clopper_pearson(k, static_cast<long>(norms_.size()), level_);
}

double BallMeasure::conservative_quantile(double p) const {
  const long n = static_cast<long>(norms_.size());
  // Bisection over counts: lower endpoint is increasing in k.
  long lo = 0, hi = n;
  if (clopper_pearson(n, n, level_).low < p) {
    throw InvalidArgument("Monte Carlo budget too small for requested confidence");
  }
  while (hi - lo > 1) {
    long mid = (lo + hi) / 2;
    if (clopper_pearson(mid, n, level_).low >= p) hi = mid; else lo = mid;
  }
  return norms_[hi - 1];
}

PcnConstants pcn_constants(const PcnModel& model, long mc_budget,
                           std::uint64_t seed, double level) {
  model.validate();
  const double L = model.phi.lipschitz_constant();
  if (!std::isfinite(L)) throw InvalidArgument("potential is not Lipschitz");
  if (!(L > 0)) throw InvalidArgument("pcn_constants needs a positive Lipschitz constant");
  if (!(model.alpha_bar > -std::numeric_limits<double>::infinity()) ||
      model.alpha_bar > 0) {
    throw InvalidArgument("alpha_bar must be finite and <= 0");
  }
  if (mc_budget < 100 || mc_budget * (1 - level) < 10) {
    throw InvalidArgument("Monte Carlo budget too small for requested confidence");
  }
  BallMeasure ball(model, mc_budget, seed, level);
  PcnConstants k;
  k.level = level;
  k.mc_samples = mc_budget;
  const double rho = model.rho;
  const double beta = std::sqrt(1 - rho * rho);
  const double ea = std::exp(model.alpha_bar);

  k.tau = ball.conservative_quantile(0.75);
  k.annotations.push_back("tau: upper radius (lower CP endpoint reaches 3/4); enlarges b");
  k.alpha_tau = std::log(3.0) / (24 * k.tau * k.tau);
  const double x = std::pow(1 + std::sqrt(2.0), 2) / 6;
  k.D_tau = 0.75 * (std::pow(3.0, 1.0 / 24) + 1 / (1 - std::pow(3.0, x - 1)));
  k.K1 = model.r_bar / beta;
  k.R_pcn1 = model.pcn1_radius();

  double mu_lam = ball.measure(k.K1 * std::pow(model.r_bar, model.a)).low;
  k.annotations.push_back("mu(B(0,K1 r^a)) in lambda: lower endpoint; enlarges lambda");
  k.lambda = 1 - mu_lam * (1 - std::exp(-(1 - rho) * k.R_pcn1 / 2)) * ea;
  if (!(k.lambda < 1)) throw CertificationFailure("pCN lambda estimate is not below 1");

  k.b1 = k.D_tau * std::exp(k.R_pcn1 + (1 - rho * rho) / (4 * k.alpha_tau));
  k.C_alpha_beta = k.D_tau * (1 + std::sqrt(M_PI) * beta / (2 * std::sqrt(k.alpha_tau)));
  const double slope = rho + beta * k.K1;
  k.t_star = std::pow(slope / (2 * k.alpha_tau * k.K1 * k.K1 * model.a),
                      1 / (2 * model.a - 1));
  k.g_t_star = slope * k.t_star -
               k.alpha_tau * k.K1 * k.K1 * std::pow(k.t_star, 2 * model.a);
  k.b2 = k.C_alpha_beta * std::exp(k.g_t_star + beta * k.K1);
  k.b = std::max(k.b1, k.b2);
  if (!std::isfinite(k.b)) {
    throw CertificationFailure(
        "pCN drift constant b overflows (b1 = " + std::to_string(k.b1) +
        ", g(t*) = " + std::to_string(k.g_t_star) +
        "); take a closer to 1 or a smaller r_bar");
  }

  const double rr = 2 * k.R_pcn1 + 1;
  k.p1 = std::exp(-model.phi.sup_on_ball(rr) + model.phi.inf_on_ball(rr));
  double mu_g1 = ball.measure(k.R_pcn1 / beta).low;
  double mu_g2 = ball.measure(k.K1 * std::pow(k.R_pcn1, model.a)).low;
  k.annotations.push_back("ball measures in contraction_gamma: lower endpoints; shrink gamma");
  k.contraction_gamma = std::min(k.p1 * mu_g1, ea * mu_g2) * (1 - rho) / 2;
  if (!(k.contraction_gamma > 0)) {
    throw CertificationFailure("pCN contraction constant estimated as 0; raise mc_budget");
  }
  k.eps_H = k.contraction_gamma / (2 * L);

  k.d = 4 * k.b / (1 - k.lambda) - 1;
  k.R = std::log(k.d);
  double mraw = std::ceil(std::log(k.eps_H / (4 * k.R)) / std::log(rho));
  if (mraw < 1) {
    k.m = 1;
    k.m_floored = true;
  } else if (!(mraw <= 1e6)) {
    throw CertificationFailure("pCN m = " + std::to_string(mraw) + " is unusable");
  } else {
    k.m = static_cast<int>(mraw);
  }
  k.R_m = k.R / (k.m * beta);
  double mu_eps = ball.measure(k.R_m).low;
  k.annotations.push_back("mu(B(0,R_m)) in eps: lower endpoint; shrinks eps");
  k.eps = std::min(k.contraction_gamma, std::pow(k.p1 * mu_eps, k.m) / 2);
  if (!(k.eps > 0)) throw CertificationFailure("pCN eps estimated as 0");
  // V = exp(1 + |x|) so that V >= e; drift and level set scale by e.
  k.wass = WassCertificate{k.lambda, M_E * k.b, M_E * k.d, k.m,
                           std::min(k.eps, 1 - 1e-12), 1.0};
  k.wass.validate();
  k.pi_V_upper = k.wass.b / (1 - k.lambda);
  k.pi_sqrtV_upper = std::sqrt(k.pi_V_upper);
  return k;
}

Eigen::VectorXd pcn_reference_sample(const PcnModel& model, Rng& rng) {
  Eigen::VectorXd z(model.dim);
  for (int i = 0; i < model.dim; ++i) z(i) = std::sqrt(model.cov(i)) * std_normal(rng);
  return z;
}

namespace {

Eigen::VectorXd advance(const PcnModel& model, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& z, double u) {
  Eigen::VectorXd prop = model.rho * x + std::sqrt(1 - model.rho * model.rho) * z;
  double la = model.phi.value(x) - model.phi.value(prop);
  if (la >= 0 || std::log(u) <= la) return prop;
  return x;
}

}  // namespace

Eigen::VectorXd pcn_step(const PcnModel& model, const Eigen::VectorXd& x,
                         Rng& rng) {
  Eigen::VectorXd z = pcn_reference_sample(model, rng);
  double u = uniform01(rng);
  return advance(model, x, z, u);
}

void pcn_coupled_step(const PcnModel& model, Eigen::VectorXd& x,
                      Eigen::VectorXd& xp, Rng& rng) {
  Eigen::VectorXd z = pcn_reference_sample(model, rng);
  double u = uniform01(rng);
  x = advance(model, x, z, u);
  xp = advance(model, xp, z, u);
}

double pcn_V(const Eigen::VectorXd& x) { return std::exp(1 + x.norm()); }

double pcn_cost(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double eps_H) {
  return std::min(1.0, (a - b).norm() / eps_H);
}

double pcn_observable(const PcnModel& model, const Eigen::VectorXd& x) {
  return std::clamp(x(0) / model.obs_scale, -1.0, 1.0);
}

}  // namespace mcb
