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

#ifndef MCBOUNDS_WASSERSTEIN_HPP_
#define MCBOUNDS_WASSERSTEIN_HPP_

namespace mcb {

// Drift plus coupling contraction K^m c <= (1 - eps 1_Cbar) c, Kc <= kappa c.
struct WassCertificate {
  double lambda = 0.5;
  double b = 1.0;
  double d = 10.0;
  int m = 1;
  double eps = 0.5;
  double kappa_K = 1.0;

  void validate() const;
};

struct DeltaStar {
  double value = 0;
  double residual = 0;
  bool degenerate = false;  // (1-eps)(lambda_bar+b_m) <= lambda_bar
  bool monotone_precondition = false;  // lambda_bar + b_m >= 1
  int iterations = 0;
};

struct WassRate {
  double delta_star = 0;
  double residual = 0;
  bool degenerate = false;
  double varrho = 0;
  double log_varrho = 0;
  double c_K = 0;
  double zeta = 0;
  double C1 = 0;
  double lambda_bar_m = 0;
  double b_m = 0;
  double d_bar = 0;
};

// Left and right sides of the delta equation at delta.
double delta_lhs(const WassCertificate& cert, double delta);
double delta_rhs(const WassCertificate& cert, double delta);

DeltaStar delta_star(const WassCertificate& cert);
WassRate contraction_rate(const WassCertificate& cert, double pi_V);

// (1/sqrt 2) kappa^{m/2} c_K varrho^n (xi(V^{1/2}) + pi(V^{1/2})).
double wasser_mixing_bound(const WassRate& rate, double kappa_K, int m, long n,
                           double xi_sqrtV, double pi_sqrtV);

}  // namespace mcb

#endif  // MCBOUNDS_WASSERSTEIN_HPP_
