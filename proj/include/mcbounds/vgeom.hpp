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

#ifndef MCBOUNDS_VGEOM_HPP_
#define MCBOUNDS_VGEOM_HPP_

#include <optional>

namespace mcb {

// Drift + small-set witness: QV <= lambda V + b and {V <= d} is (m, eps)-small.
struct DriftCertificate {
  double lambda = 0.5;
  double b = 1.0;
  double d = 10.0;
  int m = 1;
  double eps = 0.5;
  std::optional<double> pi_V;

  // Throws CertificateError naming the first violated inequality.
  void validate() const;
};

struct PiV {
  double value;
  bool fallback;  // true when b/(1-lambda) was substituted
};

// pi(V) if known, else the stationary upper bound b/(1-lambda).
PiV resolve_pi_V(const DriftCertificate& cert);

struct GeomRate {
  double rho = 0;
  double log_rho = 0;
  double c = 0;
  double lambda_bar_m = 0;
  double b_m = 0;
  double b_bar_m = 0;
};

GeomRate geometric_rate(const DriftCertificate& cert);

// 2 (c rho^n pi(V) V(x))^alpha.
double valpha_deviation(const GeomRate& rate, double pi_V, double alpha,
                        double V_x, long n);

// 5 n c^{1/2} rho^{-1/2} / log(1/rho) * pi(V)^{3/2} * norm_g^2.
double variance_upper(long n, const GeomRate& rate, double pi_V,
                      double norm_g);

}  // namespace mcb

#endif  // MCBOUNDS_VGEOM_HPP_
