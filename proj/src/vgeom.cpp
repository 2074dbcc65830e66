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

#include "mcbounds/vgeom.hpp"

#include <cmath>
#include <sstream>

#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

[[noreturn]] void fail(const std::string& what, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << "certificate invalid: " << what << " (" << lhs << " vs " << rhs << ")";
  throw CertificateError(os.str());
}

}  // namespace

void DriftCertificate::validate() const {
  if (!(lambda > 0 && lambda < 1)) fail("lambda in (0,1)", lambda, 0);
  if (!(b >= 0)) fail("b >= 0", b, 0);
  if (!(d > 0)) fail("d > 0", d, 0);
  if (m < 1) fail("m >= 1", m, 1);
  if (!(eps > 0 && eps < 1)) fail("eps in (0,1)", eps, 0);
  double side = lambda + 2 * b / (1 + d);
  if (!(side < 1)) fail("lambda + 2b/(1+d) < 1", side, 1);
  if (pi_V) {
    if (!(*pi_V >= std::exp(1.0) * (1 - 1e-15))) fail("pi(V) >= e", *pi_V, std::exp(1.0));
    double ub = b / (1 - lambda);
    if (b >= std::exp(1.0) * (1 - lambda) && *pi_V > ub * (1 + 1e-12)) {
      fail("pi(V) <= b/(1-lambda)", *pi_V, ub);
    }
  }
}

PiV resolve_pi_V(const DriftCertificate& cert) {
  if (cert.pi_V) return {*cert.pi_V, false};
  return {std::max(cert.b / (1 - cert.lambda), std::exp(1.0)), true};
}

GeomRate geometric_rate(const DriftCertificate& cert) {
  cert.validate();
  const double lam = cert.lambda;
  const int m = cert.m;
  GeomRate r;
  double lm = std::pow(lam, m);
  r.b_m = cert.b * (1 - lm) / (1 - lam);
  r.lambda_bar_m = lm + 2 * r.b_m / (1 + cert.d);
  r.b_bar_m = lm * r.b_m + cert.d;
  if (!(r.lambda_bar_m < 1)) fail("lambda_bar_m < 1", r.lambda_bar_m, 1);
  double l1e = std::log1p(-cert.eps);
  double llb = std::log(r.lambda_bar_m);
  double den = l1e + llb - std::log(r.b_bar_m);
  if (!(den < 0)) fail("log(1-eps)+log(lambda_bar)-log(b_bar) < 0", den, 0);
  r.log_rho = l1e * llb / (m * den);
  r.rho = std::exp(r.log_rho);
  r.c = std::exp(-m * r.log_rho) * (lm + (1 - lm) / (1 - lam)) *
        (1 + r.b_bar_m / ((1 - cert.eps) * (1 - r.lambda_bar_m)));
  if (!(r.rho > 0 && r.rho < 1)) fail("rho in (0,1)", r.rho, 1);
  return r;
}

double valpha_deviation(const GeomRate& rate, double pi_V, double alpha,
                        double V_x, long n) {
  if (!(alpha > 0 && alpha <= 1)) throw InvalidArgument("alpha must be in (0,1]");
  if (n < 0) throw InvalidArgument("n must be >= 0");
  double l = std::log(rate.c) + n * rate.log_rho + std::log(pi_V) + std::log(V_x);
  return 2 * std::exp(alpha * l);
}

double variance_upper(long n, const GeomRate& rate, double pi_V,
                      double norm_g) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  if (n == 0) return 0.0;
  return 5.0 * n * std::sqrt(rate.c) / std::sqrt(rate.rho) / (-rate.log_rho) *
         std::pow(pi_V, 1.5) * norm_g * norm_g;
}

}  // namespace mcb
