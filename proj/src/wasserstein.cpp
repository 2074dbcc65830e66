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

#include "mcbounds/wasserstein.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

struct Derived {
  double lbar, bm, dbar;
};

Derived derived(const WassCertificate& c) {
  double lm = std::pow(c.lambda, c.m);
  double bm = c.b * (1 - lm) / (1 - c.lambda);
  return {lm + 2 * bm / (1 + c.d), bm, (c.d + 1) / 2};
}

}  // namespace

void WassCertificate::validate() const {
  auto bad = [](const std::string& s) {
    throw CertificateError("certificate invalid: " + s);
  };
  if (!(lambda > 0 && lambda < 1)) bad("lambda in (0,1)");
  if (!(b >= 0)) bad("b >= 0");
  if (!(d > 0)) bad("d > 0");
  if (m < 1) bad("m >= 1");
  if (!(eps > 0 && eps < 1)) bad("eps in (0,1)");
  if (!(kappa_K >= 1)) bad("kappa_K >= 1");
  if (!(lambda + 2 * b / (1 + d) < 1)) bad("lambda + 2b/(1+d) < 1");
}

double delta_lhs(const WassCertificate& c, double delta) {
  auto v = derived(c);
  return (1 - c.eps) * (v.lbar + v.bm + delta) / (1 + delta);
}

double delta_rhs(const WassCertificate& c, double delta) {
  auto v = derived(c);
  return (v.lbar * v.dbar + delta) / (v.dbar + delta);
}

DeltaStar delta_star(const WassCertificate& cert) {
  cert.validate();
  auto v = derived(cert);
  DeltaStar r;
  r.monotone_precondition = v.lbar + v.bm >= 1;
  if (!((1 - cert.eps) * (v.lbar + v.bm) > v.lbar)) {
    r.degenerate = true;
    return r;
  }
  auto f = [&](double x) { return delta_lhs(cert, x) - delta_rhs(cert, x); };
  double lo = 0, hi = 1;
  int expand = 0;
  while (f(hi) > 0) {
    lo = hi;
    hi *= 2;
    if (++expand > 2000 || !std::isfinite(hi)) {
      std::ostringstream os;
      os << "delta_star bracket expansion failed: hi=" << hi
         << " f(hi)=" << f(hi) << " lambda_bar=" << v.lbar << " b_m=" << v.bm;
      throw InternalError(os.str());
    }
  }
  double mid = lo;
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    double fm = f(mid);
    r.iterations = it + 1;
    if (fm == 0) break;
    if (fm > 0) lo = mid; else hi = mid;
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  r.value = mid;
  r.residual = std::fabs(f(mid));
  if (!(r.residual < 1e-12)) {
    std::ostringstream os;
    os << "delta_star residual " << r.residual << " above 1e-12";
    throw InternalError(os.str());
  }
  return r;
}

WassRate contraction_rate(const WassCertificate& cert, double pi_V) {
  auto ds = delta_star(cert);
  auto v = derived(cert);
  WassRate r;
  r.delta_star = ds.value;
  r.residual = ds.residual;
  r.degenerate = ds.degenerate;
  r.lambda_bar_m = v.lbar;
  r.b_m = v.bm;
  r.d_bar = v.dbar;
  double ratio = (v.lbar * v.dbar + ds.value) / (v.dbar + ds.value);
  r.log_varrho = std::log(ratio) / (2.0 * cert.m);
  r.varrho = std::exp(r.log_varrho);
  if (!(r.varrho < 1)) throw CertificateError("varrho >= 1");
  r.c_K = std::sqrt(1 + cert.b / (1 - cert.lambda) + ds.value) /
          std::exp(cert.m * r.log_varrho);
  r.zeta = std::sqrt(pi_V) * r.c_K / std::sqrt(2.0);
  r.C1 = 2 * std::sqrt(2.0) * std::pow(cert.kappa_K, cert.m / 2.0) * r.c_K *
         std::sqrt(pi_V);
  return r;
}

double wasser_mixing_bound(const WassRate& rate, double kappa_K, int m, long n,
                           double xi_sqrtV, double pi_sqrtV) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  return std::pow(kappa_K, m / 2.0) * rate.c_K *
         std::exp(n * rate.log_varrho) * (xi_sqrtV + pi_sqrtV) / std::sqrt(2.0);
}

}  // namespace mcb
