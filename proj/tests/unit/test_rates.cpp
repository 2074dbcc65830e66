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

#include <cmath>

#include <gtest/gtest.h>

#include "mcbounds/errors.hpp"
#include "mcbounds/vgeom.hpp"
#include "mcbounds/wasserstein.hpp"

namespace {

mcb::DriftCertificate base_cert() {
  mcb::DriftCertificate c;
  c.lambda = 0.5;
  c.b = 1;
  c.d = 9;
  c.m = 1;
  c.eps = 0.5;
  return c;
}

mcb::WassCertificate base_wass(double eps = 0.5) {
  mcb::WassCertificate c;
  c.lambda = 0.5;
  c.b = 1;
  c.d = 9;
  c.m = 1;
  c.eps = eps;
  return c;
}

TEST(VGeom, ReferenceCertificate) {
  auto r = mcb::geometric_rate(base_cert());
  EXPECT_NEAR(r.lambda_bar_m, 0.7, 1e-15);
  EXPECT_NEAR(r.b_m, 1.0, 1e-15);
  EXPECT_NEAR(r.b_bar_m, 9.5, 1e-15);
  double want = std::log(0.5) * std::log(0.7) / std::log(0.35 / 9.5);
  EXPECT_NEAR(r.log_rho, want, 1e-14);
  EXPECT_NEAR(r.rho, std::exp(want), 1e-14);
  EXPECT_NEAR(r.rho, 0.9278, 1e-4);
  EXPECT_NEAR(r.c, 104.0, 0.05);
}

TEST(VGeom, TwoStepCertificate) {
  auto c = base_cert();
  c.m = 2;
  auto r = mcb::geometric_rate(c);
  EXPECT_NEAR(r.b_m, 1.5, 1e-14);
  EXPECT_NEAR(r.lambda_bar_m, 0.55, 1e-14);
  EXPECT_NEAR(r.b_bar_m, 9.375, 1e-14);
}

TEST(VGeom, NoMinorizationNoMixing) {
  auto c = base_cert();
  double prev = 0;
  for (double e : {1e-2, 1e-4, 1e-8}) {
    c.eps = e;
    double rho = mcb::geometric_rate(c).rho;
    EXPECT_LT(rho, 1.0);
    EXPECT_GT(rho, prev);
    prev = rho;
  }
  EXPECT_GT(prev, 1 - 1e-6);
}

TEST(VGeom, InvalidCertificatesRejected) {
  auto c = base_cert();
  c.lambda = 1.0;
  EXPECT_THROW(mcb::geometric_rate(c), mcb::CertificateError);
  c = base_cert();
  c.eps = 0;
  EXPECT_THROW(mcb::geometric_rate(c), mcb::CertificateError);
  c = base_cert();
  c.m = 0;
  EXPECT_THROW(mcb::geometric_rate(c), mcb::CertificateError);
}

TEST(VGeom, PiVFallback) {
  auto c = base_cert();
  auto p = mcb::resolve_pi_V(c);
  EXPECT_TRUE(p.fallback);
  // b/(1-lambda) = 2, but pi(V) >= min V >= e.
  EXPECT_DOUBLE_EQ(p.value, std::exp(1.0));
  c.b = 3;
  EXPECT_DOUBLE_EQ(mcb::resolve_pi_V(c).value, 6.0);
  c.b = 1;
  c.pi_V = 3.25;
  p = mcb::resolve_pi_V(c);
  EXPECT_FALSE(p.fallback);
  EXPECT_DOUBLE_EQ(p.value, 3.25);
}

TEST(VGeom, DeviationBound) {
  auto r = mcb::geometric_rate(base_cert());
  EXPECT_NEAR(mcb::valpha_deviation(r, 2.0, 1.0, 5.0, 0), 2 * r.c * 2.0 * 5.0, 1e-9);
  double e = std::exp(1.0);
  double want = 2 * std::sqrt(r.c * std::pow(r.rho, 10) * e * e);
  EXPECT_NEAR(mcb::valpha_deviation(r, e, 0.5, e, 10), want, 1e-9 * want);
}

TEST(VGeom, VarianceUpperAtZero) {
  auto r = mcb::geometric_rate(base_cert());
  EXPECT_EQ(mcb::variance_upper(0, r, 2.0, 1.0), 0.0);
  double prev = 0;
  for (long n = 1; n < 30; ++n) {
    double v = mcb::variance_upper(n, r, 2.0, 1.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Wasserstein, DeltaStarMatchesQuadratic) {
  auto d = mcb::delta_star(base_wass());
  double want = -1.15 + std::sqrt(1.15 * 1.15 + 1.5);
  EXPECT_NEAR(d.value, want, 1e-10);
  EXPECT_FALSE(d.degenerate);
  EXPECT_NEAR(mcb::delta_lhs(base_wass(), d.value), mcb::delta_rhs(base_wass(), d.value), 1e-9);
}

TEST(Wasserstein, DegenerateBranch) {
  auto d = mcb::delta_star(base_wass(0.9));
  EXPECT_TRUE(d.degenerate);
  EXPECT_EQ(d.value, 0.0);
  auto r = mcb::contraction_rate(base_wass(0.9), 2.0);
  EXPECT_NEAR(r.varrho, std::sqrt(0.7), 1e-14);
  auto c3 = base_wass(0.9);
  c3.m = 3;
  auto r3 = mcb::contraction_rate(c3, 2.0);
  EXPECT_NEAR(r3.varrho, std::pow(r3.lambda_bar_m, 1.0 / 6), 1e-14);
}

TEST(Wasserstein, ContractionRate) {
  auto r = mcb::contraction_rate(base_wass(), 2.0);
  EXPECT_NEAR(r.lambda_bar_m, 0.7, 1e-15);
  EXPECT_NEAR(r.d_bar, 5.0, 1e-15);
  double ds = -1.15 + std::sqrt(1.15 * 1.15 + 1.5);
  double rho = std::sqrt((3.5 + ds) / (5 + ds));
  EXPECT_NEAR(r.varrho, rho, 1e-10);
  EXPECT_NEAR(r.varrho, 0.8537, 5e-5);
  EXPECT_NEAR(r.c_K, std::sqrt(3.0 + ds) / rho, 1e-9);
  EXPECT_NEAR(r.c_K, 2.201, 5e-4);
}

TEST(Wasserstein, MixingBoundAtZero) {
  auto c = base_wass();
  c.kappa_K = 1.5;
  c.m = 2;
  auto r = mcb::contraction_rate(c, 2.0);
  double want = std::pow(1.5, 1.0) * r.c_K * (3.0 + 1.4) / std::sqrt(2.0);
  EXPECT_NEAR(mcb::wasser_mixing_bound(r, 1.5, 2, 0, 3.0, 1.4), want, 1e-12 * want);
  EXPECT_LT(mcb::wasser_mixing_bound(r, 1.5, 2, 40, 3.0, 1.4), want);
}

}  // namespace
