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

#include "mcbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mcbounds/combinatorics.hpp"
#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

const double kLog2 = std::log(2.0);

LogValue lv(double x) { return LogValue::from_double(x); }
LogValue lexp(double l) { return LogValue::from_log(l); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

void check_common(const BoundInputs& in) {
  require(in.q >= 1, "q must be >= 1");
  require(in.gamma >= 0, "gamma must be >= 0");
  require(in.n >= 1, "n must be >= 1");
  require(in.norm_g >= 0, "norm_g must be >= 0");
}

void check_norm(const BoundInputs& in, NormKind want, const char* thm) {
  if (in.norm_kind != want) {
    throw InvalidArgument(std::string(thm) + " needs norm " + to_string(want) +
                          ", got " + to_string(in.norm_kind));
  }
}

const GeomRate& geom(const BoundInputs& in) {
  require(in.geom.has_value(), "V-geometric rate (rho, c) required");
  return *in.geom;
}

const WassRate& wass(const BoundInputs& in) {
  require(in.wass.has_value(), "Wasserstein rate required");
  return *in.wass;
}

double pi_V(const BoundInputs& in) {
  require(in.pi_V.has_value(), "pi(V) required (use the b/(1-lambda) fallback)");
  return *in.pi_V;
}

double var(const BoundInputs& in) {
  require(in.var_Sn.has_value(), "var_Sn required");
  require(*in.var_Sn >= 0, "var_Sn must be >= 0");
  return *in.var_Sn;
}

double log_gaussian_moment(int q) {
  return log_factorial(2 * q) - log_factorial(q) - q * kLog2;
}

// m_q var^q + C^{2q} N^{2q} pref sum_u B(u,q) n^u / (r^{u/2} log^{2q-u}(1/r)).
void rosenthal_core(const BoundInputs& in, double log_r, double C,
                    bool with_gamma, BoundReport& rep) {
  const int q = in.q;
  rep.leading = lexp(log_gaussian_moment(q)) * lv(var(in)).pow(q);
  LogValue sum;
  const double llr = std::log(-log_r);
  for (int u = 1; u <= q - 1; ++u) {
    LogValue B = with_gamma ? b_coefficient(in.gamma, u, q).value
                            : b_coefficient(0.0, u, q).value;
    sum += B * lexp(u * std::log(double(in.n)) - 0.5 * u * log_r -
                    (2 * q - u) * llr);
  }
  LogValue pref = lv(C).pow(2 * q) * lv(in.norm_g).pow(2 * q);
  if (with_gamma) pref *= lv(pow0(2 * in.gamma, 2 * in.gamma * q));
  rep.remainder = pref * sum;
  rep.value = rep.leading + rep.remainder;
  rep.raw = rep.value.to_double();
}

void finish_tail(BoundReport& rep) {
  rep.raw = rep.value.to_double();
  rep.clamped = std::min(1.0, rep.raw);
}

LogValue stationary_part(const BoundInputs& in, const BoundReport& base) {
  if (in.stationary_moment) {
    require(*in.stationary_moment >= 0, "stationary moment must be >= 0");
    return lv(*in.stationary_moment);
  }
  return base.value;
}

}  // namespace

std::string to_string(TheoremId id) {
  static const char* names[] = {"T1", "T2", "T3",  "T4", "T5",  "T5NS",
                                "T6", "T7", "T8",  "T9", "T10", "T11",
                                "HP-radius"};
  return names[static_cast<int>(id)];
}

TheoremId theorem_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(TheoremId::HPRadius); ++i) {
    if (to_string(static_cast<TheoremId>(i)) == s) return static_cast<TheoremId>(i);
  }
  throw InvalidArgument("unknown theorem id '" + s + "'");
}

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::VPow: return "V_pow";
    case NormKind::WGamma: return "W_gamma";
    case NormKind::NVPow: return "N_V_pow";
    case NormKind::NWGamma: return "N_W_gamma";
  }
  return "?";
}

NormKind norm_kind_from_string(const std::string& s) {
  for (auto k : {NormKind::VPow, NormKind::WGamma, NormKind::NVPow, NormKind::NWGamma}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown norm kind '" + s + "'");
}

std::string to_string(VarProvenance p) {
  switch (p) {
    case VarProvenance::Exact: return "exact";
    case VarProvenance::EmpiricalUpper: return "empirical-upper";
    case VarProvenance::AnalyticUpper: return "analytic-upper";
  }
  return "?";
}

VarProvenance var_provenance_from_string(const std::string& s) {
  for (auto p : {VarProvenance::Exact, VarProvenance::EmpiricalUpper,
                 VarProvenance::AnalyticUpper}) {
    if (to_string(p) == s) return p;
  }
  throw InvalidArgument("unknown variance provenance '" + s + "'");
}

BoundReport rosenthal_v(const BoundInputs& in) {
  check_common(in);
  check_norm(in, NormKind::VPow, "T1");
  const auto& r = geom(in);
  BoundReport rep;
  rep.theorem = TheoremId::T1;
  rep.inputs = in;
  rosenthal_core(in, r.log_rho, 2 * r.c * pi_V(in), false, rep);
  rep.notes.push_back("var provenance: " + to_string(in.var_provenance));
  return rep;
}

BoundReport rosenthal_v_shift(const BoundInputs& in) {
  require(in.xi_V.has_value(), "xi(V) required");
  BoundReport base = rosenthal_v(in);
  const auto& r = geom(in);
  const int q = in.q;
  BoundReport rep = base;
  rep.theorem = TheoremId::T2;
  LogValue stat = stationary_part(in, base);
  rep.leading = lexp((2 * q - 1) * kLog2) * stat;
  rep.remainder = lexp((6 * q - 1) * kLog2) * lv(in.norm_g).pow(2 * q) *
                  lv(r.c * (*in.xi_V + pi_V(in))) *
                  lexp(2 * q * std::log(double(q)) - r.log_rho -
                       2 * q * std::log(-r.log_rho));
  rep.value = rep.leading + rep.remainder;
  rep.raw = rep.value.to_double();
  return rep;
}

BoundReport rosenthal_logv(const BoundInputs& in) {
  check_common(in);
  check_norm(in, NormKind::WGamma, "T3");
  const auto& r = geom(in);
  BoundReport rep;
  rep.theorem = TheoremId::T3;
  rep.inputs = in;
  rosenthal_core(in, r.log_rho, 2 * r.c * pi_V(in), true, rep);
  rep.notes.push_back("var provenance: " + to_string(in.var_provenance));
  return rep;
}

BoundReport rosenthal_logv_shift(const BoundInputs& in) {
  require(in.xi_V.has_value(), "xi(V) required");
  BoundReport base = rosenthal_logv(in);
  const auto& r = geom(in);
  const int q = in.q;
  const double g = in.gamma;
  BoundReport rep = base;
  rep.theorem = TheoremId::T4;
  LogValue stat = stationary_part(in, base);
  const double llr = std::log(-r.log_rho);
  LogValue d1 = lexp(-1.0 - r.log_rho + (1 - 4 * q) * llr + log_factorial(4 * q - 2)) +
                lexp(-r.log_rho - llr) * lv(pow0(4 * q * g / std::exp(1.0), 4 * q * g));
  rep.leading = lexp((2 * q - 1) * kLog2) * stat;
  rep.remainder = lexp((4 * q - 2) * kLog2) * lv(in.norm_g).pow(2 * q) *
                  lv(r.c * (*in.xi_V + pi_V(in))) * d1;
  rep.value = rep.leading + rep.remainder;
  rep.raw = rep.value.to_double();
  return rep;
}

BoundReport rosenthal_w_family(WMode mode, const BoundInputs& in) {
  check_common(in);
  const bool poly = mode == WMode::T6 || mode == WMode::T7;
  check_norm(in, poly ? NormKind::NVPow : NormKind::NWGamma,
             poly ? "T6/T7" : "T8/T9");
  const auto& w = wass(in);
  const int q = in.q;
  BoundReport base;
  base.inputs = in;
  base.theorem = poly ? TheoremId::T6 : TheoremId::T8;
  double C1 = 2 * std::sqrt(2.0) * std::pow(in.kappa_K, in.m / 2.0) * w.c_K *
              std::sqrt(pi_V(in));
  rosenthal_core(in, w.log_varrho, C1, !poly, base);
  base.notes.push_back("var provenance: " + to_string(in.var_provenance));
  if (mode == WMode::T6 || mode == WMode::T8) return base;

  require(in.xi_sqrtV.has_value() && in.pi_sqrtV.has_value(),
          "xi(V^{1/2}) and pi(V^{1/2}) required");
  BoundReport rep = base;
  rep.theorem = poly ? TheoremId::T7 : TheoremId::T9;
  LogValue stat = stationary_part(in, base);
  const double A = std::pow(in.kappa_K, in.m / 2.0) * w.c_K *
                   (*in.xi_sqrtV + *in.pi_sqrtV);
  const double llr = std::log(-w.log_varrho);
  rep.leading = lexp((2 * q - 1) * kLog2) * stat;
  if (poly) {
    rep.remainder = lexp((4 * q - 1) * kLog2) * lv(in.norm_g).pow(2 * q) *
                    lv(A) *
                    lexp(2 * q * std::log(double(q)) - w.log_varrho - 2 * q * llr);
  } else {
    const double g = in.gamma;
    LogValue inner =
        lexp(4 * q * (1.5 * kLog2 - llr) + log_factorial(4 * q - 1)) +
        lv(pow0(8 * q * g / std::exp(1.0), 4 * q * g)) * lexp(-llr);
    LogValue d2 = lv(A) * lexp(-w.log_varrho) * inner;
    rep.remainder = lexp((2 * q - 1) * kLog2) * lv(in.norm_g).pow(2 * q) * d2;
  }
  rep.value = rep.leading + rep.remainder;
  rep.raw = rep.value.to_double();
  return rep;
}

LogValue bernstein_constant_v(const BoundInputs& in) {
  check_common(in);
  const auto& r = geom(in);
  const double g = in.gamma;
  const double C0 = 2 * r.c * pi_V(in);
  const double llr = std::log(-r.log_rho);
  // log of the ratio n rho^{-1/2} log(1/rho)^{-1} C0^2 N^2 / var.
  LogValue num = lexp(std::log(double(in.n)) - 0.5 * r.log_rho - llr) *
                 lv(C0 * C0) * lv(in.norm_g).pow(2);
  LogValue den = in.f_min ? lv(in.n * *in.f_min) : lv(var(in));
  require(!den.is_zero(), "variance (or n f_min) must be > 0");
  LogValue ratio = num / den;
  LogValue mx = ratio < LogValue::one() ? LogValue::one() : ratio;
  return mx * lexp((1 + 3 * g) * kLog2) * lv(pow0(g, 3 * g)) * lv(C0) *
         lv(in.norm_g) * lexp(-llr);
}

LogValue bernstein_constant_w(const BoundInputs& in) {
  check_common(in);
  const auto& w = wass(in);
  const double g = in.gamma;
  const double C1 = 2 * std::sqrt(2.0) * std::pow(in.kappa_K, in.m / 2.0) *
                    w.c_K * std::sqrt(pi_V(in));
  const double llr = std::log(-w.log_varrho);
  LogValue num = lexp(std::log(double(in.n)) - 0.5 * w.log_varrho - llr) *
                 lv(C1 * C1) * lv(pow0(2 * g, 4 * g)) * lv(in.norm_g).pow(2);
  LogValue den = in.f_min ? lv(in.n * *in.f_min) : lv(var(in));
  require(!den.is_zero(), "variance (or n f_min) must be > 0");
  LogValue ratio = num / den;
  LogValue mx = ratio < LogValue::one() ? LogValue::one() : ratio;
  return mx * lv(2 * pow0(2 * g, 2 * g)) * lv(C1) * lv(in.norm_g) *
         lexp(-llr);
}

BoundReport bernstein_tail(double t, double var_Sn, const LogValue& Bconst,
                           double gamma, TheoremId id) {
  require(t >= 0, "t must be >= 0");
  require(var_Sn >= 0, "var_Sn must be >= 0");
  require(gamma >= 0, "gamma must be >= 0");
  BoundReport rep;
  rep.theorem = id;
  rep.t = t;
  rep.inputs.var_Sn = var_Sn;
  rep.inputs.gamma = gamma;
  const double a = 1.0 / (gamma + 3);
  double expo = 0.0;
  if (t > 0) {
    double heavy = Bconst.is_zero()
                       ? 0.0
                       : std::exp(a * Bconst.log_abs() + (2 - a) * std::log(t));
    double den = var_Sn + heavy;
    expo = den == 0 ? -INFINITY : -(0.5 * t * t) / den;
  }
  rep.value = expo == -INFINITY ? LogValue::zero() : lexp(kLog2 + expo);
  finish_tail(rep);
  return rep;
}

double deviation_radius(double delta, double var_Sn, const LogValue& Bconst,
                        double gamma) {
  require(delta > 0 && delta < 1, "delta must be in (0,1)");
  require(var_Sn >= 0, "var_Sn must be >= 0");
  const double L = std::log(4.0 / delta);
  return 2 * std::sqrt(var_Sn) * std::sqrt(L) +
         (lexp((gamma + 3) * std::log(4.0) + (gamma + 3) * std::log(L)) * Bconst)
             .to_double();
}

double sup_factor(double upsilon) {
  require(upsilon > 0 && upsilon <= 1, "upsilon must be in (0,1]");
  return 4.0 / (upsilon * std::exp(1.0));
}

double sup_factor_grid(double upsilon, double log_a_max, int points) {
  require(points >= 2 && log_a_max > 1, "bad grid");
  double best = 0;
  for (int i = 0; i < points; ++i) {
    double x = 1.0 + (log_a_max - 1.0) * i / (points - 1);
    best = std::max(best, x * std::exp(-upsilon * x / 4));
  }
  return best;
}

namespace {

// exp(-k t^w / N^w); 0 when N = 0 and t > 0.
double weibull_term(double k, double t, double w, double N) {
  if (t == 0) return 1.0;
  if (N == 0) return 0.0;
  return std::exp(-k * std::pow(t / N, w));
}

}  // namespace

BoundReport nonstationary_tail_v(double t, const BoundInputs& in) {
  require(t >= 0, "t must be >= 0");
  check_norm(in, NormKind::WGamma, "T5NS");
  require(in.xi_V.has_value(), "xi(V) required");
  const auto& r = geom(in);
  const double g = in.gamma;
  const double w = 1.0 / (1 + g);
  const double N = in.norm_g;
  BoundReport stat = bernstein_tail(t / 4, var(in), bernstein_constant_v(in), g);
  double e1 = std::exp(-0.5 * r.log_rho) *
              weibull_term(-r.log_rho / (std::pow(4.0, 1 + w) * w), t, w, N);
  double e2;
  if (g == 0) {
    e2 = t == 0 ? 1.0 / (1 - r.rho) : 0.0;
  } else {
    e2 = weibull_term((1 + g) / (std::pow(2.0, 1 + 2 * w) * g), t, w, N) /
         (1 - r.rho);
  }
  BoundReport rep;
  rep.theorem = TheoremId::T5NS;
  rep.inputs = in;
  rep.t = t;
  rep.leading = lv(*stat.clamped);
  rep.remainder = lv((e1 + e2) * r.c * (*in.xi_V + pi_V(in)));
  rep.value = rep.leading + rep.remainder;
  finish_tail(rep);
  if (g == 0) rep.notes.push_back("gamma=0: second exponential taken as its limit");
  return rep;
}

BoundReport nonstationary_tail_w(double t, const BoundInputs& in) {
  require(t >= 0, "t must be >= 0");
  check_norm(in, NormKind::NWGamma, "T11");
  require(in.xi_sqrtV.has_value() && in.pi_sqrtV.has_value(),
          "xi(V^{1/2}) and pi(V^{1/2}) required");
  const auto& wr = wass(in);
  const double g = in.gamma;
  const double w = 1.0 / (1 + g);
  const double ups = g == 0 ? 1.0 : std::min(1.0, 1.0 / (2 * g));
  const double N = in.norm_g;
  const double lr = wr.log_varrho;
  const double vr = wr.varrho;
  BoundReport stat = bernstein_tail(t / 2, var(in), bernstein_constant_w(in), g,
                                    TheoremId::T10);
  const double A = std::pow(in.kappa_K, in.m / 2.0) * wr.c_K *
                   (*in.pi_sqrtV + *in.xi_sqrtV);
  double q4 = std::pow(vr, 0.25);
  double f2 = 1 + (-lr / 4) * std::sqrt(A) / (q4 * (1 - q4));
  double e2 = weibull_term(-lr / (std::pow(2.0, 3 + w) * w), t, w, N) * f2;
  double f3 = 1 + ups * sup_factor(ups) * std::pow(A, ups) / (1 - std::pow(vr, ups));
  double e3;
  if (g == 0) {
    e3 = t == 0 ? f3 : 0.0;
  } else {
    e3 = weibull_term((1 + g) * ups / (std::pow(2.0, 5 + w) * g), t, w, N) * f3;
  }
  BoundReport rep;
  rep.theorem = TheoremId::T11;
  rep.inputs = in;
  rep.t = t;
  rep.leading = lv(*stat.clamped);
  rep.remainder = lv(e2 + e3);
  rep.value = rep.leading + rep.remainder;
  finish_tail(rep);
  rep.notes.push_back("sup factor uses a^{-u/4} log a (finite form)");
  if (g == 0) rep.notes.push_back("gamma=0: third exponential taken as its limit");
  return rep;
}

BoundReport evaluate(TheoremId id, const BoundInputs& in, double t) {
  switch (id) {
    case TheoremId::T1: return rosenthal_v(in);
    case TheoremId::T2: return rosenthal_v_shift(in);
    case TheoremId::T3: return rosenthal_logv(in);
    case TheoremId::T4: return rosenthal_logv_shift(in);
    case TheoremId::T6: return rosenthal_w_family(WMode::T6, in);
    case TheoremId::T7: return rosenthal_w_family(WMode::T7, in);
    case TheoremId::T8: return rosenthal_w_family(WMode::T8, in);
    case TheoremId::T9: return rosenthal_w_family(WMode::T9, in);
    case TheoremId::T5: {
      check_common(in);
      check_norm(in, NormKind::WGamma, "T5");
      auto rep = bernstein_tail(t, var(in), bernstein_constant_v(in), in.gamma,
                                TheoremId::T5);
      auto tt = rep.t;
      rep.inputs = in;
      rep.t = tt;
      return rep;
    }
    case TheoremId::T10: {
      check_common(in);
      check_norm(in, NormKind::NWGamma, "T10");
      auto rep = bernstein_tail(t, var(in), bernstein_constant_w(in), in.gamma,
                                TheoremId::T10);
      rep.inputs = in;
      return rep;
    }
    case TheoremId::T5NS: return nonstationary_tail_v(t, in);
    case TheoremId::T11: return nonstationary_tail_w(t, in);
    case TheoremId::HPRadius: {
      // t carries delta here.
      check_common(in);
      LogValue B = in.wass ? bernstein_constant_w(in) : bernstein_constant_v(in);
      BoundReport rep;
      rep.theorem = TheoremId::HPRadius;
      rep.inputs = in;
      rep.t = t;
      rep.raw = deviation_radius(t, var(in), B, in.gamma);
      rep.value = lv(rep.raw);
      return rep;
    }
  }
  throw InternalError("unhandled theorem id");
}

}  // namespace mcb
