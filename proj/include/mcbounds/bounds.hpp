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

#ifndef MCBOUNDS_BOUNDS_HPP_
#define MCBOUNDS_BOUNDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcbounds/log_value.hpp"
#include "mcbounds/vgeom.hpp"
#include "mcbounds/wasserstein.hpp"

namespace mcb {

// T5NS is the non-stationary V-norm tail bound; T11 its Wasserstein twin.
enum class TheoremId {
  T1, T2, T3, T4, T5, T5NS, T6, T7, T8, T9, T10, T11, HPRadius
};

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

// Which norm of g-bar norm_g holds.
enum class NormKind {
  VPow,     // ||.||_{V^{1/(2q)}}
  WGamma,   // ||.||_{W^gamma}, W = log V
  NVPow,    // N_{1/(4q), V}
  NWGamma,  // N_{1, W^gamma}
};

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

enum class VarProvenance { Exact, EmpiricalUpper, AnalyticUpper };

std::string to_string(VarProvenance p);
VarProvenance var_provenance_from_string(const std::string& s);

struct BoundInputs {
  int q = 1;
  double gamma = 0.0;
  long n = 1;
  double norm_g = 0.0;
  NormKind norm_kind = NormKind::VPow;
  std::optional<double> var_Sn;
  VarProvenance var_provenance = VarProvenance::Exact;
  std::optional<GeomRate> geom;
  std::optional<WassRate> wass;
  double kappa_K = 1.0;
  int m = 1;
  std::optional<double> pi_V;
  std::optional<double> xi_V;
  std::optional<double> xi_sqrtV;
  std::optional<double> pi_sqrtV;
  // Lower bound on the spectral density; replaces var_Sn by n f_min in the
  // Bernstein constant when set.
  std::optional<double> f_min;
  // Stationary moment E_pi|S_n|^{2q} for the shifted moment bounds. When
  // absent the stationary bound is used instead.
  std::optional<double> stationary_moment;
};

struct BoundReport {
  TheoremId theorem = TheoremId::T1;
  BoundInputs inputs;
  LogValue value;
  double raw = 0.0;                // exp(value), may be inf
  std::optional<double> clamped;   // tail bounds only
  LogValue leading;                // variance term (or stationary part)
  LogValue remainder;              // cumulant remainder (or shift term)
  double t = 0.0;                  // tail threshold when relevant
  std::vector<std::string> notes;
  std::uint64_t provenance = 0;    // hash of (model, g, n, q or t)
};

BoundReport rosenthal_v(const BoundInputs& in);          // T1
BoundReport rosenthal_v_shift(const BoundInputs& in);    // T2
BoundReport rosenthal_logv(const BoundInputs& in);       // T3
BoundReport rosenthal_logv_shift(const BoundInputs& in); // T4

enum class WMode { T6, T7, T8, T9 };
BoundReport rosenthal_w_family(WMode mode, const BoundInputs& in);

// Constant of the V-geometric Bernstein bound.
LogValue bernstein_constant_v(const BoundInputs& in);
// Constant of the Wasserstein Bernstein bound.
LogValue bernstein_constant_w(const BoundInputs& in);

// 2 exp(-(t^2/2) / (var + B^{1/(gamma+3)} t^{2-1/(gamma+3)})).
BoundReport bernstein_tail(double t, double var_Sn, const LogValue& Bconst,
                           double gamma, TheoremId id = TheoremId::T5);

// 2 sqrt(var) sqrt(log(4/delta)) + 4^{gamma+3} B log(4/delta)^{gamma+3}.
double deviation_radius(double delta, double var_Sn, const LogValue& Bconst,
                        double gamma);

BoundReport nonstationary_tail_v(double t, const BoundInputs& in);
BoundReport nonstationary_tail_w(double t, const BoundInputs& in);

// sup_{a >= e} a^{-u/4} log a, closed form.
double sup_factor(double upsilon);
// Same quantity by grid search over log a in [1, log_a_max].
double sup_factor_grid(double upsilon, double log_a_max, int points);

// Dispatch by theorem id. Tail theorems use t.
BoundReport evaluate(TheoremId id, const BoundInputs& in, double t = 0.0);

}  // namespace mcb

#endif  // MCBOUNDS_BOUNDS_HPP_
