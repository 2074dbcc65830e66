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

#include "mcbounds/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "mcbounds/combinatorics.hpp"
#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

using Real = long double;
constexpr int kMaxTuple = 8;
constexpr double kMomentBudget = 5e7;

// Neumaier compensated sum.
struct Accum {
  Real s = 0, c = 0;
  void add(Real x) {
    Real t = s + x;
    if (std::fabs(s) >= std::fabs(x)) c += (s - t) + x; else c += (x - t) + s;
    s = t;
  }
  Real value() const { return s + c; }
};

Eigen::MatrixXd mat_pow(const Eigen::MatrixXd& Q, long m) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(Q.rows(), Q.cols());
  Eigen::MatrixXd B = Q;
  while (m > 0) {
    if (m & 1) R = R * B;
    B = B * B;
    m >>= 1;
  }
  return R;
}

void check_tuple(const FiniteChain& chain, const IndexTuple& t, bool sorted) {
  const size_t k = t.times.size();
  if (k == 0 || k != t.observables.size()) {
    throw InvalidArgument("tuple needs matching nonempty times and observables");
  }
  if (k > kMaxTuple) throw InvalidArgument("tuple length above 8");
  for (size_t i = 0; i < k; ++i) {
    if (t.times[i] < 0) throw InvalidArgument("negative time in tuple");
    if (t.observables[i].size() != chain.size()) {
      throw InvalidArgument("observable size does not match state count");
    }
    if (sorted && i > 0 && t.times[i] < t.times[i - 1]) {
      throw InvalidArgument("tuple times must be nondecreasing");
    }
  }
}

// Law of (X_{t_1},...,X_{t_k}) under P_pi; index sum_i x_i S^i.
std::vector<Real> joint_law(const FiniteChain& chain,
                            const std::vector<long>& times) {
  const int S = chain.size();
  std::vector<Real> law(S);
  for (int x = 0; x < S; ++x) law[x] = chain.pi(x);
  size_t stride = S;
  for (size_t i = 1; i < times.size(); ++i) {
    Eigen::MatrixXd P = mat_pow(chain.Q, times[i] - times[i - 1]);
    std::vector<Real> next(law.size() * S);
    size_t prev_stride = stride / S;
    for (size_t idx = 0; idx < law.size(); ++idx) {
      int xprev = static_cast<int>((idx / prev_stride) % S);
      for (int y = 0; y < S; ++y) {
        next[idx + stride * y] = law[idx] * P(xprev, y);
      }
    }
    law.swap(next);
    stride *= S;
  }
  return law;
}

int coord(size_t idx, size_t i, int S) {
  size_t p = 1;
  for (size_t j = 0; j < i; ++j) p *= S;
  return static_cast<int>((idx / p) % S);
}

Real expect(const std::vector<Real>& law, const std::vector<Real>& f) {
  Accum a;
  for (size_t i = 0; i < law.size(); ++i) a.add(law[i] * f[i]);
  return a.value();
}

// Drives the moment recursion; cb(t, a) sees a(x, j) = E[S_{t+1}^j; X_t = x].
void moment_dp(const FiniteChain& chain, long n, int P,
               const std::optional<Eigen::VectorXd>& initial,
               const std::function<void(long, const std::vector<Real>&)>& cb) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (P < 0) throw InvalidArgument("max_power must be >= 0");
  const int S = chain.size();
  if (double(n) * S * S * (P + 1) > kMomentBudget * 10 ||
      double(n) * S * (P + 1) > kMomentBudget) {
    throw InvalidArgument("moment DP exceeds budget");
  }
  Eigen::VectorXd xi = initial ? *initial : chain.pi;
  if (xi.size() != S) throw InvalidArgument("initial law has wrong size");
  const Eigen::VectorXd gb = chain.g_bar();
  std::vector<std::vector<Real>> binom(P + 1, std::vector<Real>(P + 1, 0));
  for (int j = 0; j <= P; ++j) {
    binom[j][0] = 1;
    for (int i = 1; i <= j; ++i) binom[j][i] = binom[j - 1][i - 1] + (i < j ? binom[j - 1][i] : 0);
  }
  std::vector<std::vector<Real>> gpow(S, std::vector<Real>(P + 1, 1));
  for (int x = 0; x < S; ++x)
    for (int j = 1; j <= P; ++j) gpow[x][j] = gpow[x][j - 1] * Real(gb(x));
  std::vector<Real> a(S * (P + 1)), c(S * (P + 1));
  for (int x = 0; x < S; ++x)
    for (int j = 0; j <= P; ++j) a[x * (P + 1) + j] = Real(xi(x)) * gpow[x][j];
  cb(0, a);
  for (long t = 1; t < n; ++t) {
    for (int y = 0; y < S; ++y) {
      for (int i = 0; i <= P; ++i) {
        Accum s;
        for (int x = 0; x < S; ++x) s.add(Real(chain.Q(x, y)) * a[x * (P + 1) + i]);
        c[y * (P + 1) + i] = s.value();
      }
    }
    for (int y = 0; y < S; ++y) {
      for (int j = 0; j <= P; ++j) {
        Accum s;
        for (int i = 0; i <= j; ++i) {
          s.add(binom[j][i] * c[y * (P + 1) + i] * gpow[y][j - i]);
        }
        a[y * (P + 1) + j] = s.value();
      }
    }
    cb(t, a);
  }
}

std::vector<double> column_sums(const std::vector<Real>& a, int S, int P) {
  std::vector<double> out(P + 1);
  for (int j = 0; j <= P; ++j) {
    Accum s;
    for (int x = 0; x < S; ++x) s.add(a[x * (P + 1) + j]);
    out[j] = static_cast<double>(s.value());
  }
  return out;
}

RationalMatrix rat_mul(const RationalMatrix& A, const RationalMatrix& B) {
  const size_t n = A.size();
  RationalMatrix C(n, RationalVector(n, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (A[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

RationalMatrix rat_pow(const RationalMatrix& Q, long m) {
  const size_t n = Q.size();
  RationalMatrix R(n, RationalVector(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) R[i][i] = 1;
  RationalMatrix B = Q;
  while (m > 0) {
    if (m & 1) R = rat_mul(R, B);
    m >>= 1;
    if (m) B = rat_mul(B, B);
  }
  return R;
}

void check_rational_tuple(const RationalChain& chain, const RationalTuple& t) {
  const size_t k = t.times.size();
  if (k == 0 || k != t.observables.size()) {
    throw InvalidArgument("tuple needs matching nonempty times and observables");
  }
  if (k > kMaxTuple) throw InvalidArgument("tuple length above 8");
  for (size_t i = 0; i < k; ++i) {
    if (t.times[i] < 0) throw InvalidArgument("negative time in tuple");
    if (static_cast<int>(t.observables[i].size()) != chain.size()) {
      throw InvalidArgument("observable size does not match state count");
    }
    if (i > 0 && t.times[i] < t.times[i - 1]) {
      throw InvalidArgument("tuple times must be nondecreasing");
    }
  }
}

std::vector<Rational> rational_joint_law(const RationalChain& chain,
                                         const std::vector<long>& times) {
  const int S = chain.size();
  std::vector<Rational> law(chain.pi.begin(), chain.pi.end());
  size_t stride = S;
  for (size_t i = 1; i < times.size(); ++i) {
    RationalMatrix P = rat_pow(chain.Q, times[i] - times[i - 1]);
    std::vector<Rational> next(law.size() * S);
    size_t prev_stride = stride / S;
    for (size_t idx = 0; idx < law.size(); ++idx) {
      int xprev = static_cast<int>((idx / prev_stride) % S);
      for (int y = 0; y < S; ++y) next[idx + stride * y] = law[idx] * P[xprev][y];
    }
    law.swap(next);
    stride *= S;
  }
  return law;
}

double rel_diff(double a, double b) {
  double m = std::max(std::fabs(a), std::fabs(b));
  if (m == 0) return 0;
  return std::fabs(a - b) / m;
}

}  // namespace

double centered_moment(const FiniteChain& chain, const IndexTuple& tuple) {
  check_tuple(chain, tuple, true);
  const int S = chain.size();
  const size_t k = tuple.times.size();
  auto law = joint_law(chain, tuple.times);
  std::vector<Real> Z(law.size(), 1);
  for (size_t l = k; l-- > 1;) {
    for (size_t idx = 0; idx < law.size(); ++idx) {
      Z[idx] *= tuple.observables[l](coord(idx, l, S));
    }
    Real mean = expect(law, Z);
    for (auto& z : Z) z -= mean;
  }
  for (size_t idx = 0; idx < law.size(); ++idx) {
    Z[idx] *= tuple.observables[0](coord(idx, 0, S));
  }
  return static_cast<double>(expect(law, Z));
}

double raw_joint_moment(const FiniteChain& chain, const IndexTuple& tuple) {
  check_tuple(chain, tuple, false);
  const size_t k = tuple.times.size();
  std::vector<size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return tuple.times[a] < tuple.times[b];
  });
  std::vector<long> times;
  for (size_t i : order) times.push_back(tuple.times[i]);
  auto law = joint_law(chain, times);
  const int S = chain.size();
  std::vector<Real> f(law.size(), 1);
  for (size_t idx = 0; idx < law.size(); ++idx) {
    for (size_t i = 0; i < k; ++i) {
      f[idx] *= tuple.observables[order[i]](coord(idx, i, S));
    }
  }
  return static_cast<double>(expect(law, f));
}

double joint_cumulant(const FiniteChain& chain, const IndexTuple& tuple) {
  check_tuple(chain, tuple, false);
  const int k = static_cast<int>(tuple.times.size());
  std::vector<double> sub(1u << k, 0.0);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    IndexTuple t;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        t.times.push_back(tuple.times[i]);
        t.observables.push_back(tuple.observables[i]);
      }
    }
    sub[mask] = raw_joint_moment(chain, t);
  }
  // Set partitions as restricted growth strings.
  std::vector<int> rgs(k, 0);
  Accum total;
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == k) {
      std::vector<unsigned> masks(blocks, 0);
      for (int i = 0; i < k; ++i) masks[rgs[i]] |= 1u << i;
      Real prod = 1;
      for (unsigned m : masks) prod *= sub[m];
      Real coef = (blocks % 2 == 1 ? 1 : -1) *
                  static_cast<Real>(factorial(blocks - 1).convert_to<double>());
      total.add(coef * prod);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  rec(1, 1);
  return static_cast<double>(total.value());
}

ReductionCheck markov_reduction_check(const FiniteChain& chain,
                                      const IndexTuple& tuple, double tol) {
  check_tuple(chain, tuple, true);
  const size_t k = tuple.times.size();
  if (k < 2) throw InvalidArgument("reduction needs k >= 2");
  ReductionCheck r;
  r.lhs = centered_moment(chain, tuple);
  const Eigen::VectorXd& hk = tuple.observables[k - 1];
  Eigen::VectorXd ht = mat_pow(chain.Q, tuple.times[k - 1] - tuple.times[k - 2]) * hk;
  ht.array() -= chain.pi.dot(hk);
  IndexTuple red;
  red.times.assign(tuple.times.begin(), tuple.times.end() - 1);
  red.observables.assign(tuple.observables.begin(), tuple.observables.end() - 1);
  red.observables.back() = red.observables.back().cwiseProduct(ht);
  r.rhs = centered_moment(chain, red);
  r.rel_err = rel_diff(r.lhs, r.rhs);
  r.pass = r.rel_err < tol;
  return r;
}

RationalChain RationalChain::make(const RationalMatrix& Q) {
  const size_t S = Q.size();
  if (S == 0) throw InvalidArgument("empty transition matrix");
  for (const auto& row : Q) {
    if (row.size() != S) throw InvalidArgument("transition matrix must be square");
    Rational sum = 0;
    for (const auto& q : row) {
      if (q < 0) throw InvalidArgument("negative transition probability");
      sum += q;
    }
    if (sum != 1) throw InvalidArgument("rows must sum to 1 exactly");
  }
  // Rows of A: (Q^T - I) with the last equation replaced by sum(pi) = 1.
  RationalMatrix A(S, RationalVector(S + 1, Rational(0)));
  for (size_t i = 0; i < S; ++i) {
    for (size_t j = 0; j < S; ++j) A[i][j] = Q[j][i] - (i == j ? 1 : 0);
  }
  for (size_t j = 0; j < S; ++j) A[S - 1][j] = 1;
  A[S - 1][S] = 1;
  for (size_t c = 0; c < S; ++c) {
    size_t p = c;
    while (p < S && A[p][c] == 0) ++p;
    if (p == S) throw InvalidArgument("chain is not irreducible");
    std::swap(A[p], A[c]);
    for (size_t r = 0; r < S; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (size_t j = c; j <= S; ++j) A[r][j] -= f * A[c][j];
    }
  }
  RationalChain ch;
  ch.Q = Q;
  ch.pi.resize(S);
  for (size_t i = 0; i < S; ++i) ch.pi[i] = A[i][S] / A[i][i];
  return ch;
}

Rational centered_moment_exact(const RationalChain& chain, const RationalTuple& tuple) {
  check_rational_tuple(chain, tuple);
  const int S = chain.size();
  const size_t k = tuple.times.size();
  auto law = rational_joint_law(chain, tuple.times);
  auto expect_r = [&](const std::vector<Rational>& f) {
    Rational a = 0;
    for (size_t i = 0; i < law.size(); ++i) a += law[i] * f[i];
    return a;
  };
  std::vector<Rational> Z(law.size(), Rational(1));
  for (size_t l = k; l-- > 1;) {
    for (size_t idx = 0; idx < law.size(); ++idx) Z[idx] *= tuple.observables[l][coord(idx, l, S)];
    Rational mean = expect_r(Z);
    for (auto& z : Z) z -= mean;
  }
  for (size_t idx = 0; idx < law.size(); ++idx) Z[idx] *= tuple.observables[0][coord(idx, 0, S)];
  return expect_r(Z);
}

ExactReductionCheck markov_reduction_check_exact(const RationalChain& chain,
                                                 const RationalTuple& tuple) {
  check_rational_tuple(chain, tuple);
  const size_t k = tuple.times.size();
  if (k < 2) throw InvalidArgument("reduction needs k >= 2");
  ExactReductionCheck r;
  r.lhs = centered_moment_exact(chain, tuple);
  const auto& hk = tuple.observables[k - 1];
  RationalMatrix P = rat_pow(chain.Q, tuple.times[k - 1] - tuple.times[k - 2]);
  Rational pih = 0;
  for (int x = 0; x < chain.size(); ++x) pih += chain.pi[x] * hk[x];
  RationalTuple red;
  red.times.assign(tuple.times.begin(), tuple.times.end() - 1);
  red.observables.assign(tuple.observables.begin(), tuple.observables.end() - 1);
  for (int x = 0; x < chain.size(); ++x) {
    Rational ht = -pih;
    for (int y = 0; y < chain.size(); ++y) ht += P[x][y] * hk[y];
    red.observables.back()[x] *= ht;
  }
  r.rhs = centered_moment_exact(chain, red);
  r.equal = r.lhs == r.rhs;
  if (!r.equal) {
    Rational m = boost::multiprecision::abs(r.lhs) > boost::multiprecision::abs(r.rhs)
                     ? boost::multiprecision::abs(r.lhs)
                     : boost::multiprecision::abs(r.rhs);
    r.rel_err = static_cast<double>(Rational(boost::multiprecision::abs(r.lhs - r.rhs) / m));
  }
  return r;
}

ExactMomentTable exact_moment_table(const FiniteChain& chain, long n, int P,
                                    const std::optional<Eigen::VectorXd>& initial) {
  const int S = chain.size();
  ExactMomentTable tab;
  moment_dp(chain, n, P, initial, [&](long, const std::vector<Real>& a) {
    Eigen::MatrixXd m(S, P + 1);
    for (int x = 0; x < S; ++x)
      for (int j = 0; j <= P; ++j) m(x, j) = static_cast<double>(a[x * (P + 1) + j]);
    tab.by_time.push_back(m);
  });
  return tab;
}

std::vector<double> exact_sn_moments(const FiniteChain& chain, long n, int P,
                                     const std::optional<Eigen::VectorXd>& initial) {
  std::vector<double> out;
  moment_dp(chain, n, P, initial, [&](long t, const std::vector<Real>& a) {
    if (t == n - 1) out = column_sums(a, chain.size(), P);
  });
  return out;
}

std::vector<std::vector<double>> exact_sn_moment_path(
    const FiniteChain& chain, long n, int P,
    const std::optional<Eigen::VectorXd>& initial) {
  std::vector<std::vector<double>> out;
  moment_dp(chain, n, P, initial, [&](long, const std::vector<Real>& a) {
    out.push_back(column_sums(a, chain.size(), P));
  });
  return out;
}

std::vector<double> sn_cumulants(const FiniteChain& chain, long n, int k_max) {
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  auto m = exact_sn_moments(chain, n, k_max);
  return moments_to_cumulants({m.begin() + 1, m.end()});
}

std::vector<double> autocovariances(const FiniteChain& chain, long L) {
  const Eigen::VectorXd gb = chain.g_bar();
  Eigen::VectorXd v = gb;
  std::vector<double> out;
  out.reserve(L + 1);
  for (long l = 0; l <= L; ++l) {
    out.push_back(chain.pi.dot(gb.cwiseProduct(v)));
    v = chain.Q * v;
  }
  return out;
}

double variance_by_autocovariance(const FiniteChain& chain, long n) {
  auto cov = autocovariances(chain, n - 1);
  Accum s;
  s.add(Real(n) * cov[0]);
  for (long l = 1; l < n; ++l) s.add(2 * Real(n - l) * cov[l]);
  return static_cast<double>(s.value());
}

LeonovResult leonov_check(const FiniteChain& chain, long n, int q, double tol) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  LeonovResult r;
  auto m = exact_sn_moments(chain, n, 2 * q);
  r.exact = m[2 * q];
  r.cumulants = moments_to_cumulants({m.begin() + 1, m.end()});
  const auto& G = r.cumulants;  // G[k-1] = Gamma_k
  const double f2q = log_factorial(2 * q);
  auto assemble = [&](int min_part, int u_max) {
    Accum total;
    for (int u = 1; u <= u_max; ++u) {
      for (const auto& k : enumerate_compositions(2 * q, u, min_part)) {
        double lc = f2q - log_factorial(u);
        Real prod = 1;
        for (int kp : k) {
          lc -= log_factorial(kp);
          prod *= G[kp - 1];
        }
        total.add(std::exp(Real(lc)) * prod);
      }
    }
    return static_cast<double>(total.value());
  };
  r.assembled = assemble(1, 2 * q);
  r.variance_term = gaussian_moment(q).convert_to<double>() * std::pow(G[1], q);
  r.simplified = r.variance_term + (q >= 2 ? assemble(2, q - 1) : 0.0);
  r.rel_err = rel_diff(r.exact, r.assembled);
  r.rel_err_simplified = rel_diff(r.exact, r.simplified);
  r.pass = r.rel_err <= tol && r.rel_err_simplified <= tol;
  return r;
}

std::vector<double> default_spectral_grid(int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = -M_PI + 2 * M_PI * i / (points - 1);
  return g;
}

SpectralDensity spectral_density(const FiniteChain& chain,
                                 const std::vector<double>& grid,
                                 const GeomRate& rate, double pi_V) {
  if (grid.empty()) throw InvalidArgument("empty spectral grid");
  SpectralDensity sd;
  sd.grid = grid;
  const Eigen::VectorXd gb = chain.g_bar();
  const double var_g = chain.pi.dot(gb.cwiseProduct(gb));
  if (var_g == 0) {
    sd.values.assign(grid.size(), 0.0);
    return sd;
  }
  double need = std::log(1e-12 * var_g / (rate.c * pi_V)) / (0.5 * rate.log_rho);
  sd.L = std::max<long>(1, static_cast<long>(std::ceil(need)));
  if (sd.L > 5'000'000) throw InvalidArgument("spectral truncation level too large");
  auto cov = autocovariances(chain, sd.L);
  for (double lam : grid) {
    Accum s;
    s.add(cov[0]);
    for (long l = 1; l <= sd.L; ++l) s.add(2 * Real(cov[l]) * std::cos(Real(l) * lam));
    sd.values.push_back(static_cast<double>(s.value() / (2 * M_PI)));
  }
  // |cov(l)| <= A r^l with r = rho^{1/2}.
  const double sup_sqrtV_norm = (gb.cwiseAbs().array() / chain.V.array().sqrt()).maxCoeff();
  const double A = 2 * std::sqrt(rate.c * pi_V) * sup_sqrtV_norm *
                   chain.pi.dot(gb.cwiseAbs().cwiseProduct(chain.V.cwiseSqrt()));
  const double r = std::sqrt(rate.rho);
  const double rL1 = std::exp((sd.L + 1) * 0.5 * rate.log_rho);
  sd.truncation_slack = 2 * A * rL1 / (1 - r) / (2 * M_PI);
  // Derivative bound for points between grid nodes (periodic grid gaps).
  std::vector<double> s = grid;
  std::sort(s.begin(), s.end());
  double gap = s.front() + 2 * M_PI - s.back();
  for (size_t i = 1; i < s.size(); ++i) gap = std::max(gap, s[i] - s[i - 1]);
  Accum dsum;
  for (long l = 1; l <= sd.L; ++l) dsum.add(Real(l) * std::fabs(cov[l]));
  double tail_d = A * rL1 * ((sd.L + 1) - sd.L * r) / ((1 - r) * (1 - r));
  double fprime = (static_cast<double>(dsum.value()) + tail_d) / M_PI;
  sd.grid_slack = 0.5 * gap * fprime;
  double mn = *std::min_element(sd.values.begin(), sd.values.end());
  double slack = sd.truncation_slack + sd.grid_slack;
  if (slack >= mn) {
    sd.f_min = 0;
    sd.warning = true;
  } else {
    sd.f_min = mn - slack;
  }
  return sd;
}

}  // namespace mcb
