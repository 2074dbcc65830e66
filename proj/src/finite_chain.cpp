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

#include "mcbounds/finite_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

void check_stochastic(const Eigen::MatrixXd& Q) {
  if (Q.rows() == 0 || Q.rows() != Q.cols()) {
    throw InvalidArgument("transition matrix must be square and nonempty");
  }
  for (int i = 0; i < Q.rows(); ++i) {
    for (int j = 0; j < Q.cols(); ++j) {
      if (!(Q(i, j) >= 0)) throw InvalidArgument("negative transition probability");
    }
    if (std::fabs(Q.row(i).sum() - 1.0) > 1e-14 * Q.cols()) {
      throw InvalidArgument("row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

std::vector<bool> reach(const Eigen::MatrixXd& A, int from) {
  const int S = static_cast<int>(A.rows());
  std::vector<bool> seen(S, false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < S; ++y) {
      if (A(x, y) > 0 && !seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

Eigen::MatrixXd mat_pow(const Eigen::MatrixXd& Q, int m) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(Q.rows(), Q.cols());
  for (int i = 0; i < m; ++i) R = R * Q;
  return R;
}

}  // namespace

Eigen::VectorXd finite_stationary(const Eigen::MatrixXd& Q) {
  check_stochastic(Q);
  const int S = static_cast<int>(Q.rows());
  auto fwd = reach(Q, 0);
  auto bwd = reach(Q.transpose(), 0);
  for (int i = 0; i < S; ++i) {
    if (!fwd[i] || !bwd[i]) throw InvalidArgument("transition matrix is reducible");
  }
  // (Q^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  Eigen::MatrixXd A = Q.transpose() - Eigen::MatrixXd::Identity(S, S);
  A.row(S - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S);
  rhs(S - 1) = 1.0;
  Eigen::VectorXd pi = A.fullPivLu().solve(rhs);
  // One refinement step.
  Eigen::VectorXd res = rhs - A * pi;
  pi += A.fullPivLu().solve(res);
  double resid = (Q.transpose() * pi - pi).cwiseAbs().maxCoeff();
  if (!(resid < 1e-12)) {
    throw InternalError("stationary residual " + std::to_string(resid));
  }
  return pi;
}

FiniteChain FiniteChain::make(const Eigen::MatrixXd& Q, const Eigen::VectorXd& V,
                              const Eigen::VectorXd& g) {
  if (V.size() != Q.rows() || g.size() != Q.rows()) {
    throw InvalidArgument("V and g must have one entry per state");
  }
  const double e = std::exp(1.0);
  for (int i = 0; i < V.size(); ++i) {
    if (!(V(i) >= e * (1 - 1e-15))) throw InvalidArgument("V must be >= e");
  }
  FiniteChain c{Q, V, g, finite_stationary(Q)};
  return c;
}

Eigen::VectorXd FiniteChain::g_bar() const {
  return g.array() - pi_g();
}

DriftFit certify_drift(const FiniteChain& chain, std::optional<double> target) {
  const Eigen::VectorXd QV = chain.Q * chain.V;
  auto fit = [&](double lam) {
    DriftFit f;
    f.lambda = lam;
    f.b = 0;
    f.witness = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < chain.size(); ++x) {
      double v = QV(x) - lam * chain.V(x);
      if (v > best) {
        best = v;
        f.witness = x;
      }
    }
    f.b = std::max(0.0, best);
    return f;
  };
  if (target) {
    if (!(*target > 0 && *target < 1)) throw InvalidArgument("lambda must be in (0,1)");
    return fit(*target);
  }
  std::vector<double> cand;
  for (int i = 1; i < 1000; ++i) cand.push_back(i / 1000.0);
  for (int x = 0; x < chain.size(); ++x) {
    double r = QV(x) / chain.V(x);
    if (r > 0 && r < 1) cand.push_back(r);
  }
  DriftFit best = fit(cand.front());
  double score = best.b / (1 - best.lambda);
  for (double lam : cand) {
    DriftFit f = fit(lam);
    double s = f.b / (1 - f.lambda);
    if (s < score) {
      score = s;
      best = f;
    }
  }
  return best;
}

SmallSet certify_small_set(const FiniteChain& chain, int m, double d) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  SmallSet s;
  for (int x = 0; x < chain.size(); ++x) {
    if (chain.V(x) <= d) s.members.push_back(x);
  }
  if (s.members.empty()) throw InvalidArgument("level set {V <= d} is empty");
  Eigen::MatrixXd Qm = mat_pow(chain.Q, m);
  Eigen::VectorXd mins(chain.size());
  for (int y = 0; y < chain.size(); ++y) {
    double mn = 1.0;
    for (int x : s.members) mn = std::min(mn, Qm(x, y));
    mins(y) = mn;
  }
  s.eps = mins.sum();
  if (!(s.eps > 0)) {
    throw CertificationFailure("small set has eps = 0 at m=" + std::to_string(m));
  }
  s.nu = mins / s.eps;
  return s;
}

FiniteCertificate certify_finite_chain(const FiniteChain& chain, int m_max,
                                       std::optional<double> target) {
  DriftFit drift = certify_drift(chain, target);
  double d = std::max(4 * drift.b / (1 - drift.lambda) - 1, chain.V.minCoeff());
  std::optional<FiniteCertificate> best;
  std::string last_err = "no m tried";
  for (int m = 1; m <= m_max; ++m) {
    try {
      FiniteCertificate fc;
      fc.small = certify_small_set(chain, m, d);
      fc.witness = drift.witness;
      // eps strictly below 1 as the certificate requires.
      double eps = std::min(fc.small.eps, 1 - 1e-12);
      fc.cert = DriftCertificate{drift.lambda, drift.b, d, m, eps,
                                 chain.pi.dot(chain.V)};
      fc.rate = geometric_rate(fc.cert);
      if (!best || fc.rate.log_rho < best->rate.log_rho) best = fc;
    } catch (const std::exception& e) {
      last_err = e.what();
    }
  }
  if (!best) {
    std::ostringstream os;
    os << "finite chain certification failed; best attempt lambda=" << drift.lambda
       << " b=" << drift.b << " d=" << d << ": " << last_err;
    throw CertificationFailure(os.str());
  }
  return *best;
}

Eigen::VectorXd exact_v_distance(const FiniteChain& chain, long n, double alpha) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(chain.size(), chain.size());
  for (long i = 0; i < n; ++i) P = P * chain.Q;
  Eigen::VectorXd W = chain.V.array().pow(alpha);
  Eigen::VectorXd out(chain.size());
  for (int x = 0; x < chain.size(); ++x) {
    out(x) = ((P.row(x).transpose() - chain.pi).cwiseAbs().array() * W.array()).sum();
  }
  return out;
}

CoupledChain maximal_coupling(const FiniteChain& chain) {
  const int S = chain.size();
  CoupledChain K;
  K.S = S;
  K.K = Eigen::MatrixXd::Zero(S * S, S * S);
  for (int x = 0; x < S; ++x) {
    for (int xp = 0; xp < S; ++xp) {
      int from = K.index(x, xp);
      Eigen::VectorXd p = chain.Q.row(x).transpose();
      Eigen::VectorXd pp = chain.Q.row(xp).transpose();
      if (x == xp) {
        for (int y = 0; y < S; ++y) K.K(from, K.index(y, y)) = p(y);
        continue;
      }
      Eigen::VectorXd w = p.cwiseMin(pp);
      double beta = w.sum();
      for (int y = 0; y < S; ++y) K.K(from, K.index(y, y)) += w(y);
      if (beta < 1) {
        Eigen::VectorXd r = (p - w) / (1 - beta);
        Eigen::VectorXd rp = (pp - w) / (1 - beta);
        for (int y = 0; y < S; ++y) {
          for (int yp = 0; yp < S; ++yp) {
            K.K(from, K.index(y, yp)) += (1 - beta) * r(y) * rp(yp);
          }
        }
      }
    }
  }
  return K;
}

FiniteWassCertificate certify_coupling(const FiniteChain& chain,
                                       const CoupledChain& K, int m,
                                       const DriftFit& drift, double d) {
  const int S = chain.size();
  Eigen::VectorXd c(S * S);
  for (int x = 0; x < S; ++x)
    for (int xp = 0; xp < S; ++xp) c(K.index(x, xp)) = x == xp ? 0.0 : 1.0;
  Eigen::VectorXd Kc = K.K * c;
  double kappa = 1.0;
  for (int i = 0; i < S * S; ++i) {
    if (c(i) > 0) kappa = std::max(kappa, Kc(i) / c(i));
  }
  Eigen::VectorXd Kmc = c;
  for (int i = 0; i < m; ++i) Kmc = K.K * Kmc;
  double worst = 0.0;
  bool any = false;
  for (int x = 0; x < S; ++x) {
    for (int xp = 0; xp < S; ++xp) {
      if (x == xp || chain.V(x) > d || chain.V(xp) > d) continue;
      any = true;
      worst = std::max(worst, Kmc(K.index(x, xp)));
    }
  }
  double eps = any ? 1 - worst : 1 - 1e-12;
  eps = std::min(eps, 1 - 1e-12);
  if (!(eps > 0)) {
    throw CertificationFailure("coupling does not contract on Cbar at m=" +
                               std::to_string(m));
  }
  FiniteWassCertificate out;
  out.cert = WassCertificate{drift.lambda, drift.b, d, m, eps, kappa};
  out.pi_V = chain.pi.dot(chain.V);
  out.pi_sqrtV = chain.pi.dot(chain.V.cwiseSqrt());
  out.rate = contraction_rate(out.cert, out.pi_V);
  return out;
}

double contraction_worst_ratio(const FiniteChain& chain, const CoupledChain& K,
                               const FiniteWassCertificate& wc, int p, int q,
                               int n_max) {
  const int S = chain.size();
  const double ex = double(p) / (4.0 * q);
  Eigen::VectorXd f(S * S);
  for (int y = 0; y < S; ++y) {
    for (int yp = 0; yp < S; ++yp) {
      double vb = 0.5 * (chain.V(y) + chain.V(yp));
      f(K.index(y, yp)) = y == yp ? 0.0 : std::pow(vb, ex);
    }
  }
  const int m = wc.cert.m;
  const double pref = std::pow(wc.cert.kappa_K, m / 2.0) *
                      std::pow(wc.rate.c_K, double(p) / (2.0 * q));
  double worst = 0.0;
  Eigen::VectorXd Knf = f;
  for (int n = 1; n <= n_max; ++n) {
    Knf = K.K * Knf;
    if (n < m) continue;
    double decay = std::exp(n * wc.rate.log_varrho * p / (2.0 * q));
    for (int x = 0; x < S; ++x) {
      for (int xp = 0; xp < S; ++xp) {
        if (x == xp) continue;
        double rhs = pref * f(K.index(x, xp)) * decay;
        worst = std::max(worst, Knf(K.index(x, xp)) / rhs);
      }
    }
  }
  return worst;
}

}  // namespace mcb
