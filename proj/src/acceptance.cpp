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

#include "mcbounds/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

#include "mcbounds/combinatorics.hpp"
#include "mcbounds/cumulants.hpp"
#include "mcbounds/errors.hpp"
#include "mcbounds/stats.hpp"
#include "mcbounds/vgeom.hpp"
#include "mcbounds/wasserstein.hpp"

namespace mcb {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

constexpr int kRandomChains = 20;
constexpr double kTailLevel = 0.999;
constexpr long kTailReplicas = 100000;

struct Tally {
  long cells = 0, dominates = 0, violated = 0, inconclusive = 0, errors = 0;
  std::string first_error;
  void add(const SweepRow& r) {
    ++cells;
    switch (r.status) {
      case Status::Dominates: ++dominates; break;
      case Status::Violated: ++violated; break;
      case Status::Inconclusive: ++inconclusive; break;
      case Status::Error:
        ++errors;
        if (first_error.empty()) first_error = r.model_id + "/" + r.theorem_id + ": " + r.error;
        break;
    }
  }
  std::string str() const {
    std::string s = fmt("%ld cells: %ld dominate, %ld inconclusive, %ld violated, %ld errors",
                        cells, dominates, inconclusive, violated, errors);
    if (!first_error.empty()) s += " (" + first_error + ")";
    return s;
  }
};

struct SweepParts {
  std::vector<SweepRow> c1, c6, c7;
  double t1 = 0, t6 = 0, t7 = 0;
};

std::vector<double> tail_grid_finite() { return {40, 80, 120, 160}; }
std::vector<double> tail_grid_sgd() { return {10, 20, 30, 40}; }

SweepParts run_reference_sweep(const AcceptanceOptions& opt) {
  SweepParts out;
  auto chains = reference_random_chains(opt.seed, kRandomChains);
  auto push = [](std::vector<SweepRow>& v) {
    return [&v](const SweepRow& r) { v.push_back(r); };
  };

  // Exact Rosenthal domination, stationary.
  auto t0 = Clock::now();
  {
    SweepSpec s;
    s.theorems = {TheoremId::T1, TheoremId::T3};
    for (long n = 2; n <= 40; ++n) s.n.push_back(n);
    s.q = {1, 2, 3};
    s.gamma = {0.0};
    s.identity_rel_slack = 1e-12;
    s.config_hash = fnv1a64("acceptance/c1");
    for (int i = 0; i < kRandomChains; ++i) {
      FiniteContext ctx(fmt("rand%02d", i), chains[i]);
      sweep(ctx, s, push(out.c1));
    }
  }
  out.t1 = since(t0);

  McOptions mc;
  mc.replicas = kTailReplicas;
  mc.level = kTailLevel;
  mc.workers = opt.workers;
  mc.seed = derive_seed(opt.seed, 0x6a11);

  FiniteContext ref("two-state", reference_two_state());
  SgdContext sgd("sgd", reference_sgd());

  // Bernstein tails, stationary.
  t0 = Clock::now();
  {
    SweepSpec s;
    s.theorems = {TheoremId::T5};
    s.n = {100};
    s.gamma = {0.0};
    s.t = tail_grid_finite();
    s.mc = mc;
    s.config_hash = fnv1a64("acceptance/c6/finite");
    sweep(ref, s, push(out.c6));
    s.theorems = {TheoremId::T10};
    s.t = tail_grid_sgd();
    s.config_hash = fnv1a64("acceptance/c6/sgd");
    sweep(sgd, s, push(out.c6));
  }
  out.t6 = since(t0);

  // Non-stationary envelopes.
  t0 = Clock::now();
  {
    SweepSpec s;
    s.theorems = {TheoremId::T2, TheoremId::T4};
    for (long n = 2; n <= 30; ++n) s.n.push_back(n);
    s.q = {1, 2};
    s.gamma = {0.0};
    s.config_hash = fnv1a64("acceptance/c7/exact");
    for (int i = 0; i < kRandomChains; ++i) {
      for (int x = 0; x < chains[i].size(); ++x) {
        FiniteContextOptions fo;
        fo.initial_state = x;
        FiniteContext ctx(fmt("rand%02d@%d", i, x), chains[i], fo);
        sweep(ctx, s, push(out.c7));
      }
    }
    SweepSpec st;
    st.theorems = {TheoremId::T5NS};
    st.n = {100};
    st.gamma = {0.0};
    st.t = tail_grid_finite();
    st.mc = mc;
    st.config_hash = fnv1a64("acceptance/c7/finite");
    sweep(ref, st, push(out.c7));
    st.theorems = {TheoremId::T11};
    st.t = tail_grid_sgd();
    st.config_hash = fnv1a64("acceptance/c7/sgd");
    sweep(sgd, st, push(out.c7));
  }
  out.t7 = since(t0);
  return out;
}

std::string parts_csv(const SweepParts& p) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto* v : {&p.c1, &p.c6, &p.c7}) {
    for (const auto& r : *v) os << csv_line(r) << '\n';
  }
  return os.str();
}

CriterionResult make(int id, const std::string& name, double limit) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.limit_seconds = limit;
  return r;
}

void finish(CriterionResult& r, bool ok, const std::string& detail, double secs) {
  r.seconds = secs;
  r.detail = detail;
  r.passed = ok && secs < r.limit_seconds;
  if (ok && !r.passed) r.detail += fmt(" (time limit %.0f s exceeded)", r.limit_seconds);
}

CriterionResult criterion1(const SweepParts& p) {
  auto r = make(1, "exact Rosenthal domination (T1, T3)", 60);
  Tally t;
  for (const auto& row : p.c1) t.add(row);
  const long expected = kRandomChains * 39L * 3 * 2;
  bool ok = t.cells == expected && t.dominates == t.cells;
  finish(r, ok, t.str(), p.t1);
  return r;
}

CriterionResult criterion2(const AcceptanceOptions& opt) {
  auto r = make(2, "Leonov-Shiryaev assembly", 30);
  auto t0 = Clock::now();
  Rng rng = make_rng(opt.seed, 0xc2);
  int pass = 0;
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    auto chain = random_finite_chain(rng, 5);
    long n = 2 + static_cast<long>(rng() % 39);
    int q = 1 + i % 3;
    auto res = leonov_check(chain, n, q, 1e-10);
    worst = std::max(worst, res.rel_err);
    pass += res.pass;
  }
  finish(r, pass == 50, fmt("%d/50 within 1e-10, worst rel err %.3g", pass, worst), since(t0));
  return r;
}

CriterionResult criterion3(const AcceptanceOptions& opt) {
  auto r = make(3, "Markov reduction of centred moments", 10);
  auto t0 = Clock::now();
  Rng rng = make_rng(opt.seed, 0xc3);
  int equal = 0, float_ok = 0;
  double worst_rel = 0, worst_float = 0;
  for (int i = 0; i < 100; ++i) {
    // Rational chain with entries w/sum(w), w in {1..12}.
    const int S = 2 + static_cast<int>(rng() % 3);
    RationalMatrix Q(S, RationalVector(S));
    Eigen::MatrixXd Qd(S, S);
    for (int x = 0; x < S; ++x) {
      std::vector<long> w(S);
      long tot = 0;
      for (int y = 0; y < S; ++y) tot += w[y] = 1 + static_cast<long>(rng() % 12);
      for (int y = 0; y < S; ++y) {
        Q[x][y] = Rational(w[y], tot);
        Qd(x, y) = static_cast<double>(w[y]) / static_cast<double>(tot);
      }
    }
    auto rc = RationalChain::make(Q);
    auto fc = FiniteChain::make(Qd, Eigen::VectorXd::Constant(S, std::exp(1.0)),
                                Eigen::VectorXd::Zero(S));
    RationalTuple rt;
    IndexTuple ft;
    const int k = 2 + static_cast<int>(rng() % 4);
    long t = 0;
    double scale = 1;
    for (int j = 0; j < k; ++j) {
      t += static_cast<long>(rng() % 6);
      rt.times.push_back(t);
      ft.times.push_back(t);
      RationalVector h(S);
      Eigen::VectorXd hd(S);
      for (int x = 0; x < S; ++x) {
        long num = static_cast<long>(rng() % 25) - 12;
        h[x] = Rational(num, 12);
        hd(x) = num / 12.0;
      }
      scale *= std::max(1e-300, hd.cwiseAbs().maxCoeff());
      rt.observables.push_back(h);
      ft.observables.push_back(hd);
    }
    auto ex = markov_reduction_check_exact(rc, rt);
    equal += ex.equal;
    worst_rel = std::max(worst_rel, ex.rel_err);
    double fl = centered_moment(fc, ft);
    double err = std::abs(fl - static_cast<double>(ex.lhs)) / scale;
    worst_float = std::max(worst_float, err);
    float_ok += err <= 1e-12;
  }
  finish(r, equal == 100 && float_ok == 100,
         fmt("exact: %d/100 equal (worst rel err %.3g); floating engine within 1e-12 "
             "of exact on %d/100 (worst scaled err %.3g)",
             equal, worst_rel, float_ok, worst_float),
         since(t0));
  return r;
}

CriterionResult criterion4(const AcceptanceOptions& opt) {
  auto r = make(4, "V-norm mixing domination", 10);
  auto t0 = Clock::now();
  auto chains = reference_random_chains(opt.seed, kRandomChains);
  chains.insert(chains.begin(), reference_two_state());
  long checks = 0, bad = 0;
  double worst = 0;
  for (const auto& ch : chains) {
    FiniteContext ctx("c4", ch);
    const auto& rate = ctx.geom();
    const double piV = ch.pi_of(ch.V);
    for (long n = 0; n <= 100; ++n) {
      auto dist = exact_v_distance(ch, n, 1.0);
      for (int x = 0; x < ch.size(); ++x) {
        double bound = rate.c * (ch.V(x) + piV) * std::exp(n * rate.log_rho);
        ++checks;
        worst = std::max(worst, dist(x) / bound);
        bad += !(dist(x) <= bound);
      }
    }
  }
  finish(r, bad == 0, fmt("%ld checks on %zu chains, %ld violations, worst ratio %.3g",
                          checks, chains.size(), bad, worst), since(t0));
  return r;
}

CriterionResult criterion5(const AcceptanceOptions& opt) {
  auto r = make(5, "delta* root and varrho < 1", 5);
  auto t0 = Clock::now();
  WassCertificate c{0.5, 1.0, 9.0, 1, 0.5, 1.0};
  const double oracle = -1.15 + std::sqrt(1.15 * 1.15 + 4 * 0.5 * 0.75);
  auto ds = delta_star(c);
  bool root_ok = std::abs(ds.value - oracle) < 1e-10 && !ds.degenerate;
  c.eps = 0.9;
  auto dg = delta_star(c);
  bool deg_ok = dg.degenerate && dg.value == 0.0;
  Rng rng = make_rng(opt.seed, 0xc5);
  int good = 0;
  for (int i = 0; i < 200; ++i) {
    WassCertificate w;
    w.lambda = 0.02 + 0.96 * uniform01(rng);
    w.b = 0.05 + 5 * uniform01(rng);
    w.d = std::max(1.0, 2 * w.b / (1 - w.lambda)) * (1.05 + 3 * uniform01(rng));
    w.m = 1 + static_cast<int>(rng() % 4);
    w.eps = 0.01 + 0.98 * uniform01(rng);
    w.kappa_K = 1 + uniform01(rng);
    auto rate = contraction_rate(w, w.b / (1 - w.lambda) + 1);
    good += rate.varrho > 0 && rate.varrho < 1 &&
            (rate.degenerate || std::abs(rate.residual) < 1e-12);
  }
  bool ok = root_ok && deg_ok && good == 200;
  finish(r, ok, fmt("delta*=%.12f (oracle %.12f), degenerate->%g, varrho<1 on %d/200",
                    ds.value, oracle, dg.value, good), since(t0));
  return r;
}

CriterionResult criterion6(const SweepParts& p) {
  auto r = make(6, "Bernstein tail domination (T5, T10)", 300);
  Tally fin, sgd;
  for (const auto& row : p.c6) (row.model_id == "sgd" ? sgd : fin).add(row);
  bool ok = fin.cells == 4 && sgd.cells == 4 && fin.violated + fin.errors == 0 &&
            sgd.violated + sgd.errors == 0;
  finish(r, ok, "T5 " + fin.str() + "; T10 " + sgd.str(), p.t6);
  return r;
}

CriterionResult criterion7(const SweepParts& p) {
  auto r = make(7, "non-stationary envelopes (T2, T4, T5NS, T11)", 300);
  Tally ex, st;
  for (const auto& row : p.c7) {
    (row.theorem_id == "T2" || row.theorem_id == "T4" ? ex : st).add(row);
  }
  bool ok = ex.cells > 0 && ex.dominates == ex.cells && st.cells == 8 &&
            st.violated + st.errors == 0;
  finish(r, ok, "exact " + ex.str() + "; tails " + st.str(), p.t7);
  return r;
}

// Mean cost after 'steps' coupled steps from (x, xp), with a CI.
template <class Step, class Cost>
MeanCi coupled_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& xp,
                    int steps, long samples, double level, std::uint64_t seed,
                    Step step, Cost cost) {
  std::vector<double> c(samples);
  Rng rng = make_rng(seed, 0);
  for (long i = 0; i < samples; ++i) {
    Eigen::VectorXd a = x, b = xp;
    for (int s = 0; s < steps; ++s) step(a, b, rng);
    c[i] = cost(a, b);
  }
  return normal_mean_ci(c, level);
}

CriterionResult criterion8(const AcceptanceOptions& opt) {
  auto r = make(8, "coupling contraction", 180);
  auto t0 = Clock::now();
  std::vector<std::string> parts;
  bool ok = true;

  // Exact check on finite coupled chains.
  auto chains = reference_random_chains(opt.seed, 5);
  chains.insert(chains.begin(), reference_two_state());
  double worst = 0;
  int certified = 0;
  for (const auto& ch : chains) {
    FiniteContext ctx("c8", ch);
    if (!ctx.wass()) continue;
    ++certified;
    auto K = maximal_coupling(ch);
    for (int q = 1; q <= 3; ++q) {
      for (int p : {1, 2 * q}) {
        worst = std::max(worst, contraction_worst_ratio(ch, K, *ctx.wass(), p, q, 30));
      }
    }
  }
  ok = ok && certified >= 1 && worst <= 1.0;
  parts.push_back(fmt("finite: %d coupled chains, worst ratio %.4f", certified, worst));

  const double level = 0.99;
  const long samples = 10000;
  Rng probe = make_rng(opt.seed, 0xc8);
  auto rand_dir = [&](int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = std_normal(probe);
    return Eigen::VectorXd(v / v.norm());
  };

  {
    auto model = reference_sgd();
    auto k = sgd_constants(model);
    auto step = [&](Eigen::VectorXd& a, Eigen::VectorXd& b, Rng& g) {
      sgd_coupled_step(model, a, b, g);
    };
    auto cost = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return sgd_cost(a, b);
    };
    int bad = 0, probes = 0;
    for (int i = 0; i < 10; ++i) {
      double rad = std::min(k.R, 3.0) * uniform01(probe);
      Eigen::VectorXd x = model.theta_star + rad * rand_dir(model.dim);
      Eigen::VectorXd xp = x + (0.05 + 1.5 * uniform01(probe)) * rand_dir(model.dim);
      double c0 = sgd_cost(x, xp);
      auto one = coupled_cost(x, xp, 1, samples, level, derive_seed(opt.seed, 800 + i), step, cost);
      auto mm = coupled_cost(x, xp, k.m, samples, level, derive_seed(opt.seed, 900 + i), step, cost);
      probes += 2;
      bad += one.ci.low > c0;
      bool inside = (x - model.theta_star).norm() <= k.R && (xp - model.theta_star).norm() <= k.R;
      bad += mm.ci.low > (inside ? 1 - k.eps : 1.0) * c0;
    }
    ok = ok && bad == 0;
    parts.push_back(fmt("sgd: m=%d, %d/%d probe checks pass", k.m, probes - bad, probes));
  }

  {
    auto model = reference_pcn();
    auto k = pcn_constants(model, 200000, derive_seed(opt.seed, 0x9c1), 0.999);
    auto step = [&](Eigen::VectorXd& a, Eigen::VectorXd& b, Rng& g) {
      pcn_coupled_step(model, a, b, g);
    };
    const double eh = k.eps_H;
    auto cost = [eh](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return pcn_cost(a, b, eh);
    };
    int bad = 0, probes = 0;
    for (int i = 0; i < 8; ++i) {
      double rad = std::min(k.R, 3.0) * uniform01(probe);
      Eigen::VectorXd x = rad * rand_dir(model.dim);
      double gap = eh * std::pow(10.0, -1 + 2 * uniform01(probe));
      Eigen::VectorXd xp = x + gap * rand_dir(model.dim);
      double c0 = pcn_cost(x, xp, eh);
      auto one = coupled_cost(x, xp, 1, samples, level, derive_seed(opt.seed, 1800 + i), step, cost);
      auto mm = coupled_cost(x, xp, k.m, 2000, level, derive_seed(opt.seed, 1900 + i), step, cost);
      probes += 2;
      bad += one.ci.low > c0;
      bool inside = x.norm() <= k.R && xp.norm() <= k.R;
      bad += mm.ci.low > (inside ? 1 - k.eps : 1.0) * c0;
    }
    ok = ok && bad == 0;
    parts.push_back(fmt("pcn: m=%d%s, %d/%d probe checks pass", k.m,
                        k.m_floored ? " (floored)" : "", probes - bad, probes));
  }
  std::string detail;
  for (const auto& s : parts) detail += (detail.empty() ? "" : "; ") + s;
  finish(r, ok, detail, since(t0));
  return r;
}

// Independent enumeration of compositions of 'total' into 'parts' parts >= 2.
void enumerate(int total, int parts, std::vector<int>& cur,
               const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 0) {
    if (total == 0) f(cur);
    return;
  }
  for (int k = 2; k <= total - 2 * (parts - 1); ++k) {
    cur.push_back(k);
    enumerate(total - k, parts - 1, cur, f);
    cur.pop_back();
  }
}

BigInt fact(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  return fact(n) / (fact(k) * fact(n - k));
}

CriterionResult criterion9() {
  auto r = make(9, "combinatorics for q <= 6", 5);
  auto t0 = Clock::now();
  int checks = 0, bad = 0;
  for (int q = 2; q <= 6; ++q) {
    for (int u = 1; u <= q - 1; ++u) {
      long count = 0;
      std::vector<int> cur;
      std::vector<BigInt> sums(3, 0);
      double log_sum_half = -INFINITY;
      enumerate(2 * q, u, cur, [&](const std::vector<int>& c) {
        ++count;
        for (int g = 0; g <= 2; ++g) {
          BigInt p = 1;
          for (int k : c) {
            BigInt f = fact(k);
            for (int e = 0; e < g + 2; ++e) p *= f;
          }
          sums[g] += p;
        }
        double lp = 0;
        for (int k : c) lp += 2.5 * std::lgamma(k + 1.0);
        log_sum_half = std::max(log_sum_half, lp) +
                       std::log1p(std::exp(std::min(log_sum_half, lp) - std::max(log_sum_half, lp)));
      });
      ++checks;
      bad += BigInt(count) != choose(2 * q - u - 1, u - 1);
      bad += static_cast<long>(compositions(u, q).size()) != count;
      for (int g = 0; g <= 2; ++g) {
        BigInt oracle = fact(2 * q) * sums[g] / fact(u);
        auto b = b_coefficient(g, u, q);
        ++checks;
        bad += !b.exact || *b.exact != oracle;
        double lo = std::log(oracle.convert_to<double>());
        ++checks;
        bad += !(LogValue::from_log(lo) <= b_coefficient_upper(g, u, q));
        if (g == 0) {
          checks += 2;
          bad += !(LogValue::from_log(lo) <= b0_scaling_bound(u, q));
          bad += !(LogValue::from_log(lo) <= b0_scaling_bound_uniform(q));
        }
      }
      // Non-integer gamma through the log path.
      double lo = log_factorial(2 * q) - log_factorial(u) + log_sum_half;
      auto bh = b_coefficient(0.5, u, q);
      checks += 2;
      bad += std::abs(bh.value.log_abs() - lo) > 1e-10 * std::max(1.0, std::abs(lo));
      bad += !(bh.value <= b_coefficient_upper(0.5, u, q));
    }
  }
  finish(r, bad == 0, fmt("%d checks, %d failures", checks, bad), since(t0));
  return r;
}

CriterionResult criterion10(const AcceptanceOptions& opt) {
  auto r = make(10, "SGD constants, drift and coupling", 120);
  auto t0 = Clock::now();
  auto model = SgdModel::make(1.0, 3.0, 1.0, 0.1, 2);
  auto k = sgd_constants(model);
  const double e = std::exp(1.0);
  const double s2 = 2 * 1.0 * (e + 1) / (e - 1);
  const double kf = 1.0 * 3.0 / (1.0 + 3.0);
  const double bias = 0.1 * 1.0 / (1.0 * 1.0 * (1 - 0.1 * 3.0));
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  bool const_ok = rel(k.sigma_tilde2, s2) < 1e-6 && rel(k.kappa_f, kf) < 1e-6 &&
                  rel(k.bias_bound, bias) < 1e-6 &&
                  rel(k.eps, 2 * 1.0 * 0.1 * (1 - 0.1 * 3.0 / 2)) < 1e-6;

  const double level = 0.99;
  const long samples = 10000;
  Rng probe = make_rng(opt.seed, 0xc10);
  int drift_bad = 0, coup_bad = 0;
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd dir(model.dim);
    for (int j = 0; j < model.dim; ++j) dir(j) = std_normal(probe);
    dir /= dir.norm();
    Eigen::VectorXd th = model.theta_star + 3 * std::sqrt(s2) * uniform01(probe) * dir;
    Rng rng = make_rng(opt.seed, 10000 + i);
    std::vector<double> v(samples);
    for (long s = 0; s < samples; ++s) v[s] = sgd_V(model, k, sgd_step(model, th, rng));
    double rhs = k.lambda * sgd_V(model, k, th) + k.b;
    drift_bad += normal_mean_ci(v, level).ci.low > rhs;

    Eigen::VectorXd thp = th;
    for (int j = 0; j < model.dim; ++j) thp(j) += std_normal(probe);
    std::vector<double> d(samples);
    for (long s = 0; s < samples; ++s) {
      Eigen::VectorXd a = th, b = thp;
      sgd_coupled_step(model, a, b, rng);
      d[s] = (a - b).squaredNorm();
    }
    coup_bad += normal_mean_ci(d, level).ci.low > (1 - k.eps) * (th - thp).squaredNorm();
  }
  bool ok = const_ok && drift_bad == 0 && coup_bad == 0;
  finish(r, ok,
         fmt("sigma~2=%.6f kappa_f=%.6f bias=%.6f; drift %d/50, coupling %d/50 probes pass",
             k.sigma_tilde2, k.kappa_f, k.bias_bound, 50 - drift_bad, 50 - coup_bad),
         since(t0));
  return r;
}

}  // namespace

bool AcceptanceReport::all_passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return !results.empty();
}

FiniteChain reference_two_state() {
  Eigen::MatrixXd Q(2, 2);
  Q << 0.9, 0.1, 0.2, 0.8;
  Eigen::VectorXd V(2), g(2);
  V << std::exp(1.0), std::exp(3.0);
  g << 1.0, -2.0;
  return FiniteChain::make(Q, V, g);
}

FiniteChain random_finite_chain(Rng& rng, int max_states) {
  const int S = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_states - 1));
  Eigen::MatrixXd Q(S, S);
  for (int x = 0; x < S; ++x) {
    for (int y = 0; y < S; ++y) Q(x, y) = 0.05 + uniform01(rng);
    Q.row(x) /= Q.row(x).sum();
  }
  Eigen::VectorXd V(S), g(S);
  for (int x = 0; x < S; ++x) {
    V(x) = std::exp(1 + 2 * uniform01(rng));
    g(x) = 2 * uniform01(rng) - 1;
  }
  return FiniteChain::make(Q, V, g);
}

std::vector<FiniteChain> reference_random_chains(std::uint64_t seed, int count) {
  Rng rng = make_rng(seed, 0xc4a1);
  std::vector<FiniteChain> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100 * count) throw InternalError("could not certify random chains");
    auto ch = random_finite_chain(rng, 5);
    try {
      certify_finite_chain(ch);
    } catch (const CertificationFailure&) {
      continue;
    }
    out.push_back(std::move(ch));
  }
  return out;
}

SgdModel reference_sgd() { return SgdModel::make(1.0, 3.0, 1.0, 0.1, 2); }

PcnModel reference_pcn() {
  PcnModel m;
  m.dim = 2;
  m.cov.resize(2);
  m.cov << 0.04, 0.01;
  m.rho = 0.5;
  m.phi.kind = PcnPotential::Kind::CappedNorm;
  m.phi.lipschitz = 0.5;
  m.phi.cap = 1.0;
  m.alpha_bar = m.phi.oscillation_alpha_bar();
  m.r_bar = 0.3;
  m.a = 0.95;
  m.obs_scale = 0.2;
  return m;
}

std::string reference_sweep_csv(const AcceptanceOptions& opt,
                                std::vector<SweepRow>* rows) {
  auto p = run_reference_sweep(opt);
  if (rows) {
    rows->clear();
    for (const auto* v : {&p.c1, &p.c6, &p.c7}) rows->insert(rows->end(), v->begin(), v->end());
  }
  return parts_csv(p);
}

AcceptanceReport run_acceptance(
    const AcceptanceOptions& opt,
    const std::function<void(const CriterionResult&)>& on_result) {
  AcceptanceReport rep;
  auto emit = [&](CriterionResult r) {
    if (on_result) on_result(r);
    rep.results.push_back(std::move(r));
  };
  auto guard = [&](int id, const std::string& name, auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = name;
      r.detail = std::string("exception: ") + e.what();
      return r;
    }
  };

  SweepParts parts;
  bool sweep_ok = true;
  std::string sweep_err;
  try {
    parts = run_reference_sweep(opt);
    rep.csv = parts_csv(parts);
  } catch (const std::exception& e) {
    sweep_ok = false;
    sweep_err = e.what();
  }
  auto from_sweep = [&](int id, const std::string& name, auto&& fn) {
    if (!sweep_ok) {
      CriterionResult r;
      r.id = id;
      r.name = name;
      r.detail = "reference sweep failed: " + sweep_err;
      return r;
    }
    return guard(id, name, fn);
  };

  emit(from_sweep(1, "exact Rosenthal domination (T1, T3)", [&] { return criterion1(parts); }));
  emit(guard(2, "Leonov-Shiryaev assembly", [&] { return criterion2(opt); }));
  emit(guard(3, "Markov reduction of centred moments", [&] { return criterion3(opt); }));
  emit(guard(4, "V-norm mixing domination", [&] { return criterion4(opt); }));
  emit(guard(5, "delta* root and varrho < 1", [&] { return criterion5(opt); }));
  emit(from_sweep(6, "Bernstein tail domination (T5, T10)", [&] { return criterion6(parts); }));
  emit(from_sweep(7, "non-stationary envelopes (T2, T4, T5NS, T11)", [&] { return criterion7(parts); }));
  emit(guard(8, "coupling contraction", [&] { return criterion8(opt); }));
  emit(guard(9, "combinatorics for q <= 6", [] { return criterion9(); }));
  emit(guard(10, "SGD constants, drift and coupling", [&] { return criterion10(opt); }));
  emit(from_sweep(11, "bit-identical sweep CSV", [&] {
    auto r = make(11, "bit-identical sweep CSV", 1e9);
    auto t0 = Clock::now();
    AcceptanceOptions again = opt;
    std::string b = reference_sweep_csv(again);
    AcceptanceOptions other = opt;
    other.workers = opt.workers == 4 ? 1 : 4;
    std::string c = reference_sweep_csv(other);
    bool ok = b == rep.csv && c == rep.csv;
    finish(r, ok,
           fmt("%zu bytes; rerun %s, workers %d vs %d %s", rep.csv.size(),
               b == rep.csv ? "identical" : "differs", opt.workers, other.workers,
               c == rep.csv ? "identical" : "differ"),
           since(t0));
    return r;
  }));
  return rep;
}

}  // namespace mcb
