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

#include "mcbounds/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "mcbounds/combinatorics.hpp"
#include "mcbounds/cumulants.hpp"
#include "mcbounds/errors.hpp"
#include "mcbounds/stats.hpp"

namespace mcb {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t provenance_key(const std::string& model_id, long n, int q,
                             double gamma, double t) {
  std::string key = model_id + "|" + std::to_string(n) + "|" +
                    std::to_string(q) + "|" + format_double(gamma) + "|" +
                    format_double(t);
  return fnv1a64(key);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Dominates: return "dominates";
    case Status::Violated: return "violated";
    case Status::Inconclusive: return "inconclusive";
    case Status::Error: return "error";
  }
  return "error";
}

std::vector<double> sample_replicas(const SnSampler& sampler, long replicas,
                                    std::uint64_t seed, int workers) {
  if (replicas < 0) throw InvalidArgument("replicas must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(replicas));
  const long blocks = (replicas + kBlockSize - 1) / kBlockSize;
  auto run_block = [&](long b) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(b));
    long lo = b * kBlockSize, hi = std::min(replicas, lo + kBlockSize);
    for (long i = lo; i < hi; ++i) out[i] = sampler(rng);
  };
  workers = std::max(1, workers);
  if (workers == 1 || blocks <= 1) {
    for (long b = 0; b < blocks; ++b) run_block(b);
    return out;
  }
  std::atomic<long> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        long b = next.fetch_add(1);
        if (b >= blocks || failed) return;
        try {
          run_block(b);
        } catch (...) {
          if (!failed.exchange(true)) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

McEstimate tail_estimate(const std::vector<double>& samples, double t,
                         double level, std::uint64_t seed) {
  McEstimate e;
  e.level = level;
  e.replicas = static_cast<long>(samples.size());
  e.seed = seed;
  e.method = "clopper-pearson";
  if (t <= 0) {
    e.point = e.ci_low = e.ci_high = 1.0;
    return e;
  }
  long k = 0;
  for (double s : samples) k += std::abs(s) >= t;
  e.point = static_cast<double>(k) / static_cast<double>(samples.size());
  auto ci = clopper_pearson(k, e.replicas, level);
  e.ci_low = std::min(ci.low, e.point);
  e.ci_high = std::max(ci.high, e.point);
  return e;
}

McEstimate moment_estimate(const std::vector<double>& samples, double power,
                           double level, MomentCi method, std::uint64_t seed) {
  McEstimate e;
  e.level = level;
  e.replicas = static_cast<long>(samples.size());
  e.seed = seed;
  if (power == 0) {
    e.method = "trivial";
    e.point = e.ci_low = e.ci_high = 1.0;
    return e;
  }
  std::vector<double> x(samples.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(std::abs(samples[i]), power);
  MeanCi m;
  if (method == MomentCi::Bootstrap) {
    e.method = "bootstrap";
    m = bootstrap_mean_ci(x, level, 2000, seed);
  } else {
    e.method = "normal";
    m = normal_mean_ci(x, level);
  }
  e.point = m.mean;
  e.ci_low = std::min(m.ci.low, m.mean);
  e.ci_high = std::max(m.ci.high, m.mean);
  return e;
}

McEstimate mc_tail(const SnSampler& sampler, double t, const McOptions& opt) {
  return mc_tail_grid(sampler, {t}, opt).front();
}

std::vector<McEstimate> mc_tail_grid(const SnSampler& sampler,
                                     const std::vector<double>& ts,
                                     const McOptions& opt) {
  if (opt.replicas < 100) throw InvalidArgument("mc_tail needs replicas >= 100");
  auto s = sample_replicas(sampler, opt.replicas, opt.seed, opt.workers);
  std::vector<McEstimate> out;
  for (double t : ts) out.push_back(tail_estimate(s, t, opt.level, opt.seed));
  return out;
}

McEstimate mc_moment(const SnSampler& sampler, double power,
                     const McOptions& opt) {
  if (power == 0) return moment_estimate({}, 0, opt.level, opt.moment_ci, opt.seed);
  if (opt.replicas < 2) throw InvalidArgument("mc_moment needs replicas >= 2");
  auto s = sample_replicas(sampler, opt.replicas, opt.seed, opt.workers);
  return moment_estimate(s, power, opt.level, opt.moment_ci, opt.seed);
}

double comparable_bound(const BoundReport& r) {
  return r.clamped ? *r.clamped : r.raw;
}

Verdict compare(const BoundReport& report, const McEstimate& est) {
  if (report.provenance != est.config_hash) {
    throw InvalidArgument("provenance mismatch between bound and estimate");
  }
  Verdict v;
  v.bound_value = comparable_bound(report);
  v.estimate = est;
  if (est.ci_low > v.bound_value) {
    v.status = Status::Violated;
  } else if (est.ci_high <= v.bound_value) {
    v.status = Status::Dominates;
  } else {
    v.status = Status::Inconclusive;
  }
  return v;
}

Verdict compare_exact(const BoundReport& report, double exact,
                      std::uint64_t provenance, double rel_slack) {
  if (report.provenance != provenance) {
    throw InvalidArgument("provenance mismatch between bound and exact value");
  }
  Verdict v;
  v.exact = true;
  v.bound_value = comparable_bound(report);
  v.estimate.point = v.estimate.ci_low = v.estimate.ci_high = exact;
  v.estimate.level = 1.0;
  v.estimate.method = "exact";
  v.estimate.config_hash = provenance;
  bool ok;
  if (report.clamped) {
    ok = exact <= *report.clamped * (1 + rel_slack);
  } else {
    ok = LogValue::from_double(exact) <=
         report.value * LogValue::from_double(1 + rel_slack);
  }
  v.status = ok ? Status::Dominates : Status::Violated;
  return v;
}

SnSampler finite_sampler(const FiniteChain& chain, long n,
                         const Eigen::VectorXd& initial) {
  const int S = chain.size();
  // Cumulative rows for inversion sampling.
  auto cum = std::make_shared<std::vector<std::vector<double>>>(S + 1);
  auto cumulate = [](const Eigen::VectorXd& p) {
    std::vector<double> c(p.size());
    double acc = 0;
    for (int i = 0; i < p.size(); ++i) c[i] = acc += p(i);
    c.back() = 1.0;
    return c;
  };
  for (int x = 0; x < S; ++x) (*cum)[x] = cumulate(chain.Q.row(x).transpose());
  (*cum)[S] = cumulate(initial);
  auto gbar = std::make_shared<Eigen::VectorXd>(chain.g_bar());
  return [cum, gbar, n, S](Rng& rng) {
    auto draw = [&](const std::vector<double>& c) {
      double u = uniform01(rng);
      int k = 0;
      while (k + 1 < static_cast<int>(c.size()) && u >= c[k]) ++k;
      return k;
    };
    int x = draw((*cum)[S]);
    double s = 0;
    for (long l = 0; l < n; ++l) {
      s += (*gbar)(x);
      if (l + 1 < n) x = draw((*cum)[x]);
    }
    return s;
  };
}

SnSampler sgd_sampler(const SgdModel& model, long n, long burn_in,
                      const Eigen::VectorXd& theta0) {
  return [model, n, burn_in, theta0](Rng& rng) {
    Eigen::VectorXd th = theta0;
    for (long i = 0; i < burn_in; ++i) th = sgd_step(model, th, rng);
    double s = 0;
    for (long l = 0; l < n; ++l) {
      s += sgd_observable(model, th);
      if (l + 1 < n) th = sgd_step(model, th, rng);
    }
    return s;
  };
}

SnSampler pcn_sampler(const PcnModel& model, long n, long burn_in,
                      const Eigen::VectorXd& x0) {
  return [model, n, burn_in, x0](Rng& rng) {
    Eigen::VectorXd x = x0;
    for (long i = 0; i < burn_in; ++i) x = pcn_step(model, x, rng);
    double s = 0;
    for (long l = 0; l < n; ++l) {
      s += pcn_observable(model, x);
      if (l + 1 < n) x = pcn_step(model, x, rng);
    }
    return s;
  };
}

double finite_norm(const FiniteChain& chain, NormKind kind, int q, double gamma) {
  const Eigen::VectorXd gb = chain.g_bar();
  const int S = chain.size();
  Eigen::VectorXd w(S);
  for (int x = 0; x < S; ++x) {
    switch (kind) {
      case NormKind::VPow: w(x) = std::pow(chain.V(x), 1.0 / (2 * q)); break;
      case NormKind::WGamma: w(x) = pow0(std::log(chain.V(x)), gamma); break;
      case NormKind::NVPow: w(x) = std::pow(chain.V(x), 1.0 / (4 * q)); break;
      case NormKind::NWGamma: w(x) = pow0(std::log(chain.V(x)), gamma); break;
    }
  }
  double r = 0;
  for (int x = 0; x < S; ++x) r = std::max(r, std::abs(gb(x)) / w(x));
  if (kind == NormKind::NVPow || kind == NormKind::NWGamma) {
    for (int x = 0; x < S; ++x) {
      for (int y = 0; y < S; ++y) {
        if (x == y) continue;
        r = std::max(r, std::abs(gb(x) - gb(y)) / (0.5 * (w(x) + w(y))));
      }
    }
  }
  return r;
}

namespace {

bool is_shifted(TheoremId id) {
  return id == TheoremId::T2 || id == TheoremId::T4 || id == TheoremId::T7 ||
         id == TheoremId::T9 || id == TheoremId::T5NS || id == TheoremId::T11;
}

bool is_tail(TheoremId id) {
  return id == TheoremId::T5 || id == TheoremId::T5NS || id == TheoremId::T10 ||
         id == TheoremId::T11 || id == TheoremId::HPRadius;
}

bool uses_gamma(TheoremId id) {
  return !(id == TheoremId::T1 || id == TheoremId::T2 || id == TheoremId::T6 ||
           id == TheoremId::T7);
}

bool is_wass(TheoremId id) {
  switch (id) {
    case TheoremId::T6: case TheoremId::T7: case TheoremId::T8:
    case TheoremId::T9: case TheoremId::T10: case TheoremId::T11:
      return true;
    default:
      return false;
  }
}

NormKind norm_for(TheoremId id, bool wass_hp) {
  switch (id) {
    case TheoremId::T1: case TheoremId::T2: return NormKind::VPow;
    case TheoremId::T6: case TheoremId::T7: return NormKind::NVPow;
    case TheoremId::T8: case TheoremId::T9: case TheoremId::T10:
    case TheoremId::T11: return NormKind::NWGamma;
    case TheoremId::HPRadius: return wass_hp ? NormKind::NWGamma : NormKind::WGamma;
    default: return NormKind::WGamma;
  }
}

}  // namespace

FiniteContext::FiniteContext(std::string id, FiniteChain chain,
                             const FiniteContextOptions& opt)
    : id_(std::move(id)), chain_(std::move(chain)) {
  auto fc = certify_finite_chain(chain_, opt.m_max, opt.target_lambda);
  cert_ = fc.cert;
  if (opt.certificate) {
    cert_ = *opt.certificate;
    if (!cert_.pi_V) cert_.pi_V = chain_.pi_of(chain_.V);
  }
  cert_.validate();
  geom_ = geometric_rate(cert_);
  pi_V_ = resolve_pi_V(cert_).value;
  if (opt.initial_state) {
    x0_ = *opt.initial_state;
    if (x0_ < 0 || x0_ >= chain_.size()) throw InvalidArgument("initial_state out of range");
  } else {
    chain_.V.maxCoeff(&x0_);
  }
  // Wasserstein certificate with the maximal coupling: best m in [1, m_max].
  auto K = maximal_coupling(chain_);
  DriftFit drift{cert_.lambda, cert_.b, 0};
  for (int m = 1; m <= opt.m_max; ++m) {
    try {
      auto w = certify_coupling(chain_, K, m, drift, cert_.d);
      if (!wass_ || w.rate.log_varrho < wass_->rate.log_varrho) wass_ = w;
    } catch (const std::exception&) {
    }
  }
}

BoundInputs FiniteContext::inputs(TheoremId id, int q, double gamma, long n,
                                  const McOptions&) {
  BoundInputs in;
  in.q = q;
  in.gamma = gamma;
  in.n = n;
  const bool w = is_wass(id);
  in.norm_kind = norm_for(id, false);
  in.norm_g = finite_norm(chain_, in.norm_kind, q, gamma);
  in.var_Sn = variance_by_autocovariance(chain_, n);
  in.var_provenance = VarProvenance::Exact;
  in.pi_V = pi_V_;
  in.xi_V = chain_.V(x0_);
  in.xi_sqrtV = std::sqrt(chain_.V(x0_));
  in.pi_sqrtV = chain_.pi_of(chain_.V.cwiseSqrt());
  if (w) {
    if (!wass_) throw CertificationFailure("no coupling certificate for " + id_);
    in.wass = wass_->rate;
    in.kappa_K = wass_->cert.kappa_K;
    in.m = wass_->cert.m;
  } else {
    in.geom = geom_;
    in.m = cert_.m;
  }
  if (is_shifted(id) && !is_tail(id)) in.stationary_moment = *exact_moment(n, q, true);
  return in;
}

SnSampler FiniteContext::sampler(long n, bool stationary) {
  Eigen::VectorXd init = chain_.pi;
  if (!stationary) {
    init = Eigen::VectorXd::Zero(chain_.size());
    init(x0_) = 1.0;
  }
  return finite_sampler(chain_, n, init);
}

std::optional<double> FiniteContext::exact_moment(long n, int q, bool stationary) {
  std::optional<Eigen::VectorXd> init;
  if (!stationary) {
    init = Eigen::VectorXd::Zero(chain_.size());
    (*init)(x0_) = 1.0;
  }
  return exact_sn_moments(chain_, n, 2 * q, init)[2 * q];
}

double empirical_variance_upper(const SnSampler& sampler, const McOptions& opt,
                                int batches) {
  auto s = sample_replicas(sampler, opt.replicas, opt.seed, opt.workers);
  for (double& x : s) x = x * x;
  return batch_means_ci(s, batches, opt.level).ci.high;
}

namespace {

// Inputs shared by the two simulated models; only Wasserstein theorems apply.
BoundInputs sim_inputs(TheoremId id, int q, double gamma, long n,
                       const WassRate& rate, int m, double n_bound,
                       double pi_V, double pi_sqrtV, double xi_V,
                       double xi_sqrtV, double var_upper) {
  if (!is_wass(id) && id != TheoremId::HPRadius) {
    throw InvalidArgument(to_string(id) + " needs a V-geometric certificate");
  }
  BoundInputs in;
  in.q = q;
  in.gamma = gamma;
  in.n = n;
  in.norm_kind = norm_for(id, true);
  in.norm_g = n_bound;
  in.var_Sn = var_upper;
  in.var_provenance = VarProvenance::EmpiricalUpper;
  in.wass = rate;
  in.kappa_K = 1.0;
  in.m = m;
  in.pi_V = pi_V;
  in.pi_sqrtV = pi_sqrtV;
  in.xi_V = xi_V;
  in.xi_sqrtV = xi_sqrtV;
  return in;
}

Eigen::VectorXd offset_point(int dim, double offset) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  x(0) = offset;
  return x;
}

double cached_var(std::map<std::pair<long, std::uint64_t>, double>& cache,
                  ModelContext& ctx, long n, const McOptions& opt, int batches) {
  McOptions o = opt;
  o.seed = derive_seed(opt.seed, 0x7a5000 + static_cast<std::uint64_t>(n));
  auto key = std::make_pair(n, o.seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  double v = empirical_variance_upper(ctx.sampler(n, true), o, batches);
  cache[key] = v;
  return v;
}

}  // namespace

SgdContext::SgdContext(std::string id, SgdModel model, const SimContextOptions& opt)
    : id_(std::move(id)), model_(std::move(model)), opt_(opt) {
  model_.validate();
  k_ = sgd_constants(model_);
  rate_ = contraction_rate(k_.wass, k_.pi_V_upper);
}

BoundInputs SgdContext::inputs(TheoremId id, int q, double gamma, long n,
                               const McOptions& opt) {
  double var = cached_var(var_cache_, *this, n, opt, opt_.var_batches);
  Eigen::VectorXd x0 = model_.theta_star + offset_point(model_.dim, opt_.start_offset);
  double v0 = sgd_V(model_, k_, x0);
  // g is 1-Lipschitz and bounded by 1; the cost is 1 ^ |.|^2.
  return sim_inputs(id, q, gamma, n, rate_, k_.m, 2.0, k_.pi_V_upper,
                    k_.pi_sqrtV_upper, v0, std::sqrt(v0), var);
}

SnSampler SgdContext::sampler(long n, bool stationary) {
  if (stationary) return sgd_sampler(model_, n, opt_.burn_in, model_.theta_star);
  return sgd_sampler(model_, n, 0,
                     model_.theta_star + offset_point(model_.dim, opt_.start_offset));
}

PcnContext::PcnContext(std::string id, PcnModel model, long mc_budget,
                       std::uint64_t seed, double level,
                       const SimContextOptions& opt)
    : id_(std::move(id)), model_(std::move(model)), opt_(opt) {
  k_ = pcn_constants(model_, mc_budget, seed, level);
  rate_ = contraction_rate(k_.wass, k_.pi_V_upper);
}

BoundInputs PcnContext::inputs(TheoremId id, int q, double gamma, long n,
                               const McOptions& opt) {
  double var = cached_var(var_cache_, *this, n, opt, opt_.var_batches);
  Eigen::VectorXd x0 = offset_point(model_.dim, opt_.start_offset);
  double v0 = pcn_V(x0);
  // g = clamp(x_0 / s) with cost 1 ^ |.|/eps_H.
  double nb = std::max(2.0, k_.eps_H / model_.obs_scale);
  return sim_inputs(id, q, gamma, n, rate_, k_.wass.m, nb, k_.pi_V_upper,
                    k_.pi_sqrtV_upper, v0, std::sqrt(v0), var);
}

SnSampler PcnContext::sampler(long n, bool stationary) {
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(model_.dim);
  if (stationary) return pcn_sampler(model_, n, opt_.burn_in, x0);
  return pcn_sampler(model_, n, 0, offset_point(model_.dim, opt_.start_offset));
}

std::string csv_header() {
  return "config_hash,theorem_id,model_id,n,q,gamma,t,bound_log,bound_clamped,"
         "est_point,ci_low,ci_high,status,seed";
}

std::string csv_line(const SweepRow& r) {
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(r.config_hash));
  std::ostringstream os;
  os << hash << ',' << r.theorem_id << ',' << r.model_id << ',' << r.n << ','
     << r.q << ',' << format_double(r.gamma) << ',' << format_double(r.t) << ','
     << format_double(r.bound_log) << ','
     << (r.bound_clamped ? format_double(*r.bound_clamped) : "") << ','
     << format_double(r.est_point) << ',' << format_double(r.ci_low) << ','
     << format_double(r.ci_high) << ',' << to_string(r.status) << ',' << r.seed;
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << csv_line(r) << '\n';
}

void sweep(ModelContext& model, const SweepSpec& spec,
           const std::function<void(const SweepRow&)>& sink) {
  // S_n samples are shared by all cells with the same (n, law).
  std::map<std::pair<long, bool>, std::pair<std::vector<double>, std::uint64_t>> samples;
  auto get_samples = [&](long n, bool stationary)
      -> const std::pair<std::vector<double>, std::uint64_t>& {
    auto key = std::make_pair(n, stationary);
    auto it = samples.find(key);
    if (it != samples.end()) return it->second;
    std::uint64_t s = derive_seed(spec.mc.seed,
                                  2 * static_cast<std::uint64_t>(n) + stationary);
    auto v = sample_replicas(model.sampler(n, stationary), spec.mc.replicas, s,
                             spec.mc.workers);
    return samples[key] = {std::move(v), s};
  };
  const std::vector<double> no_gamma{0.0};
  for (TheoremId id : spec.theorems) {
    const auto& gammas = uses_gamma(id) ? spec.gamma : no_gamma;
    const bool tail = is_tail(id);
    const std::vector<int> one_q{1};
    const std::vector<double> no_t{0.0};
    const auto& qs = tail ? one_q : spec.q;
    const auto& ts = tail ? spec.t : no_t;
    for (long n : spec.n) {
      for (int q : qs) {
        for (double gamma : gammas) {
          for (double t : ts) {
            SweepRow row;
            row.config_hash = spec.config_hash;
            row.theorem_id = to_string(id);
            row.model_id = model.id();
            row.n = n;
            row.q = q;
            row.gamma = gamma;
            row.t = t;
            try {
              auto in = model.inputs(id, q, gamma, n, spec.mc);
              auto rep = evaluate(id, in, t);
              rep.provenance = provenance_key(model.id(), n, q, gamma, t);
              row.bound_log = rep.value.is_zero()
                                  ? -std::numeric_limits<double>::infinity()
                                  : rep.value.log_abs();
              row.bound_clamped = rep.clamped;
              const bool stationary = !is_shifted(id);
              Verdict v;
              std::optional<double> exact;
              if (!tail) exact = model.exact_moment(n, q, stationary);
              if (exact) {
                double slack = q == 1 ? spec.identity_rel_slack : 0.0;
                v = compare_exact(rep, *exact, rep.provenance, slack);
              } else {
                const auto& [s, seed] = get_samples(n, stationary);
                row.seed = seed;
                McEstimate est;
                if (id == TheoremId::HPRadius) {
                  // P(|S_n| >= radius) against delta.
                  est = tail_estimate(s, rep.raw, spec.mc.level, seed);
                  rep.clamped = std::min(1.0, t);
                  row.bound_clamped = rep.clamped;
                } else if (tail) {
                  est = tail_estimate(s, t, spec.mc.level, seed);
                } else {
                  est = moment_estimate(s, 2.0 * q, spec.mc.level,
                                        spec.mc.moment_ci, seed);
                }
                est.config_hash = rep.provenance;
                v = compare(rep, est);
              }
              row.est_point = v.estimate.point;
              row.ci_low = v.estimate.ci_low;
              row.ci_high = v.estimate.ci_high;
              row.status = v.status;
            } catch (const std::exception& e) {
              row.status = Status::Error;
              row.error = e.what();
              row.bound_log = std::numeric_limits<double>::quiet_NaN();
              row.est_point = row.ci_low = row.ci_high =
                  std::numeric_limits<double>::quiet_NaN();
            }
            sink(row);
          }
        }
      }
    }
  }
}

std::vector<SweepRow> sweep(ModelContext& model, const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  sweep(model, spec, [&](const SweepRow& r) { rows.push_back(r); });
  return rows;
}

}  // namespace mcb
