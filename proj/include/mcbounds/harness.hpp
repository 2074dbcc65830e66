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

#ifndef MCBOUNDS_HARNESS_HPP_
#define MCBOUNDS_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mcbounds/bounds.hpp"
#include "mcbounds/finite_chain.hpp"
#include "mcbounds/pcn.hpp"
#include "mcbounds/random.hpp"
#include "mcbounds/sgd.hpp"

namespace mcb {

std::uint64_t fnv1a64(std::string_view bytes);
// Hash of the (model, g, n, q, gamma, t) tuple a bound and an estimate refer to.
std::uint64_t provenance_key(const std::string& model_id, long n, int q,
                             double gamma, double t);

enum class MomentCi { Bootstrap, Normal };

struct McOptions {
  long replicas = 10000;
  std::uint64_t seed = 1;
  double level = 0.999;
  int workers = 1;
  MomentCi moment_ci = MomentCi::Bootstrap;
};

struct McEstimate {
  double point = 0;
  double ci_low = 0;
  double ci_high = 0;
  double level = 0;
  long replicas = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::uint64_t config_hash = 0;  // provenance of the estimated quantity
};

enum class Status { Dominates, Violated, Inconclusive, Error };
std::string to_string(Status s);

struct Verdict {
  double bound_value = 0;
  McEstimate estimate;
  Status status = Status::Inconclusive;
  bool exact = false;
};

// Draws one S_n.
using SnSampler = std::function<double(Rng&)>;

// Replicas run in blocks of kBlockSize; block b uses stream (seed, b). The
// result does not depend on the worker count.
inline constexpr long kBlockSize = 1024;
std::vector<double> sample_replicas(const SnSampler& sampler, long replicas,
                                    std::uint64_t seed, int workers);

// P(|S_n| >= t) with a Clopper-Pearson interval.
McEstimate tail_estimate(const std::vector<double>& samples, double t,
                         double level, std::uint64_t seed);
// E|S_n|^power with a bootstrap or normal interval.
McEstimate moment_estimate(const std::vector<double>& samples, double power,
                           double level, MomentCi method, std::uint64_t seed);

McEstimate mc_tail(const SnSampler& sampler, double t, const McOptions& opt);
std::vector<McEstimate> mc_tail_grid(const SnSampler& sampler,
                                     const std::vector<double>& ts,
                                     const McOptions& opt);
McEstimate mc_moment(const SnSampler& sampler, double power,
                     const McOptions& opt);

// Tail bounds compare through the clamped value when present.
double comparable_bound(const BoundReport& report);
// Statistical verdict. Throws InvalidArgument on a provenance mismatch.
Verdict compare(const BoundReport& report, const McEstimate& estimate);
// Exact verdict: dominates iff exact <= bound (1 + rel_slack).
Verdict compare_exact(const BoundReport& report, double exact,
                      std::uint64_t provenance, double rel_slack = 0.0);

// Samplers. S_n sums g - pi(g) over X_0..X_{n-1}.
SnSampler finite_sampler(const FiniteChain& chain, long n,
                         const Eigen::VectorXd& initial);
SnSampler sgd_sampler(const SgdModel& model, long n, long burn_in,
                      const Eigen::VectorXd& theta0);
SnSampler pcn_sampler(const PcnModel& model, long n, long burn_in,
                      const Eigen::VectorXd& x0);

// Norms of g - pi(g) on a finite chain with the discrete cost.
double finite_norm(const FiniteChain& chain, NormKind kind, int q, double gamma);

// A model under test: supplies bound inputs, samplers and exact values.
class ModelContext {
 public:
  virtual ~ModelContext() = default;
  virtual std::string id() const = 0;
  // Fills every input the theorem needs; var_Sn may be estimated from opt.
  virtual BoundInputs inputs(TheoremId id, int q, double gamma, long n,
                             const McOptions& opt) = 0;
  virtual SnSampler sampler(long n, bool stationary) = 0;
  virtual std::optional<double> exact_moment(long n, int q, bool stationary) {
    (void)n; (void)q; (void)stationary;
    return std::nullopt;
  }
};

struct FiniteContextOptions {
  int m_max = 4;
  std::optional<double> target_lambda;
  std::optional<DriftCertificate> certificate;  // replaces the fitted one
  std::optional<int> initial_state;             // default argmax V
};

class FiniteContext : public ModelContext {
 public:
  FiniteContext(std::string id, FiniteChain chain,
                const FiniteContextOptions& opt = {});
  std::string id() const override { return id_; }
  BoundInputs inputs(TheoremId id, int q, double gamma, long n,
                     const McOptions& opt) override;
  SnSampler sampler(long n, bool stationary) override;
  std::optional<double> exact_moment(long n, int q, bool stationary) override;
  const FiniteChain& chain() const { return chain_; }
  const GeomRate& geom() const { return geom_; }
  double pi_V() const { return pi_V_; }
  const std::optional<FiniteWassCertificate>& wass() const { return wass_; }
  int initial_state() const { return x0_; }

 private:
  std::string id_;
  FiniteChain chain_;
  DriftCertificate cert_;
  GeomRate geom_;
  double pi_V_ = 0;
  std::optional<FiniteWassCertificate> wass_;
  int x0_ = 0;
};

struct SimContextOptions {
  long burn_in = 400;
  double start_offset = 2.0;  // shifted chains start at offset * e_1
  int var_batches = 20;
};

class SgdContext : public ModelContext {
 public:
  SgdContext(std::string id, SgdModel model, const SimContextOptions& opt = {});
  std::string id() const override { return id_; }
  BoundInputs inputs(TheoremId id, int q, double gamma, long n,
                     const McOptions& opt) override;
  SnSampler sampler(long n, bool stationary) override;
  const SgdConstants& constants() const { return k_; }
  const WassRate& rate() const { return rate_; }

 private:
  std::string id_;
  SgdModel model_;
  SgdConstants k_;
  WassRate rate_;
  SimContextOptions opt_;
  std::map<std::pair<long, std::uint64_t>, double> var_cache_;
};

class PcnContext : public ModelContext {
 public:
  PcnContext(std::string id, PcnModel model, long mc_budget, std::uint64_t seed,
             double level, const SimContextOptions& opt = {});
  std::string id() const override { return id_; }
  BoundInputs inputs(TheoremId id, int q, double gamma, long n,
                     const McOptions& opt) override;
  SnSampler sampler(long n, bool stationary) override;
  const PcnConstants& constants() const { return k_; }
  const WassRate& rate() const { return rate_; }

 private:
  std::string id_;
  PcnModel model_;
  PcnConstants k_;
  WassRate rate_;
  SimContextOptions opt_;
  std::map<std::pair<long, std::uint64_t>, double> var_cache_;
};

// Upper confidence endpoint of E[S_n^2] from stationary batch means.
double empirical_variance_upper(const SnSampler& sampler, const McOptions& opt,
                                int batches);

struct SweepSpec {
  std::vector<TheoremId> theorems;
  std::vector<long> n;
  std::vector<int> q;
  std::vector<double> gamma;
  std::vector<double> t;  // thresholds; delta for HP-radius
  McOptions mc;
  std::uint64_t config_hash = 0;
  // Rounding slack for q = 1 moment cells, where the bound is Var(S_n).
  double identity_rel_slack = 1e-12;
};

struct SweepRow {
  std::uint64_t config_hash = 0;
  std::string theorem_id;
  std::string model_id;
  long n = 0;
  int q = 0;
  double gamma = 0;
  double t = 0;
  double bound_log = 0;
  std::optional<double> bound_clamped;
  double est_point = 0;
  double ci_low = 0;
  double ci_high = 0;
  Status status = Status::Error;
  std::uint64_t seed = 0;
  std::string error;  // not part of the CSV
};

std::string csv_header();
std::string csv_line(const SweepRow& row);
// %.17g, with inf/nan spelled out.
std::string format_double(double x);

// One row per cell of the declared grids. Moment theorems span n x q x gamma,
// tail theorems n x gamma x t; gamma is skipped where the theorem has none.
// Rows are passed to sink as they complete.
void sweep(ModelContext& model, const SweepSpec& spec,
           const std::function<void(const SweepRow&)>& sink);
std::vector<SweepRow> sweep(ModelContext& model, const SweepSpec& spec);
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace mcb

#endif  // MCBOUNDS_HARNESS_HPP_
