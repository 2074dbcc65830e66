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

#include "mcbounds/commands.hpp"

#include <sstream>

#include "mcbounds/errors.hpp"
#include "mcbounds/finite_chain.hpp"
#include "mcbounds/pcn.hpp"
#include "mcbounds/random.hpp"
#include "mcbounds/sgd.hpp"

namespace mcb {

namespace {

// Applies the config's "inputs" on top of what the model supplies.
class OverriddenContext : public ModelContext {
 public:
  OverriddenContext(std::unique_ptr<ModelContext> base, Json inputs)
      : base_(std::move(base)), inputs_(std::move(inputs)) {}
  std::string id() const override { return base_->id(); }
  BoundInputs inputs(TheoremId id, int q, double gamma, long n,
                          const McOptions& opt) override {
    auto in = base_->inputs(id, q, gamma, n, opt);
    apply_input_overrides(inputs_, in);
    return in;
  }
  SnSampler sampler(long n, bool stationary) override {
    return base_->sampler(n, stationary);
  }
  std::optional<double> exact_moment(long n, int q, bool stationary) override {
    return base_->exact_moment(n, q, stationary);
  }

 private:
  std::unique_ptr<ModelContext> base_;
  Json inputs_;
};

}  // namespace

Json constants_report(const Json& cfg) {
  Json out;
  out["config_hash"] = config_hash(cfg);
  if (cfg.contains("model")) {
    auto ctx = make_context(cfg);
    out["model_id"] = ctx->id();
    if (auto* f = dynamic_cast<FiniteContext*>(ctx.get())) {
      out["pi"] = std::vector<double>(f->chain().pi.data(), f->chain().pi.data() + f->chain().size());
      out["pi_V"] = f->pi_V();
      out["vgeom"] = to_json(f->geom());
      auto fc = certify_finite_chain(f->chain());
      out["certificate"] = to_json(fc.cert);
      out["drift_witness"] = fc.witness;
      out["small_set"] = fc.small.members;
      if (f->wass()) {
        out["wasserstein"] = {{"certificate", to_json(f->wass()->cert)},
                              {"rate", to_json(f->wass()->rate)}};
      }
    } else if (auto* s = dynamic_cast<SgdContext*>(ctx.get())) {
      out["sgd"] = to_json(s->constants());
      out["wasserstein"] = {{"rate", to_json(s->rate())}};
    } else if (auto* p = dynamic_cast<PcnContext*>(ctx.get())) {
      out["pcn"] = to_json(p->constants());
      out["wasserstein"] = {{"rate", to_json(p->rate())}};
    }
  } else if (cfg.contains("certificate")) {
    const auto& cj = cfg.at("certificate");
    auto dc = drift_certificate_from(cj);
    auto piv = resolve_pi_V(dc);
    out["certificate"] = to_json(dc);
    out["pi_V"] = {{"value", piv.value}, {"fallback", piv.fallback}};
    out["vgeom"] = to_json(geometric_rate(dc));
    auto wc = wass_certificate_from(cj);
    auto ds = delta_star(wc);
    auto wr = contraction_rate(wc, piv.value);
    out["wasserstein"] = {{"certificate", to_json(wc)},
                          {"rate", to_json(wr)},
                          {"delta_branch", ds.degenerate ? "degenerate" : "root"},
                          {"monotone_precondition", ds.monotone_precondition},
                          {"iterations", ds.iterations}};
  } else {
    throw ConfigError("constants needs a 'model' or a 'certificate'");
  }
  return out;
}

Json bound_report(const Json& cfg) {
  if (!cfg.contains("theorems") || cfg.at("theorems").empty()) {
    throw ConfigError("theorems: bound needs at least one theorem id");
  }
  Json cell = cfg.value("cell", Json::object());
  const long n = cell.value("n", 100L);
  const int q = cell.value("q", 2);
  const double gamma = cell.value("gamma", 0.0);
  const double t = cell.value("t", 0.0);
  if (n < 1 || q < 1) throw ConfigError("cell: n and q must be >= 1");
  std::unique_ptr<ModelContext> ctx;
  if (cfg.contains("model")) ctx = make_context(cfg);
  auto opt = mc_options(cfg);
  Json out = Json::array();
  for (const auto& th : cfg.at("theorems")) {
    auto id = theorem_from_string(th.get<std::string>());
    BoundInputs in;
    if (ctx) {
      in = ctx->inputs(id, q, gamma, n, opt);
      if (cfg.contains("inputs")) apply_input_overrides(cfg.at("inputs"), in);
    } else {
      in = inputs_from_certificate(cfg, id, q, gamma, n);
    }
    out.push_back(to_json(evaluate(id, in, t)));
  }
  return out;
}

std::string simulate_csv(const Json& cfg) {
  const auto& m = cfg.at("model");
  const long steps = cfg.value("steps", 100L);
  if (steps < 0) throw ConfigError("steps: must be >= 0");
  const bool coupled = cfg.contains("coupled");
  auto opt = mc_options(cfg);
  Rng rng = make_rng(opt.seed, 0x5e1);
  std::ostringstream os;
  auto vec_from = [](const Json& j, int dim, double first) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    if (j.is_array()) {
      if (static_cast<int>(j.size()) != dim) throw ConfigError("start: wrong dimension");
      for (int i = 0; i < dim; ++i) v(i) = j[i].get<double>();
    } else {
      v(0) = first;
    }
    return v;
  };
  Json cj = coupled ? cfg.at("coupled") : Json::object();
  std::string type = m.at("type");
  if (type == "finite") {
    auto ch = finite_chain_from(m);
    int x = static_cast<int>(m.value("initial_state", 0L));
    int xp = static_cast<int>(cj.value("initial_state", 1L)) % ch.size();
    if (x < 0 || x >= ch.size()) throw ConfigError("model.initial_state out of range");
    auto K = maximal_coupling(ch);
    os << (coupled ? "step,state,state_p\n" : "step,state\n");
    auto draw = [&](auto row) {
      double u = uniform01(rng), acc = 0;
      for (int y = 0; y < row.size(); ++y) {
        acc += row(y);
        if (u < acc) return y;
      }
      return static_cast<int>(row.size()) - 1;
    };
    for (long s = 0; s <= steps; ++s) {
      os << s << ',' << x;
      if (coupled) os << ',' << xp;
      os << '\n';
      if (coupled) {
        int z = draw(K.K.row(K.index(x, xp)));
        x = z / ch.size();
        xp = z % ch.size();
      } else {
        x = draw(ch.Q.row(x));
      }
    }
  } else {
    const bool sgd = type == "sgd";
    SgdModel sm;
    PcnModel pm;
    int dim;
    if (sgd) {
      sm = sgd_model_from(m);
      dim = sm.dim;
    } else {
      pm = pcn_model_from(m);
      dim = pm.dim;
    }
    Eigen::VectorXd x = vec_from(m.value("start", Json()), dim, m.value("start_offset", 2.0));
    Eigen::VectorXd xp = vec_from(cj.value("start", Json()), dim, 0.0);
    os << "step";
    for (int i = 0; i < dim; ++i) os << ",x" << i;
    if (coupled) for (int i = 0; i < dim; ++i) os << ",xp" << i;
    os << '\n';
    for (long s = 0; s <= steps; ++s) {
      os << s;
      for (int i = 0; i < dim; ++i) os << ',' << format_double(x(i));
      if (coupled) for (int i = 0; i < dim; ++i) os << ',' << format_double(xp(i));
      os << '\n';
      if (s == steps) break;
      if (sgd) {
        if (coupled) sgd_coupled_step(sm, x, xp, rng);
        else x = sgd_step(sm, x, rng);
      } else {
        if (coupled) pcn_coupled_step(pm, x, xp, rng);
        else x = pcn_step(pm, x, rng);
      }
    }
  }
  return os.str();
}

SweepOutcome sweep_report(const Json& cfg, int workers_override) {
  auto spec = sweep_spec_from(cfg);
  if (workers_override > 0) spec.mc.workers = workers_override;
  SweepOutcome out;
  std::ostringstream os;
  os << csv_header() << '\n';
  if (!spec.theorems.empty() && !spec.n.empty()) {
    auto ctx = make_context(cfg);
    if (cfg.contains("inputs")) {
      ctx = std::make_unique<OverriddenContext>(std::move(ctx), cfg.at("inputs"));
    }
    sweep(*ctx, spec, [&](const SweepRow& r) {
      os << csv_line(r) << '\n';
      if (r.status == Status::Violated) ++out.violated;
      if (r.status == Status::Error) {
        ++out.errors;
        out.messages.push_back(r.theorem_id + " n=" + std::to_string(r.n) + " q=" +
                               std::to_string(r.q) + ": " + r.error);
      }
      out.rows.push_back(r);
    });
  }
  out.csv = os.str();
  return out;
}

}  // namespace mcb
