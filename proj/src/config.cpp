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

#include "mcbounds/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mcbounds/errors.hpp"

namespace mcb {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

const Json& need(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path, "missing field '" + key + "'");
  return obj.at(key);
}

double num(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double num_or(const Json& obj, const std::string& key, double dflt,
              const std::string& path) {
  if (!obj.contains(key)) return dflt;
  return num(obj.at(key), path + "." + key);
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

long int_or(const Json& obj, const std::string& key, long dflt,
            const std::string& path) {
  if (!obj.contains(key)) return dflt;
  return integer(obj.at(key), path + "." + key);
}

Eigen::VectorXd vec(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = num(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Eigen::MatrixXd mat(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const std::size_t S = j.size();
  Eigen::MatrixXd M(S, S);
  for (std::size_t i = 0; i < S; ++i) {
    auto row = vec(j[i], path + "[" + std::to_string(i) + "]");
    if (static_cast<std::size_t>(row.size()) != S) fail(path, "matrix must be square");
    M.row(i) = row.transpose();
  }
  return M;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Json parse_config_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    std::size_t b = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = line_col(text, b);
    throw ConfigError("malformed JSON at line " + std::to_string(line) +
                      ", column " + std::to_string(col));
  }
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(Json& config, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like a.b=value: " + assignment);
  }
  std::string path = assignment.substr(0, eq);
  std::string raw = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::parse_error&) {
    value = raw;
  }
  Json* node = &config;
  std::size_t start = 0;
  for (;;) {
    auto dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("empty segment in override path " + path);
    Json* child;
    if (node->is_array()) {
      std::size_t idx;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw ConfigError("override path " + path + ": '" + key + "' is not an index");
      }
      if (idx >= node->size()) throw ConfigError("override path " + path + ": index out of range");
      child = &(*node)[idx];
    } else {
      if (node->is_null()) *node = Json::object();
      if (!node->is_object()) throw ConfigError("override path " + path + " crosses a scalar");
      child = &(*node)[key];
    }
    if (dot == std::string::npos) {
      *child = value;
      return;
    }
    node = child;
    start = dot + 1;
  }
}

std::uint64_t config_hash(const Json& config) { return fnv1a64(config.dump()); }

std::string default_output_dir() {
  const char* d = std::getenv("MCBOUNDS_OUT_DIR");
  return d && *d ? d : ".";
}

McOptions mc_options(const Json& c) {
  McOptions o;
  o.replicas = int_or(c, "replicas", o.replicas, "");
  o.seed = static_cast<std::uint64_t>(int_or(c, "seed", 1, ""));
  o.level = num_or(c, "level", o.level, "");
  o.workers = static_cast<int>(int_or(c, "workers", 1, ""));
  if (c.contains("moment_ci")) {
    const auto& m = c.at("moment_ci");
    if (m == "bootstrap") o.moment_ci = MomentCi::Bootstrap;
    else if (m == "normal") o.moment_ci = MomentCi::Normal;
    else fail("moment_ci", "expected \"bootstrap\" or \"normal\"");
  }
  if (o.replicas < 100) fail("replicas", "must be >= 100");
  if (!(o.level > 0 && o.level < 1)) fail("level", "must be in (0,1)");
  if (o.workers < 1) fail("workers", "must be >= 1");
  return o;
}

DriftCertificate drift_certificate_from(const Json& j) {
  const std::string p = "certificate";
  DriftCertificate c;
  c.lambda = num(need(j, "lambda", p), p + ".lambda");
  c.b = num(need(j, "b", p), p + ".b");
  c.d = num(need(j, "d", p), p + ".d");
  c.m = static_cast<int>(integer(need(j, "m", p), p + ".m"));
  c.eps = num(need(j, "eps", p), p + ".eps");
  if (j.contains("pi_V")) c.pi_V = num(j.at("pi_V"), p + ".pi_V");
  return c;
}

WassCertificate wass_certificate_from(const Json& j) {
  const std::string p = "certificate";
  WassCertificate c;
  c.lambda = num(need(j, "lambda", p), p + ".lambda");
  c.b = num(need(j, "b", p), p + ".b");
  c.d = num(need(j, "d", p), p + ".d");
  c.m = static_cast<int>(integer(need(j, "m", p), p + ".m"));
  c.eps = num(need(j, "eps", p), p + ".eps");
  c.kappa_K = num_or(j, "kappa_K", 1.0, p);
  return c;
}

FiniteChain finite_chain_from(const Json& m) {
  auto Q = mat(need(m, "Q", "model"), "model.Q");
  auto V = vec(need(m, "V", "model"), "model.V");
  auto g = vec(need(m, "g", "model"), "model.g");
  if (V.size() != Q.rows() || g.size() != Q.rows()) {
    fail("model", "Q, V and g sizes differ");
  }
  return FiniteChain::make(Q, V, g);
}

SgdModel sgd_model_from(const Json& m) {
  const std::string p = "model";
  return SgdModel::make(num_or(m, "mu", 1.0, p), num_or(m, "L", 3.0, p),
                        num_or(m, "sigma2", 1.0, p), num_or(m, "gamma_step", 0.1, p),
                        static_cast<int>(int_or(m, "dim", 2, p)));
}

PcnModel pcn_model_from(const Json& m) {
  const std::string p = "model";
  PcnModel k;
  k.dim = static_cast<int>(int_or(m, "dim", 2, p));
  if (k.dim < 1) fail("model.dim", "must be >= 1");
  if (m.contains("cov")) {
    k.cov = vec(m.at("cov"), "model.cov");
  } else {
    // Default spectrum 0.04 j^{-2}.
    k.cov.resize(k.dim);
    for (int i = 0; i < k.dim; ++i) k.cov(i) = 0.04 / ((i + 1.0) * (i + 1.0));
  }
  k.rho = num_or(m, "rho", 0.5, p);
  k.r_bar = num_or(m, "r_bar", 0.3, p);
  k.a = num_or(m, "a", 0.95, p);
  k.obs_scale = num_or(m, "obs_scale", 0.2, p);
  // Default potential 0.5 min(|x|, 1).
  k.phi.kind = PcnPotential::Kind::CappedNorm;
  k.phi.lipschitz = 0.5;
  k.phi.cap = 1.0;
  if (m.contains("potential")) {
    const auto& ph = m.at("potential");
    if (!ph.is_object()) fail("model.potential", "expected an object");
    std::string kind = ph.value("kind", "capped_norm");
    if (kind == "zero") {
      k.phi.kind = PcnPotential::Kind::Zero;
    } else if (kind == "capped_norm") {
      k.phi.kind = PcnPotential::Kind::CappedNorm;
      k.phi.lipschitz = num_or(ph, "lipschitz", 0.5, "model.potential");
      k.phi.cap = num_or(ph, "cap", 1.0, "model.potential");
    } else if (kind == "quadratic") {
      k.phi.kind = PcnPotential::Kind::Quadratic;
      k.phi.curvature = num_or(ph, "curvature", 1.0, "model.potential");
    } else {
      fail("model.potential.kind", "expected zero, capped_norm or quadratic");
    }
  }
  k.alpha_bar = num_or(m, "alpha_bar", k.phi.oscillation_alpha_bar(), p);
  k.validate();
  return k;
}

void validate_config(const Json& c) {
  if (!c.is_object()) fail("$", "config must be a JSON object");
  static const char* known[] = {"model", "certificate", "theorems", "grid",
                                "replicas", "seed", "level", "workers",
                                "moment_ci", "output", "inputs", "steps",
                                "coupled", "cell", "identity_rel_slack"};
  for (auto it = c.begin(); it != c.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail(it.key(), "unknown field");
  }
  if (c.contains("model")) {
    const auto& m = c.at("model");
    const auto& type = need(m, "type", "model");
    if (!type.is_string()) fail("model.type", "expected a string");
    std::string t = type;
    std::vector<std::string> keys{"type", "id", "burn_in", "start_offset", "start"};
    if (t == "finite") {
      need(m, "Q", "model");
      need(m, "V", "model");
      need(m, "g", "model");
      keys.insert(keys.end(), {"Q", "V", "g", "initial_state", "m_max", "target_lambda"});
    } else if (t == "sgd") {
      keys.insert(keys.end(), {"mu", "L", "sigma2", "gamma_step", "dim"});
    } else if (t == "pcn") {
      keys.insert(keys.end(), {"dim", "cov", "rho", "potential", "alpha_bar", "r_bar", "a",
                               "obs_scale", "mc_budget"});
    } else {
      fail("model.type", "expected finite, sgd or pcn");
    }
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
        fail("model." + it.key(), "unknown field for model type " + t);
      }
    }
  }
  if (c.contains("certificate") && !c.at("certificate").is_object()) {
    fail("certificate", "expected an object");
  }
  if (c.contains("theorems")) {
    const auto& th = c.at("theorems");
    if (!th.is_array()) fail("theorems", "expected an array of theorem ids");
    for (std::size_t i = 0; i < th.size(); ++i) {
      if (!th[i].is_string()) fail("theorems[" + std::to_string(i) + "]", "expected a string");
      try {
        theorem_from_string(th[i].get<std::string>());
      } catch (const std::exception&) {
        fail("theorems[" + std::to_string(i) + "]", "unknown theorem id");
      }
    }
  }
  if (c.contains("grid")) {
    const auto& g = c.at("grid");
    if (!g.is_object()) fail("grid", "expected an object");
    for (const char* k : {"n", "q", "gamma", "t"}) {
      if (g.contains(k) && !g.at(k).is_array()) fail(std::string("grid.") + k, "expected an array");
    }
  }
  for (const char* k : {"replicas", "seed", "workers", "steps"}) {
    if (c.contains(k) && !c.at(k).is_number_integer()) fail(k, "expected an integer");
  }
  // Non-negative integers parse as unsigned.
  for (const char* k : {"replicas", "seed", "workers", "steps"}) {
    if (c.contains(k) && !c.at(k).is_number_unsigned()) fail(k, "must be >= 0");
  }
  for (const char* k : {"replicas", "workers"}) {
    if (c.contains(k) && c.at(k).get<std::uint64_t>() < 1) fail(k, "must be >= 1");
  }
  if (c.contains("level")) {
    if (!c.at("level").is_number()) fail("level", "expected a number");
    double lv = c.at("level");
    if (!(lv > 0 && lv < 1)) fail("level", "must be in (0,1)");
  }
  if (c.contains("inputs") && !c.at("inputs").is_object()) fail("inputs", "expected an object");
  if (c.contains("output") && !c.at("output").is_object()) fail("output", "expected an object");
}

std::unique_ptr<ModelContext> make_context(const Json& c) {
  const auto& m = need(c, "model", "$");
  std::string type = need(m, "type", "model");
  std::string id = m.value("id", type);
  SimContextOptions sim;
  sim.burn_in = int_or(m, "burn_in", sim.burn_in, "model");
  sim.start_offset = num_or(m, "start_offset", sim.start_offset, "model");
  if (type == "finite") {
    FiniteContextOptions fo;
    fo.m_max = static_cast<int>(int_or(m, "m_max", fo.m_max, "model"));
    if (m.contains("target_lambda")) fo.target_lambda = num(m.at("target_lambda"), "model.target_lambda");
    if (m.contains("initial_state")) fo.initial_state = static_cast<int>(integer(m.at("initial_state"), "model.initial_state"));
    if (c.contains("certificate")) fo.certificate = drift_certificate_from(c.at("certificate"));
    return std::make_unique<FiniteContext>(id, finite_chain_from(m), fo);
  }
  if (type == "sgd") return std::make_unique<SgdContext>(id, sgd_model_from(m), sim);
  if (type == "pcn") {
    auto opt = mc_options(c);
    long budget = int_or(m, "mc_budget", 200000, "model");
    return std::make_unique<PcnContext>(id, pcn_model_from(m), budget,
                                        opt.seed, opt.level, sim);
  }
  fail("model.type", "expected finite, sgd or pcn");
}

SweepSpec sweep_spec_from(const Json& c) {
  SweepSpec s;
  s.mc = mc_options(c);
  s.config_hash = config_hash(c);
  s.identity_rel_slack = c.value("identity_rel_slack", s.identity_rel_slack);
  if (!(s.identity_rel_slack >= 0)) throw ConfigError("identity_rel_slack: must be >= 0");
  if (c.contains("theorems")) {
    for (const auto& t : c.at("theorems")) s.theorems.push_back(theorem_from_string(t));
  }
  if (c.contains("grid")) {
    const auto& g = c.at("grid");
    if (g.contains("n")) {
      for (std::size_t i = 0; i < g.at("n").size(); ++i) {
        long n = integer(g.at("n")[i], "grid.n[" + std::to_string(i) + "]");
        if (n < 1) fail("grid.n", "entries must be >= 1");
        s.n.push_back(n);
      }
    }
    if (g.contains("q")) {
      for (std::size_t i = 0; i < g.at("q").size(); ++i) {
        long q = integer(g.at("q")[i], "grid.q[" + std::to_string(i) + "]");
        if (q < 1) fail("grid.q", "entries must be >= 1");
        s.q.push_back(static_cast<int>(q));
      }
    }
    if (g.contains("gamma")) {
      for (std::size_t i = 0; i < g.at("gamma").size(); ++i)
        s.gamma.push_back(num(g.at("gamma")[i], "grid.gamma[" + std::to_string(i) + "]"));
    } else {
      s.gamma = {0.0};
    }
    if (g.contains("t")) {
      for (std::size_t i = 0; i < g.at("t").size(); ++i)
        s.t.push_back(num(g.at("t")[i], "grid.t[" + std::to_string(i) + "]"));
    }
  }
  return s;
}

}  // namespace mcb

namespace mcb {

namespace {

Json opt_num(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json log_value(const LogValue& v) {
  Json j;
  j["sign"] = v.sign();
  j["log_abs"] = v.is_zero() ? Json(nullptr) : Json(v.log_abs());
  j["value"] = v.to_double();
  return j;
}

}  // namespace

Json to_json(const DriftCertificate& c) {
  return {{"lambda", c.lambda}, {"b", c.b}, {"d", c.d}, {"m", c.m},
          {"eps", c.eps}, {"pi_V", opt_num(c.pi_V)}};
}

Json to_json(const WassCertificate& c) {
  return {{"lambda", c.lambda}, {"b", c.b}, {"d", c.d}, {"m", c.m},
          {"eps", c.eps}, {"kappa_K", c.kappa_K}};
}

Json to_json(const GeomRate& r) {
  return {{"rho", r.rho}, {"log_rho", r.log_rho}, {"c", r.c},
          {"lambda_bar_m", r.lambda_bar_m}, {"b_m", r.b_m}, {"b_bar_m", r.b_bar_m}};
}

Json to_json(const WassRate& r) {
  return {{"delta_star", r.delta_star}, {"residual", r.residual},
          {"degenerate", r.degenerate}, {"varrho", r.varrho},
          {"log_varrho", r.log_varrho}, {"c_K", r.c_K}, {"zeta", r.zeta},
          {"C1", r.C1}, {"lambda_bar_m", r.lambda_bar_m}, {"b_m", r.b_m},
          {"d_bar", r.d_bar}};
}

Json to_json(const BoundInputs& in) {
  Json j = {{"q", in.q}, {"gamma", in.gamma}, {"n", in.n}, {"norm_g", in.norm_g},
            {"norm_kind", to_string(in.norm_kind)}, {"var_Sn", opt_num(in.var_Sn)},
            {"var_provenance", to_string(in.var_provenance)},
            {"kappa_K", in.kappa_K}, {"m", in.m}, {"pi_V", opt_num(in.pi_V)},
            {"xi_V", opt_num(in.xi_V)}, {"xi_sqrtV", opt_num(in.xi_sqrtV)},
            {"pi_sqrtV", opt_num(in.pi_sqrtV)}, {"f_min", opt_num(in.f_min)},
            {"stationary_moment", opt_num(in.stationary_moment)}};
  if (in.geom) j["geom"] = to_json(*in.geom);
  if (in.wass) j["wass"] = to_json(*in.wass);
  return j;
}

Json to_json(const BoundReport& r) {
  return {{"theorem", to_string(r.theorem)}, {"value", log_value(r.value)},
          {"raw", r.raw}, {"clamped", opt_num(r.clamped)},
          {"leading", log_value(r.leading)}, {"remainder", log_value(r.remainder)},
          {"t", r.t}, {"notes", r.notes}, {"inputs", to_json(r.inputs)}};
}

Json to_json(const SgdConstants& k) {
  return {{"sigma_tilde2", k.sigma_tilde2}, {"kappa_f", k.kappa_f},
          {"gamma_f", k.gamma_f}, {"lambda", k.lambda}, {"b", k.b}, {"R", k.R},
          {"d", k.d}, {"eps", k.eps}, {"m", k.m}, {"bias_bound", k.bias_bound},
          {"bias_step_ok", k.bias_step_ok},
          {"hessian_lipschitz_assumed", k.hessian_lipschitz_assumed},
          {"level_set_in_ball", k.level_set_in_ball},
          {"certificate", to_json(k.wass)}, {"pi_V_upper", k.pi_V_upper},
          {"pi_sqrtV_upper", k.pi_sqrtV_upper}};
}

Json to_json(const PcnConstants& k) {
  return {{"tau", k.tau}, {"alpha_tau", k.alpha_tau}, {"D_tau", k.D_tau},
          {"K1", k.K1}, {"R_pcn1", k.R_pcn1}, {"lambda", k.lambda},
          {"b1", k.b1}, {"b2", k.b2}, {"b", k.b}, {"t_star", k.t_star},
          {"g_t_star", k.g_t_star}, {"C_alpha_beta", k.C_alpha_beta},
          {"p1", k.p1}, {"contraction_gamma", k.contraction_gamma},
          {"eps_H", k.eps_H}, {"R", k.R}, {"d", k.d}, {"m", k.m},
          {"m_floored", k.m_floored}, {"R_m", k.R_m}, {"eps", k.eps},
          {"certificate", to_json(k.wass)}, {"pi_V_upper", k.pi_V_upper},
          {"pi_sqrtV_upper", k.pi_sqrtV_upper}, {"level", k.level},
          {"mc_samples", k.mc_samples}, {"annotations", k.annotations}};
}

Json to_json(const SweepRow& r) {
  Json j = {{"config_hash", r.config_hash}, {"theorem_id", r.theorem_id},
            {"model_id", r.model_id}, {"n", r.n}, {"q", r.q}, {"gamma", r.gamma},
            {"t", r.t}, {"bound", {{"log", r.bound_log}, {"clamped", opt_num(r.bound_clamped)}}},
            {"estimate", {{"point", r.est_point}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high}}},
            {"status", to_string(r.status)}, {"seed", r.seed}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void apply_input_overrides(const Json& j, BoundInputs& in) {
  if (j.is_null()) return;
  if (!j.is_object()) fail("inputs", "expected an object");
  auto set = [&](const char* key, std::optional<double>& field) {
    if (j.contains(key)) field = num(j.at(key), std::string("inputs.") + key);
  };
  if (j.contains("norm_g")) in.norm_g = num(j.at("norm_g"), "inputs.norm_g");
  if (j.contains("norm_kind")) in.norm_kind = norm_kind_from_string(j.at("norm_kind").get<std::string>());
  if (j.contains("var_provenance")) in.var_provenance = var_provenance_from_string(j.at("var_provenance").get<std::string>());
  if (j.contains("kappa_K")) in.kappa_K = num(j.at("kappa_K"), "inputs.kappa_K");
  set("var_Sn", in.var_Sn);
  set("pi_V", in.pi_V);
  set("xi_V", in.xi_V);
  set("xi_sqrtV", in.xi_sqrtV);
  set("pi_sqrtV", in.pi_sqrtV);
  set("f_min", in.f_min);
  set("stationary_moment", in.stationary_moment);
}

BoundInputs inputs_from_certificate(const Json& c, TheoremId id, int q,
                                    double gamma, long n) {
  const auto& cert = need(c, "certificate", "$");
  BoundInputs in;
  in.q = q;
  in.gamma = gamma;
  in.n = n;
  auto dc = drift_certificate_from(cert);
  double piV = resolve_pi_V(dc).value;
  in.pi_V = piV;
  in.m = dc.m;
  const bool w = id == TheoremId::T6 || id == TheoremId::T7 || id == TheoremId::T8 ||
                 id == TheoremId::T9 || id == TheoremId::T10 || id == TheoremId::T11;
  switch (id) {
    case TheoremId::T1: case TheoremId::T2: in.norm_kind = NormKind::VPow; break;
    case TheoremId::T6: case TheoremId::T7: in.norm_kind = NormKind::NVPow; break;
    case TheoremId::T8: case TheoremId::T9: case TheoremId::T10:
    case TheoremId::T11: in.norm_kind = NormKind::NWGamma; break;
    default: in.norm_kind = NormKind::WGamma; break;
  }
  if (w) {
    auto wc = wass_certificate_from(cert);
    in.wass = contraction_rate(wc, piV);
    in.kappa_K = wc.kappa_K;
  } else {
    in.geom = geometric_rate(dc);
  }
  if (c.contains("inputs")) apply_input_overrides(c.at("inputs"), in);
  return in;
}

}  // namespace mcb
