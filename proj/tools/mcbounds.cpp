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

// Command-line front end. Exit codes: 0 pass, 1 verification failure,
// 2 usage or config error, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcbounds/acceptance.hpp"
#include "mcbounds/commands.hpp"
#include "mcbounds/config.hpp"
#include "mcbounds/errors.hpp"
#include "mcbounds/harness.hpp"

namespace {

using mcb::Json;

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool config_required = true) {
  auto* o = app->add_option("-c,--config", c.config, "JSON config file, '-' for stdin");
  if (config_required) o->required();
  app->add_option("--set", c.sets, "override a config field, e.g. --set model.mu=2");
  app->add_option("-o,--out", c.out, "output file (default: stdout or output.csv)");
}

Json load(const Common& c) {
  Json j;
  if (c.config == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    j = mcb::parse_config_text(ss.str());
  } else {
    j = mcb::load_config_file(c.config);
  }
  for (const auto& s : c.sets) mcb::apply_override(j, s);
  mcb::validate_config(j);
  return j;
}

// --out wins; else output.csv (or output.json) under output.dir or the
// default directory; else stdout.
std::string output_path(const Common& c, const Json& cfg, const char* key) {
  if (!c.out.empty()) return c.out;
  if (cfg.contains("output") && cfg.at("output").contains(key)) {
    std::string dir = cfg.at("output").value("dir", mcb::default_output_dir());
    return (std::filesystem::path(dir) / cfg.at("output").at(key).get<std::string>()).string();
  }
  return "";
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw mcb::ConfigError("cannot write " + path);
  f << text;
}

int cmd_constants(const Common& c) {
  Json cfg = load(c);
  emit(output_path(c, cfg, "json"), mcb::constants_report(cfg).dump(2) + "\n");
  return 0;
}

int cmd_bound(const Common& c) {
  Json cfg = load(c);
  emit(output_path(c, cfg, "json"), mcb::bound_report(cfg).dump(2) + "\n");
  return 0;
}

int cmd_simulate(const Common& c) {
  Json cfg = load(c);
  emit(output_path(c, cfg, "csv"), mcb::simulate_csv(cfg));
  return 0;
}

mcb::SweepOutcome run_sweep(const Common& c, int workers) {
  Json cfg = load(c);
  auto out = mcb::sweep_report(cfg, workers);
  for (const auto& m : out.messages) std::fprintf(stderr, "cell %s\n", m.c_str());
  emit(output_path(c, cfg, "csv"), out.csv);
  return out;
}

int cmd_sweep(const Common& c, int workers) {
  run_sweep(c, workers);
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite, int workers,
               long long seed) {
  if (!suite.empty()) {
    if (suite != "acceptance") throw mcb::ConfigError("unknown suite '" + suite + "'");
    mcb::AcceptanceOptions opt;
    if (workers > 0) opt.workers = workers;
    if (seed >= 0) opt.seed = static_cast<std::uint64_t>(seed);
    auto rep = mcb::run_acceptance(opt, [](const mcb::CriterionResult& r) {
      std::printf("criterion %2d %s  %-46s %7.2fs  %s\n", r.id, r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.seconds, r.detail.c_str());
      std::fflush(stdout);
    });
    if (!c.out.empty()) emit(c.out, rep.csv);
    return rep.all_passed() ? 0 : 1;
  }
  if (c.config.empty()) throw mcb::ConfigError("verify needs --suite acceptance or --config");
  auto out = run_sweep(c, workers);
  if (out.violated > 0 || out.errors > 0) {
    std::fprintf(stderr, "%ld violated, %ld error cells\n", out.violated, out.errors);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit moment and concentration bounds for Markov chains"};
  app.require_subcommand(1);
  Common cc, cb, cs, cv, cw;
  std::string suite;
  int workers = 0;
  long long seed = -1;
  auto* constants = app.add_subcommand("constants", "certificates and convergence rates");
  add_common(constants, cc);
  auto* bound = app.add_subcommand("bound", "evaluate theorem bounds for one cell");
  add_common(bound, cb);
  auto* simulate = app.add_subcommand("simulate", "trajectory CSV of a chain or coupled pair");
  add_common(simulate, cs);
  auto* verify = app.add_subcommand("verify", "bound-vs-truth verification; exit 1 on violation");
  add_common(verify, cv, false);
  verify->add_option("--suite", suite, "named suite: acceptance");
  verify->add_option("--workers", workers, "worker threads");
  verify->add_option("--seed", seed, "seed for the acceptance suite");
  auto* sw = app.add_subcommand("sweep", "grid sweep to CSV");
  add_common(sw, cw);
  sw->add_option("--workers", workers, "worker threads");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*constants) return cmd_constants(cc);
    if (*bound) return cmd_bound(cb);
    if (*simulate) return cmd_simulate(cs);
    if (*verify) return cmd_verify(cv, suite, workers, seed);
    if (*sw) return cmd_sweep(cw, workers);
  } catch (const mcb::CertificationFailure& e) {
    std::fprintf(stderr, "certification failure: %s\n", e.what());
    return 1;
  } catch (const mcb::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const mcb::CertificateError& e) {
    std::fprintf(stderr, "certificate error: %s\n", e.what());
    return 2;
  } catch (const mcb::InvalidArgument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 3;
}
