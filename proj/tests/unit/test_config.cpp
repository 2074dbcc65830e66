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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "mcbounds/config.hpp"
#include "mcbounds/errors.hpp"

namespace {

TEST(Config, MalformedJsonReportsPosition) {
  try {
    mcb::parse_config_text("{\n  \"seed\": 1,\n  \"grid\": [}\n");
    FAIL() << "no error";
  } catch (const mcb::ConfigError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
  }
}

TEST(Config, Overrides) {
  mcb::Json j = mcb::Json::parse(R"({"model": {"type": "sgd"}, "grid": {"n": [1, 2]}})");
  mcb::apply_override(j, "model.mu=2.5");
  mcb::apply_override(j, "grid.n.1=7");
  mcb::apply_override(j, "output.dir=results");
  mcb::apply_override(j, "theorems=[\"T6\"]");
  EXPECT_DOUBLE_EQ(j["model"]["mu"].get<double>(), 2.5);
  EXPECT_EQ(j["grid"]["n"][1].get<int>(), 7);
  EXPECT_EQ(j["output"]["dir"].get<std::string>(), "results");
  EXPECT_EQ(j["theorems"][0].get<std::string>(), "T6");
  EXPECT_THROW(mcb::apply_override(j, "no_equals_sign"), mcb::ConfigError);
}

TEST(Config, ValidationNamesPath) {
  auto bad = mcb::Json::parse(R"({"modle": {}})");
  EXPECT_THROW(mcb::validate_config(bad), mcb::ConfigError);
  EXPECT_THROW(mcb::validate_config(mcb::Json::parse(R"({"level": 1.5})")), mcb::ConfigError);
  try {
    mcb::validate_config(mcb::Json::parse(R"({"model": {"type": "sgd", "step": 0.1}})"));
    FAIL() << "no error";
  } catch (const mcb::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("model.step"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(mcb::validate_config(mcb::Json::parse(R"({"seed": 18446744073709551615})")));
  auto neg = mcb::Json::parse(R"({"model": {"type": "sgd"}, "replicas": -5})");
  try {
    mcb::validate_config(neg);
    FAIL() << "no error";
  } catch (const mcb::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("replicas"), std::string::npos);
  }
}

TEST(Config, HashIsCanonical) {
  auto a = mcb::Json::parse(R"({"seed": 1, "replicas": 10})");
  auto b = mcb::Json::parse(R"({"replicas": 10, "seed": 1})");
  EXPECT_EQ(mcb::config_hash(a), mcb::config_hash(b));
  b["seed"] = 2;
  EXPECT_NE(mcb::config_hash(a), mcb::config_hash(b));
}

TEST(Config, BuildsContexts) {
  auto j = mcb::Json::parse(R"({"model": {"type": "finite", "id": "tiny",
      "Q": [[0.9, 0.1], [0.2, 0.8]], "V": [3, 20], "g": [1, -2]}})");
  auto ctx = mcb::make_context(j);
  EXPECT_EQ(ctx->id(), "tiny");
  auto s = mcb::make_context(mcb::Json::parse(R"({"model": {"type": "sgd"}})"));
  EXPECT_EQ(s->id(), "sgd");
  EXPECT_THROW(mcb::make_context(mcb::Json::parse(R"({"model": {"type": "ising"}})")),
               mcb::ConfigError);
}

TEST(Config, CertificateInputs) {
  auto j = mcb::Json::parse(R"({"certificate": {"lambda": 0.5, "b": 1, "d": 9, "m": 1,
      "eps": 0.5}, "inputs": {"norm_g": 1.0, "var_Sn": 20.0}})");
  auto in = mcb::inputs_from_certificate(j, mcb::TheoremId::T1, 2, 0.0, 10);
  ASSERT_TRUE(in.geom);
  EXPECT_NEAR(in.geom->rho, 0.92784, 1e-5);
  EXPECT_DOUBLE_EQ(*in.var_Sn, 20.0);
  EXPECT_DOUBLE_EQ(*in.pi_V, std::exp(1.0));
}

// CLI exit codes.
int run(const std::string& args) {
  std::string cmd = std::string(MCBOUNDS_CLI) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string write_tmp(const std::string& name, const std::string& text) {
  std::string path = testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

TEST(Cli, ExitCodes) {
  auto good = write_tmp("cert.json", R"({"certificate": {"lambda": 0.5, "b": 1, "d": 9,
      "m": 1, "eps": 0.5}})");
  EXPECT_EQ(run("constants -c " + good), 0);
  auto broken = write_tmp("broken.json", "{\"a\": ");
  EXPECT_EQ(run("constants -c " + broken), 2);
  EXPECT_EQ(run("constants -c " + good + " --set certificate.lambda=1.5"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("bound -c " + good), 2);
  auto sweep = write_tmp("sweep.json", R"({"model": {"type": "finite",
      "Q": [[0.9, 0.1], [0.2, 0.8]], "V": [2.718281828459045, 20.085536923187668],
      "g": [1, -2]}, "theorems": ["T1"], "grid": {"n": [5, 10], "q": [1, 2]}})");
  EXPECT_EQ(run("verify -c " + sweep + " -o " + testing::TempDir() + "v.csv"), 0);
  // An understated variance pushes the bound below the truth.
  auto fake = write_tmp("fake.json", R"({"model": {"type": "finite",
      "Q": [[0.9, 0.1], [0.2, 0.8]], "V": [2.718281828459045, 20.085536923187668],
      "g": [1, -2]}, "inputs": {"var_Sn": 1e-6}, "theorems": ["T1"],
      "grid": {"n": [30], "q": [1]}})");
  EXPECT_EQ(run("verify -c " + fake + " -o " + testing::TempDir() + "f.csv"), 1);
}

}  // namespace
