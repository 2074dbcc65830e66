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

// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance [--workers N] [--seed S] [--csv PATH]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "mcbounds/acceptance.hpp"

int main(int argc, char** argv) {
  mcb::AcceptanceOptions opt;
  std::string csv;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--workers") && i + 1 < argc) {
      opt.workers = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      opt.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--csv") && i + 1 < argc) {
      csv = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--workers N] [--seed S] [--csv PATH]\n", argv[0]);
      return 2;
    }
  }
  auto rep = mcb::run_acceptance(opt, [](const mcb::CriterionResult& r) {
    std::printf("criterion %2d %s  %-46s %7.2fs  %s\n", r.id,
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  if (!csv.empty()) std::ofstream(csv, std::ios::binary) << rep.csv;
  std::printf("%s\n", rep.all_passed() ? "all criteria passed" : "some criteria failed");
  return rep.all_passed() ? 0 : 1;
}
