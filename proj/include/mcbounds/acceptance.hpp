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

#ifndef MCBOUNDS_ACCEPTANCE_HPP_
#define MCBOUNDS_ACCEPTANCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcbounds/finite_chain.hpp"
#include "mcbounds/harness.hpp"
#include "mcbounds/random.hpp"
#include "mcbounds/sgd.hpp"
#include "mcbounds/pcn.hpp"

namespace mcb {

struct AcceptanceOptions {
  int workers = 1;
  std::uint64_t seed = 20240917;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  std::string csv;  // reference sweep
  bool all_passed() const;
};

// Two-state chain Q = [[0.9,0.1],[0.2,0.8]], V = (e, e^3), g = (1, -2).
FiniteChain reference_two_state();
// Random chain on 2..max_states states with strictly positive rows,
// V in [e, e^3] and g in [-1, 1].
FiniteChain random_finite_chain(Rng& rng, int max_states);
// The random chains used by the suite; each admits a drift/small-set
// certificate.
std::vector<FiniteChain> reference_random_chains(std::uint64_t seed, int count);
SgdModel reference_sgd();
PcnModel reference_pcn();

// The statistical and exact sweep behind criteria 1, 6, 7 and 11.
std::string reference_sweep_csv(const AcceptanceOptions& opt,
                                 std::vector<SweepRow>* rows = nullptr);

AcceptanceReport run_acceptance(
    const AcceptanceOptions& opt,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace mcb

#endif  // MCBOUNDS_ACCEPTANCE_HPP_
