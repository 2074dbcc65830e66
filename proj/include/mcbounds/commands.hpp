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

#ifndef MCBOUNDS_COMMANDS_HPP_
#define MCBOUNDS_COMMANDS_HPP_

#include <string>
#include <vector>

#include "mcbounds/config.hpp"
#include "mcbounds/harness.hpp"

namespace mcb {

// Config-driven operations shared by the command line and the Python module.
// Each takes a validated config.

// Certificates and rates for a model, or for a raw "certificate".
Json constants_report(const Json& config);

// One report per entry of "theorems" at the "cell" {n, q, gamma, t}.
Json bound_report(const Json& config);

// Trajectory CSV: "steps" steps of the model, or of a coupled pair when
// "coupled" is present.
std::string simulate_csv(const Json& config);

struct SweepOutcome {
  std::string csv;
  std::vector<SweepRow> rows;
  long violated = 0;
  long errors = 0;
  std::vector<std::string> messages;
};

// Grid sweep; "inputs" overrides the model-supplied bound inputs.
SweepOutcome sweep_report(const Json& config, int workers_override = 0);

}  // namespace mcb

#endif  // MCBOUNDS_COMMANDS_HPP_
