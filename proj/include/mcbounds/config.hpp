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

#ifndef MCBOUNDS_CONFIG_HPP_
#define MCBOUNDS_CONFIG_HPP_

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "mcbounds/harness.hpp"
#include "mcbounds/vgeom.hpp"
#include "mcbounds/wasserstein.hpp"

namespace mcb {

using Json = nlohmann::json;

// Parses text; ConfigError carries "line L, column C" on malformed input.
Json parse_config_text(const std::string& text);
Json load_config_file(const std::string& path);

// "a.b.c=value"; value is read as JSON, falling back to a string.
void apply_override(Json& config, const std::string& assignment);

// Structural checks before any work; throws ConfigError naming the path.
void validate_config(const Json& config);

// FNV-1a of the canonical dump.
std::uint64_t config_hash(const Json& config);

McOptions mc_options(const Json& config);
DriftCertificate drift_certificate_from(const Json& cert);
WassCertificate wass_certificate_from(const Json& cert);
FiniteChain finite_chain_from(const Json& model);
SgdModel sgd_model_from(const Json& model);
PcnModel pcn_model_from(const Json& model);
std::unique_ptr<ModelContext> make_context(const Json& config);
SweepSpec sweep_spec_from(const Json& config);

// JSON views of results.
Json to_json(const DriftCertificate& c);
Json to_json(const WassCertificate& c);
Json to_json(const GeomRate& r);
Json to_json(const WassRate& r);
Json to_json(const BoundInputs& in);
Json to_json(const BoundReport& r);
Json to_json(const SgdConstants& k);
Json to_json(const PcnConstants& k);
Json to_json(const SweepRow& r);

// Bound inputs from a raw certificate plus an "inputs" object, for theorem id.
BoundInputs inputs_from_certificate(const Json& config, TheoremId id, int q,
                                    double gamma, long n);
// Applies the fields present in "inputs" on top of in.
void apply_input_overrides(const Json& inputs, BoundInputs& in);

// Default output directory: MCBOUNDS_OUT_DIR, else ".".
std::string default_output_dir();

}  // namespace mcb

#endif  // MCBOUNDS_CONFIG_HPP_
