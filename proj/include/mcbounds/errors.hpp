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

#ifndef MCBOUNDS_ERRORS_HPP_
#define MCBOUNDS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mcb {

// Bad argument or violated precondition supplied by the caller.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A certificate does not satisfy the inequality it is supposed to witness.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Certification of a chain failed; message carries the best attempt.
class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or schema-invalid configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that should be unreachable happened.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mcb

#endif  // MCBOUNDS_ERRORS_HPP_
