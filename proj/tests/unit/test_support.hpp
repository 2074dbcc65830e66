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

#ifndef MCBOUNDS_TEST_SUPPORT_HPP_
#define MCBOUNDS_TEST_SUPPORT_HPP_

#include <cmath>

#include <Eigen/Dense>

#include "mcbounds/finite_chain.hpp"

namespace mcbtest {

inline mcb::FiniteChain two_state() {
  Eigen::MatrixXd Q(2, 2);
  Q << 0.9, 0.1, 0.2, 0.8;
  Eigen::VectorXd V(2), g(2);
  V << std::exp(1.0), std::exp(3.0);
  g << 1, -2;
  return mcb::FiniteChain::make(Q, V, g);
}

}  // namespace mcbtest

#endif  // MCBOUNDS_TEST_SUPPORT_HPP_
