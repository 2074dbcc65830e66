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

#include "mcbounds/log_value.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mcbounds/errors.hpp"

namespace mcb {

LogValue LogValue::from_double(double x) {
  if (std::isnan(x)) throw InvalidArgument("LogValue from NaN");
  LogValue v;
  if (x == 0.0) return v;
  v.sign_ = x > 0 ? 1 : -1;
  v.log_abs_ = std::log(std::fabs(x));
  return v;
}

LogValue LogValue::from_log(double log_abs, int sign) {
  if (std::isnan(log_abs)) throw InvalidArgument("LogValue with NaN log");
  LogValue v;
  if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) {
    return v;
  }
  v.sign_ = sign > 0 ? 1 : -1;
  v.log_abs_ = log_abs;
  return v;
}

double LogValue::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs_);
}

LogValue LogValue::operator-() const {
  LogValue v = *this;
  v.sign_ = -v.sign_;
  return v;
}

LogValue LogValue::operator+(const LogValue& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  const LogValue& big = log_abs_ >= o.log_abs_ ? *this : o;
  const LogValue& small = log_abs_ >= o.log_abs_ ? o : *this;
  double r = std::exp(small.log_abs_ - big.log_abs_);
  if (big.sign_ == small.sign_) {
    return from_log(big.log_abs_ + std::log1p(r), big.sign_);
  }
  if (r == 1.0) return zero();
  return from_log(big.log_abs_ + std::log1p(-r), big.sign_);
}

LogValue LogValue::operator-(const LogValue& o) const { return *this + (-o); }

LogValue LogValue::operator*(const LogValue& o) const {
  if (sign_ == 0 || o.sign_ == 0) return zero();
  return from_log(log_abs_ + o.log_abs_, sign_ * o.sign_);
}

LogValue LogValue::operator/(const LogValue& o) const {
  if (o.sign_ == 0) throw InvalidArgument("LogValue division by zero");
  if (sign_ == 0) return zero();
  return from_log(log_abs_ - o.log_abs_, sign_ * o.sign_);
}

LogValue LogValue::pow(double e) const {
  if (sign_ < 0) throw InvalidArgument("LogValue::pow of negative value");
  if (sign_ == 0) return e == 0.0 ? one() : zero();
  return from_log(log_abs_ * e);
}

bool LogValue::operator<(const LogValue& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  if (sign_ == 0) return false;
  return sign_ > 0 ? log_abs_ < o.log_abs_ : log_abs_ > o.log_abs_;
}

std::string LogValue::str() const {
  std::ostringstream os;
  os.precision(17);
  if (sign_ == 0) return "0";
  os << (sign_ < 0 ? "-" : "") << "exp(" << log_abs_ << ")";
  return os.str();
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

}  // namespace mcb
