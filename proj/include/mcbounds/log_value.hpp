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

#ifndef MCBOUNDS_LOG_VALUE_HPP_
#define MCBOUNDS_LOG_VALUE_HPP_

#include <string>

namespace mcb {

// Signed real stored as sign * exp(log_abs). Used for quantities that
// overflow double long before they stop being meaningful.
class LogValue {
 public:
  LogValue() = default;

  static LogValue zero() { return LogValue(); }
  static LogValue one() { return from_log(0.0); }
  static LogValue from_double(double x);
  // Positive value exp(log_abs).
  static LogValue from_log(double log_abs, int sign = 1);

  int sign() const { return sign_; }
  double log_abs() const { return log_abs_; }
  bool is_zero() const { return sign_ == 0; }

  // May return +-inf when the value does not fit.
  double to_double() const;

  LogValue operator-() const;
  LogValue operator+(const LogValue& o) const;
  LogValue operator-(const LogValue& o) const;
  LogValue operator*(const LogValue& o) const;
  LogValue operator/(const LogValue& o) const;
  LogValue& operator+=(const LogValue& o) { return *this = *this + o; }
  LogValue& operator*=(const LogValue& o) { return *this = *this * o; }

  // Real power of a nonnegative value; 0^0 = 1.
  LogValue pow(double e) const;

  bool operator<(const LogValue& o) const;
  bool operator<=(const LogValue& o) const { return !(o < *this); }
  bool operator==(const LogValue& o) const {
    return sign_ == o.sign_ && (sign_ == 0 || log_abs_ == o.log_abs_);
  }

  std::string str() const;

 private:
  int sign_ = 0;
  double log_abs_ = 0.0;
};

// log(n!) via lgamma.
double log_factorial(double n);

}  // namespace mcb

#endif  // MCBOUNDS_LOG_VALUE_HPP_
