// Copyright 2026 The ifair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IFAIR_NUMERIC_H_
#define IFAIR_NUMERIC_H_

#include <cmath>
#include <span>

namespace ifair {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    Add(x);
    return *this;
  }
  double Value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double Sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.Add(v);
  return s.Value();
}

// x * log(x) and x * log(x)^2 extended by continuity at 0.
inline double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
inline double XLog2X(double x) {
  if (x <= 0.0) return 0.0;
  const double l = std::log(x);
  return x * l * l;
}

// A non-negative quantity that may be infinite, e.g. a log-ratio with a zero
// denominator. Keeps IEEE infinities out of reports.
struct Score {
  double value = 0.0;  // unspecified when infinite
  bool infinite = false;

  static Score Finite(double v) { return Score{v, false}; }
  static Score Infinite() { return Score{0.0, true}; }

  // Comparisons treat infinity as larger than every finite value.
  friend bool operator<(const Score& a, const Score& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend Score operator+(const Score& a, const Score& b) {
    if (a.infinite || b.infinite) return Infinite();
    return Finite(a.value + b.value);
  }
};

}  // namespace ifair

#endif  // IFAIR_NUMERIC_H_
