// Copyright 2026 The nlsrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "error.hpp"

namespace nlsrad {

// A dyadic frequency N = 2^k (the ladder is anchored at 1).
class DyadicScale {
 public:
  constexpr DyadicScale() = default;

  static DyadicScale from_exponent(int k) { return DyadicScale(k); }

  static DyadicScale from_value(double n) {
    require(std::isfinite(n) && n > 0.0, ErrorCode::kInvalidArgument,
            "dyadic scale must be positive and finite");
    int e = 0;
    const double m = std::frexp(n, &e);
    require(m == 0.5, ErrorCode::kInvalidArgument,
            "dyadic scale " + std::to_string(n) + " is not a power of two");
    return DyadicScale(e - 1);
  }

  constexpr int exponent() const { return k_; }
  double value() const { return std::ldexp(1.0, k_); }

  DyadicScale half() const { return DyadicScale(k_ - 1); }
  DyadicScale twice() const { return DyadicScale(k_ + 1); }

  constexpr auto operator<=>(const DyadicScale&) const = default;

 private:
  constexpr explicit DyadicScale(int k) : k_(k) {}
  int k_ = 0;
};

}  // namespace nlsrad
