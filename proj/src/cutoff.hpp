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

namespace nlsrad {

// Smooth radial bump: 1 on |x| <= 1, 0 on |x| >= 25/24. The transition is
// the standard exp(-1/s) partition
//   phi(x) = psi(1 - t) / (psi(1 - t) + psi(t)),  t = 24 (|x| - 1),
//   psi(s) = exp(-1/s) for s > 0, else 0,
// which is C^infinity and monotone. This exact formula is frozen; reported
// constants depend on it.
struct CutoffProfile {
  static constexpr double kPlateau = 1.0;
  static constexpr double kSupport = 25.0 / 24.0;

  static double phi(double x) {
    x = std::abs(x);
    if (x <= kPlateau) return 1.0;
    if (x >= kSupport) return 0.0;
    const double t = (x - kPlateau) / (kSupport - kPlateau);
    const double a = psi(1.0 - t);
    const double b = psi(t);
    return a / (a + b);
  }

  // phi_{<=C}(x) = phi(x / C)
  static double le(double c, double x) { return phi(x / c); }
  // phi_{>C} = 1 - phi_{<=C}
  static double gt(double c, double x) { return 1.0 - phi(x / c); }

 private:
  static double psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
};

}  // namespace nlsrad
