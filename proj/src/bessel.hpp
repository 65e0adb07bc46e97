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

#include <cstddef>
#include <vector>

namespace nlsrad {

// Bessel function of the first kind. Integer orders go through the libm
// routines, everything else through std::cyl_bessel_j.
double bessel_j(double order, double x);

// First `count` positive zeros of J_order, strictly increasing.
std::vector<double> bessel_zeros(double order, std::size_t count);

}  // namespace nlsrad
