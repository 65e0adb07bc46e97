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

#include <string>
#include <vector>

#include "json.hpp"

namespace nlsrad {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

struct BandNormRow {
  double key = 0.0;
  double value = 0.0;
};

// Measured norms indexed by a strictly increasing key (a dyadic N, a time or
// a radius, named by key_name).
struct BandNormTable {
  std::string quantity;
  std::string key_name = "N";
  std::string cutoff;
  std::vector<BandNormRow> rows;

  void add(double key, double value);
  std::vector<double> keys() const;
  std::vector<double> values() const;

  // Header "quantity,<key_name>,value", one row per entry.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  static BandNormTable from_json(const nlohmann::json& j);
};

}  // namespace nlsrad
