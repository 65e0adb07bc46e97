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

#include "report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace nlsrad {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void BandNormTable::add(double key, double value) {
  require(std::isfinite(key) && std::isfinite(value), ErrorCode::kInvalidArgument,
          "BandNormTable: non-finite entry");
  require(rows.empty() || key > rows.back().key, ErrorCode::kInvalidArgument,
          "BandNormTable: keys must be strictly increasing");
  rows.push_back({key, value});
}

std::vector<double> BandNormTable::keys() const {
  std::vector<double> k;
  for (const auto& r : rows) k.push_back(r.key);
  return k;
}

std::vector<double> BandNormTable::values() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.value);
  return v;
}

std::string BandNormTable::to_csv() const {
  std::ostringstream os;
  os << "quantity," << key_name << ",value\n";
  for (const auto& r : rows) {
    os << '"' << quantity << "\"," << format_double(r.key) << ',' << format_double(r.value) << '\n';
  }
  return os.str();
}

nlohmann::json BandNormTable::to_json() const {
  nlohmann::json j;
  j["quantity"] = quantity;
  j["key"] = key_name;
  j["cutoff"] = cutoff;
  auto& arr = j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back({{key_name, r.key}, {"value", r.value}});
  return j;
}

BandNormTable BandNormTable::from_json(const nlohmann::json& j) {
  BandNormTable t;
  t.quantity = j.at("quantity").get<std::string>();
  t.key_name = j.at("key").get<std::string>();
  t.cutoff = j.value("cutoff", "");
  for (const auto& r : j.at("rows")) t.add(r.at(t.key_name).get<double>(), r.at("value").get<double>());
  return t;
}

}  // namespace nlsrad
