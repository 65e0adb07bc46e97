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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "evolution.hpp"
#include "groundstate.hpp"
#include "report.hpp"

namespace nlsrad {

inline constexpr const char* kArtifactVersion = "nlsrad-1";
inline constexpr std::uint32_t kSnapshotVersion = 1;

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex_hash(std::uint64_t h);

// Hash of the compact dump of j (object keys are sorted by nlohmann::json).
std::uint64_t config_hash(const nlohmann::json& j);

nlohmann::json config_to_json(const SimulationConfig& c);
SimulationConfig config_from_json(const nlohmann::json& j);
nlohmann::json grid_to_json(const RadialGrid& g);
GridPtr grid_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const GroundStateCertificate& c);

// Text: "#" header lines carrying the grid, then one "r re im" row per node.
void write_columnar(const std::filesystem::path& path, const RadialField& f);
RadialField read_columnar(const std::filesystem::path& path);

// Binary: magic "NLSRADSN", version, d, n, r_max, grid hash, config hash, time,
// then n (re, im) doubles; little-endian, bit-exact on read.
struct Snapshot {
  RadialField field;
  double time = 0.0;
  std::uint64_t config_hash = 0;
};

void write_snapshot(const std::filesystem::path& path, const RadialField& f, double time,
                    std::uint64_t config_hash);
// A grid with the stored hash is reused when given, otherwise rebuilt from the header.
Snapshot read_snapshot(const std::filesystem::path& path, const GridPtr& grid = nullptr);

// Directory of snap_NNNNNN.bin files plus manifest.json (config, grid, times,
// conservation log, guard event, extra entries).
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const nlohmann::json& extra = nlohmann::json::object());
Trajectory read_trajectory(const std::filesystem::path& dir);
nlohmann::json read_manifest(const std::filesystem::path& dir);

// Ground-state cache keyed by (d, grid hash, tol): <root>/gs_d<d>_<hash>_<tol>.bin.
std::filesystem::path ground_state_cache_path(const std::filesystem::path& root,
                                              const RadialGrid& g, double tol);
void store_ground_state(const std::filesystem::path& root, const GroundState& q, double tol);
std::optional<GroundState> load_ground_state(const std::filesystem::path& root, const GridPtr& g,
                                             double tol);

// Writes text atomically (temp file + rename); throws kIo.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace nlsrad
