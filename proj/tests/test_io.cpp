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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "io.hpp"

using namespace nlsrad;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nlsrad_test_io_" + name);
  fs::remove_all(p);
  return p;
}

RadialField sample_field(const GridPtr& g) {
  return RadialField::from_function(g, [](double r) {
    return cplx(std::exp(-r * r) / 3.0, std::sin(r) * std::exp(-0.5 * r * r));
  });
}

bool bit_equal(const RadialField& a, const RadialField& b) {
  return a.size() == b.size() &&
         std::memcmp(a.samples().data(), b.samples().data(), a.size() * sizeof(cplx)) == 0;
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex_hash(0xabcULL) == "0000000000000abc");
}

TEST_CASE("config JSON round trip and hash") {
  SimulationConfig c;
  c.mu = 1;
  c.dt = 2.5e-4;
  c.duration = 0.75;
  c.cadence = 3;
  c.stepper = Stepper::kLie;
  const nlohmann::json j = config_to_json(c);
  const SimulationConfig back = config_from_json(j);
  CHECK(back.mu == 1);
  CHECK(back.dt == c.dt);
  CHECK(back.cadence == 3);
  CHECK(back.stepper == Stepper::kLie);
  CHECK(config_hash(j) == config_hash(config_to_json(back)));
  nlohmann::json other = j;
  other["dt"] = 1e-3;
  CHECK(config_hash(other) != config_hash(j));
  CHECK_THROWS_AS(config_from_json({{"mu", 3}}), Error);
  CHECK_THROWS_AS(config_from_json({{"dt", "fast"}}), Error);
}

TEST_CASE("binary snapshot round trip is bit-exact") {
  const GridPtr g = make_radial_grid(4, 12.0, 128);
  const RadialField f = sample_field(g);
  const fs::path dir = scratch("snap");
  write_snapshot(dir / "a.bin", f, 0.125, 42);
  const Snapshot s = read_snapshot(dir / "a.bin");
  CHECK(bit_equal(s.field, f));
  CHECK(s.time == 0.125);
  CHECK(s.config_hash == 42);
  CHECK(s.field.grid()->hash() == g->hash());
  CHECK(fs::file_size(dir / "a.bin") == 8 + 4 + 4 + 8 + 8 + 8 + 8 + 8 + 128 * 16);

  const Snapshot shared = read_snapshot(dir / "a.bin", g);
  CHECK(shared.field.grid() == g);
  CHECK_THROWS_AS(read_snapshot(dir / "a.bin", make_radial_grid(4, 10.0, 128)), Error);

  // corruption
  std::string bytes = read_text(dir / "a.bin");
  write_text(dir / "short.bin", bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_snapshot(dir / "short.bin"), Error);
  bytes[0] = 'X';
  write_text(dir / "magic.bin", bytes);
  try {
    read_snapshot(dir / "magic.bin");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  CHECK_THROWS_AS(read_snapshot(dir / "missing.bin"), Error);
  fs::remove_all(dir);
}

TEST_CASE("columnar text round trip") {
  const GridPtr g = make_radial_grid(3, 9.0, 96);
  const RadialField f = sample_field(g);
  const fs::path dir = scratch("col");
  write_columnar(dir / "f.txt", f);
  const RadialField back = read_columnar(dir / "f.txt");
  CHECK(back.grid()->hash() == g->hash());
  CHECK(bit_equal(back, f));
  const std::string text = read_text(dir / "f.txt");
  CHECK(text.rfind("# nlsrad columnar 1\n", 0) == 0);
  write_text(dir / "bad.txt", "# d 3\n# r_max 9\n# n 2\n0.1 1 0\n");
  CHECK_THROWS_AS(read_columnar(dir / "bad.txt"), Error);
  fs::remove_all(dir);
}

TEST_CASE("trajectory directory round trip") {
  const GridPtr g = make_radial_grid(4, 12.0, 128);
  SimulationConfig c;
  c.duration = 0.02;
  c.cadence = 5;
  const Trajectory t = evolve(c, sample_field(g));
  const fs::path dir = scratch("traj");
  write_trajectory(dir, t, {{"note", "unit test"}});
  const nlohmann::json m = read_manifest(dir);
  CHECK(m["artifact_version"] == kArtifactVersion);
  CHECK(m["note"] == "unit test");
  CHECK(m["config_hash"] == hex_hash(config_hash(config_to_json(c))));
  CHECK(m["snapshots"].size() == t.size());

  const Trajectory back = read_trajectory(dir);
  REQUIRE(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back.times()[i] == t.times()[i]);
    CHECK(bit_equal(back.state(i), t.state(i)));
  }
  REQUIRE(back.log().size() == t.log().size());
  CHECK(back.log().back().energy == t.log().back().energy);
  CHECK(back.config().cadence == 5);
  CHECK_FALSE(back.guard().has_value());

  Trajectory guarded(c);
  guarded.append(0.0, sample_field(g));
  guarded.set_guard(GuardEvent{ErrorCode::kBlowupGuard, 0.0, "test"});
  write_trajectory(dir / "g", guarded);
  const Trajectory gb = read_trajectory(dir / "g");
  REQUIRE(gb.guard().has_value());
  CHECK(gb.guard()->code == ErrorCode::kBlowupGuard);
  CHECK(gb.guard()->detail == "test");

  fs::remove(dir / "snap_000001.bin");
  CHECK_THROWS_AS(read_trajectory(dir), Error);
  fs::remove_all(dir);
}

TEST_CASE("ground-state cache") {
  const GridPtr g = make_radial_grid(4, 20.0, 256);
  const GroundState q = solve_ground_state(g, 1e-9);
  const fs::path dir = scratch("gs");
  CHECK_FALSE(load_ground_state(dir, g, 1e-9).has_value());
  store_ground_state(dir, q, 1e-9);
  const auto back = load_ground_state(dir, g, 1e-9);
  REQUIRE(back.has_value());
  CHECK(bit_equal(back->profile, q.profile));
  CHECK(back->mass == q.mass);
  CHECK_FALSE(load_ground_state(dir, g, 1e-8).has_value());
  CHECK(ground_state_cache_path(dir, *g, 1e-9) != ground_state_cache_path(dir, *g, 1e-8));
  fs::remove_all(dir);
}

TEST_CASE("unwritable destinations raise I/O errors") {
  const fs::path dir = scratch("ro");
  fs::create_directories(dir);
  write_text(dir / "file", "x");
  try {
    write_text(dir / "file" / "sub" / "y.txt", "x");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  fs::remove_all(dir);
}
