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
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "nlsrad.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  nls_string_free(s);
  return out;
}

struct Fixture {
  nls_grid* grid = nullptr;
  nls_ground_state* q = nullptr;
  Fixture() {
    REQUIRE(nls_grid_create(4, 20.0, 256, &grid) == NLS_OK);
    REQUIRE(nls_ground_state_solve(grid, 1e-9, nullptr, &q, nullptr) == NLS_OK);
  }
  ~Fixture() {
    nls_ground_state_free(q);
    nls_grid_free(grid);
  }
};

}  // namespace

TEST_CASE("version, status names and errors") {
  CHECK(std::string(nls_version()) == "nlsrad-1");
  CHECK(std::string(nls_status_name(NLS_ERR_IO)) == "io");
  nls_grid* g = nullptr;
  CHECK(nls_grid_create(1, 10.0, 64, &g) == NLS_ERR_INVALID_ARGUMENT);
  CHECK(g == nullptr);
  CHECK(std::string(nls_last_error()).find("dimension out of range") != std::string::npos);
  CHECK(nls_grid_create(4, 10.0, 64, nullptr) == NLS_ERR_INVALID_ARGUMENT);
  CHECK(nls_grid_create(4, 10.0, 64, &g) == NLS_OK);
  CHECK(std::string(nls_last_error()).empty());
  char* desc = nullptr;
  REQUIRE(nls_grid_describe(g, &desc) == NLS_OK);
  const json d = json::parse(take(desc));
  CHECK(d["n"] == 64);
  CHECK(d["dimension"] == 4);
  nls_grid_free(g);
  nls_grid_free(nullptr);

  uint64_t h1 = 0, h2 = 0;
  CHECK(nls_config_hash("{\"b\":1,\"a\":2}", &h1) == NLS_OK);
  CHECK(nls_config_hash("{\"a\":2, \"b\":1}", &h2) == NLS_OK);
  CHECK(h1 == h2);
  CHECK(nls_config_hash("{oops", &h1) == NLS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fields through the C boundary") {
  nls_grid* g = nullptr;
  REQUIRE(nls_grid_create(4, 10.0, 128, &g) == NLS_OK);
  std::vector<double> r(128), re(128), im(128);
  REQUIRE(nls_grid_nodes(g, r.data(), r.size()) == NLS_OK);
  CHECK(nls_grid_nodes(g, r.data(), 5) == NLS_ERR_INVALID_ARGUMENT);
  for (std::size_t j = 0; j < r.size(); ++j) {
    re[j] = std::exp(-r[j] * r[j]);
    im[j] = 0.5 * re[j];
  }
  nls_field* f = nullptr;
  REQUIRE(nls_field_from_samples(g, re.data(), im.data(), re.size(), &f) == NLS_OK);
  std::vector<double> re2(128), im2(128);
  REQUIRE(nls_field_samples(f, re2.data(), im2.data(), 128) == NLS_OK);
  CHECK(re2 == re);
  CHECK(im2 == im);
  double n2 = 0.0, dist = 1.0;
  REQUIRE(nls_field_norm(f, 2.0, &n2) == NLS_OK);
  // ||(1 + i/2) e^{-|x|^2}||_2^2 = 1.25 (pi/2)^2 in d = 4
  CHECK(n2 * n2 == doctest::Approx(1.25 * std::pow(M_PI / 2.0, 2)).epsilon(1e-10));
  REQUIRE(nls_field_distance(f, f, &dist) == NLS_OK);
  CHECK(dist == 0.0);

  const fs::path dir = fs::temp_directory_path() / "nlsrad_test_capi";
  fs::remove_all(dir);
  const std::string snap = (dir / "f.bin").string();
  REQUIRE(nls_field_write_snapshot(f, snap.c_str(), 0.25, 99) == NLS_OK);
  nls_field* back = nullptr;
  double t = 0.0;
  REQUIRE(nls_field_read_snapshot(snap.c_str(), &back, &t) == NLS_OK);
  CHECK(t == 0.25);
  REQUIRE(nls_field_distance(f, back, &dist) == NLS_OK);
  CHECK(dist == 0.0);
  CHECK(nls_field_read_snapshot((dir / "none.bin").string().c_str(), &back, &t) == NLS_ERR_IO);

  nls_grid* other = nullptr;
  REQUIRE(nls_grid_create(4, 10.0, 64, &other) == NLS_OK);
  nls_field* small = nullptr;
  REQUIRE(nls_field_from_samples(other, re.data(), nullptr, 64, &small) == NLS_OK);
  CHECK(nls_field_distance(f, small, &dist) == NLS_ERR_GRID_MISMATCH);

  nls_field_free(small);
  nls_grid_free(other);
  nls_field_free(back);
  nls_field_free(f);
  nls_grid_free(g);
  fs::remove_all(dir);
}

TEST_CASE("ground state, evolution and reports") {
  Fixture fx;
  char* cert = nullptr;
  int passed = 0;
  REQUIRE(nls_ground_state_certify(fx.q, 1e-8, &cert, &passed) == NLS_OK);
  const json c = json::parse(take(cert));
  CHECK(passed == 1);
  CHECK(c["kinetic_ratio"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));

  nls_field* u0 = nullptr;
  REQUIRE(nls_ground_state_sw(fx.q, 0.0, &u0) == NLS_OK);
  double e = 1.0;
  REQUIRE(nls_field_energy(u0, -1, &e) == NLS_OK);
  CHECK(std::abs(e) < 1e-6);

  nls_trajectory* t = nullptr;
  CHECK(nls_evolve("{\"dt\": -1}", u0, &t) == NLS_ERR_INVALID_ARGUMENT);
  REQUIRE(nls_evolve("{\"dt\": 1e-3, \"duration\": 0.1, \"cadence\": 10}", u0, &t) == NLS_OK);
  size_t n = 0;
  REQUIRE(nls_trajectory_size(t, &n) == NLS_OK);
  CHECK(n == 11);
  char* s = nullptr;
  REQUIRE(nls_trajectory_summary(t, &s) == NLS_OK);
  const json sum = json::parse(take(s));
  CHECK(sum["guard"].is_null());
  CHECK(sum["mass_drift"].get<double>() < 1e-10);

  char* rep = nullptr;
  char* csv = nullptr;
  REQUIRE(nls_diagnose(t, "conservation", nullptr, &rep, &csv) == NLS_OK);
  CHECK(json::parse(take(rep))["passed"] == true);
  CHECK(take(csv).rfind("t,mass,energy", 0) == 0);
  CHECK(nls_diagnose(t, "nope", "{}", &rep, nullptr) == NLS_ERR_INVALID_ARGUMENT);
  CHECK(nls_diagnose(t, "virial", "{not json", &rep, nullptr) == NLS_ERR_INVALID_ARGUMENT);

  const fs::path dir = fs::temp_directory_path() / "nlsrad_test_capi_traj";
  fs::remove_all(dir);
  REQUIRE(nls_trajectory_write(t, dir.string().c_str(), "{\"tag\": 1}") == NLS_OK);
  nls_trajectory* back = nullptr;
  REQUIRE(nls_trajectory_read(dir.string().c_str(), &back) == NLS_OK);
  nls_field *a = nullptr, *b = nullptr;
  double ta = 0.0, tb = 0.0, dist = 1.0;
  REQUIRE(nls_trajectory_state(t, 10, &a, &ta) == NLS_OK);
  REQUIRE(nls_trajectory_state(back, 10, &b, &tb) == NLS_OK);
  CHECK(nls_trajectory_state(back, 11, &b, &tb) == NLS_ERR_INVALID_ARGUMENT);
  REQUIRE(nls_field_distance(a, b, &dist) == NLS_OK);
  CHECK(dist == 0.0);
  CHECK(ta == tb);
  nls_field_free(a);
  nls_field_free(b);
  nls_trajectory_free(back);
  nls_trajectory_free(t);
  nls_field_free(u0);
  fs::remove_all(dir);
}

TEST_CASE("guard trip returns a partial trajectory") {
  Fixture fx;
  nls_field* u0 = nullptr;
  REQUIRE(nls_ground_state_pc(fx.q, -1.0, &u0) == NLS_OK);
  nls_trajectory* t = nullptr;
  REQUIRE(nls_evolve("{\"start_time\": -1, \"duration\": 1.0, \"cadence\": 50}", u0, &t) == NLS_OK);
  char* s = nullptr;
  REQUIRE(nls_trajectory_summary(t, &s) == NLS_OK);
  const json sum = json::parse(take(s));
  REQUIRE_FALSE(sum["guard"].is_null());
  CHECK(sum["t_end"].get<double>() < 0.0);
  const std::string status = sum["guard"]["status"];
  CHECK((status == "blowup_guard" || status == "resolution_loss"));
  nls_trajectory_free(t);
  nls_field_free(u0);
}

TEST_CASE("lemma requests") {
  char* rep = nullptr;
  char* csv = nullptr;
  REQUIRE(nls_lemma("{\"mode\": \"suite\", \"draws\": 10}", &rep, &csv) == NLS_OK);
  const json r = json::parse(take(rep));
  CHECK(r["agreements"] == 10);
  CHECK(take(csv).rfind("draw,", 0) == 0);
  REQUIRE(nls_lemma("{\"mode\": \"verify\", \"params\": {\"beta_prime\": 0.001}, "
                    "\"sequence\": {\"kind\": \"saturating\", \"n_max\": 65536}}",
                    &rep, nullptr) == NLS_OK);
  const json v = json::parse(take(rep));
  CHECK(v["status"] == "inapplicable");
  CHECK(v["oracle_confirms"] == true);
  CHECK(nls_lemma("{\"mode\": \"induction\", \"params\": {\"beta_prime\": 0.001}}", &rep, nullptr) ==
        NLS_ERR_INVALID_ARGUMENT);
  CHECK(nls_lemma("{\"mode\": \"dance\"}", &rep, nullptr) == NLS_ERR_INVALID_ARGUMENT);
}
