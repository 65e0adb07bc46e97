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

#include "io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nlsrad {

namespace fs = std::filesystem;

static_assert(std::endian::native == std::endian::little, "snapshot format assumes little-endian");

namespace {

constexpr char kMagic[8] = {'N', 'L', 'S', 'R', 'A', 'D', 'S', 'N'};

template <class T>
void put(std::string& buf, const T& v) {
  char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  buf.append(raw, sizeof(T));
}

template <class T>
T take(const std::string& buf, std::size_t& pos, const fs::path& path) {
  require(pos + sizeof(T) <= buf.size(), ErrorCode::kIo, "truncated snapshot " + path.string());
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorCode::kIo, "cannot read " + path.string());
  return ss.str();
}

void write_bytes(const fs::path& path, const std::string& bytes, std::ios::openmode mode) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, mode | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<bool>(out), ErrorCode::kIo, "write failed for " + path.string());
  }
  fs::rename(tmp, path, ec);
  require(!ec, ErrorCode::kIo, "cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.bin", i);
  return buf;
}

std::string tol_tag(double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", tol);
  return buf;
}

nlohmann::json sample_to_json(const ConservationSample& s) {
  return {{"t", s.time}, {"mass", s.mass}, {"energy", s.energy},
          {"gradient_norm", s.gradient_norm}, {"tail_fraction", s.tail_fraction}};
}

ConservationSample sample_from_json(const nlohmann::json& j) {
  ConservationSample s;
  s.time = j.at("t");
  s.mass = j.at("mass");
  s.energy = j.at("energy");
  s.gradient_norm = j.at("gradient_norm");
  s.tail_fraction = j.at("tail_fraction");
  return s;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex_hash(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t config_hash(const nlohmann::json& j) { return fnv1a(j.dump()); }

nlohmann::json config_to_json(const SimulationConfig& c) {
  return {{"mu", c.mu},
          {"dt", c.dt},
          {"start_time", c.start_time},
          {"duration", c.duration},
          {"cadence", c.cadence},
          {"stepper", stepper_name(c.stepper)},
          {"blowup_factor", c.blowup_factor},
          {"tail_guard", c.tail_guard}};
}

SimulationConfig config_from_json(const nlohmann::json& j) {
  SimulationConfig c;
  try {
    c.mu = j.value("mu", c.mu);
    c.dt = j.value("dt", c.dt);
    c.start_time = j.value("start_time", c.start_time);
    c.duration = j.value("duration", c.duration);
    c.cadence = j.value("cadence", c.cadence);
    c.stepper = parse_stepper(j.value("stepper", std::string(stepper_name(c.stepper))));
    c.blowup_factor = j.value("blowup_factor", c.blowup_factor);
    c.tail_guard = j.value("tail_guard", c.tail_guard);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("simulation config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json grid_to_json(const RadialGrid& g) {
  return {{"dimension", g.dimension()}, {"r_max", g.r_max()}, {"n", g.size()},
          {"hash", hex_hash(g.hash())}};
}

GridPtr grid_from_json(const nlohmann::json& j) {
  try {
    return make_radial_grid(j.at("dimension").get<int>(), j.at("r_max").get<double>(),
                            j.at("n").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("grid spec: ") + e.what());
  }
}

nlohmann::json certificate_to_json(const GroundStateCertificate& c) {
  return {{"residual", c.residual},
          {"tolerance", c.tolerance},
          {"kinetic_ratio", c.kinetic_ratio},
          {"mass_ratio", c.mass_ratio},
          {"energy_ratio", c.energy_ratio},
          {"gn_ratio", c.gn_ratio},
          {"shooting_mass", c.shooting_mass},
          {"shooting_mass_rel_diff", c.shooting_mass_rel_diff},
          {"center_value", c.center_value},
          {"shooting_center_value", c.shooting_center_value},
          {"positive_decreasing", c.positive_decreasing},
          {"passed", c.passed}};
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, text, std::ios::out);
}

std::string read_text(const fs::path& path) { return read_bytes(path); }

void write_columnar(const fs::path& path, const RadialField& f) {
  const RadialGrid& g = *f.grid();
  std::string out = "# nlsrad columnar 1\n# d " + std::to_string(g.dimension()) + "\n# r_max " +
                    format_double(g.r_max()) + "\n# n " + std::to_string(g.size()) +
                    "\n# grid_hash " + hex_hash(g.hash()) + "\n# r re im\n";
  const auto r = g.nodes();
  char line[96];
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", r[j], f[j].real(), f[j].imag());
    out += line;
  }
  write_text(path, out);
}

RadialField read_columnar(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  int d = 0;
  double r_max = 0.0;
  std::size_t n = 0;
  std::vector<cplx> values;
  std::vector<double> radii;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "d") ls >> d;
      else if (key == "r_max") ls >> r_max;
      else if (key == "n") ls >> n;
      continue;
    }
    double r, re, im;
    require(static_cast<bool>(ls >> r >> re >> im), ErrorCode::kIo,
            "malformed row in " + path.string());
    radii.push_back(r);
    values.emplace_back(re, im);
  }
  require(d > 0 && n > 0 && r_max > 0.0, ErrorCode::kIo, "missing grid header in " + path.string());
  require(values.size() == n, ErrorCode::kIo, "row count mismatch in " + path.string());
  GridPtr g = make_radial_grid(d, r_max, n);
  const auto nodes = g->nodes();
  for (std::size_t j = 0; j < n; ++j)
    require(std::abs(radii[j] - nodes[j]) <= 1e-12 * r_max, ErrorCode::kGridMismatch,
            "node mismatch in " + path.string());
  return RadialField(g, std::move(values));
}

void write_snapshot(const fs::path& path, const RadialField& f, double time,
                    std::uint64_t cfg_hash) {
  const RadialGrid& g = *f.grid();
  std::string buf(kMagic, sizeof kMagic);
  put(buf, kSnapshotVersion);
  put(buf, static_cast<std::uint32_t>(g.dimension()));
  put(buf, static_cast<std::uint64_t>(g.size()));
  put(buf, g.r_max());
  put(buf, g.hash());
  put(buf, cfg_hash);
  put(buf, time);
  for (const cplx& z : f.samples()) {
    put(buf, z.real());
    put(buf, z.imag());
  }
  write_bytes(path, buf, std::ios::out | std::ios::binary);
}

Snapshot read_snapshot(const fs::path& path, const GridPtr& grid) {
  const std::string buf = read_bytes(path);
  require(buf.size() >= sizeof kMagic && std::memcmp(buf.data(), kMagic, sizeof kMagic) == 0,
          ErrorCode::kIo, "not a snapshot file: " + path.string());
  std::size_t pos = sizeof kMagic;
  const auto version = take<std::uint32_t>(buf, pos, path);
  require(version == kSnapshotVersion, ErrorCode::kIo,
          "unsupported snapshot version " + std::to_string(version) + " in " + path.string());
  const auto d = take<std::uint32_t>(buf, pos, path);
  const auto n = take<std::uint64_t>(buf, pos, path);
  const auto r_max = take<double>(buf, pos, path);
  const auto ghash = take<std::uint64_t>(buf, pos, path);
  Snapshot snap{RadialField::zeros(grid ? grid : make_radial_grid(static_cast<int>(d), r_max, n))};
  snap.config_hash = take<std::uint64_t>(buf, pos, path);
  snap.time = take<double>(buf, pos, path);
  require(buf.size() - pos == n * 2 * sizeof(double), ErrorCode::kIo,
          "payload size mismatch in " + path.string());
  const GridPtr& g = snap.field.grid();
  require(g->hash() == ghash, ErrorCode::kGridMismatch, "grid hash mismatch in " + path.string());
  std::vector<cplx> values(n);
  for (cplx& z : values) {
    const double re = take<double>(buf, pos, path);
    const double im = take<double>(buf, pos, path);
    z = cplx(re, im);
  }
  snap.field = RadialField(g, std::move(values));
  return snap;
}

void write_trajectory(const fs::path& dir, const Trajectory& traj, const nlohmann::json& extra) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec && fs::is_directory(dir), ErrorCode::kIo, "cannot create " + dir.string());
  require(!traj.empty(), ErrorCode::kInvalidArgument, "write_trajectory: empty trajectory");
  const nlohmann::json cfg = config_to_json(traj.config());
  const std::uint64_t h = config_hash(cfg);
  nlohmann::json snaps = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const std::string name = snapshot_name(i);
    write_snapshot(dir / name, traj.state(i), traj.times()[i], h);
    snaps.push_back({{"t", traj.times()[i]}, {"file", name}});
  }
  nlohmann::json log = nlohmann::json::array();
  for (const ConservationSample& s : traj.log()) log.push_back(sample_to_json(s));
  nlohmann::json guard = nullptr;
  if (traj.guard()) {
    guard = {{"code", static_cast<int>(traj.guard()->code)},
             {"t", traj.guard()->time},
             {"detail", traj.guard()->detail}};
  }
  nlohmann::json manifest = {{"artifact_version", kArtifactVersion},
                             {"config", cfg},
                             {"config_hash", hex_hash(h)},
                             {"grid", grid_to_json(*traj.grid())},
                             {"snapshots", snaps},
                             {"conservation_log", log},
                             {"guard", guard}};
  for (const auto& [k, v] : extra.items()) manifest[k] = v;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

nlohmann::json read_manifest(const fs::path& dir) {
  try {
    return nlohmann::json::parse(read_text(dir / "manifest.json"));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kIo, "malformed manifest in " + dir.string() + ": " + e.what());
  }
}

Trajectory read_trajectory(const fs::path& dir) {
  const nlohmann::json m = read_manifest(dir);
  try {
    Trajectory traj(config_from_json(m.at("config")));
    const GridPtr g = grid_from_json(m.at("grid"));
    for (const auto& s : m.at("snapshots")) {
      Snapshot snap = read_snapshot(dir / s.at("file").get<std::string>(), g);
      traj.append(snap.time, std::move(snap.field));
    }
    for (const auto& s : m.at("conservation_log")) traj.append_log(sample_from_json(s));
    const auto& guard = m.at("guard");
    if (!guard.is_null()) {
      traj.set_guard(GuardEvent{static_cast<ErrorCode>(guard.at("code").get<int>()),
                                guard.at("t").get<double>(), guard.at("detail").get<std::string>()});
    }
    return traj;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIo, "bad manifest in " + dir.string() + ": " + e.what());
  }
}

fs::path ground_state_cache_path(const fs::path& root, const RadialGrid& g, double tol) {
  return root / ("gs_d" + std::to_string(g.dimension()) + "_" + hex_hash(g.hash()) + "_" +
                 tol_tag(tol) + ".bin");
}

void store_ground_state(const fs::path& root, const GroundState& q, double tol) {
  write_snapshot(ground_state_cache_path(root, *q.profile.grid(), tol), q.profile, 0.0,
                 fnv1a(tol_tag(tol)));
}

std::optional<GroundState> load_ground_state(const fs::path& root, const GridPtr& g, double tol) {
  const fs::path path = ground_state_cache_path(root, *g, tol);
  if (!fs::exists(path)) return std::nullopt;
  Snapshot snap = read_snapshot(path, g);
  require(snap.config_hash == fnv1a(tol_tag(tol)), ErrorCode::kIo,
          "ground-state cache key mismatch in " + path.string());
  return ground_state_from_profile(std::move(snap.field));
}

}  // namespace nlsrad
