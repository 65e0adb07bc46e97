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

// nlsrad command-line driver. Links only the C API in nlsrad.h.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlsrad.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kDiagnosticFailure = 1, kInvalidInput = 2, kIoFailure = 3, kNumericalGuard = 4 };

int exit_for(nls_status s) {
  switch (s) {
    case NLS_OK: return kOk;
    case NLS_ERR_INVALID_ARGUMENT:
    case NLS_ERR_GRID_MISMATCH:
    case NLS_ERR_INSUFFICIENT_DATA: return kInvalidInput;
    case NLS_ERR_IO: return kIoFailure;
    case NLS_ERR_CERTIFICATION: return kDiagnosticFailure;
    default: return kNumericalGuard;
  }
}

struct Failure {
  int code;
  json detail;
};

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message) {
  throw Failure{code, {{"error", kind}, {"message", message}}};
}

void check(nls_status s, const char* what) {
  if (s == NLS_OK) return;
  throw Failure{exit_for(s),
                {{"error", nls_status_name(s)}, {"code", static_cast<int>(s)}, {"during", what},
                 {"message", nls_last_error()}}};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Grid = Handle<nls_grid, nls_grid_free>;
using Field = Handle<nls_field, nls_field_free>;
using GroundState = Handle<nls_ground_state, nls_ground_state_free>;
using Trajectory = Handle<nls_trajectory, nls_trajectory_free>;

struct CString {
  char* p = nullptr;
  ~CString() { nls_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

// Effective configuration: built-in defaults, then the --config file, then flags.
json defaults() {
  return {{"dimension", 4},
          {"mu", -1},
          {"grid", {{"r_max", 20.0}, {"n", 512}}},
          {"time", {{"dt", 1e-3}, {"T", 1.0}, {"cadence", 10}, {"start", 0.0}, {"stepper", "strang"}}},
          {"initial", {{"kind", "sw"}, {"amplitude", 1.0}, {"width", 1.0}, {"t0", -1.0}}},
          {"ground_state", {{"tol", 1e-9}, {"cache", true}}},
          {"diagnostics", json::array()},
          {"lemma", json::object()},
          {"seed", 20260101}};
}

struct Options {
  std::string config_file;
  std::string output;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> dimension, mu;
  std::optional<double> r_max, dt, duration, tol;
  std::optional<std::size_t> n, cadence;
  std::optional<std::string> stepper, initial, initial_file, name;
  std::optional<double> start;
  std::optional<bool> cache;
  // diagnose
  std::string trajectory;
  std::vector<std::string> diagnostics;
  std::string params;
  // lemma
  std::optional<std::string> mode, sequence, lemma_traj;
  std::optional<double> s, gamma, c1, m0, beta, beta_fraction, a, n_max;
  std::optional<int> draws;
};

json load_config(const Options& o) {
  json cfg = defaults();
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) fail(kIoFailure, "io", "cannot read config " + o.config_file);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      fail(kInvalidInput, "invalid_argument", std::string("config: ") + e.what());
    }
    if (!file.is_object()) fail(kInvalidInput, "invalid_argument", "config must be a JSON object");
    cfg.merge_patch(file);
  }
  auto set = [](json& at, const char* key, const auto& v) {
    if (v) at[key] = *v;
  };
  set(cfg, "dimension", o.dimension);
  set(cfg, "mu", o.mu);
  set(cfg, "seed", o.seed);
  set(cfg["grid"], "r_max", o.r_max);
  set(cfg["grid"], "n", o.n);
  set(cfg["time"], "dt", o.dt);
  set(cfg["time"], "T", o.duration);
  set(cfg["time"], "cadence", o.cadence);
  set(cfg["time"], "stepper", o.stepper);
  set(cfg["time"], "start", o.start);
  set(cfg["initial"], "kind", o.initial);
  set(cfg["initial"], "path", o.initial_file);
  set(cfg["ground_state"], "tol", o.tol);
  set(cfg["ground_state"], "cache", o.cache);
  if (!o.output.empty()) cfg["output"] = o.output;
  return cfg;
}

fs::path output_root(const json& cfg) {
  if (cfg.contains("output")) return cfg["output"].get<std::string>();
  if (const char* env = std::getenv("NLSRAD_OUTPUT_ROOT")) return env;
  return "nlsrad-out";
}

// The output location does not enter the hash.
std::uint64_t hash_of(json cfg) {
  cfg.erase("output");
  std::uint64_t h = 0;
  check(nls_config_hash(cfg.dump().c_str(), &h), "config hash");
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Stamps artifact version, config hash and seed into every report.
struct Stamp {
  std::string version = nls_version();
  std::string config_hash;
  std::uint64_t seed = 0;

  json apply(json j) const {
    j["artifact_version"] = version;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    return j;
  }
  std::string csv(const std::string& body) const {
    return "# artifact_version=" + version + " config_hash=" + config_hash +
           " seed=" + std::to_string(seed) + "\n" + body;
  }
};

Stamp stamp_for(const json& cfg) {
  Stamp s;
  s.config_hash = hex(hash_of(cfg));
  s.seed = cfg.value("seed", std::uint64_t{0});
  return s;
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(kIoFailure, "io", "cannot write " + path.string());
  out << text;
  if (!out) fail(kIoFailure, "io", "write failed for " + path.string());
}

void emit(const Options& o, const json& report, const std::string& csv) {
  if (o.format == "csv" && !csv.empty()) std::cout << csv;
  else std::cout << report.dump(2) << "\n";
}

void make_grid(const json& cfg, Grid& g) {
  const int d = cfg.at("dimension").get<int>();
  if (d < 2) fail(kInvalidInput, "invalid_argument", "dimension out of range: d = " + std::to_string(d));
  check(nls_grid_create(d, cfg.at("grid").at("r_max").get<double>(),
                        cfg.at("grid").at("n").get<std::size_t>(), g.out()),
        "grid");
}

void solve_q(const json& cfg, const Grid& g, const fs::path& root, GroundState& q, bool* cached) {
  const json& gs = cfg.at("ground_state");
  const std::string cache = (root / "cache").string();
  int from_cache = 0;
  check(nls_ground_state_solve(g.get(), gs.at("tol").get<double>(),
                               gs.value("cache", true) ? cache.c_str() : nullptr, q.out(), &from_cache),
        "ground state");
  if (cached) *cached = from_cache != 0;
}

json evolve_config(const json& cfg) {
  const json& t = cfg.at("time");
  return {{"mu", cfg.at("mu")},
          {"dt", t.at("dt")},
          {"start_time", t.value("start", 0.0)},
          {"duration", t.at("T")},
          {"cadence", t.at("cadence")},
          {"stepper", t.value("stepper", "strang")}};
}

int cmd_ground_state(const Options& o) {
  json cfg = load_config(o);
  const Stamp st = stamp_for(cfg);
  const fs::path root = output_root(cfg);
  Grid g;
  make_grid(cfg, g);
  GroundState q;
  bool cached = false;
  solve_q(cfg, g, root, q, &cached);
  CString cert;
  int passed = 0;
  check(nls_ground_state_certify(q.get(), cfg["ground_state"]["tol"].get<double>(), cert.out(), &passed),
        "certification");
  Field profile;
  check(nls_ground_state_profile(q.get(), profile.out()), "profile");
  const std::string name = "ground_state_d" + std::to_string(cfg["dimension"].get<int>());
  const fs::path snap = root / (name + ".bin");
  std::error_code ec;
  fs::create_directories(root, ec);
  check(nls_field_write_snapshot(profile.get(), snap.string().c_str(), 0.0, hash_of(cfg)), "snapshot");
  json report = st.apply(json::parse(cert.str()));
  report["from_cache"] = cached;
  report["snapshot"] = snap.string();
  report["config"] = cfg;
  write_file(root / (name + "_certificate.json"), report.dump(2) + "\n");
  emit(o, report, "");
  return passed ? kOk : kDiagnosticFailure;
}

void initial_field(const json& cfg, const Grid& g, const fs::path& root, Field& u0, json& meta) {
  const json& ic = cfg.at("initial");
  const std::string kind = ic.at("kind").get<std::string>();
  meta["initial_kind"] = kind;
  if (kind == "gaussian") {
    const std::size_t n = cfg["grid"]["n"].get<std::size_t>();
    std::vector<double> r(n), re(n), im(n, 0.0);
    check(nls_grid_nodes(g.get(), r.data(), n), "nodes");
    const double amp = ic.value("amplitude", 1.0), w = ic.value("width", 1.0);
    for (std::size_t j = 0; j < n; ++j) re[j] = amp * std::exp(-r[j] * r[j] / (w * w));
    check(nls_field_from_samples(g.get(), re.data(), im.data(), n, u0.out()), "initial field");
    return;
  }
  if (kind == "file") {
    const std::string path = ic.value("path", std::string());
    if (path.empty()) fail(kInvalidInput, "invalid_argument", "initial.path is required for kind 'file'");
    if (!fs::exists(path)) fail(kInvalidInput, "invalid_argument", "initial file not found: " + path);
    double t = 0.0;
    check(nls_field_read_snapshot(path.c_str(), u0.out(), &t), "initial file");
    return;
  }
  GroundState q;
  solve_q(cfg, g, root, q, nullptr);
  if (kind == "ground_state") {
    check(nls_ground_state_profile(q.get(), u0.out()), "initial field");
  } else if (kind == "sw") {
    check(nls_ground_state_sw(q.get(), cfg["time"].value("start", 0.0), u0.out()), "initial field");
  } else if (kind == "pc_ground_state") {
    check(nls_ground_state_pc(q.get(), ic.value("t0", -1.0), u0.out()), "initial field");
  } else {
    fail(kInvalidInput, "invalid_argument", "unknown initial kind '" + kind + "'");
  }
}

int cmd_evolve(const Options& o) {
  json cfg = load_config(o);
  const Stamp st = stamp_for(cfg);
  const fs::path root = output_root(cfg);
  Grid g;
  make_grid(cfg, g);
  json meta = json::object();
  Field u0;
  initial_field(cfg, g, root, u0, meta);

  json ec = evolve_config(cfg);
  if (cfg["initial"]["kind"] == "pc_ground_state") ec["start_time"] = cfg["initial"].value("t0", -1.0);
  Trajectory traj;
  check(nls_evolve(ec.dump().c_str(), u0.get(), traj.out()), "evolve");
  CString sum;
  check(nls_trajectory_summary(traj.get(), sum.out()), "summary");
  json summary = json::parse(sum.str());

  // Solitary-wave runs carry their own oracle.
  if (cfg["initial"]["kind"] == "sw" && summary["guard"].is_null()) {
    std::size_t size = 0;
    check(nls_trajectory_size(traj.get(), &size), "size");
    Field last, exact;
    double t = 0.0;
    check(nls_trajectory_state(traj.get(), size - 1, last.out(), &t), "final state");
    GroundState q;
    solve_q(cfg, g, root, q, nullptr);
    check(nls_ground_state_sw(q.get(), t, exact.out()), "sw");
    double err = 0.0, norm = 0.0;
    check(nls_field_distance(last.get(), exact.get(), &err), "distance");
    check(nls_field_norm(exact.get(), 2.0, &norm), "norm");
    summary["sw_final_error"] = {{"t", t}, {"absolute", err}, {"relative", err / norm}};
  }

  const std::string name = o.name.value_or("trajectory");
  const fs::path dir = root / name;
  json extra = st.apply({{"run_config", cfg}, {"summary", summary}});
  extra.update(meta);
  check(nls_trajectory_write(traj.get(), dir.string().c_str(), extra.dump().c_str()), "write trajectory");
  json report = st.apply(summary);
  report["trajectory"] = dir.string();
  emit(o, report, "");
  if (!summary["guard"].is_null()) {
    std::cerr << json({{"error", summary["guard"]["status"]}, {"detail", summary["guard"]}}).dump() << "\n";
    return kNumericalGuard;
  }
  return kOk;
}

int cmd_diagnose(const Options& o) {
  json cfg = load_config(o);
  const Stamp st = stamp_for(cfg);
  const fs::path root = output_root(cfg);
  if (o.trajectory.empty()) fail(kInvalidInput, "invalid_argument", "--trajectory is required");
  if (!fs::exists(fs::path(o.trajectory) / "manifest.json"))
    fail(kIoFailure, "io", "no manifest.json in " + o.trajectory);
  Trajectory traj;
  check(nls_trajectory_read(o.trajectory.c_str(), traj.out()), "read trajectory");

  // --diagnostic names (with --params applied to each) or the config's list.
  std::vector<json> requests;
  json flag_params = json::object();
  if (!o.params.empty()) {
    try {
      flag_params = json::parse(o.params);
    } catch (const json::parse_error& e) {
      fail(kInvalidInput, "invalid_argument", std::string("--params: ") + e.what());
    }
  }
  for (const std::string& d : o.diagnostics) {
    json r = flag_params;
    r["name"] = d;
    requests.push_back(r);
  }
  if (requests.empty())
    for (const json& r : cfg["diagnostics"]) requests.push_back(r.is_string() ? json{{"name", r}} : r);
  if (requests.empty()) fail(kInvalidInput, "invalid_argument", "no diagnostics requested");

  json reports = json::array();
  std::string csv_all;
  bool all_passed = true;
  for (json r : requests) {
    const std::string name = r.at("name").get<std::string>();
    r.erase("name");
    CString js, csv;
    check(nls_diagnose(traj.get(), name.c_str(), r.dump().c_str(), js.out(), csv.out()), name.c_str());
    json rep = st.apply(json::parse(js.str()));
    rep["trajectory"] = o.trajectory;
    rep["params"] = r;
    all_passed = all_passed && rep.value("passed", false);
    write_file(root / ("diagnose_" + name + ".json"), rep.dump(2) + "\n");
    if (!csv.str().empty()) write_file(root / ("diagnose_" + name + ".csv"), st.csv(csv.str()));
    reports.push_back(rep);
    csv_all += csv.str();
  }
  json out = reports.size() == 1 ? reports[0] : st.apply({{"reports", reports}, {"passed", all_passed}});
  emit(o, out, csv_all.empty() ? "" : st.csv(csv_all));
  return all_passed ? kOk : kDiagnosticFailure;
}

int cmd_lemma(const Options& o) {
  json cfg = load_config(o);
  json req = cfg["lemma"].is_object() ? cfg["lemma"] : json::object();
  auto set = [](json& at, const char* key, const auto& v) {
    if (v) at[key] = *v;
  };
  set(req, "mode", o.mode);
  set(req, "draws", o.draws);
  if (!req.contains("seed")) req["seed"] = cfg["seed"];
  json& p = req["params"];
  if (!p.is_object()) p = json::object();
  set(p, "s", o.s);
  set(p, "gamma", o.gamma);
  set(p, "C1", o.c1);
  set(p, "M0", o.m0);
  set(p, "A", o.a);
  set(p, "beta_prime", o.beta);
  set(p, "beta_fraction", o.beta_fraction);
  json& seq = req["sequence"];
  if (!seq.is_object()) seq = json::object();
  set(seq, "kind", o.sequence);
  set(seq, "n_max", o.n_max);
  if (o.lemma_traj) {
    seq["kind"] = "trajectory";
    seq["path"] = *o.lemma_traj;
  }
  if (o.n_max) req["n_max"] = *o.n_max;
  cfg["lemma"] = req;
  const Stamp st = stamp_for(cfg);
  const fs::path root = output_root(cfg);

  CString js, csv;
  check(nls_lemma(req.dump().c_str(), js.out(), csv.out()), "lemma");
  json rep = st.apply(json::parse(js.str()));
  rep["request"] = req;
  const std::string mode = req.value("mode", "verify");
  write_file(root / ("lemma_" + mode + ".json"), rep.dump(2) + "\n");
  if (!csv.str().empty()) write_file(root / ("lemma_" + mode + ".csv"), st.csv(csv.str()));
  emit(o, rep, csv.str().empty() ? "" : st.csv(csv.str()));
  return rep.value("passed", false) ? kOk : kDiagnosticFailure;
}

int cmd_selftest(const Options& o) {
  json cfg = load_config(o);
  const Stamp st = stamp_for(cfg);
  json opts = {{"seed", cfg["seed"]}};
  if (o.draws) opts["lemma_draws"] = *o.draws;
  CString js;
  int failures = 0;
  check(nls_selftest(opts.dump().c_str(), js.out(), &failures), "selftest");
  json rep = st.apply(json::parse(js.str()));
  if (o.format == "csv") {
    std::string csv = "suite,check,value,bound,passed\n";
    for (const json& s : rep["suites"])
      for (const json& c : s["checks"])
        csv += s["name"].get<std::string>() + "," + c["name"].get<std::string>() + "," +
               (c.contains("value") ? c["value"].dump() : "") + "," +
               (c.contains("bound") ? c["bound"].dump() : "") + "," +
               (c["passed"].get<bool>() ? "1" : "0") + "\n";
    std::cout << st.csv(csv);
  } else {
    std::cout << rep.dump(2) << "\n";
  }
  return failures == 0 ? kOk : kDiagnosticFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlsrad: radial mass-critical NLS simulator and harmonic-analysis diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nls_version()));
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", o.config_file, "JSON run configuration")->check(CLI::ExistingFile);
    c->add_option("--out", o.output, "output directory (default $NLSRAD_OUTPUT_ROOT or ./nlsrad-out)");
    c->add_option("--format", o.format, "report format on stdout")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--seed", o.seed, "random seed recorded in every output");
  };
  auto grid_flags = [&](CLI::App* c) {
    c->add_option("--dimension,-d", o.dimension, "spatial dimension d");
    c->add_option("--r-max", o.r_max, "truncation radius");
    c->add_option("--n", o.n, "number of radial nodes");
    c->add_option("--tol", o.tol, "ground-state tolerance");
    c->add_flag("--cache,!--no-cache", o.cache, "reuse cached ground states");
  };

  auto* gs = app.add_subcommand("ground-state", "solve and certify the ground state Q");
  common(gs);
  grid_flags(gs);

  auto* ev = app.add_subcommand("evolve", "run the split-step flow and store a trajectory");
  common(ev);
  grid_flags(ev);
  ev->add_option("--mu", o.mu, "-1 focusing, +1 defocusing, 0 linear");
  ev->add_option("--dt", o.dt, "time step");
  ev->add_option("--T", o.duration, "duration");
  ev->add_option("--start", o.start, "start time");
  ev->add_option("--cadence", o.cadence, "snapshot every this many steps");
  ev->add_option("--stepper", o.stepper, "strang or lie");
  ev->add_option("--initial", o.initial, "gaussian, ground_state, sw, pc_ground_state or file");
  ev->add_option("--initial-file", o.initial_file, "binary snapshot for --initial file");
  ev->add_option("--name", o.name, "trajectory directory name under the output root");

  auto* dg = app.add_subcommand("diagnose", "run diagnostics on a stored trajectory");
  common(dg);
  dg->add_option("--trajectory", o.trajectory, "trajectory directory")->required();
  dg->add_option("--diagnostic", o.diagnostics,
                 "conservation, virial, frequency_decay, spatial_decay, kinetic_localization, "
                 "concentration, duhamel, strichartz, a_sequence");
  dg->add_option("--params", o.params, "JSON parameters applied to each --diagnostic");

  auto* lm = app.add_subcommand("lemma", "recurrence and recursive-control checks");
  common(lm);
  lm->add_option("--mode", o.mode, "verify, check, induction or suite");
  lm->add_option("--s", o.s, "decay exponent s > 1");
  lm->add_option("--gamma", o.gamma, "gain exponent, 0 < gamma < s - 1");
  lm->add_option("--C1", o.c1, "recurrence constant C1");
  lm->add_option("--M0", o.m0, "base scale M0 (power of two)");
  lm->add_option("--A", o.a, "trivial bound A on A_N");
  lm->add_option("--beta-prime", o.beta, "ratio beta' in the dyadic sums");
  lm->add_option("--beta-fraction", o.beta_fraction, "beta' as a fraction of the admissible threshold");
  lm->add_option("--sequence", o.sequence, "saturating, power, constant, values or trajectory");
  lm->add_option("--n-max", o.n_max, "largest dyadic scale");
  lm->add_option("--trajectory", o.lemma_traj, "extract A_N from this trajectory directory");
  lm->add_option("--draws", o.draws, "random instances for --mode suite");

  auto* st = app.add_subcommand("selftest", "run the invariant suite of every module");
  common(st);
  st->add_option("--draws", o.draws, "random lemma instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*gs) return cmd_ground_state(o);
    if (*ev) return cmd_evolve(o);
    if (*dg) return cmd_diagnose(o);
    if (*lm) return cmd_lemma(o);
    if (*st) return cmd_selftest(o);
  } catch (const Failure& f) {
    std::cerr << f.detail.dump() << "\n";
    return f.code;
  } catch (const json::exception& e) {
    std::cerr << json({{"error", "invalid_argument"}, {"message", e.what()}}).dump() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}
