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

#include "nlsrad.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "dispatch.hpp"
#include "groundstate.hpp"
#include "io.hpp"
#include "selftest.hpp"

using nlohmann::json;

struct nls_grid {
  nlsrad::GridPtr grid;
};
struct nls_field {
  nlsrad::RadialField field;
};
struct nls_ground_state {
  nlsrad::GroundState q;
};
struct nls_trajectory {
  nlsrad::Trajectory traj;
};

namespace {

thread_local std::string last_error;

nls_status record(nls_status s, const std::string& what) {
  last_error = what;
  return s;
}

// Runs body, translating exceptions into status codes.
template <class F>
nls_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return NLS_OK;
  } catch (const nlsrad::Error& e) {
    return record(static_cast<nls_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return record(NLS_ERR_INVALID_ARGUMENT, std::string("json: ") + e.what());
  } catch (const std::bad_alloc&) {
    return record(NLS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(NLS_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(NLS_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  nlsrad::require(p != nullptr, nlsrad::ErrorCode::kInvalidArgument,
                  std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    nlsrad::fail(nlsrad::ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

void emit(const nlsrad::DispatchResult& r, char** out_json, char** out_csv) {
  need(out_json, "json output");
  char* j = dup(r.json.dump(2));
  if (out_csv) {
    try {
      *out_csv = dup(r.csv);
    } catch (...) {
      std::free(j);
      throw;
    }
  }
  *out_json = j;
}

json summary(const nlsrad::Trajectory& t) {
  json guard = nullptr;
  if (t.guard()) {
    guard = {{"code", static_cast<int>(t.guard()->code)},
             {"status", nls_status_name(static_cast<nls_status>(t.guard()->code))},
             {"t", t.guard()->time},
             {"detail", t.guard()->detail}};
  }
  return {{"snapshots", t.size()},
          {"t_start", t.empty() ? 0.0 : t.times().front()},
          {"t_end", t.empty() ? 0.0 : t.times().back()},
          {"mass_drift", t.size() > 1 ? t.relative_mass_drift() : 0.0},
          {"energy_drift", t.size() > 1 ? t.relative_energy_drift() : 0.0},
          {"config", nlsrad::config_to_json(t.config())},
          {"grid", nlsrad::grid_to_json(*t.grid())},
          {"guard", guard}};
}

}  // namespace

extern "C" {

const char* nls_version(void) { return nlsrad::kArtifactVersion; }

const char* nls_status_name(nls_status s) {
  switch (s) {
    case NLS_OK: return "ok";
    case NLS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NLS_ERR_GRID_MISMATCH: return "grid_mismatch";
    case NLS_ERR_UNDER_RESOLVED: return "under_resolved";
    case NLS_ERR_NO_CONVERGENCE: return "no_convergence";
    case NLS_ERR_BLOWUP_GUARD: return "blowup_guard";
    case NLS_ERR_RESOLUTION_LOSS: return "resolution_loss";
    case NLS_ERR_INSUFFICIENT_DATA: return "insufficient_data";
    case NLS_ERR_VANISHING_BAND: return "vanishing_band";
    case NLS_ERR_IO: return "io";
    case NLS_ERR_CERTIFICATION: return "certification";
    case NLS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nls_last_error(void) { return last_error.c_str(); }

void nls_string_free(char* s) { std::free(s); }

nls_status nls_config_hash(const char* text, uint64_t* out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = nlsrad::config_hash(parse(text));
  });
}

nls_status nls_grid_create(int d, double r_max, size_t n, nls_grid** out) {
  return guarded([&] {
    need(out, "out");
    *out = new nls_grid{nlsrad::make_radial_grid(d, r_max, n)};
  });
}

void nls_grid_free(nls_grid* g) { delete g; }

nls_status nls_grid_describe(const nls_grid* g, char** out) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    json j = nlsrad::grid_to_json(*g->grid);
    j["min_scale"] = g->grid->min_scale().value();
    j["max_scale"] = g->grid->max_scale().value();
    *out = dup(j.dump());
  });
}

nls_status nls_grid_nodes(const nls_grid* g, double* out, size_t len) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    const auto x = g->grid->nodes();
    nlsrad::require(len == x.size(), nlsrad::ErrorCode::kInvalidArgument, "node buffer length mismatch");
    std::copy(x.begin(), x.end(), out);
  });
}

nls_status nls_field_from_samples(const nls_grid* g, const double* re, const double* im, size_t len,
                                  nls_field** out) {
  return guarded([&] {
    need(g, "grid");
    need(re, "re");
    need(out, "out");
    nlsrad::require(len == g->grid->size(), nlsrad::ErrorCode::kInvalidArgument,
                    "sample count does not match the grid");
    std::vector<nlsrad::cplx> v(len);
    for (size_t j = 0; j < len; ++j) v[j] = {re[j], im ? im[j] : 0.0};
    *out = new nls_field{nlsrad::RadialField(g->grid, std::move(v))};
  });
}

nls_status nls_field_samples(const nls_field* f, double* re, double* im, size_t len) {
  return guarded([&] {
    need(f, "field");
    nlsrad::require(len == f->field.size(), nlsrad::ErrorCode::kInvalidArgument,
                    "sample buffer length mismatch");
    for (size_t j = 0; j < len; ++j) {
      if (re) re[j] = f->field[j].real();
      if (im) im[j] = f->field[j].imag();
    }
  });
}

nls_status nls_field_grid(const nls_field* f, nls_grid** out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = new nls_grid{f->field.grid()};
  });
}

void nls_field_free(nls_field* f) { delete f; }

nls_status nls_field_norm(const nls_field* f, double p, double* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = nlsrad::lebesgue_norm(f->field, p);
  });
}

nls_status nls_field_distance(const nls_field* a, const nls_field* b, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    nlsrad::require_same_grid(a->field, b->field, "nls_field_distance");
    *out = nlsrad::lebesgue_norm(a->field - b->field, 2.0);
  });
}

nls_status nls_field_energy(const nls_field* f, int mu, double* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = nlsrad::energy(f->field, mu);
  });
}

nls_status nls_field_write_snapshot(const nls_field* f, const char* path, double time,
                                    uint64_t config_hash) {
  return guarded([&] {
    need(f, "field");
    need(path, "path");
    nlsrad::write_snapshot(path, f->field, time, config_hash);
  });
}

nls_status nls_field_read_snapshot(const char* path, nls_field** out, double* time) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    nlsrad::Snapshot s = nlsrad::read_snapshot(path);
    if (time) *time = s.time;
    *out = new nls_field{std::move(s.field)};
  });
}

nls_status nls_field_write_columnar(const nls_field* f, const char* path) {
  return guarded([&] {
    need(f, "field");
    need(path, "path");
    nlsrad::write_columnar(path, f->field);
  });
}

nls_status nls_field_read_columnar(const char* path, nls_field** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new nls_field{nlsrad::read_columnar(path)};
  });
}

nls_status nls_ground_state_solve(const nls_grid* g, double tol, const char* cache_dir,
                                  nls_ground_state** out, int* from_cache) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    if (from_cache) *from_cache = 0;
    if (cache_dir) {
      if (auto q = nlsrad::load_ground_state(cache_dir, g->grid, tol)) {
        if (from_cache) *from_cache = 1;
        *out = new nls_ground_state{std::move(*q)};
        return;
      }
    }
    nlsrad::GroundState q = nlsrad::solve_ground_state(g->grid, tol);
    if (cache_dir) nlsrad::store_ground_state(cache_dir, q, tol);
    *out = new nls_ground_state{std::move(q)};
  });
}

void nls_ground_state_free(nls_ground_state* q) { delete q; }

nls_status nls_ground_state_certify(const nls_ground_state* q, double tol, char** out, int* passed) {
  return guarded([&] {
    need(q, "ground state");
    need(out, "out");
    const nlsrad::GroundStateCertificate c = nlsrad::certify(q->q, tol);
    json j = nlsrad::certificate_to_json(c);
    j["dimension"] = q->q.dimension;
    j["mass"] = q->q.mass;
    j["kinetic"] = q->q.kinetic;
    j["grid"] = nlsrad::grid_to_json(*q->q.profile.grid());
    *out = dup(j.dump(2));
    if (passed) *passed = c.passed ? 1 : 0;
  });
}

nls_status nls_ground_state_profile(const nls_ground_state* q, nls_field** out) {
  return guarded([&] {
    need(q, "ground state");
    need(out, "out");
    *out = new nls_field{q->q.profile};
  });
}

nls_status nls_ground_state_sw(const nls_ground_state* q, double t, nls_field** out) {
  return guarded([&] {
    need(q, "ground state");
    need(out, "out");
    *out = new nls_field{nlsrad::make_sw(q->q, t)};
  });
}

nls_status nls_ground_state_pc(const nls_ground_state* q, double t, nls_field** out) {
  return guarded([&] {
    need(q, "ground state");
    need(out, "out");
    *out = new nls_field{nlsrad::make_pc(q->q, t)};
  });
}

nls_status nls_evolve(const char* config_json, const nls_field* u0, nls_trajectory** out) {
  return guarded([&] {
    need(u0, "initial field");
    need(out, "out");
    const nlsrad::SimulationConfig c = nlsrad::config_from_json(parse(config_json));
    *out = new nls_trajectory{nlsrad::evolve(c, u0->field)};
  });
}

void nls_trajectory_free(nls_trajectory* t) { delete t; }

nls_status nls_trajectory_size(const nls_trajectory* t, size_t* out) {
  return guarded([&] {
    need(t, "trajectory");
    need(out, "out");
    *out = t->traj.size();
  });
}

nls_status nls_trajectory_state(const nls_trajectory* t, size_t i, nls_field** out, double* time) {
  return guarded([&] {
    need(t, "trajectory");
    need(out, "out");
    nlsrad::require(i < t->traj.size(), nlsrad::ErrorCode::kInvalidArgument, "snapshot index out of range");
    if (time) *time = t->traj.times()[i];
    *out = new nls_field{t->traj.state(i)};
  });
}

nls_status nls_trajectory_summary(const nls_trajectory* t, char** out) {
  return guarded([&] {
    need(t, "trajectory");
    need(out, "out");
    *out = dup(summary(t->traj).dump(2));
  });
}

nls_status nls_trajectory_write(const nls_trajectory* t, const char* dir, const char* extra_json) {
  return guarded([&] {
    need(t, "trajectory");
    need(dir, "dir");
    nlsrad::write_trajectory(dir, t->traj, parse(extra_json));
  });
}

nls_status nls_trajectory_read(const char* dir, nls_trajectory** out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    *out = new nls_trajectory{nlsrad::read_trajectory(dir)};
  });
}

nls_status nls_diagnose(const nls_trajectory* t, const char* name, const char* params_json,
                        char** out_json, char** out_csv) {
  return guarded([&] {
    need(t, "trajectory");
    need(name, "name");
    emit(nlsrad::run_diagnostic(t->traj, name, parse(params_json)), out_json, out_csv);
  });
}

nls_status nls_lemma(const char* request_json, char** out_json, char** out_csv) {
  return guarded([&] { emit(nlsrad::run_lemma(parse(request_json)), out_json, out_csv); });
}

nls_status nls_selftest(const char* options_json, char** out, int* failures) {
  return guarded([&] {
    need(out, "out");
    const json o = parse(options_json);
    nlsrad::SelftestOptions opts;
    opts.seed = o.value("seed", opts.seed);
    opts.lemma_draws = o.value("lemma_draws", opts.lemma_draws);
    const json r = nlsrad::run_selftest(opts);
    if (failures) *failures = r["failures"].get<int>();
    *out = dup(r.dump(2));
  });
}

}  // extern "C"
