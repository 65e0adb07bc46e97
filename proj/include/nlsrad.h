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

/* C interface to the nlsrad radial NLS simulator and diagnostics.
 *
 * Every object is an opaque handle released with its *_free function. Calls
 * return an nls_status; on failure nls_last_error() holds a message for the
 * calling thread. Strings returned through char** are heap-allocated and must
 * be released with nls_string_free. Reports are JSON (and CSV where tabular). */

#ifndef NLSRAD_H
#define NLSRAD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NLS_API __declspec(dllexport)
#else
#define NLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nls_status {
  NLS_OK = 0,
  NLS_ERR_INVALID_ARGUMENT = 1,
  NLS_ERR_GRID_MISMATCH = 2,
  NLS_ERR_UNDER_RESOLVED = 3,
  NLS_ERR_NO_CONVERGENCE = 4,
  NLS_ERR_BLOWUP_GUARD = 5,
  NLS_ERR_RESOLUTION_LOSS = 6,
  NLS_ERR_INSUFFICIENT_DATA = 7,
  NLS_ERR_VANISHING_BAND = 8,
  NLS_ERR_IO = 9,
  NLS_ERR_CERTIFICATION = 10,
  NLS_ERR_INTERNAL = 99
} nls_status;

typedef struct nls_grid nls_grid;
typedef struct nls_field nls_field;
typedef struct nls_ground_state nls_ground_state;
typedef struct nls_trajectory nls_trajectory;

NLS_API const char* nls_version(void);
NLS_API const char* nls_status_name(nls_status s);
NLS_API const char* nls_last_error(void);
NLS_API void nls_string_free(char* s);

/* FNV-1a hash of the compact, key-sorted form of a JSON document. */
NLS_API nls_status nls_config_hash(const char* json, uint64_t* out);

/* Grids: dimension d >= 2, truncation radius r_max, n nodes. */
NLS_API nls_status nls_grid_create(int d, double r_max, size_t n, nls_grid** out);
NLS_API void nls_grid_free(nls_grid* g);
/* {"dimension", "r_max", "n", "hash", "min_scale", "max_scale"} */
NLS_API nls_status nls_grid_describe(const nls_grid* g, char** json);
NLS_API nls_status nls_grid_nodes(const nls_grid* g, double* out, size_t len);

/* Fields: samples at the grid nodes. */
NLS_API nls_status nls_field_from_samples(const nls_grid* g, const double* re, const double* im,
                                          size_t len, nls_field** out);
NLS_API nls_status nls_field_samples(const nls_field* f, double* re, double* im, size_t len);
NLS_API nls_status nls_field_grid(const nls_field* f, nls_grid** out);
NLS_API void nls_field_free(nls_field* f);
/* p in [1, inf]; pass INFINITY for the sup norm. */
NLS_API nls_status nls_field_norm(const nls_field* f, double p, double* out);
/* ||a - b||_2; both fields on the same grid. */
NLS_API nls_status nls_field_distance(const nls_field* a, const nls_field* b, double* out);
/* mu = -1 focusing, +1 defocusing, 0 linear. */
NLS_API nls_status nls_field_energy(const nls_field* f, int mu, double* out);
NLS_API nls_status nls_field_write_snapshot(const nls_field* f, const char* path, double time,
                                            uint64_t config_hash);
NLS_API nls_status nls_field_read_snapshot(const char* path, nls_field** out, double* time);
NLS_API nls_status nls_field_write_columnar(const nls_field* f, const char* path);
NLS_API nls_status nls_field_read_columnar(const char* path, nls_field** out);

/* Ground state Q. With cache_dir non-NULL a cached profile keyed by
 * (d, grid hash, tol) is reused or stored; *from_cache reports which. */
NLS_API nls_status nls_ground_state_solve(const nls_grid* g, double tol, const char* cache_dir,
                                          nls_ground_state** out, int* from_cache);
NLS_API void nls_ground_state_free(nls_ground_state* q);
/* Certification JSON; *passed is 1 when every threshold holds. */
NLS_API nls_status nls_ground_state_certify(const nls_ground_state* q, double tol, char** json,
                                            int* passed);
NLS_API nls_status nls_ground_state_profile(const nls_ground_state* q, nls_field** out);
/* e^{it} Q */
NLS_API nls_status nls_ground_state_sw(const nls_ground_state* q, double t, nls_field** out);
/* pseudo-conformal solution at t != 0 */
NLS_API nls_status nls_ground_state_pc(const nls_ground_state* q, double t, nls_field** out);

/* Evolution. config_json: {"mu", "dt", "start_time", "duration", "cadence",
 * "stepper": "strang"|"lie", "blowup_factor", "tail_guard"}; missing keys take
 * defaults. A guard trip still returns NLS_OK with a partial trajectory whose
 * summary carries the guard event. */
NLS_API nls_status nls_evolve(const char* config_json, const nls_field* u0, nls_trajectory** out);
NLS_API void nls_trajectory_free(nls_trajectory* t);
NLS_API nls_status nls_trajectory_size(const nls_trajectory* t, size_t* out);
NLS_API nls_status nls_trajectory_state(const nls_trajectory* t, size_t i, nls_field** out,
                                        double* time);
/* {"snapshots", "t_start", "t_end", "mass_drift", "energy_drift", "config", "guard"} */
NLS_API nls_status nls_trajectory_summary(const nls_trajectory* t, char** json);
NLS_API nls_status nls_trajectory_write(const nls_trajectory* t, const char* dir,
                                        const char* extra_json);
NLS_API nls_status nls_trajectory_read(const char* dir, nls_trajectory** out);

/* Reports. Every report JSON carries "passed". csv may be NULL. */
NLS_API nls_status nls_diagnose(const nls_trajectory* t, const char* name, const char* params_json,
                                char** json, char** csv);
NLS_API nls_status nls_lemma(const char* request_json, char** json, char** csv);
/* options_json may be NULL: {"seed", "lemma_draws"} */
NLS_API nls_status nls_selftest(const char* options_json, char** json, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* NLSRAD_H */
