/*
 * Copyright 2026 The nlsrad Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Plain C consumer of the public header. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "nlsrad.h"

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
              nls_last_error());                                   \
      return 1;                                                    \
    }                                                              \
  } while (0)

int main(void) {
  nls_grid* g = NULL;
  nls_ground_state* q = NULL;
  nls_field* u = NULL;
  char* json = NULL;
  int failures = -1;
  double m = 0.0;

  EXPECT(nls_grid_create(4, 20.0, 256, &g) == NLS_OK);
  EXPECT(nls_ground_state_solve(g, 1e-9, NULL, &q, NULL) == NLS_OK);
  EXPECT(nls_ground_state_profile(q, &u) == NLS_OK);
  EXPECT(nls_field_norm(u, 2.0, &m) == NLS_OK);
  EXPECT(fabs(m * m - 408.857) < 1e-2);
  EXPECT(nls_field_norm(u, 0.5, &m) == NLS_ERR_INVALID_ARGUMENT);
  EXPECT(strstr(nls_last_error(), "p >= 1") != NULL);

  EXPECT(nls_selftest("{\"lemma_draws\": 20}", &json, &failures) == NLS_OK);
  EXPECT(failures == 0);
  EXPECT(strstr(json, "\"suites\"") != NULL);
  nls_string_free(json);

  nls_field_free(u);
  nls_ground_state_free(q);
  nls_grid_free(g);
  printf("C API smoke test passed\n");
  return 0;
}
