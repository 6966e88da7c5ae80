/*
 * Copyright 2026 The topp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Builds as C to keep the public header C-compatible. */
#include <stdio.h>
#include <string.h>

#include "topp/topp.h"

int main(void) {
  topp_model* model = NULL;
  topp_path* path = NULL;
  topp_solution* sol = NULL;
  int rc = 1;
  if (topp_model_load("planar-cmms", &model) != TOPP_OK) goto done;
  if (topp_path_load("example1-circle", &path) != TOPP_OK) goto done;
  if (topp_solve(model, path, 0.0, 0.0, NULL, &sol) != TOPP_OK) goto done;
  if (strcmp(topp_solution_procedure(sol), "direct") != 0) goto done;
  printf("procedure: %s gamma: %.4f\n", topp_solution_procedure(sol),
         topp_solution_gamma(sol));
  rc = 0;
done:
  if (rc != 0) fprintf(stderr, "error: %s\n", topp_last_error());
  topp_solution_free(sol);
  topp_path_free(path);
  topp_model_free(model);
  return rc;
}
