/* Minimal C consumer of the dtnv C API: generate a model, solve it,
 * query a bound, compute a cutoff, and honor the ownership rules. */

#include <assert.h>
#include <stdio.h>
#include <string.h>

#include "dtnv.h"

int main(void) {
  DtnvModel *model = NULL;
  DtnvMinReach *map = NULL;

  assert(dtnv_gen_star(4, &model) == DTNV_STATUS_OK);
  assert(dtnv_minreach_solve(model, &map) == DTNV_STATUS_OK);

  bool reachable = false, strict = true;
  uint64_t value = 0;
  assert(dtnv_minreach_bound(map, "q_final", &reachable, &value, &strict) ==
         DTNV_STATUS_OK);
  assert(reachable && value == 4 && !strict);

  uint64_t cutoff = 0;
  assert(dtnv_cutoff(model, map, 1, &cutoff) == DTNV_STATUS_OK);
  assert(cutoff == 5);

  char *json = NULL;
  assert(dtnv_minreach_json(map, false, &json) == DTNV_STATUS_OK);
  assert(strstr(json, "\"model\":\"star4\"") != NULL);
  dtnv_string_free(json);

  dtnv_minreach_free(map);
  dtnv_model_free(model);

  assert(dtnv_gen_star(0, &model) == DTNV_STATUS_INVALID_ARGUMENT);
  assert(dtnv_last_error_message() != NULL);

  printf("ok\n");
  return 0;
}
