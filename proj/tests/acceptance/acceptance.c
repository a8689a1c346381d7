/* Runs every acceptance criterion through the C API, one verdict line each. */
#include <stdio.h>
#include <stdlib.h>

#include "schatten_widths/schatten_widths.h"

static void print_line(const char* line, void* user) {
  (void)user;
  printf("%s\n", line);
  fflush(stdout);
}

int main(int argc, char** argv) {
  int ids[13];
  size_t count = 0;
  for (int i = 1; i < argc && count < 13; ++i) ids[count++] = atoi(argv[i]);
  sw_verify_args args = {count ? ids : NULL, count, 0, print_line, NULL};
  sw_result* r = NULL;
  const sw_status s = sw_verify(&args, &r);
  if (s != SW_OK) {
    fprintf(stderr, "error: %s\n", sw_last_error());
    return 2;
  }
  const int passed = sw_result_passed(r);
  printf("%s: %d of %zu criteria passed\n", passed ? "PASS" : "FAIL", (int)sw_result_value(r),
         count ? count : (size_t)13);
  sw_result_free(r);
  return passed ? 0 : 3;
}
