// Copyright 2026 The mcurve Authors
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


// Exercises the C interface from C: handles, status codes, tables.

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "mcurve/mcurve.h"

static int failures = 0;

#define EXPECT(cond)                                                              \
  do {                                                                            \
    if (!(cond)) {                                                                \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                                 \
    }                                                                             \
  } while (0)

static mc_automaton* Load(const char* dir, const char* name) {
  char path[4096];
  snprintf(path, sizeof(path), "%s/%s", dir, name);
  mc_automaton* a = NULL;
  mc_status st = mc_automaton_load(path, &a);
  if (st != MC_OK) fprintf(stderr, "load %s: %s\n", path, mc_last_error());
  EXPECT(st == MC_OK);
  return a;
}

static double Cell(const mc_table* t, size_t row, size_t col) {
  double x = NAN;
  EXPECT(mc_table_cell_double(t, row, col, &x) == MC_OK);
  return x;
}

static void TestStatusCodes(void) {
  EXPECT(mc_exit_code(MC_OK) == 0);
  EXPECT(mc_exit_code(MC_ERR_USAGE) == 2);
  EXPECT(mc_exit_code(MC_ERR_BUDGET) == 3);
  EXPECT(mc_exit_code(MC_ERR_VERIFICATION) == 4);
  EXPECT(mc_exit_code(MC_ERR_PARSE) == 1);
  EXPECT(mc_exit_code(MC_ERR_DOMAIN) == 1);
  EXPECT(strcmp(mc_status_name(MC_ERR_BUDGET), "") != 0);
  EXPECT(strlen(mc_version()) > 0);
}

static void TestParseErrors(void) {
  mc_automaton* a = NULL;
  EXPECT(mc_automaton_parse("{ nope", &a) == MC_ERR_PARSE);
  EXPECT(a == NULL);
  EXPECT(strlen(mc_last_error()) > 0);
  const char* zero_roof =
      "{\"schema_version\": 1, \"states\": [{\"name\": \"A\", \"initial\": true}],"
      " \"edges\": [{\"from\": \"A\", \"to\": \"A\", \"label\": \"x\", \"r\": 0}]}";
  EXPECT(mc_automaton_parse(zero_roof, &a) == MC_ERR_PARSE);
  EXPECT(strstr(mc_last_error(), "edges[0].r") != NULL);
  EXPECT(mc_automaton_load("/nonexistent/file.json", &a) != MC_OK);
  EXPECT(mc_components(NULL, NULL) == MC_ERR_USAGE);
}

static void TestRoundTrip(const char* dir) {
  mc_automaton* a = Load(dir, "bridged_2state.json");
  if (!a) return;
  EXPECT(mc_automaton_state_count(a) == 2);
  EXPECT(mc_automaton_edge_count(a) == 4);
  EXPECT(mc_automaton_warning_count(a) == 0);
  char* json = NULL;
  EXPECT(mc_automaton_to_json(a, &json) == MC_OK);
  mc_automaton* b = NULL;
  EXPECT(mc_automaton_parse(json, &b) == MC_OK);
  char* again = NULL;
  EXPECT(mc_automaton_to_json(b, &again) == MC_OK);
  EXPECT(json && again && strcmp(json, again) == 0);
  mc_string_free(json);
  mc_string_free(again);
  mc_automaton_free(b);
  mc_automaton_free(a);
}

static void TestManhattan(const char* dir) {
  mc_automaton* a = Load(dir, "f2_sstar_dual.json");
  if (!a) return;
  mc_options opt;
  mc_options_init(&opt);
  opt.samples = 50;
  mc_table* t = NULL;
  EXPECT(mc_manhattan(a, 0.0, log(4.0), &opt, &t) == MC_OK);
  EXPECT(mc_table_rows(t) == 50);
  EXPECT(mc_table_columns(t) == 4);
  EXPECT(strcmp(mc_table_column_name(t, 1), "theta") == 0);
  double prev = INFINITY;
  double first[50] = {0};
  for (size_t i = 0; i < mc_table_rows(t) && i < 50; ++i) {
    double theta = Cell(t, i, 1);
    first[i] = theta;
    EXPECT(theta < prev);
    EXPECT(fabs(Cell(t, i, 3)) <= 1e-10);
    prev = theta;
  }
  // theta(0) is the growth rate of the coding: log 4.
  EXPECT(fabs(Cell(t, 0, 1) - log(4.0)) < 1e-9);
  char* svg = NULL;
  EXPECT(mc_manhattan_svg(a, 0.0, log(4.0), &opt, &svg) == MC_OK);
  EXPECT(svg && strncmp(svg, "<svg", 4) == 0);
  mc_string_free(svg);
  mc_table_free(t);

  // Same results under a different evaluation order.
  mc_table* u = NULL;
  opt.seed = 12345;
  EXPECT(mc_manhattan(a, 0.0, log(4.0), &opt, &u) == MC_OK);
  for (size_t i = 0; u && i < mc_table_rows(u) && i < 50; ++i) EXPECT(Cell(u, i, 1) == first[i]);
  mc_table_free(u);
  mc_automaton_free(a);
}

static void TestCount(const char* dir) {
  mc_automaton* a = Load(dir, "full_2shift.json");
  if (!a) return;
  mc_table* t = NULL;
  EXPECT(mc_count(a, 1, 10, "1/2", "0", NULL, &t) == MC_OK);
  EXPECT(mc_table_rows(t) == 10);
  // Row n = 10: C(10, 5) = 252 of 1024 points.
  EXPECT(strcmp(mc_table_cell_text(t, 9, 1), "252") == 0);
  EXPECT(strcmp(mc_table_cell_text(t, 9, 2), "1024") == 0);
  EXPECT(strcmp(mc_table_cell_text(t, 0, 1), "0") == 0);
  char* csv = NULL;
  EXPECT(mc_table_to_csv(t, &csv) == MC_OK);
  EXPECT(csv && strstr(csv, "lossy") != NULL);
  mc_string_free(csv);
  char* json = NULL;
  EXPECT(mc_table_to_json(t, &json) == MC_OK);
  EXPECT(json && strstr(json, "\"252\"") != NULL);
  mc_string_free(json);
  mc_table_free(t);
  EXPECT(mc_count(a, 5, 1, "1/2", "0", NULL, &t) == MC_ERR_USAGE);
  EXPECT(mc_count(a, 1, 5, "half", "0", NULL, &t) != MC_OK);
  mc_automaton_free(a);
}

static void TestShrink(const char* dir) {
  mc_automaton* a = Load(dir, "f2_sstar_dual.json");
  if (!a) return;
  mc_table* t = NULL;
  EXPECT(mc_shrink(a, "golden", 6, NULL, &t) == MC_OK);
  EXPECT(mc_table_rows(t) == 6);
  for (size_t i = 0; t && i < mc_table_rows(t); ++i) {
    EXPECT(strcmp(mc_table_cell_text(t, i, 7), "true") == 0);
    EXPECT(strcmp(mc_table_cell_text(t, i, 8), "true") == 0);
  }
  mc_table_free(t);
  EXPECT(mc_shrink(a, "2", 3, NULL, &t) == MC_ERR_DOMAIN);
  mc_automaton_free(a);
}

static void TestVerifyAndFreeGroup(const char* dir) {
  mc_automaton* a = Load(dir, "full_2shift.json");
  mc_table* t = NULL;
  EXPECT(a && mc_verify(a, NULL, &t) == MC_OK);
  mc_table_free(t);
  mc_automaton_free(a);

  mc_automaton* g = NULL;
  EXPECT(mc_freegroup_automaton("a,b,ab", 2, 0, 8, NULL, &g) == MC_ERR_VERIFICATION);
  EXPECT(strstr(mc_last_error(), "rho") != NULL);
  EXPECT(mc_freegroup_automaton("a,b,ab", 2, -1, 8, NULL, &g) == MC_OK);
  mc_automaton_free(g);

  mc_options opt;
  mc_options_init(&opt);
  opt.budget = 1000;
  EXPECT(mc_freegroup_spheres("a,b", 2, 9, &opt, &t) == MC_ERR_BUDGET);
  EXPECT(mc_freegroup_spheres("a,b", 2, 5, NULL, &t) == MC_OK);
  EXPECT(strcmp(mc_table_cell_text(t, 5, 1), "324") == 0);
  mc_table_free(t);

  char* len = NULL;
  EXPECT(mc_translation_length("a,b,ab", 2, "abab", &len) == MC_OK);
  EXPECT(len && strcmp(len, "2") == 0);
  mc_string_free(len);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    fprintf(stderr, "usage: %s <automata-dir>\n", argv[0]);
    return 2;
  }
  TestStatusCodes();
  TestParseErrors();
  TestRoundTrip(argv[1]);
  TestManhattan(argv[1]);
  TestCount(argv[1]);
  TestShrink(argv[1]);
  TestVerifyAndFreeGroup(argv[1]);
  if (failures) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}
