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


// C interface to the mcurve library. Every function returns an mc_status;
// on failure mc_last_error() describes the problem for the calling thread.
// Objects are opaque and owned by the caller, who releases them with the
// matching *_free function. Strings returned through char** are released
// with mc_string_free.

#ifndef MCURVE_MCURVE_H_
#define MCURVE_MCURVE_H_

#include <stddef.h>

#if defined(MCURVE_BUILDING_LIBRARY)
#define MCURVE_API __attribute__((visibility("default")))
#else
#define MCURVE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mc_status {
  MC_OK = 0,
  MC_ERR_INVALID_ARGUMENT = 1,
  MC_ERR_USAGE = 2,
  MC_ERR_BUDGET = 3,
  MC_ERR_VERIFICATION = 4,
  MC_ERR_PARSE = 5,
  MC_ERR_DOMAIN = 6,
  MC_ERR_INTERNAL = 7
} mc_status;

typedef struct mc_automaton mc_automaton;
typedef struct mc_table mc_table;

typedef struct mc_options {
  // Absolute tolerance for floating-point checks.
  double tolerance;
  // Number of curve or grid samples.
  int samples;
  // State budget for enumerations; 0 uses MCURVE_BUDGET or the default.
  long long budget;
  // Only permutes evaluation order; results never depend on it.
  unsigned long long seed;
} mc_options;

MCURVE_API void mc_options_init(mc_options* options);

MCURVE_API const char* mc_version(void);
MCURVE_API const char* mc_last_error(void);
MCURVE_API const char* mc_status_name(mc_status status);
// Process exit code for a status: 0 success, 2 usage, 3 budget exceeded,
// 4 verification failure, 1 anything else.
MCURVE_API int mc_exit_code(mc_status status);
MCURVE_API void mc_string_free(char* text);

// Automata.
MCURVE_API mc_status mc_automaton_load(const char* path, mc_automaton** out);
MCURVE_API mc_status mc_automaton_parse(const char* json_text, mc_automaton** out);
MCURVE_API mc_status mc_automaton_save(const mc_automaton* automaton, const char* path);
MCURVE_API mc_status mc_automaton_to_json(const mc_automaton* automaton, char** out);
MCURVE_API void mc_automaton_free(mc_automaton* automaton);
MCURVE_API size_t mc_automaton_state_count(const mc_automaton* automaton);
MCURVE_API size_t mc_automaton_edge_count(const mc_automaton* automaton);
// Messages produced while loading, such as pruned states.
MCURVE_API size_t mc_automaton_warning_count(const mc_automaton* automaton);
MCURVE_API const char* mc_automaton_warning(const mc_automaton* automaton, size_t index);

// Result tables.
MCURVE_API size_t mc_table_rows(const mc_table* table);
MCURVE_API size_t mc_table_columns(const mc_table* table);
MCURVE_API const char* mc_table_column_name(const mc_table* table, size_t column);
// Exact text of a cell: rationals as "p/q", reals at 12 significant digits.
MCURVE_API const char* mc_table_cell_text(const mc_table* table, size_t row, size_t column);
MCURVE_API mc_status mc_table_cell_double(const mc_table* table, size_t row, size_t column, double* out);
MCURVE_API mc_status mc_table_to_json(const mc_table* table, char** out);
MCURVE_API mc_status mc_table_to_csv(const mc_table* table, char** out);
MCURVE_API void mc_table_free(mc_table* table);

// Analyses on the maximal component of an automaton. Real parameters that
// accept exact values are passed as text and read exactly: "4/3", "1.25",
// "2.5e-3", and for targets also "golden" or "surd:p,q,d" meaning
// p + q sqrt(d).
MCURVE_API mc_status mc_components(const mc_automaton* automaton, mc_table** out);
// P(-a r - s psi) on a grid of s values.
MCURVE_API mc_status mc_pressure(const mc_automaton* automaton, double a, double s_begin, double s_end,
                                 const mc_options* options, mc_table** out);
MCURVE_API mc_status mc_manhattan(const mc_automaton* automaton, double s_begin, double s_end,
                                  const mc_options* options, mc_table** out);
// SVG of the curve with tangent lines at the ends and the midpoint.
MCURVE_API mc_status mc_manhattan_svg(const mc_automaton* automaton, double s_begin, double s_end,
                                      const mc_options* options, char** out);
// Rate function at the given targets, or on a grid when eta_count is 0.
MCURVE_API mc_status mc_rate(const mc_automaton* automaton, const double* etas, size_t eta_count,
                             const mc_options* options, mc_table** out);
MCURVE_API mc_status mc_extremes(const mc_automaton* automaton, mc_table** out);
MCURVE_API mc_status mc_lattice(const mc_automaton* automaton, mc_table** out);
// Periodic points of period n in [n_begin, n_end] with |mean - eta| < delta
// (delta "0" counts exact means).
MCURVE_API mc_status mc_count(const mc_automaton* automaton, int n_begin, int n_end, const char* eta,
                              const char* delta, const mc_options* options, mc_table** out);
MCURVE_API mc_status mc_shrink(const mc_automaton* automaton, const char* eta, int count,
                               const mc_options* options, mc_table** out);
// A closed orbit with exact mean p/q.
MCURVE_API mc_status mc_rational(const mc_automaton* automaton, const char* mean, const mc_options* options,
                                 mc_table** out);
// Full invariant suite. Returns MC_ERR_VERIFICATION when a check fails;
// the table is produced either way.
MCURVE_API mc_status mc_verify(const mc_automaton* automaton, const mc_options* options, mc_table** out);

// Free groups. Generating sets are comma-separated words ("a,b,ab"); inverses
// are added. rank 0 infers the rank from the words.
MCURVE_API mc_status mc_freegroup_automaton(const char* generators, int rank, int rho, int verify_depth,
                                            const mc_options* options, mc_automaton** out);
MCURVE_API mc_status mc_freegroup_dual(const char* base, const char* other, int rank, int memory,
                                       int verify_cycles_to, const mc_options* options, mc_automaton** out);
MCURVE_API mc_status mc_freegroup_tau(const char* base, const char* other, int rank, int T, double other_scale,
                                      const mc_options* options, mc_table** out);
MCURVE_API mc_status mc_freegroup_necklaces(int rank, int max_length, const char* generators,
                                            const mc_options* options, mc_table** out);
MCURVE_API mc_status mc_freegroup_spheres(const char* generators, int rank, int depth, const mc_options* options,
                                          mc_table** out);
// Translation length of a word as exact text.
MCURVE_API mc_status mc_translation_length(const char* generators, int rank, const char* word, char** out);

#ifdef __cplusplus
}
#endif

#endif  // MCURVE_MCURVE_H_
