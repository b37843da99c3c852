/* SPDX-License-Identifier: Apache-2.0 */
#ifndef CORRDETECT_H
#define CORRDETECT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CD_API __declspec(dllexport)
#else
#define CD_API __attribute__((visibility("default")))
#endif

typedef enum cd_status {
  CD_OK = 0,
  CD_ERR_USAGE = 2,
  CD_ERR_PARSE = 3,
  CD_ERR_CAPACITY = 4,
  CD_ERR_IO = 5,
  CD_ERR_INTERNAL = 6
} cd_status;

typedef struct cd_graph cd_graph;
typedef struct cd_scenario cd_scenario;
typedef struct cd_nodeset cd_nodeset;
typedef struct cd_detection cd_detection;
typedef struct cd_separator cd_separator;
typedef struct cd_attack cd_attack;
typedef struct cd_oracle cd_oracle;

/* Message of the last failed call on this thread ("" if none). */
CD_API const char* cd_last_error(void);
CD_API const char* cd_version(void);
CD_API void cd_string_free(char* s);

/* Id buffers: functions taking (out, cap) copy at most cap entries and
 * return the full count, so a first call with cap = 0 sizes the buffer. */

/* ---- graphs ---- */
CD_API cd_status cd_graph_parse(const char* text, cd_graph** out);
CD_API cd_status cd_graph_load(const char* path, cd_graph** out);
/* kind as in the generator catalogue (star, complete, gnm, ...). */
CD_API cd_status cd_graph_generate(const char* kind, const double* params, size_t n_params,
                                   uint64_t seed, cd_graph** out);
CD_API cd_status cd_graph_serialize(const cd_graph* g, char** out);
CD_API cd_status cd_graph_save(const cd_graph* g, const char* path);
CD_API void cd_graph_free(cd_graph* g);
CD_API size_t cd_graph_order(const cd_graph* g);
CD_API size_t cd_graph_edge_count(const cd_graph* g);
CD_API int cd_graph_is_directed(const cd_graph* g);

/* ---- node sets ---- */
CD_API size_t cd_nodeset_ids(const cd_nodeset* s, uint32_t* out, size_t cap);
CD_API void cd_nodeset_free(cd_nodeset* s);

/* ---- scenarios ---- */
CD_API cd_status cd_scenario_parse(const char* json, cd_scenario** out);
CD_API cd_status cd_scenario_load(const char* path, cd_scenario** out);
/* All-truthful reports for bad = {} and the given public budget. */
CD_API cd_status cd_scenario_truthful(const cd_graph* g, size_t budget, cd_scenario** out);
CD_API cd_status cd_scenario_serialize(const cd_scenario* s, char** out);
CD_API cd_status cd_scenario_save(const cd_scenario* s, const char* path);
CD_API void cd_scenario_free(cd_scenario* s);
/* Borrowed; valid while s lives. */
CD_API const cd_graph* cd_scenario_graph(const cd_scenario* s);
CD_API size_t cd_scenario_budget(const cd_scenario* s);
CD_API size_t cd_scenario_bad(const cd_scenario* s, uint32_t* out, size_t cap);
/* Exhaustive checker; cap 0 means the default node cap. */
CD_API cd_status cd_scenario_guaranteed_good(const cd_scenario* s, size_t cap, unsigned threads,
                                             cd_nodeset** out);

/* ---- detection ---- */
typedef enum cd_detect_mode { CD_DETECT_ONE = 0, CD_DETECT_DIRECTED = 1, CD_DETECT_MANY = 2 } cd_detect_mode;

typedef struct cd_detect_options {
  cd_detect_mode mode;
  size_t want;         /* CD_DETECT_MANY only */
  int has_budget;      /* certify against `budget` */
  size_t budget;
  int shuffle;         /* random removal order from `seed` */
  uint64_t seed;
} cd_detect_options;

typedef struct cd_detection_info {
  size_t declared_count;
  size_t rounds_removed;
  size_t declared_score;
  int complete;
  int certified;
} cd_detection_info;

CD_API cd_detect_options cd_detect_defaults(void);
CD_API cd_status cd_detect(const cd_scenario* s, const cd_detect_options* opts, cd_detection** out);
CD_API cd_detection_info cd_detection_summary(const cd_detection* d);
CD_API size_t cd_detection_declared(const cd_detection* d, uint32_t* out, size_t cap);
/* Removed pairs flattened as u0, v0, u1, v1, ...; cap counts pairs. */
CD_API size_t cd_detection_pairs(const cd_detection* d, uint32_t* out, size_t cap);
CD_API void cd_detection_free(cd_detection* d);

/* ---- separators ---- */
typedef enum cd_sep_method { CD_SEP_EXACT = 0, CD_SEP_HEURISTIC = 1 } cd_sep_method;

typedef struct cd_separator_options {
  cd_sep_method method;
  size_t k;        /* 0: minimise |S| + k over k */
  size_t g;        /* g-remainder target, 1 for plain separators */
  size_t cap;      /* exact solver node cap, 0 for the default */
  uint64_t seed;
  unsigned effort;
  unsigned threads;
} cd_separator_options;

CD_API cd_separator_options cd_separator_defaults(void);
/* Directed graphs get reachability separators (exact method only). */
CD_API cd_status cd_separator_solve(const cd_graph* g, const cd_separator_options* opts,
                                    cd_separator** out);
CD_API size_t cd_separator_k(const cd_separator* s);
CD_API size_t cd_separator_g(const cd_separator* s);
CD_API size_t cd_separator_objective(const cd_separator* s);
CD_API size_t cd_separator_ids(const cd_separator* s, uint32_t* out, size_t cap);
CD_API size_t cd_separator_profile(const cd_separator* s, size_t* out, size_t cap);
CD_API void cd_separator_free(cd_separator* s);

/* ---- attacks ---- */
typedef enum cd_attack_kind {
  CD_ATTACK_SEPARATOR = 0,
  CD_ATTACK_DIRECTED = 1,
  CD_ATTACK_GREMAINDER = 2,
  CD_ATTACK_APPROX = 3,
  CD_ATTACK_CLIQUE_APPEND = 4
} cd_attack_kind;

typedef struct cd_attack_options {
  cd_attack_kind kind;
  size_t g;          /* CD_ATTACK_GREMAINDER */
  size_t delta_num;  /* CD_ATTACK_CLIQUE_APPEND: delta = num / den */
  size_t delta_den;
  size_t cap;        /* exact separator cap, 0 for the default */
  size_t check_cap;  /* run the exhaustive checker up to this order, 0 to skip */
  uint64_t seed;
  unsigned threads;
} cd_attack_options;

typedef struct cd_attack_info {
  size_t budget_used;
  size_t target_g;
  int degenerate;
  int certificate_valid; /* polynomial certificate check */
  int checked;           /* -1 not run, 0 identification possible, 1 impossible */
  const char* construction;
} cd_attack_info;

CD_API cd_attack_options cd_attack_defaults(void);
CD_API cd_status cd_attack_run(const cd_graph* g, const cd_attack_options* opts, cd_attack** out);
CD_API cd_attack_info cd_attack_summary(const cd_attack* a);
CD_API size_t cd_attack_bad(const cd_attack* a, uint32_t* out, size_t cap);
/* Borrowed: the attacked graph (the appended graph for clique-append). */
CD_API const cd_graph* cd_attack_graph(const cd_attack* a);
CD_API cd_status cd_attack_scenario(const cd_attack* a, cd_scenario** out);
CD_API void cd_attack_free(cd_attack* a);

/* ---- oracle ---- */
/* g = 1 gives m(G); cap 0 uses the default for the graph kind. */
CD_API cd_status cd_oracle_solve(const cd_graph* g, size_t want, size_t cap, unsigned threads,
                                 cd_oracle** out);
CD_API size_t cd_oracle_value(const cd_oracle* o);
CD_API size_t cd_oracle_family_size(const cd_oracle* o);
CD_API size_t cd_oracle_anchor(const cd_oracle* o);
CD_API size_t cd_oracle_member(const cd_oracle* o, size_t index, uint32_t* out, size_t cap);
CD_API void cd_oracle_free(cd_oracle* o);

/* ---- reductions ---- */
CD_API cd_status cd_reduce_sse_aux(const cd_graph* g, size_t* r, cd_graph** out);
CD_API cd_status cd_reduce_clique_append(const cd_graph* g, size_t delta_num, size_t delta_den,
                                         size_t* h, cd_graph** out);

typedef struct cd_gadget_info {
  size_t base_nodes;
  size_t node_count;
  size_t edge_count;
} cd_gadget_info;

CD_API cd_status cd_reduce_np_gadget(const cd_graph* g, size_t m, size_t n, size_t c,
                                     cd_gadget_info* info, cd_graph** out);
/* Normalized edge expansion of ids in a regular graph, as num/den. */
CD_API cd_status cd_expansion(const cd_graph* g, const uint32_t* ids, size_t count, int64_t* num,
                              int64_t* den);

/* ---- benchmark ---- */
/* Single-node detection on a random graph with `edges` edges, mean degree
 * `avg_degree` and a `bad_fraction` of corrupt nodes that accuse all
 * neighbors. Node ids are renumbered in BFS order. prepare builds the
 * instance, run times one detection on it. */
typedef struct cd_bench cd_bench;
CD_API cd_status cd_bench_prepare(size_t edges, double avg_degree, double bad_fraction, uint64_t seed,
                                  cd_bench** out);
CD_API cd_status cd_bench_run(const cd_bench* b, double* seconds);
CD_API void cd_bench_free(cd_bench* b);
/* Minimum wall time over `reps` runs on one prepared instance. */
CD_API cd_status cd_bench_detect(size_t edges, double avg_degree, double bad_fraction, uint64_t seed,
                                 unsigned reps, double* seconds);

#ifdef __cplusplus
}
#endif

#endif /* CORRDETECT_H */
