/* C interface to the connected minimum join library. */
#ifndef CMJ_CMJ_H
#define CMJ_CMJ_H

#include <stddef.h>
#include <stdint.h>

#if defined(CMJ_BUILDING_LIBRARY)
#define CMJ_API __attribute__((visibility("default")))
#else
#define CMJ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmj_status {
  CMJ_OK = 0,
  CMJ_ERR_STRUCTURAL_INPUT = 1,
  CMJ_ERR_NO_JOIN = 2,
  CMJ_ERR_NOT_MINIMUM_JOIN = 3,
  CMJ_ERR_THEOREM_VIOLATION = 4,
  CMJ_ERR_ORACLE_SCALE = 5,
  CMJ_ERR_PARSE = 6,
  CMJ_ERR_CONTRACT = 7,
  CMJ_ERR_INTERNAL = 8,
  CMJ_ERR_NULL_ARGUMENT = 9
} cmj_status;

typedef enum cmj_generator {
  CMJ_GEN_RAKE = 0,
  CMJ_GEN_PRIMAL = 1,
  CMJ_GEN_TAILED = 2
} cmj_generator;

typedef struct cmj_graft cmj_graft;
typedef struct cmj_result cmj_result;

/* Message of the last failed call on this thread; never NULL. */
CMJ_API const char* cmj_last_error(void);
CMJ_API const char* cmj_status_string(cmj_status status);

/* Grafts */
CMJ_API cmj_status cmj_graft_parse(const char* text, size_t length, cmj_graft** out);
/* edges holds 2 * edge_count endpoints. */
CMJ_API cmj_status cmj_graft_create(size_t vertex_count, const uint32_t* edges, size_t edge_count,
                                    const uint32_t* terminals, size_t terminal_count, cmj_graft** out);
CMJ_API void cmj_graft_free(cmj_graft* graft);
CMJ_API size_t cmj_graft_vertex_count(const cmj_graft* graft);
CMJ_API size_t cmj_graft_edge_count(const cmj_graft* graft);
CMJ_API size_t cmj_graft_terminal_count(const cmj_graft* graft);
CMJ_API size_t cmj_graft_stripped_loops(const cmj_graft* graft);
/* Sorted terminal ids, owned by the graft. */
CMJ_API const uint32_t* cmj_graft_terminals(const cmj_graft* graft, size_t* count);
CMJ_API cmj_status cmj_graft_edge(const cmj_graft* graft, uint32_t edge, uint32_t* u, uint32_t* v);
CMJ_API cmj_status cmj_graft_format(const cmj_graft* graft, char** out);

/* Connected minimum join decision */
CMJ_API cmj_status cmj_check(const cmj_graft* graft, cmj_result** out);
CMJ_API cmj_status cmj_check_rooted(const cmj_graft* graft, uint32_t root, cmj_result** out);
CMJ_API int cmj_result_found(const cmj_result* result);
CMJ_API const uint32_t* cmj_result_join(const cmj_result* result, size_t* count);
CMJ_API const uint32_t* cmj_result_coverable(const cmj_result* result, size_t* count);
/* "" when found, else empty-T | split-T | not-eligible:<reason> | empty-head-set */
CMJ_API const char* cmj_result_stage(const cmj_result* result);
CMJ_API cmj_status cmj_result_json(const cmj_result* result, char** out);
CMJ_API void cmj_result_free(cmj_result* result);

/* Building blocks; arrays are released with cmj_array_free, strings with cmj_string_free. */
CMJ_API cmj_status cmj_minimum_join(const cmj_graft* graft, uint32_t** edges, size_t* count);
CMJ_API cmj_status cmj_distances(const cmj_graft* graft, uint32_t root, int64_t** dist,
                                 unsigned char** reachable, size_t* count);
CMJ_API cmj_status cmj_decompose_json(const cmj_graft* graft, uint32_t root, char** out);
CMJ_API cmj_status cmj_verify(const cmj_graft* graft, uint32_t root, int* clean, char** report_json);
CMJ_API cmj_status cmj_oracle_json(const cmj_graft* graft, char** out);

/* Generators */
CMJ_API cmj_status cmj_generate(cmj_generator kind, uint64_t seed, int depth, cmj_graft** graft,
                                char** recipe_json);
CMJ_API cmj_status cmj_replay(const char* recipe_json, cmj_graft** graft);

CMJ_API void cmj_string_free(char* text);
CMJ_API void cmj_array_free(void* array);

#ifdef __cplusplus
}
#endif

#endif
