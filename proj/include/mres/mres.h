#ifndef MRES_H
#define MRES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MRES_OK = 0,
    MRES_INPUT_ERROR = 1,
    MRES_EXHAUSTED = 2,
    MRES_FAILED = 3,
    MRES_BAD_ARGUMENT = 4
} mres_status;

typedef enum { MRES_MODE_PRINCIPALIZE = 0, MRES_MODE_RESOLVE = 1, MRES_MODE_EMBEDDED = 2 } mres_mode;
typedef enum { MRES_VARIANT_CANONICAL = 0, MRES_VARIANT_BV = 1 } mres_variant;

typedef struct mres_problem mres_problem;
typedef struct mres_tree mres_tree;

typedef struct {
    mres_mode mode;
    mres_variant variant;
    unsigned max_depth;
    size_t budget;
    int trace;
    /* nonzero: the corresponding field overrides what the problem file says */
    int mode_set, variant_set, max_depth_set, budget_set;
} mres_config;

void mres_config_default(mres_config* cfg);

/* Fills *out on success. On failure the message is available from mres_last_error(). */
mres_status mres_problem_from_json(const char* json, mres_problem** out);
void mres_problem_free(mres_problem* p);

/* A tree is produced for MRES_OK, MRES_EXHAUSTED and MRES_FAILED (partial tree). */
mres_status mres_run(const mres_problem* p, const mres_config* cfg, mres_tree** out);
void mres_tree_free(mres_tree* t);

mres_status mres_tree_status(const mres_tree* t);
int mres_tree_certificates_passed(const mres_tree* t);

/* Returned strings are owned by the caller; release with mres_string_free. */
char* mres_tree_to_json(const mres_tree* t);
char* mres_tree_to_text(const mres_tree* t);
void mres_string_free(char* s);

/* Re-parses a JSON tree and recomputes every leaf certificate from its strings.
   Returns 1 when all pass, 0 when one fails, -1 on malformed input. */
int mres_verify_json(const char* json);

const char* mres_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
