/* C interface to sstlab: copyless streaming string transducers, approximants, transition
 * equivalence, quotients and word equations.
 *
 * Machines are opaque handles. Functions that produce a machine store a new handle in *out;
 * the caller frees it with sstlab_machine_free. Functions that produce a report store a JSON
 * document in *json, freed with sstlab_string_free. On an error status no output is stored and
 * sstlab_last_error() describes the failure (per thread, valid until the next call). The
 * exceptions are the inconclusive SSTLAB_E_BUDGET results of sstlab_weq_solve and
 * sstlab_testset, which still store their report.
 *
 * Exhaustive searches honour SSTLAB_BUDGET_MS (milliseconds, unlimited when unset).
 */
#ifndef SSTLAB_H
#define SSTLAB_H

#include <stddef.h>

#if defined(_WIN32)
#define SSTLAB_API __declspec(dllexport)
#else
#define SSTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sstlab_status {
    SSTLAB_OK = 0,             /* success; verdicts: true / holds */
    SSTLAB_FALSE = 1,          /* verdict false, with a witness in the report */
    SSTLAB_E_INVALID = 2,      /* bad argument: malformed word, index out of range */
    SSTLAB_E_BUDGET = 3,       /* budget exhausted, or the search was inconclusive */
    SSTLAB_E_PARSE = 4,        /* text could not be parsed */
    SSTLAB_E_PRECONDITION = 5, /* e.g. machine not flow-normalized */
    SSTLAB_E_INTERNAL = 6
} sstlab_status;

typedef struct sstlab_machine sstlab_machine;

SSTLAB_API const char* sstlab_last_error(void);
SSTLAB_API void sstlab_string_free(char* s);
SSTLAB_API const char* sstlab_version(void);

/* .sst documents, plain or annotated. */
SSTLAB_API sstlab_status sstlab_machine_parse(const char* text, sstlab_machine** out);
SSTLAB_API void sstlab_machine_free(sstlab_machine* m);
SSTLAB_API sstlab_status sstlab_machine_serialize(const sstlab_machine* m, char** text);
SSTLAB_API int sstlab_machine_is_annotated(const sstlab_machine* m);
/* States, registers, transitions (with indices), capacity, edge ambiguity. */
SSTLAB_API sstlab_status sstlab_machine_info(const sstlab_machine* m, char** json);

/* SSTLAB_FALSE when some diagnostic is an error. */
SSTLAB_API sstlab_status sstlab_validate(const sstlab_machine* m, char** json);
SSTLAB_API sstlab_status sstlab_eval(const sstlab_machine* m, const char* input, char** json);
/* SSTLAB_FALSE with the shortlex-least input having more than k outputs. */
SSTLAB_API sstlab_status sstlab_kvalued(const sstlab_machine* m, size_t k, size_t max_len, char** json);
/* SSTLAB_FALSE with the shortlex-least input on which the two machines differ. */
SSTLAB_API sstlab_status sstlab_equiv_bounded(const sstlab_machine* a, const sstlab_machine* b, size_t max_len,
                                              char** json);

SSTLAB_API sstlab_status sstlab_trim(const sstlab_machine* m, sstlab_machine** out);
SSTLAB_API sstlab_status sstlab_normalize(const sstlab_machine* m, sstlab_machine** out);
/* alpha = 0 selects the capacity (at least 1). Inputs that are not flow-normalized are
 * normalized first. */
SSTLAB_API sstlab_status sstlab_annotate(const sstlab_machine* m, size_t alpha, sstlab_machine** out);
/* Pumping probe of an annotated machine against the closures at a larger beta. */
SSTLAB_API sstlab_status sstlab_tightness(const sstlab_machine* m, size_t beta, size_t max_len, size_t max_pump,
                                          char** json);

/* The next three accept plain machines and annotate them first (normalize, trim, annotate at
 * alpha = capacity); reports then carry "auto_annotated": true. */
SSTLAB_API sstlab_status sstlab_admits_check(const sstlab_machine* m, size_t alpha, size_t max_len, char** json);
SSTLAB_API sstlab_status sstlab_prune(const sstlab_machine* m, sstlab_machine** out, int* auto_annotated);
/* Transitions by index in canonical order; oracle_len = 0 skips the brute-force comparison. */
SSTLAB_API sstlab_status sstlab_tequiv(const sstlab_machine* m, size_t t1, size_t t2, size_t oracle_len, char** json);

/* Left quotient by a marker-free word; annotations are inherited. */
SSTLAB_API sstlab_status sstlab_quotient(const sstlab_machine* m, const char* word, int trim, sstlab_machine** out);

/* Schema with unknowns prefix1, prefix2, ... (prefix NULL selects "U"). */
SSTLAB_API sstlab_status sstlab_schema(const sstlab_machine* m, const char* prefix, char** json);

typedef enum sstlab_weq_method { SSTLAB_WEQ_BOUNDED = 0, SSTLAB_WEQ_NIELSEN = 1 } sstlab_weq_method;
/* Solves a .weq system. Bounded: SSTLAB_FALSE when no solution has values of length <= bound.
 * Nielsen needs a conjunction: SSTLAB_FALSE on unsat, SSTLAB_E_BUDGET on unknown. */
SSTLAB_API sstlab_status sstlab_weq_solve(const char* text, sstlab_weq_method method, size_t bound, size_t depth,
                                          char** json);

/* Checks S_N => S_{N+1} on assignments with values of length <= bound. With b = NULL, the second
 * schema is the first one, sharing its unknowns. SSTLAB_FALSE on not-fixpoint, SSTLAB_E_BUDGET
 * on unknown. */
SSTLAB_API sstlab_status sstlab_testset(const sstlab_machine* a, const sstlab_machine* b, size_t k, size_t n,
                                        size_t bound, char** json);

#ifdef __cplusplus
}
#endif

#endif
