#ifndef MFBRIDGE_H
#define MFBRIDGE_H

/* C interface to the mfbridge core. All handles are opaque. Functions return
 * an mfb_status; on failure mfb_last_error() describes the problem (per
 * thread, valid until the next call on that thread). Strings returned through
 * char** are owned by the caller and released with mfb_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MFB_API __declspec(dllexport)
#else
#define MFB_API __attribute__((visibility("default")))
#endif

typedef enum {
  MFB_OK = 0,
  MFB_E_ARG = 1,      /* null handle, bad enum value, wrong sort */
  MFB_E_PARSE = 2,    /* syntax error in an input text */
  MFB_E_INVALID = 3,  /* well-formed input rejected by an operation */
  MFB_E_INTERNAL = 4
} mfb_status;

typedef enum { MFB_LANG_SET = 0, MFB_LANG_EMTT = 1 } mfb_lang;

typedef enum { MFB_CZF = 0, MFB_IZF = 1, MFB_ZF = 2 } mfb_flavor;

typedef enum {
  MFB_SORT_SET_TERM = 0,
  MFB_SORT_SET_FORMULA = 1,
  MFB_SORT_COLLECTION = 2,
  MFB_SORT_PRETERM = 3,
  MFB_SORT_PREPROP = 4
} mfb_sort;

typedef enum { MFB_FALSE = 0, MFB_TRUE = 1, MFB_OVERFLOW = 2 } mfb_truth;

typedef struct mfb_expr mfb_expr;
typedef struct mfb_k0 mfb_k0;
typedef struct mfb_catalog mfb_catalog;

MFB_API const char* mfb_version(void);
MFB_API const char* mfb_last_error(void);
MFB_API const char* mfb_status_name(mfb_status s);
MFB_API void mfb_string_free(char* s);

/* ---- expressions ---- */

/* Parses concrete syntax. For MFB_LANG_SET a formula is tried first, then a
 * term; for MFB_LANG_EMTT a proposition, then a term, then a collection.
 * allow_reserved admits generated names (with '#') and the placeholder u. */
MFB_API mfb_status mfb_parse(mfb_lang lang, const char* src, int allow_reserved, mfb_expr** out);
MFB_API mfb_status mfb_parse_sexp(const char* src, mfb_expr** out);
MFB_API void mfb_expr_free(mfb_expr* e);

MFB_API mfb_status mfb_expr_print(const mfb_expr* e, char** out);
MFB_API mfb_status mfb_expr_sexp(const mfb_expr* e, char** out);
MFB_API mfb_status mfb_expr_sort(const mfb_expr* e, mfb_sort* out);
/* comma separated, sorted */
MFB_API mfb_status mfb_expr_free_vars(const mfb_expr* e, char** out);
MFB_API mfb_status mfb_expr_alpha_eq(const mfb_expr* a, const mfb_expr* b, int* out);

/* ---- translations ---- */

MFB_API mfb_status mfb_tilde(const mfb_expr* e, mfb_expr** out);
/* eta for collections, delta for pre-terms, hat for propositions */
MFB_API mfb_status mfb_translate_emtt(const mfb_expr* e, mfb_expr** out);
/* `x : A, y : B` */
MFB_API mfb_status mfb_hat_context(const char* ctx, mfb_expr** out);

/* ---- classification and evaluation ---- */

/* violations: one line per offending subterm, empty when none */
MFB_API mfb_status mfb_classify(const mfb_expr* e, mfb_flavor flavor, int* is_delta0, char** violations);

/* env literal `x={},y={{}}`. Formulas set *truth; terms set *truth to
 * MFB_TRUE with *value, or MFB_OVERFLOW. value may be NULL. */
MFB_API mfb_status mfb_eval(const mfb_expr* e, const char* env, int rank, mfb_truth* truth, char** value);

typedef struct {
  int ok;
  uint64_t checked;
  uint64_t skipped;
  char* counterexample; /* NULL when ok; free with mfb_string_free */
} mfb_sweep;

MFB_API mfb_status mfb_check_equivalence(const mfb_expr* a, const mfb_expr* b, int rank, mfb_sweep* out);

/* ---- property suite ---- */

typedef struct {
  uint64_t seed;
  int max_depth;
  int rank;
  mfb_flavor flavor;
  uint64_t samples;
  uint64_t term_samples; /* 0: samples * 2 / 5 */
  unsigned threads;      /* 0: hardware concurrency */
  int omega_allowed;
  const char* pool;      /* comma separated; NULL for x,y,z */
} mfb_check_config;

MFB_API void mfb_check_config_default(mfb_check_config* cfg);
/* ids: oneside deltafun subst freevars axioms */
MFB_API mfb_status mfb_check_property(const char* id, const mfb_check_config* cfg, int* passed, char** report);

/* ---- K0 derivations ---- */

MFB_API mfb_status mfb_k0_parse(const char* src, mfb_k0** out);
MFB_API void mfb_k0_free(mfb_k0* d);
MFB_API mfb_status mfb_k0_formula(const mfb_k0* d, mfb_expr** out);
/* Reconstructs against gamma, discharges obligations and, when all hold,
 * computes sigma and runs the agreement and separation checks at `rank`.
 * *passed is 1 when every step succeeded. sigma_out may be NULL. */
MFB_API mfb_status mfb_k0_check(const mfb_k0* d, const mfb_expr* gamma, int rank, int* passed, char** report,
                                mfb_expr** sigma_out);

/* ---- rule catalog ---- */

/* text NULL: the built-in catalog */
MFB_API mfb_status mfb_catalog_load(const char* text, mfb_catalog** out);
MFB_API void mfb_catalog_free(mfb_catalog* c);
MFB_API mfb_status mfb_catalog_count(const mfb_catalog* c, mfb_flavor flavor, size_t* out);
/* one line per rule: id, step, flavors, derived marker */
MFB_API mfb_status mfb_catalog_list(const mfb_catalog* c, mfb_flavor flavor, char** out);
MFB_API mfb_status mfb_catalog_render(const mfb_catalog* c, const char* id, char** out);
MFB_API mfb_status mfb_catalog_audit(const mfb_catalog* c, int* clean, char** report);
/* N0, N1 and P(1) characterizations against eta */
MFB_API mfb_status mfb_catalog_crosscheck(const mfb_catalog* c, int rank, int* passed, char** report);
/* instance file text; one report line per instance */
MFB_API mfb_status mfb_rules_check(const mfb_catalog* c, const char* instances, int* all_ok, char** report);

#ifdef __cplusplus
}
#endif

#endif
