#ifndef RELCAT_H
#define RELCAT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RelcatStatus {
  RELCAT_STATUS_OK = 0,
  // The call succeeded and the answer is negative. Only returned where documented.
  RELCAT_STATUS_FALSE = 1,
  RELCAT_STATUS_PARSE_ERROR = 2,
  RELCAT_STATUS_TYPE_ERROR = 3,
  RELCAT_STATUS_MODEL_ERROR = 4,
  RELCAT_STATUS_OUT_OF_FRAGMENT = 5,
  RELCAT_STATUS_NULL_POINTER = 6,
  RELCAT_STATUS_INVALID_UTF8 = 7,
  RELCAT_STATUS_INVALID_ARGUMENT = 8,
  RELCAT_STATUS_PANIC = 9,
} RelcatStatus;

// A parsed formula.
typedef struct RelcatFormula RelcatFormula;

// A parsed arrow term.
typedef struct RelcatTerm RelcatTerm;

// Parses `text` into a new formula handle stored in `*out`.
//
// # Safety
// `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
enum RelcatStatus relcat_formula_parse(const char *text, struct RelcatFormula **out);

// Releases a formula handle. NULL is ignored.
//
// # Safety
// `formula` must be NULL or a handle from [`relcat_formula_parse`] not yet freed.
void relcat_formula_free(struct RelcatFormula *formula);

// Prints a formula in surface syntax.
//
// # Safety
// `formula` must be a live handle or NULL; `out` must be NULL or writable.
enum RelcatStatus relcat_formula_to_string(const struct RelcatFormula *formula, char **out);

// Parses `text` into a new arrow-term handle stored in `*out`. Typing is not checked here.
//
// # Safety
// As [`relcat_formula_parse`].
enum RelcatStatus relcat_term_parse(const char *text, struct RelcatTerm **out);

// Releases a term handle. NULL is ignored.
//
// # Safety
// `term` must be NULL or a handle from [`relcat_term_parse`] not yet freed.
void relcat_term_free(struct RelcatTerm *term);

// Prints a term in surface syntax.
//
// # Safety
// `term` must be a live handle or NULL; `out` must be NULL or writable.
enum RelcatStatus relcat_term_to_string(const struct RelcatTerm *term, char **out);

// Infers the type of a term and prints it as `A ⊢ B`.
//
// # Safety
// As [`relcat_term_to_string`].
enum RelcatStatus relcat_term_type(const struct RelcatTerm *term, char **out);

// Decides equality in the calculus S; the answer goes to `*equal`.
//
// # Safety
// Handles must be live or NULL; `equal` must be NULL or writable.
enum RelcatStatus relcat_s_equal(const struct RelcatFormula *lhs,
                                 const struct RelcatFormula *rhs,
                                 bool *equal);

// Evaluates a formula arithmetically under `assignment` (`p=2,q=3`) and
// writes the value in decimal to `*out`.
//
// # Safety
// `formula` must be a live handle or NULL; `assignment` NULL or NUL-terminated; `out` NULL or writable.
enum RelcatStatus relcat_arith_eval(const struct RelcatFormula *formula,
                                    const char *assignment,
                                    char **out);

// Decides equality of two terms in the free relevant monoidal category.
// Terms of different types are unequal.
//
// # Safety
// Handles must be live or NULL; `equal` must be NULL or writable.
enum RelcatStatus relcat_remon_equal(const struct RelcatTerm *lhs,
                                     const struct RelcatTerm *rhs,
                                     bool *equal);

// Checks `lhs = rhs` in finite pointed sets under every assignment of sizes
// 1 to 3 to the letters (at most 27). Returns [`RelcatStatus::Ok`] when it
// holds and [`RelcatStatus::False`] when a counterexample exists.
//
// # Safety
// Handles must be live or NULL.
enum RelcatStatus relcat_check_equation(const struct RelcatTerm *lhs, const struct RelcatTerm *rhs);

// Message describing the last failed call on this thread; empty after a
// success. Valid until the next call into this library on the same thread.
const char *relcat_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library not yet freed.
void relcat_string_free(char *s);

// The library version, as a static NUL-terminated string.
const char *relcat_version(void);

#endif  /* RELCAT_H */
