/* C interface to the chaincalc exact order-series library. */

#ifndef CHAINCALC_H
#define CHAINCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call in this interface.
typedef enum CcStatus {
  // Success; out-parameters are valid.
  CcStatus_Ok = 0,
  // A required pointer argument was NULL.
  CcStatus_NullPointer = 1,
  // A string argument was not valid UTF-8.
  CcStatus_InvalidUtf8 = 2,
  // An expression or series failed to parse.
  CcStatus_ParseError = 3,
  // An argument was outside the documented domain.
  CcStatus_InvalidArgument = 4,
  // The input exceeded a hard size limit.
  CcStatus_SizeLimit = 5,
  // The target series cannot come from any word of the searched family.
  CcStatus_Infeasible = 6,
  // The series is not representable in the requested form.
  CcStatus_NotRepresentable = 7,
  // The search exceeded its candidate cap.
  CcStatus_SearchCap = 8,
  // An internal invariant failed; the library state is still consistent.
  CcStatus_InternalPanic = 9,
} CcStatus;

// Opaque handle to a parsed poset expression.
typedef struct CcExpr CcExpr;

// Opaque handle to an exact chain-basis series.
typedef struct CcSeries CcSeries;

// Structural invariants of a poset expression.
typedef struct CcInvariants {
  // Number of points.
  uint32_t n_points;
  // Length of the longest chain.
  uint32_t max_chain;
  // First Betti number of the Hasse diagram.
  uint32_t betti;
  // Number of connected components.
  uint32_t components;
  // Concatenation nodes in the desugared word.
  uint32_t mu_count;
  // Handle-attachment nodes in the desugared word.
  uint32_t dee_count;
  // Leaf points of the desugared word.
  uint32_t leaf_count;
} CcInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the error message for the most recent non-`Ok` status on this
// thread, or NULL when no error has occurred. The caller owns the returned
// string and must release it with [`cc_string_free`].
char *cc_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a pointer previously returned by a `chaincalc`
// function and not yet freed.
void cc_string_free(char *s);

// Parses a poset expression such as `"d(mu(1,c2))"` into a new handle.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum CcStatus cc_expr_parse(const char *text, struct CcExpr **out);

// Releases an expression handle. NULL is ignored.
//
// # Safety
// `expr` must be NULL or a handle from [`cc_expr_parse`], freed exactly once.
void cc_expr_free(struct CcExpr *expr);

// Writes the canonical text of an expression.
//
// # Safety
// `expr` must be a live handle and `out` a valid pointer.
enum CcStatus cc_expr_to_string(const struct CcExpr *expr, char **out);

// Evaluates the strict-map order series of an expression into a new
// series handle.
//
// # Safety
// `expr` must be a live handle and `out` a valid pointer.
enum CcStatus cc_expr_eval(const struct CcExpr *expr, struct CcSeries **out);

// Fills `out` with the structural invariants of an expression.
//
// # Safety
// `expr` must be a live handle and `out` a valid pointer.
enum CcStatus cc_expr_invariants(const struct CcExpr *expr, struct CcInvariants *out);

// Counts maps to chains with the brute-force ideal-lattice oracle,
// independent of the chain-basis algebra. Writes the counts for
// n = 0..n_max as a comma-separated decimal string.
//
// # Safety
// `expr` must be a live handle and `out` a valid pointer.
enum CcStatus cc_expr_oracle_counts(const struct CcExpr *expr,
                                    uint32_t n_max,
                                    bool strict,
                                    char **out);

// Parses a chain-basis series such as `"3*z[6] + 4*z[7]"`.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum CcStatus cc_series_parse(const char *text, struct CcSeries **out);

// Releases a series handle. NULL is ignored.
//
// # Safety
// `series` must be NULL or a live series handle, freed exactly once.
void cc_series_free(struct CcSeries *series);

// Writes the canonical text of a series, e.g. `"1*z[3] + 2*z[4]"`.
//
// # Safety
// `series` must be a live handle and `out` a valid pointer.
enum CcStatus cc_series_to_string(const struct CcSeries *series, char **out);

// Concatenation product of two series (new handle).
//
// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum CcStatus cc_series_star(const struct CcSeries *a,
                             const struct CcSeries *b,
                             struct CcSeries **out);

// Disjoint-union (Hadamard) product of two series (new handle).
//
// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum CcStatus cc_series_hadamard(const struct CcSeries *a,
                                 const struct CcSeries *b,
                                 struct CcSeries **out);

// Handle-attachment operator applied to a series (new handle).
//
// # Safety
// `series` must be a live handle and `out` a valid pointer.
enum CcStatus cc_series_dee(const struct CcSeries *series, struct CcSeries **out);

// Writes the number of strict maps to the n-chain for n = 0..n_max as a
// comma-separated decimal string.
//
// # Safety
// `series` must be a live handle and `out` a valid pointer.
enum CcStatus cc_series_expand(const struct CcSeries *series, uint32_t n_max, char **out);

// Converts a series of a poset with `size` points to its h*-vector,
// written as `"(1,2,0,0,0,0)"`.
//
// # Safety
// `series` must be a live handle and `out` a valid pointer.
enum CcStatus cc_series_hstar(const struct CcSeries *series, uint32_t size, char **out);

// Searches for all handle words whose series equals the target, up to
// isomorphism. Writes one line per class, members space-separated; writes
// an empty string when the target is feasible but unattained.
//
// # Safety
// `series` must be a live handle and `out` a valid pointer.
enum CcStatus cc_series_solve(const struct CcSeries *series, char **out);

// Runs one named binomial-identity sweep (see the library documentation
// for the names). Sets `out_pass` and writes the one-line report.
//
// # Safety
// `name` must be a valid NUL-terminated string; `out_pass` and
// `out_report` must be valid pointers.
enum CcStatus cc_identity_check(const char *name, bool perturb, bool *out_pass, char **out_report);

// Probability of drawing exactly `counts[j]` from group `j` when `draws`
// items are taken without replacement from groups of the given sizes.
// The result is an exact rational written as `"num/den"`.
//
// # Safety
// `group_sizes` and `counts` must point to `n_groups` readable u64 values;
// `out` must be a valid pointer.
enum CcStatus cc_nhg_pmf(const uint64_t *group_sizes,
                         size_t n_groups,
                         uint64_t draws,
                         const uint64_t *counts,
                         char **out);

// Sum of all group-count probabilities for the given parameters, written
// as `"num/den"`; exactly `"1/1"` for every valid input.
//
// # Safety
// `group_sizes` must point to `n_groups` readable u64 values; `out` must
// be a valid pointer.
enum CcStatus cc_nhg_normalization(const uint64_t *group_sizes,
                                   size_t n_groups,
                                   uint64_t draws,
                                   char **out);

// Expected number drawn from 1-based group `group`, written as
// `"num/den"`.
//
// # Safety
// `group_sizes` must point to `n_groups` readable u64 values; `out` must
// be a valid pointer.
enum CcStatus cc_nhg_expectation(const uint64_t *group_sizes,
                                 size_t n_groups,
                                 uint64_t draws,
                                 size_t group,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAINCALC_H */
