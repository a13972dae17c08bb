#ifndef CLONEDEL_H
#define CLONEDEL_H

/* Generated by cbindgen from clonedel-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum CdStatus {
  /**
   * Success.
   */
  CD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CD_STATUS_NULL_POINTER = 1,
  /**
   * A parameter was outside its admissible range.
   */
  CD_STATUS_DOMAIN = 2,
  /**
   * The requested size is not supported (clone/delete arities, indices).
   */
  CD_STATUS_UNSUPPORTED = 3,
  /**
   * The inputs do not form a valid quantum state.
   */
  CD_STATUS_INVALID_STATE = 4,
  /**
   * Any other failure.
   */
  CD_STATUS_INTERNAL = 5,
} CdStatus;

/**
 * Opaque multiqubit density matrix produced by the machine constructors.
 */
typedef struct CdState CdState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *cd_last_error(void);

/**
 * Library version as a static C string.
 */
const char *cd_version(void);

/**
 * Releases a state handle. Null is ignored.
 *
 * # Safety
 * `state` must be a pointer previously returned by one of the constructor
 * functions and not yet freed.
 */
void cd_state_free(struct CdState *state);

/**
 * Number of qubit modes of a state.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to writable memory.
 */
enum CdStatus cd_state_mode_count(const struct CdState *state, uintptr_t *out);

/**
 * Total Hilbert-space dimension of a state.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to writable memory.
 */
enum CdStatus cd_state_dim(const struct CdState *state, uintptr_t *out);

/**
 * One density-matrix entry, split into real and imaginary parts.
 *
 * # Safety
 * `state` must be a live handle; `re` and `im` must point to writable
 * memory.
 */
enum CdStatus cd_state_entry(const struct CdState *state,
                             uintptr_t row,
                             uintptr_t col,
                             double *re,
                             double *im);

/**
 * Universal 1→2 copier output; writes the two-qubit state handle and the
 * cloning fidelity 1 − ξ.
 *
 * # Safety
 * `out_state` and `out_fidelity` must point to writable memory.
 */
enum CdStatus cd_bh_clone(double alpha_re,
                          double alpha_im,
                          double beta_re,
                          double beta_im,
                          double xi,
                          struct CdState **out_state,
                          double *out_fidelity);

/**
 * 2→1 deleter output; writes the two-qubit state handle and the deletion
 * fidelity 1 − |α|²|β|².
 *
 * # Safety
 * `out_state` and `out_fidelity` must point to writable memory.
 */
enum CdStatus cd_delete_2to1(double alpha_re,
                             double alpha_im,
                             double beta_re,
                             double beta_im,
                             struct CdState **out_state,
                             double *out_fidelity);

/**
 * Copier followed by the 2→1 deleter; writes the state and the fidelity
 * F₃ = (1 + ξ)/(1 + 2ξ).
 *
 * # Safety
 * `out_state` and `out_fidelity` must point to writable memory.
 */
enum CdStatus cd_clone_then_delete(double alpha_re,
                                   double alpha_im,
                                   double beta_re,
                                   double beta_im,
                                   double xi,
                                   struct CdState **out_state,
                                   double *out_fidelity);

/**
 * 2→1 deleter followed by the copier; writes both branch outputs
 * (cloning the undeleted mode, cloning the blanked mode).
 *
 * # Safety
 * `out_aa` and `out_bb` must point to writable memory.
 */
enum CdStatus cd_delete_then_clone(double alpha_re,
                                   double alpha_im,
                                   double beta_re,
                                   double beta_im,
                                   double xi,
                                   struct CdState **out_aa,
                                   struct CdState **out_bb);

/**
 * Universal 1→N cloner output (machine traced out), N between 2 and 4.
 *
 * # Safety
 * `out_state` must point to writable memory.
 */
enum CdStatus cd_gm_clone(double alpha_re,
                          double alpha_im,
                          double beta_re,
                          double beta_im,
                          uintptr_t n,
                          struct CdState **out_state);

/**
 * 1→N cloning then N→M deletion; writes the N-qubit output state.
 *
 * # Safety
 * `out_state` must point to writable memory.
 */
enum CdStatus cd_clone_delete_nm(double alpha_re,
                                 double alpha_im,
                                 double beta_re,
                                 double beta_im,
                                 uintptr_t n,
                                 uintptr_t m,
                                 struct CdState **out_state);

/**
 * N→1 deletion then 1→M cloning; writes the M-qubit output state.
 *
 * # Safety
 * `out_state` must point to writable memory.
 */
enum CdStatus cd_delete_clone_nm(double alpha_re,
                                 double alpha_im,
                                 double beta_re,
                                 double beta_im,
                                 uintptr_t n,
                                 uintptr_t m,
                                 struct CdState **out_state);

/**
 * Feasible |α|² for a deletion fidelity in [3/4, 1).
 *
 * # Safety
 * `out` must point to writable memory.
 */
enum CdStatus cd_alpha_sq_from_fdel(double f_del, double *out);

/**
 * Negativity and logarithmic negativity of a bipartite (two-qubit) state.
 *
 * # Safety
 * `state` must be a live handle; `out_n` and `out_log_n` must point to
 * writable memory.
 */
enum CdStatus cd_negativity(const struct CdState *state, double *out_n, double *out_log_n);

/**
 * Geometric discord of a two-qubit state (Bloch closed form).
 *
 * # Safety
 * `state` must be a live handle; `out` must point to writable memory.
 */
enum CdStatus cd_geometric_discord(const struct CdState *state, double *out);

/**
 * Quantum discord of a bipartite state, measuring subsystem `measured`
 * (0 or 1). `starts`, `tol_bits` and `seed` configure the minimizer;
 * pass 5, 1e-6 and 0 for the defaults.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to writable memory.
 */
enum CdStatus cd_discord(const struct CdState *state,
                         uintptr_t measured,
                         uintptr_t starts,
                         double tol_bits,
                         uint64_t seed,
                         double *out);

/**
 * Bipartite discord D(kept | rest) of an N-qubit state (N between 2 and
 * 4); an upper bound from the seeded multistart search.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to writable memory.
 */
enum CdStatus cd_bipartite_discord(const struct CdState *state,
                                   uintptr_t kept,
                                   uintptr_t starts,
                                   double tol_bits,
                                   uint64_t seed,
                                   double *out);

/**
 * Average bipartite discord δ over all kept-mode choices.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to writable memory.
 */
enum CdStatus cd_average_discord(const struct CdState *state,
                                 uintptr_t starts,
                                 double tol_bits,
                                 uint64_t seed,
                                 double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CLONEDEL_H */
