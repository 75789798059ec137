#ifndef FANOCHECK_H
#define FANOCHECK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FcRayType {
  FC_RAY_TYPE_E2 = 0,
  FC_RAY_TYPE_D = 1,
  FC_RAY_TYPE_C = 2,
  FC_RAY_TYPE_E1 = 3,
  FC_RAY_TYPE_E34 = 4,
  FC_RAY_TYPE_E5 = 5,
} FcRayType;

typedef enum FcScenario {
  FC_SCENARIO_POINT = 0,
  FC_SCENARIO_CONIC = 1,
  FC_SCENARIO_LINE = 2,
} FcScenario;

typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_INVALID_ARGUMENT = 1,
  FC_STATUS_OUT_OF_RANGE = 2,
  FC_STATUS_OVERFLOW = 3,
  FC_STATUS_CONTRACT = 4,
  FC_STATUS_BUDGET_EXCEEDED = 5,
  FC_STATUS_NULL_POINTER = 6,
  FC_STATUS_INDEX_OUT_OF_BOUNDS = 7,
  FC_STATUS_PANIC = 8,
} FcStatus;

typedef enum FcSubtype {
  FC_SUBTYPE_NONE = 0,
  FC_SUBTYPE_C1 = 1,
  FC_SUBTYPE_C2 = 2,
  FC_SUBTYPE_D1 = 3,
  FC_SUBTYPE_D2 = 4,
  FC_SUBTYPE_D3 = 5,
} FcSubtype;

/**
 * Opaque divisorial-contraction list.
 */
typedef struct FcDivCont FcDivCont;

/**
 * Opaque two-ray-game table.
 */
typedef struct FcFlopTable FcFlopTable;

/**
 * Opaque non-Fano search verdict.
 */
typedef struct FcVerdict FcVerdict;

typedef struct FcInvariants {
  int64_t i3;
  int64_t i2;
  int64_t i1;
  int64_t e3;
} FcInvariants;

/**
 * One table row. Payload fields that do not apply to the ray type are 0.
 */
typedef struct FcRow {
  int64_t g;
  enum FcRayType ray_type;
  enum FcSubtype subtype;
  int64_t alpha;
  int64_t beta;
  int64_t d3;
  /**
   * E1 and E2: index of the target.
   */
  int64_t r_w;
  /**
   * E1 and E2: `(-K_W)^3`.
   */
  int64_t kw3;
  /**
   * E1: `(-K_W).B`.
   */
  int64_t kwb;
  /**
   * E1: genus of the blown-up curve.
   */
  int64_t g_b;
  /**
   * C: degree of the discriminant.
   */
  int64_t deg_delta;
  /**
   * D: `D.(-K)^2`.
   */
  int64_t dk2;
} FcRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fc_last_error_message(void);

/**
 * `((-K)^3, (-K)^2.E, (-K).E^2, E^3)` for a point (`d = 0`) or a curve of
 * degree `d >= 1` and genus `h`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum FcStatus fc_blowup_invariants(int64_t g, int64_t d, int64_t h, struct FcInvariants *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum FcStatus fc_rr_h0(int64_t g, int64_t m, int64_t *out);

/**
 * Builds the two-ray-game table over `[g_min, g_max]`.
 *
 * # Safety
 * `out` must be valid for writes. On success `*out` owns a table that must be
 * released with [`fc_flop_table_free`].
 */
enum FcStatus fc_flop_table_new(enum FcScenario scenario,
                                int64_t g_min,
                                int64_t g_max,
                                bool geometric,
                                struct FcFlopTable **out);

/**
 * Number of kept rows; 0 for NULL.
 *
 * # Safety
 * `t` must be NULL or a live handle from [`fc_flop_table_new`].
 */
size_t fc_flop_table_len(const struct FcFlopTable *t);

/**
 * Number of rows removed by prune rules; 0 for NULL.
 *
 * # Safety
 * `t` must be NULL or a live handle from [`fc_flop_table_new`].
 */
size_t fc_flop_table_excluded_len(const struct FcFlopTable *t);

/**
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum FcStatus fc_flop_table_row(const struct FcFlopTable *t, size_t index, struct FcRow *out);

/**
 * # Safety
 * `t` must be NULL or a handle from [`fc_flop_table_new`] not yet freed.
 */
void fc_flop_table_free(struct FcFlopTable *t);

/**
 * Divisorial-contraction solutions over the scenario's default genus range.
 *
 * # Safety
 * `out` must be valid for writes; release with [`fc_divcont_free`].
 */
enum FcStatus fc_divcont_new(enum FcScenario scenario, struct FcDivCont **out);

/**
 * # Safety
 * `h` must be NULL or a live handle.
 */
size_t fc_divcont_len(const struct FcDivCont *h);

/**
 * Writes `(g, α, β)` of solution `index`.
 *
 * # Safety
 * `h` must be a live handle; `g`, `alpha`, `beta` valid for writes.
 */
enum FcStatus fc_divcont_get(const struct FcDivCont *h,
                             size_t index,
                             int64_t *g,
                             int64_t *alpha,
                             int64_t *beta);

/**
 * # Safety
 * `h` must be NULL or a handle from [`fc_divcont_new`] not yet freed.
 */
void fc_divcont_free(struct FcDivCont *h);

/**
 * Non-Fano search over `6 <= g <= 12`.
 *
 * # Safety
 * `out` must be valid for writes; release with [`fc_verdict_free`].
 */
enum FcStatus fc_nonfano_new(bool curated, bool geometric, struct FcVerdict **out);

/**
 * All arithmetic survivors, excluded or not.
 *
 * # Safety
 * `v` must be NULL or a live handle.
 */
size_t fc_verdict_survivor_count(const struct FcVerdict *v);

/**
 * Survivors without an exclusion.
 *
 * # Safety
 * `v` must be NULL or a live handle.
 */
size_t fc_verdict_unresolved_count(const struct FcVerdict *v);

/**
 * # Safety
 * `v` must be NULL or a handle from [`fc_nonfano_new`] not yet freed.
 */
void fc_verdict_free(struct FcVerdict *v);

/**
 * Runs every check against the embedded golden data and writes the number
 * of passing and failing checks.
 *
 * # Safety
 * `passed` and `failed` must be valid for writes.
 */
enum FcStatus fc_verify(int64_t bounds_scale, uint32_t *passed, uint32_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FANOCHECK_H */
