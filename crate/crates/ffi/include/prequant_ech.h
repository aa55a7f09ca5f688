#ifndef PREQUANT_ECH_H
#define PREQUANT_ECH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EchStatus {
  ECH_STATUS_OK = 0,
  ECH_STATUS_NULL_POINTER = 1,
  ECH_STATUS_INVALID_ARGUMENT = 2,
  ECH_STATUS_OVERFLOW = 3,
  ECH_STATUS_PRECONDITION = 4,
  ECH_STATUS_PARSE = 5,
  ECH_STATUS_OUT_OF_RANGE = 6,
  ECH_STATUS_INTERNAL = 7,
  ECH_STATUS_PANIC = 8,
} EchStatus;

typedef struct EchBundle EchBundle;

typedef struct EchGeneratorList EchGeneratorList;

typedef struct EchOrbitSet EchOrbitSet;

/**
 * Generator summary. The action is `(action_leading, correction)` with the
 * correction given as a reduced fraction `num/den`, when it fits in i64.
 */
typedef struct EchGeneratorInfo {
  uint64_t d;
  int64_t grading;
  uint64_t m_plus;
  uint64_t m_minus;
  uint64_t hyperbolic_total;
  uint64_t action_leading;
  int64_t action_correction_num;
  int64_t action_correction_den;
} EchGeneratorInfo;

/**
 * `(d, m+, m1, m2, m-)` solving the torus system.
 */
typedef struct EchWitness {
  uint64_t d;
  uint64_t m_plus;
  uint64_t m_1;
  uint64_t m_2;
  uint64_t m_minus;
} EchWitness;

typedef struct EchCapacityResult {
  uint64_t lower;
  uint64_t upper;
  bool exact;
  struct EchWitness witness_lower;
  struct EchWitness witness_upper;
} EchCapacityResult;

typedef struct EchGromovReport {
  uint32_t genus;
  int64_t euler;
  uint64_t paper_bound;
  bool has_capacity_c1;
  /**
   * Zero when `has_capacity_c1` is false.
   */
  uint64_t capacity_c1;
  uint64_t best_bound;
  bool genus_in_scope;
} EchGromovReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *ech_last_error_message(void);

enum EchStatus ech_bundle_new(uint32_t genus, int64_t euler, struct EchBundle **out);

void ech_bundle_free(struct EchBundle *bundle);

/**
 * Builds `e+^m_plus h_1^m_hyp[0] ... e-^m_minus`. `m_hyp` may be NULL when
 * `n_hyp` is 0.
 */
enum EchStatus ech_orbit_set_new(uint64_t m_plus,
                                 const uint64_t *m_hyp,
                                 size_t n_hyp,
                                 uint64_t m_minus,
                                 struct EchOrbitSet **out);

/**
 * Parses text such as `"e+^2 h1 e-^3"` for a base of the given genus.
 */
enum EchStatus ech_orbit_set_parse(const char *text, uint32_t genus, struct EchOrbitSet **out);

void ech_orbit_set_free(struct EchOrbitSet *set);

enum EchStatus ech_orbit_set_total(const struct EchOrbitSet *set, uint64_t *out);

/**
 * Writes the text form plus a trailing NUL into `buf`. `required` receives
 * the buffer size needed, NUL included; a short buffer gives `OutOfRange`.
 */
enum EchStatus ech_orbit_set_to_string(const struct EchOrbitSet *set,
                                       char *buf,
                                       size_t len,
                                       size_t *required);

enum EchStatus ech_index(const struct EchBundle *bundle,
                         const struct EchOrbitSet *alpha,
                         int64_t d,
                         int64_t *out);

enum EchStatus ech_relative_index(const struct EchBundle *bundle,
                                  const struct EchOrbitSet *alpha,
                                  const struct EchOrbitSet *beta,
                                  int64_t *out);

enum EchStatus ech_grading(const struct EchBundle *bundle,
                           const struct EchOrbitSet *alpha,
                           int64_t *out);

/**
 * Null-class generators of the given (even, nonnegative) grading, sorted by
 * action.
 */
enum EchStatus ech_generators_by_grading(const struct EchBundle *bundle,
                                         int64_t grading,
                                         struct EchGeneratorList **out);

enum EchStatus ech_generator_list_len(const struct EchGeneratorList *list, size_t *out);

enum EchStatus ech_generator_list_get(const struct EchGeneratorList *list,
                                      size_t i,
                                      struct EchGeneratorInfo *info,
                                      struct EchOrbitSet **orbit_set);

void ech_generator_list_free(struct EchGeneratorList *list);

enum EchStatus ech_capacity_sphere(uint64_t abs_e, uint64_t k, uint64_t *out);

enum EchStatus ech_capacity_sphere_via_u(uint64_t abs_e, uint64_t k, uint64_t *out);

/**
 * One U step on the sphere. `*is_empty` is set when the image is the empty
 * set, in which case the pair outputs are zero.
 */
enum EchStatus ech_sphere_u_step(uint64_t abs_e,
                                 uint64_t m_minus,
                                 uint64_t m_plus,
                                 uint64_t *out_m_minus,
                                 uint64_t *out_m_plus,
                                 bool *is_empty);

enum EchStatus ech_capacity_torus_bounds(uint64_t abs_e, uint64_t k, struct EchCapacityResult *out);

/**
 * Exact torus capacity for `|e| = 1`; `Precondition` when `k` is triangular.
 */
enum EchStatus ech_capacity_torus_closed_form(uint64_t k, uint64_t *out);

enum EchStatus ech_gromov_report(const struct EchBundle *bundle, struct EchGromovReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREQUANT_ECH_H */
