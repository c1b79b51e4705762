#ifndef BCHFORMS_H
#define BCHFORMS_H

/* Generated with cbindgen:0.27.0 */

/* Generated from the Rust sources by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BchStatus {
  BCH_STATUS_OK = 0,
  // The call ran, but a closed form and its oracle disagreed.
  BCH_STATUS_MISMATCH = 1,
  BCH_STATUS_NULL_POINTER = 2,
  BCH_STATUS_INVALID_ARGUMENT = 3,
  BCH_STATUS_OUT_OF_RANGE = 4,
  BCH_STATUS_UNSUPPORTED = 5,
  BCH_STATUS_BUDGET_EXCEEDED = 6,
  BCH_STATUS_ARITHMETIC = 7,
  BCH_STATUS_PANIC = 8,
} BchStatus;

// Opaque weight enumerator handle.
typedef struct BchEnumerator BchEnumerator;

// Opaque GF(q^m) handle.
typedef struct BchField BchField;

// Work ceilings; pass NULL wherever one is accepted to use the defaults.
typedef struct BchBudget {
  uint64_t max_codewords;
  uint64_t max_field_size;
} BchBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The default budget.
struct BchBudget bch_budget_default(void);

// Message for the last failed call on this thread; empty after success.
// The pointer stays valid until the next call on the same thread.
const char *bch_last_error(void);

// Releases a string returned by this library. NULL is ignored.
void bch_string_free(char *s);

// Builds GF(q^m) with its default moduli.
enum BchStatus bch_field_new(uint64_t q, uint32_t m, struct BchField **out);

void bch_field_free(struct BchField *field);

// Number of elements, `q^m`.
enum BchStatus bch_field_order(const struct BchField *field, uint32_t *out);

// Product of two elements given by their coordinate indices.
enum BchStatus bch_field_mul(const struct BchField *field, uint32_t a, uint32_t b, uint32_t *out);

// Absolute trace to GF(q), as an index of GF(q).
enum BchStatus bch_field_trace(const struct BchField *field, uint32_t x, uint32_t *out);

// Closed-form weight enumerator of the code with index `i` (odd q).
enum BchStatus bch_enumerator_closed(uint64_t q,
                                     uint32_t m,
                                     uint32_t i,
                                     struct BchEnumerator **out);

// Weight enumerator of the code with index `i` by exhaustive search.
enum BchStatus bch_enumerator_oracle(uint64_t q,
                                     uint32_t m,
                                     uint32_t i,
                                     const struct BchBudget *budget,
                                     struct BchEnumerator **out);

void bch_enumerator_free(struct BchEnumerator *e);

// Whether two enumerators are identical; writes 1 or 0.
enum BchStatus bch_enumerator_equal(const struct BchEnumerator *a,
                                    const struct BchEnumerator *b,
                                    int32_t *out);

// Smallest nonzero weight; writes 0 for the zero code.
enum BchStatus bch_enumerator_min_distance(const struct BchEnumerator *e, uint64_t *out);

// `{"length": n, "counts": {"w": "A_w", ...}}` with decimal-string counts.
enum BchStatus bch_enumerator_json(const struct BchEnumerator *e, char **out);

// Runs one command described as JSON, e.g.
// `{"command": "enumerator", "q": 3, "m": 3, "i": 1, "mode": "both"}`,
// and writes the same payload the command-line tool prints. Returns
// `Mismatch` (with the payload still written) when a comparison failed.
enum BchStatus bch_command_json(const char *request, const struct BchBudget *budget, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCHFORMS_H */
