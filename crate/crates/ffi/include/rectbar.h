#ifndef RECTBAR_H
#define RECTBAR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The first four match the exit codes of the command-line tool.
typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_INVARIANT_VIOLATION = 1,
  RB_STATUS_PARSE_ERROR = 2,
  RB_STATUS_VERIFICATION_FAILED = 3,
  RB_STATUS_NULL_POINTER = 4,
  RB_STATUS_INVALID_ARGUMENT = 5,
  RB_STATUS_PANIC = 6,
} RbStatus;

typedef enum RbFixture {
  RB_FIXTURE_TORUS = 0,
  RB_FIXTURE_HEART_CIRCLE = 1,
  RB_FIXTURE_H_SPHERE = 2,
} RbFixture;

typedef enum RbRectType {
  RB_RECT_TYPE_S = 0,
  RB_RECT_TYPE_B = 1,
  RB_RECT_TYPE_N = 2,
} RbRectType;

typedef struct RbBarcode RbBarcode;

typedef struct RbComplex RbComplex;

// One rectangle; infinite lengths are `INFINITY`.
typedef struct RbRectangle {
  int32_t degree;
  double c;
  double ell1;
  double ell2;
  enum RbRectType rtype;
} RbRectangle;

typedef struct RbInvariants {
  double boundary_depth;
  double non_cycle_depth;
  double spectral_spread;
} RbInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON complex document of `len` bytes. The complex is not validated.
//
// # Safety
// `data` must point to `len` readable bytes and `out` must be writable.
enum RbStatus rb_complex_from_json(const uint8_t *data, size_t len, struct RbComplex **out);

// One of the built-in example complexes.
struct RbComplex *rb_complex_fixture(enum RbFixture which);

// # Safety
// `c` must be null or a handle from this library that has not been freed.
void rb_complex_free(struct RbComplex *c);

// `RB_STATUS_OK` if the complex satisfies the chain-complex axioms.
//
// # Safety
// `c` must be a live complex handle.
enum RbStatus rb_complex_validate(const struct RbComplex *c);

// Canonical JSON serialization of a complex.
//
// # Safety
// `c` must be a live complex handle and `out` writable.
enum RbStatus rb_complex_to_json(const struct RbComplex *c, char **out);

// Computes and verifies the rectangle barcode of a complex.
//
// # Safety
// `c` must be a live complex handle and `out` writable.
enum RbStatus rb_rectangle_barcode(const struct RbComplex *c, struct RbBarcode **out);

// Number of rectangles; 0 for a null handle.
//
// # Safety
// `b` must be null or a live barcode handle.
size_t rb_barcode_len(const struct RbBarcode *b);

// # Safety
// `b` must be a live barcode handle and `out` writable.
enum RbStatus rb_barcode_get(const struct RbBarcode *b, size_t index, struct RbRectangle *out);

// Name of the generator witnessing rectangle `index`.
//
// # Safety
// `b` must be a live barcode handle and `out` writable.
enum RbStatus rb_barcode_generator_name(const struct RbBarcode *b, size_t index, char **out);

// The barcode as a JSON document.
//
// # Safety
// `b` must be a live barcode handle and `out` writable.
enum RbStatus rb_barcode_to_json(const struct RbBarcode *b, char **out);

// The barcode in the line format `deg k: R(c; ell1, ell2) [T] name`.
//
// # Safety
// `b` must be a live barcode handle and `out` writable.
enum RbStatus rb_barcode_to_text(const struct RbBarcode *b, char **out);

// Bottleneck distance between two barcodes; `INFINITY` when no matching exists.
//
// # Safety
// Both handles must be live and `out` writable.
enum RbStatus rb_bottleneck_distance(const struct RbBarcode *b1,
                                     const struct RbBarcode *b2,
                                     double *out);

// # Safety
// `b` must be a live barcode handle and `out` writable.
enum RbStatus rb_invariants(const struct RbBarcode *b, struct RbInvariants *out);

// # Safety
// `b` must be null or a handle from this library that has not been freed.
void rb_barcode_free(struct RbBarcode *b);

// # Safety
// `s` must be null or a string returned by this library that has not been freed.
void rb_string_free(char *s);

// Message for the last failure on this thread, or null. Valid until the next failing call.
const char *rb_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECTBAR_H */
