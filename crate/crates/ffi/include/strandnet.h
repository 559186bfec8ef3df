#ifndef STRANDNET_H
#define STRANDNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the command-line exit status.
 */
typedef enum SnStatus {
  SN_STATUS_OK = 0,
  SN_STATUS_INPUT_ERROR = 1,
  /**
   * The network was built but enumeration stopped at a limit.
   */
  SN_STATUS_TRUNCATED = 2,
  SN_STATUS_NUMERICAL_ERROR = 3,
  SN_STATUS_NULL_POINTER = 4,
  SN_STATUS_INVALID_UTF8 = 5,
  SN_STATUS_INVALID_ARGUMENT = 6,
  SN_STATUS_PANIC = 7,
} SnStatus;

typedef enum SnFormat {
  SN_FORMAT_CRN = 0,
  SN_FORMAT_JSON = 1,
  SN_FORMAT_DOT = 2,
  SN_FORMAT_SBML = 3,
} SnFormat;

/**
 * Opaque network handle.
 */
typedef struct SnNetwork SnNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `input`, enumerates its network and, if `condense` is true,
 * condenses it. On `SN_STATUS_OK` or `SN_STATUS_TRUNCATED` a new handle is
 * stored in `*out`; otherwise `*out` is set to null.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SnStatus sn_network_build(const char *input, bool condense, struct SnNetwork **out);

/**
 * Renders the network (or its condensation, if it was built with one).
 * `rates` adds rate constants to CRN output. The string stored in `*out`
 * must be released with `sn_string_free`.
 *
 * # Safety
 * `net` must come from `sn_network_build`; `out` must be a valid pointer.
 */
enum SnStatus sn_network_render(const struct SnNetwork *net,
                                enum SnFormat format,
                                bool rates,
                                char **out);

/**
 * Number of complexes in the detailed network; 0 for a null handle.
 *
 * # Safety
 * `net` must be null or come from `sn_network_build`.
 */
size_t sn_network_complex_count(const struct SnNetwork *net);

/**
 * Number of detailed reactions; 0 for a null handle.
 *
 * # Safety
 * `net` must be null or come from `sn_network_build`.
 */
size_t sn_network_reaction_count(const struct SnNetwork *net);

/**
 * Number of condensed reactions, or 0 if the network was not condensed.
 *
 * # Safety
 * `net` must be null or come from `sn_network_build`.
 */
size_t sn_network_condensed_reaction_count(const struct SnNetwork *net);

/**
 * Whether enumeration stopped at a limit.
 *
 * # Safety
 * `net` must be null or come from `sn_network_build`.
 */
bool sn_network_truncated(const struct SnNetwork *net);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `net` must be null or come from `sn_network_build`, and must not be
 * used afterwards.
 */
void sn_network_free(struct SnNetwork *net);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library, not yet freed.
 */
void sn_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *sn_last_error(void);

/**
 * Library version as a static string.
 */
const char *sn_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRANDNET_H */
