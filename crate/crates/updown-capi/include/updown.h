/* C interface of the updown finite-algebra toolkit. */

#ifndef UPDOWN_CAPI_H
#define UPDOWN_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C call. `UD_STATUS_FAIL` is a successful run with a
 * negative verdict (an axiom fails, a non-member); `UD_STATUS_ERROR`
 * means the call itself failed and `ud_last_error` explains why.
 */
typedef enum UdStatus {
  UD_STATUS_OK = 0,
  UD_STATUS_FAIL = 1,
  UD_STATUS_ERROR = 2,
} UdStatus;

/**
 * An opaque finite algebra handle.
 */
typedef struct UdAlgebra UdAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The error text of the most recent failing call on this thread. The
 * pointer stays valid until the next failing call on the same thread;
 * never free it.
 */
const char *ud_last_error(void);

/**
 * Parses an algebra document. Returns NULL on error.
 */
struct UdAlgebra *ud_algebra_from_json(const char *text);

/**
 * Looks up a built-in example by name. Returns NULL on error.
 */
struct UdAlgebra *ud_algebra_fixture(const char *name);

/**
 * Releases an algebra handle; NULL is accepted and ignored.
 */
void ud_algebra_free(struct UdAlgebra *alg);

/**
 * Emits the algebra as its JSON document. Returns NULL on error.
 */
char *ud_algebra_to_json(const struct UdAlgebra *alg);

/**
 * Checks the standard axiom system and writes the report document to
 * `*out_report`. OK when every axiom passes, FAIL when one fails.
 */
enum UdStatus ud_check_json(const struct UdAlgebra *alg, char **out_report);

/**
 * Decides membership and writes the decision document to
 * `*out_decision`. OK for a member, FAIL for a non-member.
 */
enum UdStatus ud_decide_json(const struct UdAlgebra *alg, char **out_decision);

/**
 * Releases a string returned by this library; NULL is accepted and
 * ignored.
 */
void ud_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UPDOWN_CAPI_H */
