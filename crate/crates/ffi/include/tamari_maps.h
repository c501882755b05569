#ifndef TAMARI_MAPS_H
#define TAMARI_MAPS_H

/* C interface to the tamari-maps library.
 *
 * Conventions shared by all calls:
 *   - every string argument is NUL-terminated UTF-8;
 *   - on return, *out (when out is non-null) holds a heap-allocated
 *     NUL-terminated string: the result on success, the error message
 *     otherwise. Release it with tm_free;
 *   - status codes match the CLI exit codes: 0 ok, 1 verification
 *     failure, 2 size cap exceeded, 3 parse error, 4 domain error.
 *     -1 reports an internal fault.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Exact size of a family (decimal string). Families: G R S I Q Sep B W
 * mobiles ternary formulaN formulaNij formulaM. params is space
 * separated, e.g. "1 1". max < 0 keeps the family's default cap. */
int32_t tm_count(const char *family, const char *params, int64_t max,
                 char **out);

/* Every member of an enumerable family, blank-line separated, in
 * canonical serialization. */
int32_t tm_enumerate(const char *family, const char *params, int64_t max,
                     char **out);

/* Image of a serialized object under a transfer map. Maps: phi phiprime
 * phiprime_inv chi chi_inv xi xi_inv sigma sigma_inv iota iota_inv
 * lambda lambdatilde tau_triple tau_tandem tau_sepdec bb mobile ternary
 * ternary_inv. */
int32_t tm_map(const char *bijection, const char *input, char **out);

/* Runs a verification suite up to a size cap (max < 0 for the default)
 * and writes the report. Suites: theorem1 theorem2 corollary1
 * proposition1 lemmas kmsw-link counts series. Returns 0 on pass, 1 on
 * failure. */
int32_t tm_verify(const char *suite, int64_t max, char **out);

/* A power series (name R, G, F, or B) truncated at the given total
 * degree (negative selects 6), one "x^a y^b z^c: coeff" line per
 * monomial. */
int32_t tm_series(const char *name, int64_t degree, char **out);

/* DOT text for a serialized object; the object type is sniffed. */
int32_t tm_render(const char *input, char **out);

/* Releases a string obtained from any call above. Null is ignored. */
void tm_free(char *ptr);

#ifdef __cplusplus
}
#endif

#endif /* TAMARI_MAPS_H */
