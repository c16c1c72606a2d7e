/* Copyright 2026 The qkdcd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C binding for the qkdcd shared library.
 *
 * Every function returns a qkdcd_status; QKDCD_OK is 0. On failure a
 * thread-local message is retrievable via qkdcd_last_error(). Strings
 * returned through char** out-parameters are NUL-terminated, allocated by
 * the library, and must be released with qkdcd_string_free().
 */

#ifndef QKDCD_QKDCD_C_H_
#define QKDCD_QKDCD_C_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qkdcd_status {
  QKDCD_OK = 0,
  QKDCD_ERR_INVALID_ARG = 1, /* null pointer, unknown name, malformed JSON */
  QKDCD_ERR_CONFIG = 2,      /* structurally valid input with bad contents */
  QKDCD_ERR_VERIFY = 3,      /* an internal invariant check failed */
  QKDCD_ERR_NOMEM = 4,
  QKDCD_ERR_VALIDATE = 5,    /* document rejected by a schema */
  QKDCD_ERR_INTERNAL = 6
} qkdcd_status;

/* Library version string, e.g. "0.1.0". Never NULL; do not free. */
const char* qkdcd_version(void);

/* Message for the last failure on this thread; empty string if none. The
 * pointer stays valid until the next qkdcd_* call on the same thread. */
const char* qkdcd_last_error(void);

/* Releases a string returned through a char** out-parameter. NULL is ok. */
void qkdcd_string_free(char* s);

/* ---- Operator construction ------------------------------------------- */

typedef struct qkdcd_operator_set qkdcd_operator_set;

/* Builds the {I, U, C, UC} family for `encoding` (one of "single_photon",
 * "dephasing", "rotation", "general4"). `recipe` selects the action on the
 * complement of the logical plane: "identity_on_complement", "cyclic_shift",
 * or NULL for the encoding's canonical choice. */
qkdcd_status qkdcd_operator_set_new(const char* encoding, const char* recipe,
                                    qkdcd_operator_set** out);

void qkdcd_operator_set_free(qkdcd_operator_set* set);

/* Hilbert-space dimension of the carrier (2, 4 or 16). */
qkdcd_status qkdcd_operator_set_dim(const qkdcd_operator_set* set, size_t* out);

/* Re-runs the eight basis-action checks; *all_pass is 1 or 0. */
qkdcd_status qkdcd_operator_set_verify(const qkdcd_operator_set* set, int* all_pass);

/* Serializes bases, operators and verification results to a JSON catalog. */
qkdcd_status qkdcd_catalog_json(const qkdcd_operator_set* set, char** out);

/* ---- Discrimination analysis ----------------------------------------- */

/* Full pairwise/unambiguous analysis of the set under priors (p1, p2). */
qkdcd_status qkdcd_discrimination_json(const qkdcd_operator_set* set, double p1,
                                       double p2, char** out);

/* Minimum-error analysis of two arbitrary unitaries given as row-major JSON
 * matrices of [re, im] pairs. Names are echoed into the report. */
qkdcd_status qkdcd_pair_json(const char* name_a, const char* name_b,
                             const char* matrix_a_json, const char* matrix_b_json,
                             double p1, double p2, char** out);

/* Minimum error probability alone, without the JSON wrapping. */
qkdcd_status qkdcd_min_error(const char* matrix_a_json, const char* matrix_b_json,
                             double p1, double p2, double* out);

/* ---- Simulation ------------------------------------------------------ */

/* Parses a run-config JSON document, runs the batch, and returns the full
 * simulation report. With reproducible nonzero the timestamp is omitted so
 * equal configs yield byte-identical reports. */
qkdcd_status qkdcd_simulate_json(const char* config_json, int reproducible,
                                 char** out);

/* Flattens a simulation report's aggregate block to a two-line CSV. */
qkdcd_status qkdcd_csv_from_report(const char* report_json, char** out);

/* Exact per-check detection probability for an attack, by enumeration.
 * attack: "intercept_resend", "dense_coding_probe" or "malicious_center";
 * variant: "honest_center" or "dishonest_center". Returns
 * QKDCD_ERR_CONFIG when enumeration is infeasible for the parameters. */
qkdcd_status qkdcd_detection_oracle(const char* attack, const char* encoding,
                                    const char* variant, int n, double* out);

/* ---- Validation ------------------------------------------------------ */

/* Checks `doc_json` against `schema_json` (the subset used by the schemas
 * shipped under schemas/). QKDCD_OK when valid; QKDCD_ERR_VALIDATE with the
 * violation in qkdcd_last_error() when not. */
qkdcd_status qkdcd_validate_json(const char* doc_json, const char* schema_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QKDCD_QKDCD_C_H_ */
