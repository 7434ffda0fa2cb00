/* flowlab C API: opaque handles + status codes over the C++ core.
 *
 * All functions return FLOWLAB_OK on success. On failure the status code
 * classifies the error and flowlab_last_error() carries a human-readable
 * message for the calling thread. Handles must be released with
 * flowlab_flow_free.
 */
#ifndef FLOWLAB_H
#define FLOWLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum flowlab_status {
    FLOWLAB_OK = 0,
    FLOWLAB_ERR_INVALID_ARGUMENT = 1,
    FLOWLAB_ERR_PARSE = 2,            /* manifest parse or validation failure */
    FLOWLAB_ERR_OUTSIDE_VALIDITY = 3, /* time outside the family's predicate */
    FLOWLAB_ERR_IO = 4,               /* file open/write/rename failure */
    FLOWLAB_ERR_CHECKS_FAILED = 5,    /* verification suite had failing checks */
    FLOWLAB_ERR_NUMERIC = 6,          /* quadrature/degeneracy/non-finite */
    FLOWLAB_ERR_UNKNOWN_PRESET = 7
} flowlab_status;

typedef struct flowlab_flow flowlab_flow;

/* Kinematic record at one (t, a, b):
 * out[0..9] = x, y, u, v, J, omega, K, K_resid, a, b */
#define FLOWLAB_SAMPLE_LEN 10

unsigned flowlab_abi_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* flowlab_last_error(void);
const char* flowlab_status_name(flowlab_status status);

/* Build a flow from a flow-manifest JSON text ({"preset": ...} or
 * {"family": ...}). */
flowlab_status flowlab_flow_from_manifest(const char* json_text, flowlab_flow** out);
flowlab_status flowlab_flow_from_preset(const char* name, flowlab_flow** out);
void flowlab_flow_free(flowlab_flow* flow);

flowlab_status flowlab_flow_sample(const flowlab_flow* flow, double t, double a, double b,
                                   double out_sample[FLOWLAB_SAMPLE_LEN]);

/* Execute the simulate outputs of a run-manifest file (CSV contracts as
 * documented in the README). */
flowlab_status flowlab_simulate_file(const char* manifest_path);

/* Run the verification suite of a run-manifest file. *out_pass is 1 when the
 * aggregate verdict passes. Returns FLOWLAB_ERR_CHECKS_FAILED (with the
 * report still written) when it does not. */
flowlab_status flowlab_verify_file(const char* manifest_path, int* out_pass);

/* Preset catalog as a JSON array of {name, family, paper_example,
 * description}. Writes up to cap bytes (including the NUL terminator) and
 * stores the full length in *needed. */
flowlab_status flowlab_presets_json(char* buf, size_t cap, size_t* needed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FLOWLAB_H */
