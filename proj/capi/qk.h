/* Stable C surface over the enriched-category engine.
 *
 * Usage: create an engine, optionally set budget options, load one
 * instance file, then run commands against the loaded blocks. Every
 * command returns a heap-allocated result carrying a status plus three
 * strings: a human-readable report (with a machine-readable JSON block
 * fenced by ---report--- lines at the end), an optional emitted instance
 * file, and an optional DOT graph. Results and engines must be released
 * with their free functions. All strings returned by accessors stay owned
 * by the library and remain valid until the owning handle is freed.
 */
#ifndef QK_H
#define QK_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status contract: 0..3 mirror the process exit codes (success, property
 * found false, malformed input, enumeration cap exceeded). 4 and 5 signal
 * misuse of the API and internal defects; callers mapping to exit codes
 * should clamp them to 4. */
typedef enum qk_status {
    QK_OK = 0,
    QK_PROPERTY_FALSE = 1,
    QK_INPUT_ERROR = 2,
    QK_TOO_LARGE = 3,
    QK_BAD_HANDLE = 4,
    QK_INTERNAL_ERROR = 5
} qk_status;

typedef struct qk_engine qk_engine;
typedef struct qk_result qk_result;

/* Library semantic version, e.g. "0.1.0". */
const char* qk_version(void);

qk_engine* qk_engine_new(void);
void qk_engine_free(qk_engine* e);

/* Budget options, applied to later loads and commands.
 * Keys: "max_presheaves" (cap on enumeration products, > 0),
 *       "probe_bound"    (initial-source probe size, >= 0),
 *       "seed"           (deterministic RNG seed),
 *       "max_free_hom"   (largest base hom-set a powerset construction
 *                         accepts, > 0).
 * Unknown keys and out-of-range values return QK_INPUT_ERROR. */
qk_status qk_engine_set_option(qk_engine* e, const char* key, long long value);

/* Parse and validate an instance. The engine keeps the parsed blocks only
 * when the text is fully valid (QK_OK); on QK_PROPERTY_FALSE or
 * QK_INPUT_ERROR the previous load, if any, is kept and qk_last_error
 * carries the findings. */
qk_status qk_engine_load_string(qk_engine* e, const char* text);
qk_status qk_engine_load_file(qk_engine* e, const char* path);

/* Findings of the most recent failing call; empty string when none. */
const char* qk_last_error(const qk_engine* e);

/* Validate text without touching the engine's loaded instance. */
qk_result* qk_cmd_validate(qk_engine* e, const char* text);

/* The remaining commands run against the loaded instance and name blocks
 * in it. `which` is "total", "topological", or "all"; `mode` is
 * "macneille", "reconstruct", or "isbell". */
qk_result* qk_cmd_check(qk_engine* e, const char* target, const char* which);
qk_result* qk_cmd_complete(qk_engine* e, const char* target, const char* mode, int with_dot);
qk_result* qk_cmd_final_lift(qk_engine* e, const char* sink);
qk_result* qk_cmd_extend(qk_engine* e, const char* functor, const char* along);
qk_result* qk_cmd_export_dot(qk_engine* e, const char* target);

/* Null-safe accessors: a null result reads as QK_BAD_HANDLE / "". */
qk_status qk_result_status(const qk_result* r);
const char* qk_result_text(const qk_result* r);
const char* qk_result_output(const qk_result* r);
const char* qk_result_dot(const qk_result* r);
void qk_result_free(qk_result* r);

#ifdef __cplusplus
}
#endif

#endif /* QK_H */
