#ifndef BUGFIX_H
#define BUGFIX_H

/*
 * C interface to the bugfix engine.
 *
 * A context owns loaded specification units and, once sealed, the
 * registry built from them.  Trees are opaque handles tied to no
 * particular context but interpreted against one.  Every function
 * returning bugfix_status reports failure details through
 * bugfix_last_error on the context it was given; the message stays
 * valid until the next call using that context.
 *
 * Strings returned through char** out-parameters are heap-allocated
 * and must be released with bugfix_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BUGFIX_API __declspec(dllexport)
#else
#define BUGFIX_API __attribute__((visibility("default")))
#endif

typedef enum bugfix_status {
    BUGFIX_OK = 0,
    BUGFIX_ERR_SYNTAX = 1,         /* DSL, MiniLang, or JSON input rejected */
    BUGFIX_ERR_VALIDATION = 2,     /* registry or tree invariant violated */
    BUGFIX_ERR_NOT_FOUND = 3,      /* unknown pattern, language, or file entry */
    BUGFIX_ERR_APPLY = 4,          /* fix application failed */
    BUGFIX_ERR_NOT_INVERTIBLE = 5, /* pattern reversal rejected */
    BUGFIX_ERR_IO = 6,             /* file could not be read or written */
    BUGFIX_ERR_USAGE = 7,          /* API misuse, e.g. context not sealed */
    BUGFIX_ERR_INTERNAL = 8        /* unexpected failure */
} bugfix_status;

typedef struct bugfix_context bugfix_context;
typedef struct bugfix_tree bugfix_tree;

/* Library version, e.g. "1.0.0". */
BUGFIX_API const char* bugfix_version(void);

/* ------------------------------------------------------------------ */
/* Context lifecycle                                                   */
/* ------------------------------------------------------------------ */

/* Fresh context with no specification units; NULL only on allocation
 * failure. */
BUGFIX_API bugfix_context* bugfix_context_new(void);

BUGFIX_API void bugfix_context_free(bugfix_context* context);

/* Message for the most recent failure on this context, or "" when the
 * last call succeeded.  Owned by the context. */
BUGFIX_API const char* bugfix_last_error(const bugfix_context* context);

/* Parses one specification unit and queues it for sealing.  `name`
 * labels diagnostics, typically the file name. */
BUGFIX_API bugfix_status bugfix_context_add_spec(bugfix_context* context, const char* name,
                                                 const char* text);

/* Queues the pattern catalog compiled into the library. */
BUGFIX_API bugfix_status bugfix_context_add_bundled(bugfix_context* context);

/* Merges the queued units into a registry.  Name clashes across units
 * fail with BUGFIX_ERR_VALIDATION.  Must be called exactly once before
 * any operation below. */
BUGFIX_API bugfix_status bugfix_context_seal(bugfix_context* context);

/* Newline-separated validation diagnostics for the sealed registry,
 * "" when it is clean. */
BUGFIX_API bugfix_status bugfix_context_diagnostics(bugfix_context* context, char** out);

/* Newline-separated pattern names in definition order.  Seed-only
 * patterns are included when `include_seed_only` is nonzero. */
BUGFIX_API bugfix_status bugfix_pattern_names(bugfix_context* context, int include_seed_only,
                                              char** out);

/* Canonical form of everything the context holds, as DSL text. */
BUGFIX_API bugfix_status bugfix_canonical_spec(bugfix_context* context, char** out);

/* ------------------------------------------------------------------ */
/* Trees                                                               */
/* ------------------------------------------------------------------ */

/* Parses MiniLang source. */
BUGFIX_API bugfix_status bugfix_parse_program(bugfix_context* context, const char* source,
                                              bugfix_tree** out);

/* Decodes a JSON tree document. */
BUGFIX_API bugfix_status bugfix_decode_tree(bugfix_context* context, const char* json_text,
                                            bugfix_tree** out);

BUGFIX_API void bugfix_tree_free(bugfix_tree* tree);

/* Canonical JSON encoding of the tree. */
BUGFIX_API bugfix_status bugfix_encode_tree(bugfix_context* context, const bugfix_tree* tree,
                                            char** out);

/* Concrete syntax of the tree in the named language. */
BUGFIX_API bugfix_status bugfix_render_tree(bugfix_context* context, const bugfix_tree* tree,
                                            const char* language, char** out);

/* ------------------------------------------------------------------ */
/* Patterns                                                            */
/* ------------------------------------------------------------------ */

/* All matches of the named pattern, as a JSON array in match order.
 * Each element carries the subject and one entry per metavariable:
 * {"subject": {"name", "construct", "id", "span"?},
 *  "bindings": [{"name", "construct", "id", "span"?} ...]}. */
BUGFIX_API bugfix_status bugfix_match(bugfix_context* context, const bugfix_tree* tree,
                                      const char* pattern, char** out);

/* Applies the named pattern's fix at its `match_index`-th match (the
 * order bugfix_match reports). */
BUGFIX_API bugfix_status bugfix_apply(bugfix_context* context, const bugfix_tree* tree,
                                      const char* pattern, size_t match_index, bugfix_tree** out);

/* Reverses the named pattern and returns its canonical DSL text. */
BUGFIX_API bugfix_status bugfix_reverse_pattern(bugfix_context* context, const char* pattern,
                                                char** out);

/* ------------------------------------------------------------------ */
/* Seeding, restoration, scanning                                      */
/* ------------------------------------------------------------------ */

/* Seeds bugs across a corpus.  `request_json` is an object
 * {"files": [{"path", "source"} ...], "count": integer,
 *  "rng_seed": integer, "pattern"?: string, "language"?: string};
 * files whose path ends in .json are decoded, others parsed as
 * MiniLang.  The response is {"truth": <ground-truth document>,
 * "files": [{"path", "source", "changed"} ...]} with sources rendered
 * in the requested language (default "mini"), or re-encoded as JSON
 * for .json paths. */
BUGFIX_API bugfix_status bugfix_seed(bugfix_context* context, const char* request_json,
                                     char** response_json_out);

/* Undoes the mutations a ground-truth document records for `path`.
 * `source` is the seeded file's current content; the restored content
 * is returned in the same form the seeder produced. */
BUGFIX_API bugfix_status bugfix_restore_file(bugfix_context* context, const char* truth_json,
                                             const char* path, const char* source,
                                             const char* language, char** out);

/* Scans files on disk with every non-seed pattern and aggregates the
 * counts.  Unreadable or malformed files are reported inside the
 * report, not as a failure.  `as_json` selects the canonical JSON form
 * over the text table. */
BUGFIX_API bugfix_status bugfix_scan(bugfix_context* context, const char* const* paths,
                                     size_t path_count, int as_json, char** out);

/* Releases a string returned through any char** out-parameter. */
BUGFIX_API void bugfix_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
