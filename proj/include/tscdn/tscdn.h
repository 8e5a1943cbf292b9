#ifndef TSCDN_TSCDN_H
#define TSCDN_TSCDN_H

#include <stddef.h>

#if defined(TSCDN_BUILDING_LIBRARY)
#define TSCDN_API __attribute__((visibility("default")))
#else
#define TSCDN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tscdn_status {
  TSCDN_OK = 0,
  TSCDN_E_INVALID_ARGUMENT = 1,
  TSCDN_E_IO = 2,
  TSCDN_E_INTEGRITY = 3,
  TSCDN_E_PARSE = 4,
  TSCDN_E_SCHEMA = 5,
  TSCDN_E_EMPTY_QUERY = 6,
  TSCDN_E_INVALID_INTERVAL = 7,
  TSCDN_E_EMPTY_CORPUS = 8,
  TSCDN_E_MODEL_VIOLATION = 9,
  TSCDN_E_NOT_FOUND = 10,
  TSCDN_E_INTERNAL = 11
} tscdn_status;

typedef struct tscdn_engine tscdn_engine;
typedef struct tscdn_server tscdn_server;

/* Library version, "MAJOR.MINOR.PATCH". */
TSCDN_API const char* tscdn_version(void);

/* Machine-readable name of a status, e.g. "invalid_interval". */
TSCDN_API const char* tscdn_status_name(tscdn_status status);

/* Message of the last failed call on this thread; empty after success. */
TSCDN_API const char* tscdn_last_error(void);

/* Releases any string returned through a char** out-parameter. */
TSCDN_API void tscdn_free_string(char* s);

/*
 * Offline pipeline. Options and reports are UTF-8 JSON objects; options may
 * be NULL for defaults. Reports are allocated by the library; diagnostics
 * are returned as JSON lines through `warnings` when it is not NULL.
 *
 * ingest options: channel (required), name, crawl_time, archive_id,
 *                 tz_offset, cdn_prefix, digest ("md5"|"sha256")
 * index options:  coalesce, tau, suffix_stemmer, config_dir
 */
TSCDN_API tscdn_status tscdn_ingest(const char* export_dir, const char* cdn_dir, const char* options_json,
                                    char** report_json, char** warnings);
TSCDN_API tscdn_status tscdn_merge(const char* master_dir, const char* const* other_dirs, size_t count,
                                   char** report_json, char** warnings);
TSCDN_API tscdn_status tscdn_build_index(const char* cdn_dir, const char* options_json, char** report_json,
                                         char** warnings);
TSCDN_API tscdn_status tscdn_export_json(const char* cdn_dir, const char* out_dir, char** report_json,
                                         char** warnings);
TSCDN_API tscdn_status tscdn_stats(const char* cdn_dir, char** stats_json);
/* Sets *ok to 1 when every object and index checks out. */
TSCDN_API tscdn_status tscdn_verify(const char* cdn_dir, char** report_json, int* ok);

/*
 * Read side. An engine is an immutable snapshot of one CDN and may be used
 * from several threads at once.
 *
 * engine options: now ("horizon"|"wall_clock"), tz_offset, suffix_stemmer,
 *                 config_dir
 */
TSCDN_API tscdn_status tscdn_engine_open(const char* cdn_dir, const char* options_json, tscdn_engine** out);
TSCDN_API void tscdn_engine_close(tscdn_engine* engine);

/*
 * Query: {"q", "from", "to", "channels":[...], "all_terms", "coalesced",
 * "limit", "offset", "mode"}. The result array is byte-identical to the
 * body of GET /api/search for the same parameters.
 */
TSCDN_API tscdn_status tscdn_engine_query(const tscdn_engine* engine, const char* query_json, char** results_json);

/*
 * Runs one API request in-process, e.g. "/api/trends?q=flood&granularity=week".
 * Returns TSCDN_OK whenever a response was produced; *http_status and the
 * body carry request-level errors.
 */
TSCDN_API tscdn_status tscdn_engine_get(const tscdn_engine* engine, const char* target, int* http_status,
                                        char** body);

/* HTTP service. port 0 picks a free port, reported through *bound_port. */
TSCDN_API tscdn_status tscdn_server_start(const tscdn_engine* engine, const char* host, int port, const char* ui_dir,
                                          tscdn_server** out, int* bound_port);
TSCDN_API void tscdn_server_stop(tscdn_server* server);

/* Opens the CDN and serves until the process is terminated. */
TSCDN_API tscdn_status tscdn_serve(const char* cdn_dir, const char* host, int port, const char* ui_dir,
                                   const char* options_json);

#ifdef __cplusplus
}
#endif

#endif
