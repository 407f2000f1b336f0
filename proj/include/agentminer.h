/* agentminer.h - C interface of the agentminer shared library.
 *
 * All functions return AM_OK (0) on success or a negative am_status code;
 * am_last_error() describes the most recent failure on the calling thread.
 * Objects are created behind opaque handles and released with the matching
 * *_free function. Borrowed pointers (bundle accessors, strings) stay valid
 * until their owner is freed.
 */

#ifndef AGENTMINER_H
#define AGENTMINER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum am_status {
    AM_OK = 0,
    AM_ERR_INVALID_ARGUMENT = -1,
    AM_ERR_IO = -2,
    AM_ERR_PARSE = -3,
    AM_ERR_BOUND = -4,  /* state-space or determinization budget exceeded */
    AM_ERR_FAILED = -5
} am_status;

typedef enum am_naming {
    AM_NAMING_ACTIVITY = 0,       /* label events by activity (AOL) */
    AM_NAMING_AGENT_ACTIVITY = 1, /* label events by (agent, activity) (AAL) */
    AM_NAMING_AGENT = 2           /* label events by agent */
} am_naming;

typedef struct am_log am_log;       /* an event selection */
typedef struct am_net am_net;       /* a workflow net */
typedef struct am_bundle am_bundle; /* interaction net + agent nets + MAS net */

const char* am_version(void);
/* Message of the last failure on this thread; empty string if none. */
const char* am_last_error(void);

/* ---- event logs ---- */

typedef struct am_column_mapping {
    const char* case_column;      /* NULL: "case" */
    const char* activity_column;  /* NULL: "activity" */
    const char* agent_column;     /* NULL: "agent" */
    const char* timestamp_column; /* NULL: "timestamp" */
    /* NULL: "auto" (ISO-8601, epoch-milliseconds fallback); other values:
     * "iso8601", "epoch-ms", "epoch-us". */
    const char* timestamp_format;
} am_column_mapping;

am_status am_log_read_csv(const char* path, const am_column_mapping* mapping, am_log** out);
/* resource_key NULL defaults to "org:resource". */
am_status am_log_read_xes(const char* path, const char* resource_key, am_log** out);
am_status am_log_write_csv(const am_log* log, const char* path);

typedef struct am_generator_config {
    uint64_t cases;
    uint64_t seed;
    uint32_t max_rework_rounds;
    /* Probability of entering each rework round; negative: default 0.55. */
    double rework_probability;
} am_generator_config;

am_status am_log_generate(const am_generator_config* config, am_log** out);

/* Keep the most frequent case-trace variants covering at least vff of all
 * traces. */
am_status am_log_filter_variants(const am_log* log, double vff, am_log** out);

/* Cluster agent instances by DFG distance (agglomerative, complete linkage)
 * and rewrite agent attributes to type ids. audit_dir, when non-NULL,
 * receives distance-matrix.csv and agent-types.csv. */
am_status am_log_identify_types(const am_log* log, double distance_threshold,
                                const char* audit_dir, am_log** out);

am_status am_log_event_count(const am_log* log, size_t* out);
am_status am_log_case_count(const am_log* log, size_t* out);
am_status am_log_agent_count(const am_log* log, size_t* out);

void am_log_free(am_log* log);

/* ---- discovery ---- */

typedef struct am_discovery_options {
    double ff;               /* activity frequency filter in (0, 1] */
    double th;               /* interaction-net noise threshold in [0, 1) */
    int remove_iterations;   /* nonzero: prune spurious self-iterations */
    size_t state_bound;      /* 0: default 200000 */
} am_discovery_options;

am_status am_discover(const am_log* log, const am_discovery_options* options, am_bundle** out);

/* Baseline: inductive discovery over the case traces under `naming`. */
am_status am_discover_baseline(const am_log* log, am_naming naming, double threshold,
                               am_net** out);

/* Borrowed nets, valid while the bundle lives. */
const am_net* am_bundle_interaction_net(const am_bundle* bundle);
const am_net* am_bundle_mas_net(const am_bundle* bundle);
am_status am_bundle_agent_count(const am_bundle* bundle, size_t* out);
am_status am_bundle_agent_name(const am_bundle* bundle, size_t index, const char** out);
const am_net* am_bundle_agent_net(const am_bundle* bundle, size_t index);

/* One PNML + one DOT per net plus manifest.json into `directory`. */
am_status am_bundle_export(const am_bundle* bundle, const char* directory);
/* Safeness/soundness verdicts per net as a JSON document; free with
 * am_string_free. */
am_status am_bundle_verify_json(const am_bundle* bundle, size_t state_bound, char** out);

void am_bundle_free(am_bundle* bundle);

/* ---- workflow nets ---- */

am_status am_net_read_pnml(const char* path, am_net** out);
am_status am_net_write_pnml(const am_net* net, const char* path);
am_status am_net_write_dot(const am_net* net, const char* path);
am_status am_net_size(const am_net* net, size_t* out);
/* Rewrite (agent, activity) pair labels to plain activities. */
am_status am_net_rewrite_to_activity(const am_net* net, am_net** out);
am_status am_net_is_safe(const am_net* net, size_t state_bound, int* out);
am_status am_net_is_sound(const am_net* net, size_t state_bound, int* out);

void am_net_free(am_net* net);

/* ---- quality measurement ---- */

typedef struct am_quality {
    double recall;
    double precision;
    size_t size;
    double ent_log;
    double ent_model;
    double ent_intersection;
} am_quality;

/* Entropy-based recall/precision of `net` against the case traces of `log`
 * labeled by `naming`. */
am_status am_measure(const am_net* net, const am_log* log, am_naming naming, size_t state_bound,
                     am_quality* out);

/* ---- evaluation pipeline ---- */

typedef struct am_pipeline_config {
    const char* input_path;
    const char* input_format; /* NULL or "auto", "csv", "xes" */
    const am_column_mapping* mapping; /* NULL: defaults */
    const char* xes_resource_key;     /* NULL: "org:resource" */
    const char* out_dir;
    double vff;                   /* <= 0: 1.0 */
    const double* am_ff;          /* arrays of am_pair_count entries; NULL: */
    const double* am_th;          /* the (0.1 i, 1 - 0.1 i) diagonal        */
    size_t am_pair_count;
    const double* cm_thresholds;  /* NULL: 0.0 .. 0.9 */
    size_t cm_threshold_count;
    int use_aol;                  /* nonzero: measure under activity labels */
    int use_aal;                  /* nonzero: measure under pair labels */
    size_t state_bound;           /* 0: default */
    double distance_threshold;    /* < 0: 0.5 */
    uint64_t seed;
    size_t workers;               /* 0: AM_WORKERS env var, else 1 */
    int remove_iterations;
} am_pipeline_config;

am_status am_pipeline_run(const am_pipeline_config* config);

/* Recompute Pareto fronts from an existing results.csv. */
am_status am_pareto_from_results(const char* results_csv, const char* out_dir);

void am_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* AGENTMINER_H */
