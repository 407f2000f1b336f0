#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agentminer/composer.hpp"
#include "agentminer/conformance.hpp"
#include "agentminer/log_io.hpp"

namespace am {

struct SweepConfig {
    double vff = 1.0;
    std::vector<std::pair<double, double>> am_pairs;  // empty = (0.1 i, 1 - 0.1 i), i = 1..10
    std::vector<double> cm_thresholds;                // empty = 0.0 .. 0.9 in 0.1 steps
    std::vector<NamingKind> namings = {NamingKind::ActivityOnly, NamingKind::AgentActivity};
    std::size_t state_bound = kDefaultStateBound;
    double distance_threshold = 0.5;
    std::uint64_t seed = 0;
    std::size_t workers = 0;  // 0: AM_WORKERS environment variable, else 1
    bool remove_iterations = true;

    std::vector<std::pair<double, double>> effective_am_pairs() const;
    std::vector<double> effective_cm_thresholds() const;
};

struct ResultRow {
    std::string model_id;
    std::string miner;   // "am" or "cm-im"
    std::string naming;  // "aol" or "aal"
    std::optional<double> ff;
    double th = 0.0;
    std::size_t size = 0;
    double recall = 0.0;
    double precision = 0.0;
    double ent_log = 0.0;
    double ent_model = 0.0;
    double ent_intersection = 0.0;
    bool safe = false;
    bool sound = false;
};

extern const char* const kResultsHeader;
std::string results_csv(const std::vector<ResultRow>& rows);

enum class ParetoAxes { RecallPrecision, SizePrecision, SizeRecall };

struct ParetoPoint {
    double x = 0.0;  // first axis value (recall or size)
    double y = 0.0;  // second axis value (precision or recall)
    std::string model_id;
};

struct ParetoFront {
    ParetoAxes axes = ParetoAxes::RecallPrecision;
    std::vector<ParetoPoint> points;
};

/// Nondominated subset (size minimized, recall and precision maximized),
/// deduplicated by coordinates, ordered lexicographically by coordinates.
ParetoFront pareto_front(const std::vector<ParetoPoint>& points, ParetoAxes axes);

struct PipelineInput {
    std::string path;
    std::string format = "auto";  // "csv", "xes", or by extension
    ColumnMapping mapping;
    XesKeys xes_keys;
};

struct PipelineResult {
    std::vector<ResultRow> rows;
    std::string results_path;
};

/// The full evaluation sweep: ingest, variant-filter, type agents, discover
/// AM bundles over the (ff, th) pairs and CM baselines over the thresholds,
/// measure everything, and write results.csv, per-axis Pareto CSVs, model
/// exports and manifest.json into out_dir.
PipelineResult run_pipeline(const PipelineInput& input, const SweepConfig& config,
                            const std::string& out_dir);

/// Reads a results.csv and writes one Pareto CSV per naming and axis pair
/// into out_dir; returns the written paths.
std::vector<std::string> pareto_from_results(const std::string& results_path,
                                             const std::string& out_dir);

}  // namespace am
