#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "agentminer/event_log.hpp"

namespace am {

/// How event attributes map onto CSV columns. timestamp_format is one of
/// "auto" (ISO-8601, falling back to an epoch-milliseconds integer),
/// "iso8601", "epoch-ms" or "epoch-us".
struct ColumnMapping {
    std::string case_column = "case";
    std::string activity_column = "activity";
    std::string agent_column = "agent";
    std::string timestamp_column = "timestamp";
    std::string timestamp_format = "auto";
};

/// Parses an ISO-8601 timestamp ("2023-03-30T16:34:00", optional fractional
/// seconds and offset) or, depending on the format, an epoch integer.
/// Returns microseconds since the epoch.
std::int64_t parse_timestamp(const std::string& text, const std::string& format = "auto");

/// Renders microseconds since the epoch as UTC ISO-8601 with a 6-digit
/// fractional part, e.g. "2023-03-30T16:34:00.000000Z".
std::string format_timestamp(std::int64_t timestamp_us);

/// RFC-4180 CSV with a mandatory header row. Event ids are assigned in row
/// order. Unmapped columns are kept in Event::extras.
EventSelection parse_csv(const std::string& path, const ColumnMapping& mapping = {});
EventSelection parse_csv_text(const std::string& text, const ColumnMapping& mapping = {});

/// Raw RFC-4180 rows (header included), for tabular files that are not
/// event logs.
std::vector<std::vector<std::string>> read_csv_table(const std::string& path);

/// Writes the selection with header case,activity,agent,timestamp followed
/// by one row per event in (timestamp, id) order.
void write_csv(const EventSelection& selection, const std::string& path);
std::string to_csv(const EventSelection& selection);

/// Attribute keys used when reading the XES subset.
struct XesKeys {
    std::string trace_name = "concept:name";
    std::string activity = "concept:name";
    std::string resource = "org:resource";
    std::string timestamp = "time:timestamp";
};

/// Reads an XES log restricted to string and date attributes. The case comes
/// from the trace-level name, the agent from the resource key.
EventSelection parse_xes(const std::string& path, const XesKeys& keys = {});
EventSelection parse_xes_text(const std::string& text, const XesKeys& keys = {});

/// Keeps the most frequent case-trace variants (activity-label sequences)
/// until at least `vff` of all case traces are covered, then returns the
/// events of the kept traces. Variants of equal frequency are ordered
/// lexicographically.
EventSelection variant_frequency_filter(const EventSelection& selection, double vff);

/// Configuration of the seeded example log of a staged check/treat/recheck
/// process over doctors d1..d5. prescription_probabilities holds, per
/// activity, the chance of including that test or therapy in a round; the
/// "prescribe" entry is the chance of entering each rework round.
struct GeneratorConfig {
    std::uint64_t cases = 1024;
    std::uint64_t seed = 7;
    std::uint32_t max_rework_rounds = 3;
    std::map<std::string, double> prescription_probabilities;  // empty = defaults

    static GeneratorConfig with_defaults(std::uint64_t cases, std::uint64_t seed,
                                         std::uint32_t max_rework_rounds = 3);
};

/// Deterministic for a fixed config; each case draws from its own PRNG
/// stream keyed by (seed, case index).
EventSelection generate_health_log(const GeneratorConfig& config);

}  // namespace am
