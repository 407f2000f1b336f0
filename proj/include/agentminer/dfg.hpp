#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "agentminer/event_log.hpp"
#include "agentminer/petri_net.hpp"

namespace am {

/// Directly-follows graph: per-label occurrence counts, directly-follows
/// edge counts, and trace-initial/-final counts.
struct Dfg {
    std::map<std::string, std::uint64_t> activities;
    std::map<std::pair<std::string, std::string>, std::uint64_t> edges;
    std::map<std::string, std::uint64_t> starts;
    std::map<std::string, std::uint64_t> ends;

    bool empty() const { return activities.empty(); }
    std::set<std::pair<std::string, std::string>> edge_set() const;
};

/// Builds the DFG of a log under its naming function.
Dfg build_dfg(const EventLog& log);
Dfg build_dfg(const std::vector<std::vector<std::string>>& sequences);

/// Activity frequency filter: keeps the most frequent activities until at
/// least `ff` of all activity occurrences are covered (ties broken
/// lexicographically), drops everything touching a removed activity, then
/// promotes activities left without incoming (outgoing) edges to starts
/// (ends).
Dfg filter_dfg(const Dfg& dfg, double ff);

struct DfgTranslation {
    WorkflowNet net;
    std::vector<std::string> dropped_activities;  // unreachable from starts or ends
};

/// Translates a DFG to a workflow net whose observable runs are exactly the
/// start-to-end walks of the DFG. Activities not on any such walk are
/// dropped and reported. Throws on an empty DFG or when no start or end
/// remains.
DfgTranslation dfg_to_wfnet(const Dfg& dfg);

/// Graphviz rendering with edge-count annotations.
std::string dfg_to_dot(const Dfg& dfg, const std::string& graph_name = "dfg");

}  // namespace am
