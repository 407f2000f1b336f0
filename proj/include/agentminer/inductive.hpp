#pragma once

#include <string>
#include <vector>

#include "agentminer/event_log.hpp"
#include "agentminer/petri_net.hpp"

namespace am {

/// A block-structured process model. Loop nodes have exactly two children
/// (body, redo); the other operators have at least two.
struct ProcessTree {
    enum class Kind { Activity, Silent, Sequence, Exclusive, Parallel, Loop };

    Kind kind = Kind::Silent;
    std::string label;  // Activity leaves only
    std::vector<ProcessTree> children;

    static ProcessTree activity(std::string name);
    static ProcessTree silent();
    static ProcessTree node(Kind kind, std::vector<ProcessTree> children);

    std::string to_string() const;  // canonical rendering, used in tests
    friend bool operator==(const ProcessTree&, const ProcessTree&) = default;
};

/// Inductive discovery over the log's label sequences. Tries exclusive,
/// sequence, parallel and loop cuts on the directly-follows graph of the
/// current sublog; directly-follows edges with a count below
/// noise_threshold times their source's strongest outgoing edge are ignored
/// during cut detection. Falls through to a flower loop when no cut
/// applies. Deterministic for a fixed log.
ProcessTree discover_tree(const EventLog& log, double noise_threshold = 0.0);
ProcessTree discover_tree(const std::vector<std::vector<std::string>>& sequences,
                          double noise_threshold = 0.0);

/// Compositional translation to a safe and sound workflow net.
WorkflowNet tree_to_wfnet(const ProcessTree& tree);

/// Baseline discovery: rename the log, discover a tree, translate it.
WorkflowNet discover_cm_model(const EventLog& log, NamingKind naming, double noise_threshold);

}  // namespace am
