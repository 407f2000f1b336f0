#pragma once

#include <map>
#include <string>
#include <vector>

#include "agentminer/dfg.hpp"
#include "agentminer/event_log.hpp"

namespace am {

/// Mapping from agent instance to agent type. Type ids are "a1", "a2", ...
/// assigned in order of the first event of each type's lexicographically
/// smallest member.
struct AgentTypeAssignment {
    std::map<std::string, std::string> instance_to_type;
    std::map<std::string, std::vector<std::string>> type_members;  // sorted members per type
};

/// One DFG per distinct agent instance, built from that instance's agent log
/// under activity-only labels.
std::map<std::string, Dfg> instance_dfgs(const EventSelection& selection);

/// 1 - max(|E1 ∩ E2| / |E1|, |E1 ∩ E2| / |E2|) over directly-follows edge
/// sets. Edgeless DFGs compare by activity sets: 0 when they share an
/// activity, else 1; a single empty edge set gives 1.
double dfg_distance(const Dfg& a, const Dfg& b);

/// Agglomerative clustering with complete linkage; merging continues while
/// the closest pair's linkage distance is at most `distance_threshold`.
/// Ties break on the lexicographically smallest instance pair.
AgentTypeAssignment cluster_agents(const std::map<std::string, Dfg>& dfgs,
                                   double distance_threshold);

/// Convenience: instance DFGs, clustering, assignment.
AgentTypeAssignment identify_agent_types(const EventSelection& selection,
                                         double distance_threshold);

/// Replaces each event's agent instance with its type id. Throws when an
/// instance in the selection has no assignment.
EventSelection relabel_to_types(const EventSelection& selection,
                                const AgentTypeAssignment& assignment);

/// Audit exports: the pairwise distance matrix and the assignment as CSV.
std::string distance_matrix_csv(const std::map<std::string, Dfg>& dfgs);
std::string assignment_csv(const AgentTypeAssignment& assignment);

}  // namespace am
