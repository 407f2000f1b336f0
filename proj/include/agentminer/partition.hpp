#pragma once

#include <string>
#include <vector>

#include "agentminer/event_log.hpp"

namespace am {

/// Maximal runs of consecutive same-agent events within each case, ordered
/// by (timestamp, id). The returned traces partition the selection and are
/// ordered by their first event.
std::vector<Trace> agent_trace_set(const EventSelection& selection);

/// Log over the first events of all agent traces: its traces are the case
/// traces of that sub-selection and events are named by their agent.
EventLog interaction_log(const EventSelection& selection);

/// Log of one agent: its events, its agent traces, and (agent, activity)
/// naming. Throws when the agent does not occur in the selection.
EventLog agent_log(const EventSelection& selection, const std::string& agent);

}  // namespace am
