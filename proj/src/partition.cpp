#include "agentminer/partition.hpp"

#include <algorithm>
#include <map>

namespace am {

std::vector<Trace> agent_trace_set(const EventSelection& selection) {
    // Equivalent to the pairwise same-agent/same-case/uninterrupted relation:
    // sort each case and cut wherever the agent changes.
    std::map<std::string, Trace> by_case;
    for (const Event& e : selection.events()) by_case[e.case_id].push_back(e);

    std::vector<Trace> traces;
    for (auto& [case_id, case_events] : by_case) {
        Trace current;
        for (Event& e : case_events) {
            if (!current.empty() && current.back().agent != e.agent) {
                traces.push_back(std::move(current));
                current.clear();
            }
            current.push_back(std::move(e));
        }
        if (!current.empty()) traces.push_back(std::move(current));
    }
    std::sort(traces.begin(), traces.end(),
              [](const Trace& a, const Trace& b) { return event_before(a.front(), b.front()); });
    return traces;
}

EventLog interaction_log(const EventSelection& selection) {
    std::vector<Event> firsts;
    for (const Trace& trace : agent_trace_set(selection)) firsts.push_back(trace.front());
    EventSelection handover_events{std::move(firsts)};
    EventLog log;
    log.traces = case_trace_set(handover_events);
    log.selection = std::move(handover_events);
    log.naming = NamingKind::AgentOnly;
    return log;
}

EventLog agent_log(const EventSelection& selection, const std::string& agent) {
    std::vector<Event> own;
    for (const Event& e : selection.events())
        if (e.agent == agent) own.push_back(e);
    if (own.empty()) throw std::runtime_error("unknown agent: " + agent);

    EventLog log;
    for (Trace& trace : agent_trace_set(selection))
        if (trace.front().agent == agent) log.traces.push_back(std::move(trace));
    log.selection = EventSelection(std::move(own));
    log.naming = NamingKind::AgentActivity;
    return log;
}

}  // namespace am
