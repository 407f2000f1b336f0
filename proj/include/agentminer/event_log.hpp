#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace am {

/// A single recorded event. The four mandatory attributes (timestamp, case,
/// activity, agent) are stored as fields; anything else goes to extras.
/// Events are immutable values once built; `id` is an ingestion counter that
/// doubles as the tie-break key for equal timestamps.
struct Event {
    std::uint64_t id = 0;
    std::int64_t timestamp_us = 0;  // microseconds since epoch
    std::string case_id;
    std::string activity;
    std::string agent;
    std::map<std::string, std::string> extras;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Strict total order used everywhere a trace is built: (timestamp, id).
inline bool event_before(const Event& a, const Event& b) {
    if (a.timestamp_us != b.timestamp_us) return a.timestamp_us < b.timestamp_us;
    return a.id < b.id;
}

/// A finite set of events, kept sorted by (timestamp, id). Ids are unique.
class EventSelection {
public:
    EventSelection() = default;
    explicit EventSelection(std::vector<Event> events);

    const std::vector<Event>& events() const { return events_; }
    bool empty() const { return events_.empty(); }
    std::size_t size() const { return events_.size(); }

    std::vector<std::string> distinct_cases() const;
    std::vector<std::string> distinct_agents() const;
    std::vector<std::string> distinct_activities() const;

private:
    std::vector<Event> events_;
};

/// A nonempty sequence of events, strictly increasing by (timestamp, id).
using Trace = std::vector<Event>;

enum class NamingKind {
    ActivityOnly,   // AOL: label = activity
    AgentActivity,  // AAL: label = (agent, activity) pair
    AgentOnly,      // label = agent
};

/// Renders the (agent, activity) pair as "agent|activity". Both "|" and "\"
/// in the inputs are escaped so the rendering round-trips.
std::string encode_pair_label(const std::string& agent, const std::string& activity);
/// Inverse of encode_pair_label. Throws on labels that are not a valid pair.
std::pair<std::string, std::string> decode_pair_label(const std::string& label);

/// Label of an event under a naming function. Throws std::runtime_error
/// naming the attribute when the required attribute is empty.
std::string name_of(const Event& event, NamingKind naming);

/// An event log: a selection, a trace set partitioning it, and the naming
/// function used to identify events in discovery.
struct EventLog {
    EventSelection selection;
    std::vector<Trace> traces;
    NamingKind naming = NamingKind::ActivityOnly;

    /// Trace rendered as a label sequence under this log's naming.
    std::vector<std::string> labels_of(const Trace& trace) const;
    /// All traces as label sequences.
    std::vector<std::vector<std::string>> label_sequences() const;
};

/// Partition of a selection into per-case traces, each sorted by
/// (timestamp, id). Traces are ordered by their first event.
std::vector<Trace> case_trace_set(const EventSelection& selection);

/// Event log over the case trace set with the given naming.
EventLog case_log(const EventSelection& selection, NamingKind naming);

}  // namespace am
