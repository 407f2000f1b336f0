#include "agentminer/event_log.hpp"

#include <algorithm>
#include <set>

namespace am {

EventSelection::EventSelection(std::vector<Event> events) : events_(std::move(events)) {
    std::sort(events_.begin(), events_.end(), event_before);
    for (std::size_t i = 1; i < events_.size(); ++i) {
        if (events_[i - 1].id == events_[i].id) {
            throw std::runtime_error("duplicate event id " + std::to_string(events_[i].id));
        }
    }
}

namespace {

std::vector<std::string> distinct_values(const std::vector<Event>& events,
                                         const std::string Event::*field) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const Event& e : events) {
        if (seen.insert(e.*field).second) out.push_back(e.*field);
    }
    return out;  // in order of first appearance
}

}  // namespace

std::vector<std::string> EventSelection::distinct_cases() const {
    return distinct_values(events_, &Event::case_id);
}

std::vector<std::string> EventSelection::distinct_agents() const {
    return distinct_values(events_, &Event::agent);
}

std::vector<std::string> EventSelection::distinct_activities() const {
    return distinct_values(events_, &Event::activity);
}

namespace {

std::string escape_pair_part(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\' || c == '|') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string encode_pair_label(const std::string& agent, const std::string& activity) {
    return escape_pair_part(agent) + "|" + escape_pair_part(activity);
}

std::pair<std::string, std::string> decode_pair_label(const std::string& label) {
    std::string first, second;
    std::string* cur = &first;
    bool split = false;
    for (std::size_t i = 0; i < label.size(); ++i) {
        char c = label[i];
        if (c == '\\') {
            if (i + 1 >= label.size()) throw std::runtime_error("dangling escape in pair label: " + label);
            cur->push_back(label[++i]);
        } else if (c == '|') {
            if (split) throw std::runtime_error("more than one separator in pair label: " + label);
            split = true;
            cur = &second;
        } else {
            cur->push_back(c);
        }
    }
    if (!split) throw std::runtime_error("not a pair label: " + label);
    return {first, second};
}

std::string name_of(const Event& event, NamingKind naming) {
    auto require = [&](const std::string& value, const char* attr) -> const std::string& {
        if (value.empty()) throw std::runtime_error(std::string("missing attribute '") + attr +
                                                    "' on event " + std::to_string(event.id));
        return value;
    };
    switch (naming) {
        case NamingKind::ActivityOnly:
            return require(event.activity, "activity");
        case NamingKind::AgentActivity:
            return encode_pair_label(require(event.agent, "agent"), require(event.activity, "activity"));
        case NamingKind::AgentOnly:
            return require(event.agent, "agent");
    }
    throw std::logic_error("unreachable naming kind");
}

std::vector<std::string> EventLog::labels_of(const Trace& trace) const {
    std::vector<std::string> out;
    out.reserve(trace.size());
    for (const Event& e : trace) out.push_back(name_of(e, naming));
    return out;
}

std::vector<std::vector<std::string>> EventLog::label_sequences() const {
    std::vector<std::vector<std::string>> out;
    out.reserve(traces.size());
    for (const Trace& t : traces) out.push_back(labels_of(t));
    return out;
}

std::vector<Trace> case_trace_set(const EventSelection& selection) {
    std::map<std::string, Trace> by_case;
    for (const Event& e : selection.events()) by_case[e.case_id].push_back(e);
    std::vector<Trace> traces;
    traces.reserve(by_case.size());
    for (auto& [case_id, trace] : by_case) traces.push_back(std::move(trace));
    std::sort(traces.begin(), traces.end(),
              [](const Trace& a, const Trace& b) { return event_before(a.front(), b.front()); });
    return traces;
}

EventLog case_log(const EventSelection& selection, NamingKind naming) {
    EventLog log;
    log.traces = case_trace_set(selection);
    log.selection = selection;
    log.naming = naming;
    return log;
}

}  // namespace am
