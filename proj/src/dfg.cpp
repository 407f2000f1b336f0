#include "agentminer/dfg.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace am {

std::set<std::pair<std::string, std::string>> Dfg::edge_set() const {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [edge, count] : edges) out.insert(edge);
    return out;
}

Dfg build_dfg(const std::vector<std::vector<std::string>>& sequences) {
    Dfg dfg;
    for (const auto& labels : sequences) {
        if (labels.empty()) continue;
        ++dfg.starts[labels.front()];
        ++dfg.ends[labels.back()];
        for (std::size_t i = 0; i < labels.size(); ++i) {
            ++dfg.activities[labels[i]];
            if (i + 1 < labels.size()) ++dfg.edges[{labels[i], labels[i + 1]}];
        }
    }
    return dfg;
}

Dfg build_dfg(const EventLog& log) { return build_dfg(log.label_sequences()); }

Dfg filter_dfg(const Dfg& dfg, double ff) {
    if (!(ff > 0.0 && ff <= 1.0)) throw std::runtime_error("ff must be in (0, 1]");
    if (dfg.empty()) return dfg;

    std::vector<std::pair<std::string, std::uint64_t>> order(dfg.activities.begin(),
                                                             dfg.activities.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::uint64_t total = 0;
    for (const auto& [activity, count] : order) total += count;

    std::set<std::string> kept;
    double needed = ff * static_cast<double>(total);
    std::uint64_t covered = 0;
    for (const auto& [activity, count] : order) {
        if (static_cast<double>(covered) >= needed) break;
        kept.insert(activity);
        covered += count;
    }

    Dfg out;
    for (const auto& a : kept) out.activities[a] = dfg.activities.at(a);
    for (const auto& [edge, count] : dfg.edges)
        if (kept.count(edge.first) && kept.count(edge.second)) out.edges[edge] = count;
    for (const auto& [a, count] : dfg.starts)
        if (kept.count(a)) out.starts[a] = count;
    for (const auto& [a, count] : dfg.ends)
        if (kept.count(a)) out.ends[a] = count;

    // Repair connectivity after removal: an activity left without incoming
    // edges must be startable, one without outgoing edges must be endable.
    for (const auto& a : kept) {
        bool has_in = false, has_out = false;
        for (const auto& [edge, count] : out.edges) {
            if (edge.second == a) has_in = true;
            if (edge.first == a) has_out = true;
        }
        if (!has_in && !out.starts.count(a)) out.starts[a] = out.activities.at(a);
        if (!has_out && !out.ends.count(a)) out.ends[a] = out.activities.at(a);
    }
    return out;
}

DfgTranslation dfg_to_wfnet(const Dfg& dfg) {
    if (dfg.empty()) throw std::runtime_error("nothing to translate: empty DFG");
    if (dfg.starts.empty() || dfg.ends.empty())
        throw std::runtime_error("DFG without start or end activities");

    // Keep only activities on some start-to-end walk.
    auto sweep = [&](const std::map<std::string, std::uint64_t>& seeds, bool forward) {
        std::set<std::string> seen;
        std::deque<std::string> queue;
        for (const auto& [a, count] : seeds) {
            seen.insert(a);
            queue.push_back(a);
        }
        while (!queue.empty()) {
            std::string a = queue.front();
            queue.pop_front();
            for (const auto& [edge, count] : dfg.edges) {
                const std::string& from = forward ? edge.first : edge.second;
                const std::string& to = forward ? edge.second : edge.first;
                if (from == a && seen.insert(to).second) queue.push_back(to);
            }
        }
        return seen;
    };
    std::set<std::string> reachable = sweep(dfg.starts, true);
    std::set<std::string> coreachable = sweep(dfg.ends, false);

    DfgTranslation result;
    std::set<std::string> live;
    for (const auto& [a, count] : dfg.activities) {
        if (reachable.count(a) && coreachable.count(a)) live.insert(a);
        else result.dropped_activities.push_back(a);
    }
    if (live.empty()) throw std::runtime_error("no activity lies on a start-to-end walk");

    WorkflowNet& wf = result.net;
    wf.initial_place = "p:i";
    wf.final_place = "p:f";
    wf.net.add_place("p:i");
    wf.net.add_place("p:f");
    for (const auto& a : live) {
        wf.net.add_place("p:in:" + a);
        wf.net.add_place("p:out:" + a);
        wf.net.add_transition("t:" + a, a);
        wf.net.add_arc("p:in:" + a, "t:" + a);
        wf.net.add_arc("t:" + a, "p:out:" + a);
    }
    for (const auto& [edge, count] : dfg.edges) {
        if (!live.count(edge.first) || !live.count(edge.second)) continue;
        std::string hop = "t:hop:" + edge.first + ">" + edge.second;
        wf.net.add_transition(hop, kSilent);
        wf.net.add_arc("p:out:" + edge.first, hop);
        wf.net.add_arc(hop, "p:in:" + edge.second);
    }
    for (const auto& [a, count] : dfg.starts) {
        if (!live.count(a)) continue;
        std::string entry = "t:start:" + a;
        wf.net.add_transition(entry, kSilent);
        wf.net.add_arc("p:i", entry);
        wf.net.add_arc(entry, "p:in:" + a);
    }
    for (const auto& [a, count] : dfg.ends) {
        if (!live.count(a)) continue;
        std::string exitt = "t:end:" + a;
        wf.net.add_transition(exitt, kSilent);
        wf.net.add_arc("p:out:" + a, exitt);
        wf.net.add_arc(exitt, "p:f");
    }
    return result;
}

std::string dfg_to_dot(const Dfg& dfg, const std::string& graph_name) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        out.push_back('"');
        return out;
    };
    std::ostringstream out;
    out << "digraph " << quote(graph_name) << " {\n  rankdir=LR;\n";
    out << "  __start [shape=point];\n  __end [shape=point];\n";
    for (const auto& [a, count] : dfg.activities)
        out << "  " << quote(a) << " [shape=box, label=" << quote(a + " (" + std::to_string(count) + ")")
            << "];\n";
    for (const auto& [edge, count] : dfg.edges)
        out << "  " << quote(edge.first) << " -> " << quote(edge.second) << " [label=\"" << count
            << "\"];\n";
    for (const auto& [a, count] : dfg.starts)
        out << "  __start -> " << quote(a) << " [label=\"" << count << "\"];\n";
    for (const auto& [a, count] : dfg.ends)
        out << "  " << quote(a) << " -> __end [label=\"" << count << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace am
