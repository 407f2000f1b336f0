#include "agentminer/agent_typing.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "agentminer/partition.hpp"

namespace am {

std::map<std::string, Dfg> instance_dfgs(const EventSelection& selection) {
    std::map<std::string, Dfg> out;
    for (const auto& agent : selection.distinct_agents()) {
        EventLog log = agent_log(selection, agent);
        log.naming = NamingKind::ActivityOnly;
        out[agent] = build_dfg(log);
    }
    return out;
}

double dfg_distance(const Dfg& a, const Dfg& b) {
    auto ea = a.edge_set();
    auto eb = b.edge_set();
    if (ea.empty() && eb.empty()) {
        for (const auto& [activity, count] : a.activities)
            if (b.activities.count(activity)) return 0.0;
        return 1.0;
    }
    if (ea.empty() || eb.empty()) return 1.0;
    std::size_t common = 0;
    for (const auto& edge : ea)
        if (eb.count(edge)) ++common;
    double ratio = std::max(static_cast<double>(common) / static_cast<double>(ea.size()),
                            static_cast<double>(common) / static_cast<double>(eb.size()));
    return 1.0 - ratio;
}

namespace {

struct Cluster {
    std::vector<std::string> members;  // sorted
};

double complete_linkage(const Cluster& x, const Cluster& y,
                        const std::map<std::pair<std::string, std::string>, double>& distance) {
    double worst = 0.0;
    for (const auto& a : x.members)
        for (const auto& b : y.members) {
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            worst = std::max(worst, distance.at(key));
        }
    return worst;
}

}  // namespace

AgentTypeAssignment cluster_agents(const std::map<std::string, Dfg>& dfgs,
                                   double distance_threshold) {
    if (dfgs.empty()) throw std::runtime_error("no agent instances to cluster");

    std::map<std::pair<std::string, std::string>, double> distance;
    std::vector<std::string> instances;
    for (const auto& [instance, dfg] : dfgs) instances.push_back(instance);
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t j = i + 1; j < instances.size(); ++j)
            distance[{instances[i], instances[j]}] = dfg_distance(dfgs.at(instances[i]), dfgs.at(instances[j]));

    std::vector<Cluster> clusters;
    for (const auto& instance : instances) clusters.push_back(Cluster{{instance}});

    while (clusters.size() > 1) {
        double best = 2.0;
        std::size_t bi = 0, bj = 0;
        std::pair<std::string, std::string> best_pair;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double d = complete_linkage(clusters[i], clusters[j], distance);
                auto pair = std::make_pair(clusters[i].members.front(), clusters[j].members.front());
                if (d < best || (d == best && pair < best_pair)) {
                    best = d;
                    bi = i;
                    bj = j;
                    best_pair = pair;
                }
            }
        }
        if (best > distance_threshold) break;
        Cluster merged;
        merged.members = clusters[bi].members;
        merged.members.insert(merged.members.end(), clusters[bj].members.begin(),
                              clusters[bj].members.end());
        std::sort(merged.members.begin(), merged.members.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = std::move(merged);
    }

    AgentTypeAssignment assignment;
    // Number types by the first appearance of each cluster's smallest member;
    // dfgs is keyed by instance id, so use the caller's ordering hint below.
    // Without event context, order clusters by smallest member.
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.members.front() < b.members.front(); });
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        std::string type = "a" + std::to_string(i + 1);
        assignment.type_members[type] = clusters[i].members;
        for (const auto& member : clusters[i].members) assignment.instance_to_type[member] = type;
    }
    return assignment;
}

AgentTypeAssignment identify_agent_types(const EventSelection& selection,
                                         double distance_threshold) {
    AgentTypeAssignment clustered = cluster_agents(instance_dfgs(selection), distance_threshold);

    // Renumber types by the first event of each type's lexicographically
    // smallest member.
    std::map<std::string, std::size_t> first_seen;
    std::size_t position = 0;
    for (const Event& e : selection.events()) {
        if (!first_seen.count(e.agent)) first_seen[e.agent] = position;
        ++position;
    }
    std::vector<std::pair<std::size_t, std::vector<std::string>>> ordered;
    for (const auto& [type, members] : clustered.type_members)
        ordered.push_back({first_seen.at(members.front()), members});
    std::sort(ordered.begin(), ordered.end());

    AgentTypeAssignment assignment;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        std::string type = "a" + std::to_string(i + 1);
        assignment.type_members[type] = ordered[i].second;
        for (const auto& member : ordered[i].second) assignment.instance_to_type[member] = type;
    }
    return assignment;
}

EventSelection relabel_to_types(const EventSelection& selection,
                                const AgentTypeAssignment& assignment) {
    std::vector<Event> events;
    events.reserve(selection.size());
    for (const Event& e : selection.events()) {
        auto it = assignment.instance_to_type.find(e.agent);
        if (it == assignment.instance_to_type.end())
            throw std::runtime_error("agent instance without a type assignment: " + e.agent);
        Event copy = e;
        copy.agent = it->second;
        events.push_back(std::move(copy));
    }
    return EventSelection(std::move(events));
}

std::string distance_matrix_csv(const std::map<std::string, Dfg>& dfgs) {
    std::ostringstream out;
    out << "instance";
    for (const auto& [instance, dfg] : dfgs) out << ',' << instance;
    out << '\n';
    char buffer[32];
    for (const auto& [row, row_dfg] : dfgs) {
        out << row;
        for (const auto& [col, col_dfg] : dfgs) {
            std::snprintf(buffer, sizeof buffer, "%.6f", dfg_distance(row_dfg, col_dfg));
            out << ',' << buffer;
        }
        out << '\n';
    }
    return out.str();
}

std::string assignment_csv(const AgentTypeAssignment& assignment) {
    std::ostringstream out;
    out << "instance,type\n";
    for (const auto& [instance, type] : assignment.instance_to_type)
        out << instance << ',' << type << '\n';
    return out.str();
}

}  // namespace am
