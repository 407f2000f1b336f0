#include "agentminer/composer.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "agentminer/conformance.hpp"
#include "agentminer/dfg.hpp"
#include "agentminer/inductive.hpp"
#include "agentminer/partition.hpp"
#include "agentminer/petri_io.hpp"

namespace am {

WorkflowNet dfg_anda(const EventLog& log, double ff) {
    Dfg dfg = filter_dfg(build_dfg(log), ff);
    DfgTranslation translation = dfg_to_wfnet(dfg);
    WorkflowNet net = fuse_series_places(translation.net);
    net.discipline = LabelDiscipline::Agent;
    return net;
}

WorkflowNet inductive_inda(const EventLog& log, double threshold) {
    WorkflowNet net = tree_to_wfnet(discover_tree(log, threshold));
    net.discipline = LabelDiscipline::Interaction;
    return net;
}

namespace {

/// Observable language of the net restricted to repeat-free words.
Dfa repeat_free_language(const WorkflowNet& net, std::size_t state_bound) {
    std::set<std::string> labels;
    for (const auto& [t, label] : net.net.labels)
        if (!label.empty()) labels.insert(label);
    Dfa model = model_automaton(net, state_bound);
    return intersect(model, repeat_free_dfa({labels.begin(), labels.end()}));
}

WorkflowNet without_transition(const WorkflowNet& net, const std::string& transition) {
    WorkflowNet out = net;
    out.net.transitions.erase(transition);
    out.net.labels.erase(transition);
    std::set<std::pair<std::string, std::string>> kept;
    for (const auto& arc : out.net.flow)
        if (arc.first != transition && arc.second != transition) kept.insert(arc);
    out.net.flow = std::move(kept);
    return out;
}

/// Silent transitions whose occurrence re-enables an observable transition
/// that fired just before, with only silent steps in between.
std::set<std::string> iteration_candidates(const WorkflowNet& net, std::size_t state_bound) {
    ReachabilityGraph graph = reachability_graph(net, state_bound);
    std::set<std::string> observables;
    for (const auto& t : net.net.transitions)
        if (!net.net.is_silent(t)) observables.insert(t);

    // enabled_at[s] = observable transitions with an outgoing edge at state s
    std::vector<std::set<std::string>> enabled_at(graph.markings.size());
    std::vector<std::vector<std::pair<std::string, std::size_t>>> silent_out(graph.markings.size());
    std::map<std::string, std::vector<std::size_t>> after_observable;
    for (const auto& edge : graph.edges) {
        if (net.net.is_silent(edge.transition)) {
            silent_out[edge.from].push_back({edge.transition, edge.to});
        } else {
            enabled_at[edge.from].insert(edge.transition);
            after_observable[edge.transition].push_back(edge.to);
        }
    }

    std::set<std::string> candidates;
    for (const auto& t : observables) {
        auto it = after_observable.find(t);
        if (it == after_observable.end()) continue;
        // Silent-forward closure from every state reached right after t.
        std::set<std::size_t> closure(it->second.begin(), it->second.end());
        std::deque<std::size_t> queue(closure.begin(), closure.end());
        while (!queue.empty()) {
            std::size_t s = queue.front();
            queue.pop_front();
            for (const auto& [silent, to] : silent_out[s]) {
                if (enabled_at[to].count(t)) candidates.insert(silent);
                if (closure.insert(to).second) queue.push_back(to);
            }
        }
    }
    return candidates;
}

}  // namespace

WorkflowNet remove_observable_iterations(const WorkflowNet& inet, std::size_t state_bound) {
    WorkflowNet current = inet;
    bool removed_any = true;
    bool had_candidates = false;
    bool committed_any = false;
    while (removed_any) {
        removed_any = false;
        std::set<std::string> candidates = iteration_candidates(current, state_bound);
        if (candidates.empty()) break;
        had_candidates = true;
        Dfa baseline = repeat_free_language(current, state_bound);
        for (const auto& silent : candidates) {
            WorkflowNet attempt = without_transition(current, silent);
            if (!attempt.is_structurally_valid()) continue;
            Dfa pruned;
            try {
                pruned = repeat_free_language(attempt, state_bound);
            } catch (const std::exception&) {
                continue;
            }
            if (!equivalent(baseline, pruned)) continue;
            current = std::move(attempt);
            removed_any = true;
            committed_any = true;
            break;
        }
    }
    if (had_candidates && !committed_any)
        throw IterationRemovalError("observable iterations present but not removable");
    return current;
}

DiscoveryBundle discover(const EventSelection& selection, const DiscoveryOptions& options) {
    if (selection.empty()) throw std::runtime_error("discover: empty event selection");
    if (!(options.ff > 0.0 && options.ff <= 1.0)) throw std::runtime_error("discover: ff out of (0, 1]");
    if (options.th < 0.0 || options.th >= 1.0) throw std::runtime_error("discover: th out of [0, 1)");

    DiscoveryBundle bundle;
    bundle.ff = options.ff;
    bundle.th = options.th;

    auto step = [](const char* tag, auto&& body) {
        try {
            return body();
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(tag) + ": " + e.what());
        }
    };

    EventLog handovers =
        step("create interaction log", [&] { return interaction_log(selection); });

    bundle.interaction_net = step("discover interaction net", [&] {
        WorkflowNet inet = options.inda(handovers, options.th);
        inet.discipline = LabelDiscipline::Interaction;
        if (!options.remove_iterations) return inet;
        try {
            return remove_observable_iterations(inet, options.state_bound);
        } catch (const IterationRemovalError& e) {
            bundle.warnings.push_back(std::string("interaction net kept as discovered: ") + e.what());
            return inet;
        }
    });

    std::vector<std::string> agents =
        step("create agent logs", [&] { return selection.distinct_agents(); });

    for (const auto& agent : agents) {
        bundle.agent_nets[agent] = step("discover agent net", [&] {
            EventLog log = agent_log(selection, agent);
            WorkflowNet net = options.anda(log, options.ff);
            net.discipline = LabelDiscipline::Agent;
            return net;
        });
    }

    bundle.mas_net = step("discover MAS net", [&] {
        WorkflowNet mas = bundle.interaction_net;
        std::vector<std::string> observables;
        for (const auto& t : mas.net.transitions)
            if (!mas.net.is_silent(t)) observables.push_back(t);
        for (const auto& t : observables) {
            const std::string& agent = mas.net.label_of(t);
            auto it = bundle.agent_nets.find(agent);
            if (it == bundle.agent_nets.end())
                throw std::runtime_error("no agent net for label " + agent);
            mas = refine_transition(mas, t, it->second);
        }
        mas = fuse_series_places(mas);
        mas.discipline = LabelDiscipline::Mas;
        std::string issue = mas.structural_issue();
        if (!issue.empty()) throw std::runtime_error("composed net is not a workflow net: " + issue);
        return mas;
    });

    return bundle;
}

bool BundleReport::all_safe_and_sound() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const NetVerdict& v) { return v.error.empty() && v.safe && v.sound; });
}

namespace {

NetVerdict verdict_of(const std::string& name, const WorkflowNet& net, std::size_t state_bound) {
    NetVerdict v;
    v.name = name;
    try {
        v.safe = is_safe(net, state_bound);
        v.sound = is_sound(net, state_bound);
    } catch (const BoundExceededError& e) {
        v.error = e.what();
    }
    return v;
}

}  // namespace

BundleReport verify_bundle(const DiscoveryBundle& bundle, std::size_t state_bound) {
    if (bundle.interaction_net.net.places.empty() && bundle.agent_nets.empty())
        throw std::runtime_error("empty bundle");
    BundleReport report;
    report.verdicts.push_back(verdict_of("interaction", bundle.interaction_net, state_bound));
    for (const auto& [agent, net] : bundle.agent_nets)
        report.verdicts.push_back(verdict_of("agent:" + agent, net, state_bound));
    report.verdicts.push_back(verdict_of("mas", bundle.mas_net, state_bound));
    return report;
}

void export_bundle(const DiscoveryBundle& bundle, const std::string& directory,
                   std::size_t state_bound) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    auto emit = [&](const std::string& stem, const WorkflowNet& net) {
        write_pnml(net, (fs::path(directory) / (stem + ".pnml")).string());
        write_dot(net, (fs::path(directory) / (stem + ".dot")).string(), stem);
    };
    emit("interaction", bundle.interaction_net);
    for (const auto& [agent, net] : bundle.agent_nets) emit("agent-" + agent, net);
    emit("mas", bundle.mas_net);

    BundleReport report = verify_bundle(bundle, state_bound);
    nlohmann::json manifest;
    manifest["parameters"] = {{"ff", bundle.ff}, {"th", bundle.th}};
    manifest["warnings"] = bundle.warnings;
    nlohmann::json nets = nlohmann::json::object();
    auto net_entry = [&](const std::string& name, const WorkflowNet& net) {
        nlohmann::json entry;
        entry["size"] = net_size(net);
        for (const auto& verdict : report.verdicts) {
            if (verdict.name != name) continue;
            if (!verdict.error.empty()) entry["error"] = verdict.error;
            entry["safe"] = verdict.safe;
            entry["sound"] = verdict.sound;
        }
        return entry;
    };
    nets["interaction"] = net_entry("interaction", bundle.interaction_net);
    for (const auto& [agent, net] : bundle.agent_nets)
        nets["agent:" + agent] = net_entry("agent:" + agent, net);
    nets["mas"] = net_entry("mas", bundle.mas_net);
    manifest["nets"] = nets;

    std::ofstream out(fs::path(directory) / "manifest.json");
    if (!out) throw std::runtime_error("cannot write bundle manifest in " + directory);
    out << manifest.dump(2) << '\n';
}

}  // namespace am
