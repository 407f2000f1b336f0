#include "agentminer/inductive.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "agentminer/dfg.hpp"

namespace am {

ProcessTree ProcessTree::activity(std::string name) {
    ProcessTree t;
    t.kind = Kind::Activity;
    t.label = std::move(name);
    return t;
}

ProcessTree ProcessTree::silent() { return ProcessTree{}; }

ProcessTree ProcessTree::node(Kind kind, std::vector<ProcessTree> children) {
    ProcessTree t;
    t.kind = kind;
    t.children = std::move(children);
    return t;
}

std::string ProcessTree::to_string() const {
    switch (kind) {
        case Kind::Activity: return label;
        case Kind::Silent: return "tau";
        default: break;
    }
    const char* name = kind == Kind::Sequence ? "seq"
                       : kind == Kind::Exclusive ? "xor"
                       : kind == Kind::Parallel ? "and"
                                                : "loop";
    std::ostringstream out;
    out << name << '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out << ", ";
        out << children[i].to_string();
    }
    out << ')';
    return out.str();
}

namespace {

using Word = std::vector<std::string>;
using Sublog = std::vector<Word>;
using Group = std::set<std::string>;

/// Smallest activity label of a subtree; silent leaves count as "".
std::string smallest_label(const ProcessTree& tree) {
    if (tree.kind == ProcessTree::Kind::Activity) return tree.label;
    if (tree.kind == ProcessTree::Kind::Silent) return {};
    std::string best;
    bool first = true;
    for (const auto& child : tree.children) {
        std::string candidate = smallest_label(child);
        if (first || candidate < best) {
            best = candidate;
            first = false;
        }
    }
    return best;
}

void sort_children(std::vector<ProcessTree>& children) {
    std::stable_sort(children.begin(), children.end(),
                     [](const ProcessTree& a, const ProcessTree& b) {
                         return smallest_label(a) < smallest_label(b);
                     });
}

/// Directly-follows edges kept for cut detection: an edge survives when its
/// count reaches noise * (strongest outgoing count of its source).
std::set<std::pair<std::string, std::string>> filtered_edges(const Dfg& dfg, double noise) {
    std::map<std::string, std::uint64_t> strongest;
    for (const auto& [edge, count] : dfg.edges)
        strongest[edge.first] = std::max(strongest[edge.first], count);
    std::set<std::pair<std::string, std::string>> kept;
    for (const auto& [edge, count] : dfg.edges) {
        if (static_cast<double>(count) >= noise * static_cast<double>(strongest.at(edge.first)))
            kept.insert(edge);
    }
    return kept;
}

std::vector<Group> connected_components(const Group& alphabet,
                                        const std::set<std::pair<std::string, std::string>>& edges,
                                        bool undirected) {
    std::map<std::string, std::set<std::string>> adjacency;
    for (const auto& a : alphabet) adjacency[a];
    for (const auto& [x, y] : edges) {
        adjacency[x].insert(y);
        if (undirected) adjacency[y].insert(x);
    }
    std::vector<Group> components;
    std::set<std::string> seen;
    for (const auto& a : alphabet) {
        if (seen.count(a)) continue;
        Group component;
        std::deque<std::string> queue{a};
        seen.insert(a);
        while (!queue.empty()) {
            std::string x = queue.front();
            queue.pop_front();
            component.insert(x);
            for (const auto& y : adjacency[x])
                if (seen.insert(y).second) queue.push_back(y);
        }
        components.push_back(std::move(component));
    }
    return components;
}

/// Activity-level reachability over the kept edges.
std::map<std::string, Group> transitive_reach(const Group& alphabet,
                                              const std::set<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, Group> reach;
    for (const auto& a : alphabet) {
        std::deque<std::string> queue{a};
        Group& seen = reach[a];
        while (!queue.empty()) {
            std::string x = queue.front();
            queue.pop_front();
            for (const auto& [from, to] : edges)
                if (from == x && seen.insert(to).second) queue.push_back(to);
        }
    }
    return reach;
}

struct Cut {
    ProcessTree::Kind kind;
    std::vector<Group> groups;
};

std::optional<Cut> exclusive_cut(const Group& alphabet,
                                 const std::set<std::pair<std::string, std::string>>& edges) {
    auto components = connected_components(alphabet, edges, true);
    if (components.size() < 2) return std::nullopt;
    return Cut{ProcessTree::Kind::Exclusive, std::move(components)};
}

std::optional<Cut> sequence_cut(const Group& alphabet,
                                const std::set<std::pair<std::string, std::string>>& edges) {
    auto reach = transitive_reach(alphabet, edges);
    // Start from strongly connected components.
    std::vector<Group> groups;
    std::set<std::string> assigned;
    for (const auto& a : alphabet) {
        if (assigned.count(a)) continue;
        Group scc{a};
        for (const auto& b : alphabet)
            if (b != a && reach[a].count(b) && reach[b].count(a)) scc.insert(b);
        for (const auto& m : scc) assigned.insert(m);
        groups.push_back(std::move(scc));
    }
    auto reaches = [&](const Group& x, const Group& y) {
        for (const auto& a : x)
            for (const auto& b : y)
                if (reach[a].count(b)) return true;
        return false;
    };
    // Merge pairwise unordered groups until a chain remains.
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < groups.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < groups.size() && !merged; ++j) {
                bool ij = reaches(groups[i], groups[j]);
                bool ji = reaches(groups[j], groups[i]);
                if (ij == ji) {  // mutually reachable or mutually unreachable
                    groups[i].insert(groups[j].begin(), groups[j].end());
                    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
        }
    }
    if (groups.size() < 2) return std::nullopt;
    // Order by how many other groups reach each one, then verify the chain
    // is strict; bail out if reachability is not a total order.
    std::vector<std::pair<std::size_t, Group>> ranked;
    for (const auto& g : groups) {
        std::size_t above = 0;
        for (const auto& other : groups)
            if (&other != &g && reaches(other, g)) ++above;
        ranked.push_back({above, g});
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return *a.second.begin() < *b.second.begin();
    });
    groups.clear();
    for (auto& [rank, g] : ranked) groups.push_back(std::move(g));
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            if (!reaches(groups[i], groups[j]) || reaches(groups[j], groups[i])) return std::nullopt;
    return Cut{ProcessTree::Kind::Sequence, std::move(groups)};
}

std::optional<Cut> parallel_cut(const Group& alphabet,
                                const std::set<std::pair<std::string, std::string>>& edges,
                                const Dfg& dfg) {
    // Components of the graph connecting activities that are NOT mutually
    // directly-following; cross-component pairs then all have double edges.
    std::set<std::pair<std::string, std::string>> weak;
    for (const auto& a : alphabet)
        for (const auto& b : alphabet) {
            if (a >= b) continue;
            if (!edges.count({a, b}) || !edges.count({b, a})) weak.insert({a, b});
        }
    auto components = connected_components(alphabet, weak, true);
    if (components.size() < 2) return std::nullopt;
    for (const auto& component : components) {
        bool has_start = false, has_end = false;
        for (const auto& a : component) {
            if (dfg.starts.count(a)) has_start = true;
            if (dfg.ends.count(a)) has_end = true;
        }
        if (!has_start || !has_end) return std::nullopt;
    }
    return Cut{ProcessTree::Kind::Parallel, std::move(components)};
}

std::optional<Cut> loop_cut(const Group& alphabet,
                            const std::set<std::pair<std::string, std::string>>& edges,
                            const Dfg& dfg) {
    Group body;
    for (const auto& [a, count] : dfg.starts) body.insert(a);
    for (const auto& [a, count] : dfg.ends) body.insert(a);
    if (body.size() == alphabet.size()) return std::nullopt;

    Group rest;
    for (const auto& a : alphabet)
        if (!body.count(a)) rest.insert(a);
    std::set<std::pair<std::string, std::string>> rest_edges;
    for (const auto& e : edges)
        if (rest.count(e.first) && rest.count(e.second)) rest_edges.insert(e);

    // Body growth can invalidate other components, so re-check to fixpoint.
    std::vector<Group> redos = connected_components(rest, rest_edges, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < redos.size(); ++i) {
            bool valid = true;
            for (const auto& [from, to] : edges) {
                if (body.count(from) && redos[i].count(to) && !dfg.ends.count(from)) valid = false;
                if (redos[i].count(from) && body.count(to) && !dfg.starts.count(to)) valid = false;
            }
            if (!valid) {
                body.insert(redos[i].begin(), redos[i].end());
                redos.erase(redos.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (redos.empty()) return std::nullopt;

    Group redo_union;
    for (const auto& r : redos) redo_union.insert(r.begin(), r.end());
    return Cut{ProcessTree::Kind::Loop, {std::move(body), std::move(redo_union)}};
}

std::size_t group_of(const std::vector<Group>& groups, const std::string& activity) {
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (groups[i].count(activity)) return i;
    return groups.size();
}

/// Once-per-trace fall-through: an activity occurring exactly once in every
/// trace runs concurrently to the rest of the sublog.
std::optional<std::string> activity_once_per_trace(const Sublog& traces, const Group& alphabet) {
    for (const auto& activity : alphabet) {
        bool everywhere_once = true;
        for (const auto& trace : traces) {
            if (std::count(trace.begin(), trace.end(), activity) != 1) {
                everywhere_once = false;
                break;
            }
        }
        if (everywhere_once) return activity;
    }
    return std::nullopt;
}

/// Strict tau-loop fall-through: when a trace-final activity is directly
/// followed by a trace-initial one, the log is a concatenation of loop
/// bodies; split there and wrap the recursion in a silent-redo loop. The
/// relaxed variant splits after every trace-final activity.
std::optional<Sublog> tau_loop_split(const Sublog& traces, const Dfg& dfg, bool strict) {
    Sublog pieces;
    bool split_any = false;
    for (const auto& trace : traces) {
        Word piece;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            if (!piece.empty() && dfg.ends.count(piece.back()) &&
                (!strict || dfg.starts.count(trace[i]))) {
                pieces.push_back(std::move(piece));
                piece.clear();
                split_any = true;
            }
            piece.push_back(trace[i]);
        }
        if (!piece.empty()) pieces.push_back(std::move(piece));
    }
    if (!split_any) return std::nullopt;
    return pieces;
}

ProcessTree build(const Sublog& traces, double noise);

ProcessTree build_exclusive(const Sublog& traces, const std::vector<Group>& groups, double noise) {
    std::vector<Sublog> sublogs(groups.size());
    for (const auto& trace : traces) {
        // A trace normally stays within one group; with noise filtering it
        // may straddle groups, in which case it goes to the group holding
        // most of its events and is projected onto that alphabet.
        std::vector<std::size_t> votes(groups.size(), 0);
        for (const auto& label : trace) {
            std::size_t g = group_of(groups, label);
            if (g < groups.size()) ++votes[g];
        }
        std::size_t winner =
            static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
        Word projected;
        for (const auto& label : trace)
            if (groups[winner].count(label)) projected.push_back(label);
        sublogs[winner].push_back(std::move(projected));
    }
    std::vector<ProcessTree> children;
    for (std::size_t i = 0; i < groups.size(); ++i) children.push_back(build(sublogs[i], noise));
    sort_children(children);
    return ProcessTree::node(ProcessTree::Kind::Exclusive, std::move(children));
}

ProcessTree build_sequence(const Sublog& traces, const std::vector<Group>& groups, double noise) {
    std::vector<Sublog> sublogs(groups.size());
    for (const auto& trace : traces) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            Word projected;
            for (const auto& label : trace)
                if (groups[g].count(label)) projected.push_back(label);
            sublogs[g].push_back(std::move(projected));
        }
    }
    std::vector<ProcessTree> children;
    for (std::size_t i = 0; i < groups.size(); ++i) children.push_back(build(sublogs[i], noise));
    return ProcessTree::node(ProcessTree::Kind::Sequence, std::move(children));
}

ProcessTree build_parallel(const Sublog& traces, const std::vector<Group>& groups, double noise) {
    std::vector<Sublog> sublogs(groups.size());
    for (const auto& trace : traces) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            Word projected;
            for (const auto& label : trace)
                if (groups[g].count(label)) projected.push_back(label);
            sublogs[g].push_back(std::move(projected));
        }
    }
    std::vector<ProcessTree> children;
    for (std::size_t i = 0; i < groups.size(); ++i) children.push_back(build(sublogs[i], noise));
    sort_children(children);
    return ProcessTree::node(ProcessTree::Kind::Parallel, std::move(children));
}

ProcessTree build_loop(const Sublog& traces, const std::vector<Group>& groups, double noise) {
    const Group& body = groups[0];
    Sublog body_log, redo_log;
    for (const auto& trace : traces) {
        Word segment;
        bool in_body = true;
        auto flush = [&]() {
            if (in_body)
                body_log.push_back(segment);  // body segments may be empty
            else if (!segment.empty())
                redo_log.push_back(segment);
            segment.clear();
        };
        for (const auto& label : trace) {
            bool label_in_body = body.count(label) > 0;
            if (label_in_body != in_body) {
                flush();
                in_body = label_in_body;
            }
            segment.push_back(label);
        }
        flush();
        if (!in_body) body_log.push_back({});  // trace ended inside a redo
    }
    std::vector<ProcessTree> children;
    children.push_back(build(body_log, noise));
    children.push_back(build(redo_log, noise));
    return ProcessTree::node(ProcessTree::Kind::Loop, std::move(children));
}

ProcessTree build(const Sublog& traces, double noise) {
    if (traces.empty()) return ProcessTree::silent();

    Sublog nonempty;
    for (const auto& t : traces)
        if (!t.empty()) nonempty.push_back(t);
    if (nonempty.empty()) return ProcessTree::silent();
    if (nonempty.size() < traces.size()) {
        std::vector<ProcessTree> children;
        children.push_back(ProcessTree::silent());
        children.push_back(build(nonempty, noise));
        sort_children(children);
        return ProcessTree::node(ProcessTree::Kind::Exclusive, std::move(children));
    }

    Group alphabet;
    for (const auto& t : nonempty)
        for (const auto& label : t) alphabet.insert(label);
    if (alphabet.size() == 1) {
        const std::string& a = *alphabet.begin();
        bool all_single = std::all_of(nonempty.begin(), nonempty.end(),
                                      [](const Word& w) { return w.size() == 1; });
        if (all_single) return ProcessTree::activity(a);
        return ProcessTree::node(ProcessTree::Kind::Loop,
                                 {ProcessTree::activity(a), ProcessTree::silent()});
    }

    Dfg dfg = build_dfg(nonempty);
    auto edges = filtered_edges(dfg, noise);

    if (auto cut = exclusive_cut(alphabet, edges)) return build_exclusive(nonempty, cut->groups, noise);
    if (auto cut = sequence_cut(alphabet, edges)) return build_sequence(nonempty, cut->groups, noise);
    if (auto cut = parallel_cut(alphabet, edges, dfg)) return build_parallel(nonempty, cut->groups, noise);
    if (auto cut = loop_cut(alphabet, edges, dfg)) return build_loop(nonempty, cut->groups, noise);

    // Fall-throughs of the classical infrequent-variant formulation, tried
    // before giving up to a flower.
    if (auto solo = activity_once_per_trace(nonempty, alphabet)) {
        Sublog rest;
        for (const auto& trace : nonempty) {
            Word kept;
            for (const auto& label : trace)
                if (label != *solo) kept.push_back(label);
            rest.push_back(std::move(kept));
        }
        std::vector<ProcessTree> children;
        children.push_back(ProcessTree::activity(*solo));
        children.push_back(build(rest, noise));
        sort_children(children);
        return ProcessTree::node(ProcessTree::Kind::Parallel, std::move(children));
    }
    for (bool strict : {true, false}) {
        if (auto pieces = tau_loop_split(nonempty, dfg, strict)) {
            std::vector<ProcessTree> children;
            children.push_back(build(*pieces, noise));
            children.push_back(ProcessTree::silent());
            return ProcessTree::node(ProcessTree::Kind::Loop, std::move(children));
        }
    }

    // Flower fall-through: any interleaving of the alphabet.
    std::vector<ProcessTree> petals;
    for (const auto& a : alphabet) petals.push_back(ProcessTree::activity(a));
    return ProcessTree::node(
        ProcessTree::Kind::Loop,
        {ProcessTree::silent(), ProcessTree::node(ProcessTree::Kind::Exclusive, std::move(petals))});
}

}  // namespace

ProcessTree discover_tree(const std::vector<std::vector<std::string>>& sequences,
                          double noise_threshold) {
    if (sequences.empty()) throw std::runtime_error("empty log");
    if (noise_threshold < 0.0 || noise_threshold >= 1.0)
        throw std::runtime_error("noise threshold must be in [0, 1)");
    return build(sequences, noise_threshold);
}

ProcessTree discover_tree(const EventLog& log, double noise_threshold) {
    return discover_tree(log.label_sequences(), noise_threshold);
}

namespace {

struct NetBuilder {
    WorkflowNet wf;
    std::size_t next = 0;

    std::string fresh_place() {
        std::string id = "p" + std::to_string(next++);
        wf.net.add_place(id);
        return id;
    }

    std::string fresh_transition(const std::string& label) {
        std::string id = "t" + std::to_string(next++);
        wf.net.add_transition(id, label);
        return id;
    }

    void emit(const ProcessTree& tree, const std::string& entry, const std::string& exit) {
        switch (tree.kind) {
            case ProcessTree::Kind::Activity:
            case ProcessTree::Kind::Silent: {
                std::string t = fresh_transition(
                    tree.kind == ProcessTree::Kind::Activity ? tree.label : kSilent);
                wf.net.add_arc(entry, t);
                wf.net.add_arc(t, exit);
                return;
            }
            case ProcessTree::Kind::Sequence: {
                std::string at = entry;
                for (std::size_t i = 0; i < tree.children.size(); ++i) {
                    std::string to = (i + 1 == tree.children.size()) ? exit : fresh_place();
                    emit(tree.children[i], at, to);
                    at = to;
                }
                return;
            }
            case ProcessTree::Kind::Exclusive: {
                for (const auto& child : tree.children) emit(child, entry, exit);
                return;
            }
            case ProcessTree::Kind::Parallel: {
                std::string split = fresh_transition(kSilent);
                std::string join = fresh_transition(kSilent);
                wf.net.add_arc(entry, split);
                wf.net.add_arc(join, exit);
                for (const auto& child : tree.children) {
                    std::string in = fresh_place();
                    std::string out = fresh_place();
                    wf.net.add_arc(split, in);
                    wf.net.add_arc(out, join);
                    emit(child, in, out);
                }
                return;
            }
            case ProcessTree::Kind::Loop: {
                // Isolated by silent enter/exit so redo iterations cannot
                // escape into surrounding choice structure.
                std::string body_in = fresh_place();
                std::string body_out = fresh_place();
                std::string enter = fresh_transition(kSilent);
                std::string leave = fresh_transition(kSilent);
                wf.net.add_arc(entry, enter);
                wf.net.add_arc(enter, body_in);
                wf.net.add_arc(body_out, leave);
                wf.net.add_arc(leave, exit);
                emit(tree.children[0], body_in, body_out);
                emit(tree.children[1], body_out, body_in);
                return;
            }
        }
    }
};

}  // namespace

WorkflowNet tree_to_wfnet(const ProcessTree& tree) {
    NetBuilder builder;
    std::string initial = builder.fresh_place();
    std::string final_place = builder.fresh_place();
    builder.emit(tree, initial, final_place);
    builder.wf.initial_place = initial;
    builder.wf.final_place = final_place;
    return builder.wf;
}

WorkflowNet discover_cm_model(const EventLog& log, NamingKind naming, double noise_threshold) {
    if (log.traces.empty()) throw std::runtime_error("empty log");
    EventLog renamed = log;
    renamed.naming = naming;
    ProcessTree tree = discover_tree(renamed, noise_threshold);
    WorkflowNet net = tree_to_wfnet(tree);
    net.discipline = naming == NamingKind::AgentActivity ? LabelDiscipline::Mas
                     : naming == NamingKind::AgentOnly   ? LabelDiscipline::Interaction
                                                         : LabelDiscipline::Plain;
    return net;
}

}  // namespace am
