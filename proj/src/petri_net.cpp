#include "agentminer/petri_net.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "agentminer/event_log.hpp"

namespace am {

bool LabeledNet::is_silent(const std::string& transition) const {
    return label_of(transition) == kSilent;
}

const std::string& LabeledNet::label_of(const std::string& transition) const {
    auto it = labels.find(transition);
    if (it == labels.end()) throw std::runtime_error("unknown transition: " + transition);
    return it->second;
}

std::set<std::string> LabeledNet::preset(const std::string& node) const {
    std::set<std::string> out;
    for (const auto& [from, to] : flow)
        if (to == node) out.insert(from);
    return out;
}

std::set<std::string> LabeledNet::postset(const std::string& node) const {
    std::set<std::string> out;
    for (const auto& [from, to] : flow)
        if (from == node) out.insert(to);
    return out;
}

void LabeledNet::add_place(const std::string& id) {
    if (transitions.count(id)) throw std::runtime_error("node id used by a transition: " + id);
    places.insert(id);
}

void LabeledNet::add_transition(const std::string& id, const std::string& label) {
    if (places.count(id)) throw std::runtime_error("node id used by a place: " + id);
    transitions.insert(id);
    labels[id] = label;
}

void LabeledNet::add_arc(const std::string& from, const std::string& to) {
    bool pt = is_place(from) && is_transition(to);
    bool tp = is_transition(from) && is_place(to);
    if (!pt && !tp) throw std::runtime_error("arc must connect a place and a transition: " + from + " -> " + to);
    flow.insert({from, to});
}

void LabeledNet::validate() const {
    for (const auto& p : places)
        if (transitions.count(p)) throw std::runtime_error("place/transition name clash: " + p);
    for (const auto& t : transitions)
        if (!labels.count(t)) throw std::runtime_error("transition without label entry: " + t);
    for (const auto& [t, label] : labels) {
        if (!transitions.count(t)) throw std::runtime_error("label for unknown transition: " + t);
        if (places.count(label) || transitions.count(label))
            throw std::runtime_error("label collides with a node id: " + label);
    }
    for (const auto& [from, to] : flow) {
        bool pt = places.count(from) && transitions.count(to);
        bool tp = transitions.count(from) && places.count(to);
        if (!pt && !tp) throw std::runtime_error("ill-typed arc: " + from + " -> " + to);
    }
}

std::string WorkflowNet::structural_issue() const {
    if (!net.places.count(initial_place)) return "initial place missing: " + initial_place;
    if (!net.places.count(final_place)) return "final place missing: " + final_place;
    if (!net.preset(initial_place).empty()) return "initial place has a nonempty preset";
    if (!net.postset(final_place).empty()) return "final place has a nonempty postset";

    auto sweep = [&](const std::string& from, bool forward) {
        std::set<std::string> seen{from};
        std::deque<std::string> queue{from};
        while (!queue.empty()) {
            std::string node = queue.front();
            queue.pop_front();
            for (const auto& [a, b] : net.flow) {
                const std::string& src = forward ? a : b;
                const std::string& dst = forward ? b : a;
                if (src == node && seen.insert(dst).second) queue.push_back(dst);
            }
        }
        return seen;
    };
    std::set<std::string> fwd = sweep(initial_place, true);
    std::set<std::string> bwd = sweep(final_place, false);
    for (const auto& p : net.places)
        if (!fwd.count(p) || !bwd.count(p)) return "place off every initial-final walk: " + p;
    for (const auto& t : net.transitions)
        if (!fwd.count(t) || !bwd.count(t)) return "transition off every initial-final walk: " + t;
    return {};
}

bool is_enabled(const LabeledNet& net, const Marking& marking, const std::string& transition) {
    for (const auto& p : net.preset(transition)) {
        auto it = marking.find(p);
        if (it == marking.end() || it->second == 0) return false;
    }
    return true;
}

std::set<std::string> enabled(const LabeledNet& net, const Marking& marking) {
    std::set<std::string> out;
    for (const auto& t : net.transitions)
        if (is_enabled(net, marking, t)) out.insert(t);
    return out;
}

Marking fire(const LabeledNet& net, const Marking& marking, const std::string& transition) {
    if (!net.transitions.count(transition)) throw std::runtime_error("unknown transition: " + transition);
    if (!is_enabled(net, marking, transition))
        throw std::runtime_error("transition not enabled: " + transition);
    Marking out = marking;
    for (const auto& p : net.preset(transition)) {
        if (--out[p] == 0) out.erase(p);
    }
    for (const auto& p : net.postset(transition)) ++out[p];
    return out;
}

namespace {

/// Index-based view of a net for state-space exploration.
struct NetIndex {
    std::vector<std::string> place_ids;
    std::vector<std::string> transition_ids;
    std::map<std::string, std::size_t> place_index;
    std::vector<std::vector<std::size_t>> pre;   // per transition
    std::vector<std::vector<std::size_t>> post;  // per transition

    explicit NetIndex(const LabeledNet& net) {
        place_ids.assign(net.places.begin(), net.places.end());
        transition_ids.assign(net.transitions.begin(), net.transitions.end());
        for (std::size_t i = 0; i < place_ids.size(); ++i) place_index[place_ids[i]] = i;
        std::map<std::string, std::size_t> tindex;
        for (std::size_t i = 0; i < transition_ids.size(); ++i) tindex[transition_ids[i]] = i;
        pre.resize(transition_ids.size());
        post.resize(transition_ids.size());
        for (const auto& [from, to] : net.flow) {
            if (auto it = tindex.find(to); it != tindex.end())
                pre[it->second].push_back(place_index.at(from));
            if (auto it = tindex.find(from); it != tindex.end())
                post[it->second].push_back(place_index.at(to));
        }
    }
};

using PackedMarking = std::vector<std::uint32_t>;

struct PackedHash {
    std::size_t operator()(const PackedMarking& m) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t v : m) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct Exploration {
    NetIndex index;
    std::vector<PackedMarking> states;
    std::vector<ReachabilityGraph::Edge> edges;

    Exploration(const WorkflowNet& wfnet, std::size_t state_bound) : index(wfnet.net) {
        PackedMarking initial(index.place_ids.size(), 0);
        initial[index.place_index.at(wfnet.initial_place)] = 1;
        std::unordered_map<PackedMarking, std::size_t, PackedHash> seen;
        seen.emplace(initial, 0);
        states.push_back(initial);
        std::deque<std::size_t> queue{0};
        while (!queue.empty()) {
            std::size_t si = queue.front();
            queue.pop_front();
            PackedMarking current = states[si];
            for (std::size_t ti = 0; ti < index.transition_ids.size(); ++ti) {
                bool ok = true;
                for (std::size_t p : index.pre[ti])
                    if (current[p] == 0) { ok = false; break; }
                if (!ok) continue;
                PackedMarking next = current;
                for (std::size_t p : index.pre[ti]) --next[p];
                for (std::size_t p : index.post[ti]) ++next[p];
                auto [it, inserted] = seen.emplace(next, states.size());
                if (inserted) {
                    states.push_back(std::move(next));
                    if (states.size() > state_bound) throw BoundExceededError(states.size());
                    queue.push_back(it->second);
                }
                edges.push_back({si, index.transition_ids[ti], it->second});
            }
        }
    }

    Marking unpack(std::size_t state) const {
        Marking m;
        for (std::size_t p = 0; p < index.place_ids.size(); ++p)
            if (states[state][p] > 0) m[index.place_ids[p]] = states[state][p];
        return m;
    }
};

}  // namespace

ReachabilityGraph reachability_graph(const WorkflowNet& wfnet, std::size_t state_bound) {
    if (state_bound < 1) throw std::runtime_error("state_bound must be at least 1");
    Exploration exp(wfnet, state_bound);
    ReachabilityGraph graph;
    graph.markings.reserve(exp.states.size());
    for (std::size_t i = 0; i < exp.states.size(); ++i) graph.markings.push_back(exp.unpack(i));
    graph.edges = std::move(exp.edges);
    return graph;
}

bool is_safe(const WorkflowNet& wfnet, std::size_t state_bound) {
    Exploration exp(wfnet, state_bound);
    for (const PackedMarking& m : exp.states)
        for (std::uint32_t count : m)
            if (count > 1) return false;
    return true;
}

bool is_sound(const WorkflowNet& wfnet, std::size_t state_bound) {
    Exploration exp(wfnet, state_bound);

    // Locate the marking that is exactly {final}.
    std::size_t final_place = exp.index.place_index.count(wfnet.final_place)
                                  ? exp.index.place_index.at(wfnet.final_place)
                                  : static_cast<std::size_t>(-1);
    if (final_place == static_cast<std::size_t>(-1)) return false;
    std::size_t final_state = static_cast<std::size_t>(-1);
    for (std::size_t si = 0; si < exp.states.size(); ++si) {
        const PackedMarking& m = exp.states[si];
        bool exact = m[final_place] == 1;
        for (std::size_t p = 0; exact && p < m.size(); ++p)
            if (p != final_place && m[p] != 0) exact = false;
        if (exact) { final_state = si; break; }
    }
    if (final_state == static_cast<std::size_t>(-1)) return false;

    // Option to complete: every state reaches the final state.
    std::vector<std::vector<std::size_t>> reverse(exp.states.size());
    for (const auto& e : exp.edges) reverse[e.to].push_back(e.from);
    std::vector<bool> completes(exp.states.size(), false);
    std::deque<std::size_t> queue{final_state};
    completes[final_state] = true;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (std::size_t prev : reverse[s])
            if (!completes[prev]) {
                completes[prev] = true;
                queue.push_back(prev);
            }
    }
    if (!std::all_of(completes.begin(), completes.end(), [](bool b) { return b; })) return false;

    // No dead transitions.
    std::set<std::string> fired;
    for (const auto& e : exp.edges) fired.insert(e.transition);
    return fired.size() == wfnet.net.transitions.size();
}

namespace {

/// Merges place `q` into place `p` of `net`, rewiring arcs.
void merge_places(LabeledNet& net, const std::string& p, const std::string& q) {
    std::set<std::pair<std::string, std::string>> updated;
    for (const auto& [from, to] : net.flow) {
        std::string f = (from == q) ? p : from;
        std::string t = (to == q) ? p : to;
        updated.insert({f, t});
    }
    net.flow = std::move(updated);
    net.places.erase(q);
}

}  // namespace

namespace {

/// One fusion pass to fixpoint. Merged places keep the predecessor's name;
/// `merged` records which original place each surviving token slot absorbed
/// (q -> p), so callers can re-point a final-place designation. The initial
/// place must keep an empty preset and the final place an empty postset, so
/// fusions that would leak arcs onto them demand full exclusivity.
LabeledNet fuse_series_places_impl(const LabeledNet& net, const std::string& initial,
                                   const std::string& final_place,
                                   std::map<std::string, std::string>& merged) {
    LabeledNet out = net;
    auto resolve = [&](const std::string& place) {
        std::string at = place;
        while (merged.count(at)) at = merged.at(at);
        return at;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : std::vector<std::string>(out.transitions.begin(), out.transitions.end())) {
            if (!out.is_silent(t)) continue;
            auto pre = out.preset(t);
            auto post = out.postset(t);
            if (pre.size() != 1 || post.size() != 1) continue;
            const std::string p = *pre.begin();
            const std::string q = *post.begin();
            if (p == q) continue;
            bool p_exclusive = out.postset(p) == std::set<std::string>{t};
            bool q_exclusive = out.preset(q) == std::set<std::string>{t};
            if (!p_exclusive && !q_exclusive) continue;
            if (p == resolve(initial) && !q_exclusive) continue;      // would gain a preset
            if (q == resolve(final_place) && !p_exclusive) continue;  // would gain a postset
            out.transitions.erase(t);
            out.labels.erase(t);
            std::set<std::pair<std::string, std::string>> kept;
            for (const auto& arc : out.flow)
                if (arc.first != t && arc.second != t) kept.insert(arc);
            out.flow = std::move(kept);
            merge_places(out, p, q);
            merged[q] = p;
            changed = true;
            break;
        }
    }
    return out;
}

}  // namespace

LabeledNet fuse_series_places(const LabeledNet& net) {
    std::map<std::string, std::string> merged;
    return fuse_series_places_impl(net, {}, {}, merged);
}

WorkflowNet fuse_series_places(const WorkflowNet& wfnet) {
    WorkflowNet out = wfnet;
    std::map<std::string, std::string> merged;
    out.net = fuse_series_places_impl(wfnet.net, wfnet.initial_place, wfnet.final_place, merged);
    // The fused successor always has a preset, so only the final designation
    // can move; chase the merge chain to the surviving place.
    while (merged.count(out.final_place)) out.final_place = merged.at(out.final_place);
    return out;
}

WorkflowNet refine_transition(const WorkflowNet& host, const std::string& transition,
                              const WorkflowNet& sub) {
    if (!host.net.transitions.count(transition))
        throw std::runtime_error("no such transition to refine: " + transition);
    if (host.net.is_silent(transition))
        throw std::runtime_error("refusing to refine silent transition: " + transition);

    WorkflowNet out = host;
    auto renamed = [&](const std::string& node) { return transition + "::" + node; };

    std::set<std::string> pre = host.net.preset(transition);
    std::set<std::string> post = host.net.postset(transition);

    out.net.transitions.erase(transition);
    out.net.labels.erase(transition);
    std::set<std::pair<std::string, std::string>> kept;
    for (const auto& arc : out.net.flow)
        if (arc.first != transition && arc.second != transition) kept.insert(arc);
    out.net.flow = std::move(kept);

    for (const auto& p : sub.net.places) out.net.add_place(renamed(p));
    for (const auto& t : sub.net.transitions) out.net.add_transition(renamed(t), sub.net.label_of(t));
    for (const auto& [from, to] : sub.net.flow) out.net.flow.insert({renamed(from), renamed(to)});

    const std::string enter = transition + "::enter";
    const std::string exit = transition + "::exit";
    out.net.add_transition(enter, kSilent);
    out.net.add_transition(exit, kSilent);
    for (const auto& p : pre) out.net.add_arc(p, enter);
    out.net.add_arc(enter, renamed(sub.initial_place));
    out.net.add_arc(renamed(sub.final_place), exit);
    for (const auto& p : post) out.net.add_arc(exit, p);
    return out;
}

WorkflowNet rewrite_labels_to_activity(const WorkflowNet& wfnet) {
    if (wfnet.discipline != LabelDiscipline::Mas && wfnet.discipline != LabelDiscipline::Agent)
        throw std::runtime_error("label rewrite requires a net with (agent, activity) labels");
    WorkflowNet out = wfnet;
    for (auto& [t, label] : out.net.labels) {
        if (label == kSilent) continue;
        label = decode_pair_label(label).second;
    }
    out.discipline = LabelDiscipline::Plain;
    return out;
}

std::size_t net_size(const LabeledNet& net) {
    return net.places.size() + net.transitions.size() + net.flow.size();
}

}  // namespace am
