#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace am {

/// Silent transitions carry the empty label.
inline const std::string kSilent{};

enum class LabelDiscipline {
    Plain,        // no constraint on observable labels
    Interaction,  // labels are agent identifiers
    Mas,          // labels are encoded (agent, activity) pairs
    Agent,        // Mas restricted to a single agent
};

/// A labeled Petri net. Place and transition ids live in disjoint name
/// spaces (enforced by validate()). Flow arcs connect places to transitions
/// or transitions to places only.
struct LabeledNet {
    std::set<std::string> places;
    std::set<std::string> transitions;
    std::set<std::pair<std::string, std::string>> flow;  // (source, target)
    std::map<std::string, std::string> labels;           // transition -> label, kSilent if silent

    bool is_place(const std::string& node) const { return places.count(node) > 0; }
    bool is_transition(const std::string& node) const { return transitions.count(node) > 0; }
    bool is_silent(const std::string& transition) const;
    const std::string& label_of(const std::string& transition) const;

    std::set<std::string> preset(const std::string& node) const;
    std::set<std::string> postset(const std::string& node) const;

    void add_place(const std::string& id);
    void add_transition(const std::string& id, const std::string& label);
    void add_arc(const std::string& from, const std::string& to);

    /// Checks the structural invariants; throws std::runtime_error on the
    /// first violation.
    void validate() const;
};

/// A marking: multiset over places. Missing entries mean zero tokens.
using Marking = std::map<std::string, std::uint32_t>;

/// A workflow net: a labeled net with dedicated initial and final places.
struct WorkflowNet {
    LabeledNet net;
    std::string initial_place;
    std::string final_place;
    LabelDiscipline discipline = LabelDiscipline::Plain;

    Marking initial_marking() const { return Marking{{initial_place, 1}}; }

    /// Structural workflow-net conditions: initial place with empty preset,
    /// final place with empty postset, every node on a directed walk from
    /// initial to final. Returns an empty string when all hold, otherwise a
    /// description of the first violation.
    std::string structural_issue() const;
    bool is_structurally_valid() const { return structural_issue().empty(); }
};

std::set<std::string> enabled(const LabeledNet& net, const Marking& marking);
bool is_enabled(const LabeledNet& net, const Marking& marking, const std::string& transition);

/// Fires an enabled transition; throws if it is not enabled.
Marking fire(const LabeledNet& net, const Marking& marking, const std::string& transition);

/// Thrown when a state-space exploration exceeds its marking budget.
class BoundExceededError : public std::runtime_error {
public:
    explicit BoundExceededError(std::size_t count)
        : std::runtime_error("state bound exceeded after " + std::to_string(count) +
                             " distinct markings"),
          count_(count) {}
    std::size_t count() const { return count_; }

private:
    std::size_t count_;
};

struct ReachabilityGraph {
    struct Edge {
        std::size_t from;
        std::string transition;
        std::size_t to;
    };
    std::vector<Marking> markings;  // index 0 is the initial marking
    std::vector<Edge> edges;
};

constexpr std::size_t kDefaultStateBound = 200000;

/// All markings reachable from the initial marking of `wfnet`, with
/// transition-labeled edges. Throws BoundExceededError when more than
/// `state_bound` distinct markings appear.
ReachabilityGraph reachability_graph(const WorkflowNet& wfnet,
                                     std::size_t state_bound = kDefaultStateBound);

/// True iff every reachable marking has at most one token per place.
bool is_safe(const WorkflowNet& wfnet, std::size_t state_bound = kDefaultStateBound);

/// True iff from every reachable marking the marking {final} is reachable
/// and every transition occurs in some run from {initial}.
bool is_sound(const WorkflowNet& wfnet, std::size_t state_bound = kDefaultStateBound);

/// Fusion of Series Places: wherever a silent transition is the sole link
/// between two places and at least one side of the link is exclusive
/// (the input place has no other consumer, or the output place no other
/// producer), the two places merge and the silent transition disappears.
/// Repeats to fixpoint. Preserves the observable initial-to-final language.
LabeledNet fuse_series_places(const LabeledNet& net);
WorkflowNet fuse_series_places(const WorkflowNet& wfnet);

/// Replaces observable transition `t` of `host` with a disjointly renamed
/// copy of `sub`, stitched in with silent enter/exit transitions.
WorkflowNet refine_transition(const WorkflowNet& host, const std::string& transition,
                              const WorkflowNet& sub);

/// Rewrites encoded (agent, activity) labels to the activity part. Requires
/// the Mas (or Agent) label discipline.
WorkflowNet rewrite_labels_to_activity(const WorkflowNet& wfnet);

/// |P| + |T| + |F|.
std::size_t net_size(const LabeledNet& net);
inline std::size_t net_size(const WorkflowNet& wfnet) { return net_size(wfnet.net); }

}  // namespace am
