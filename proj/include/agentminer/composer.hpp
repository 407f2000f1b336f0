#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agentminer/event_log.hpp"
#include "agentminer/petri_net.hpp"

namespace am {

/// Pluggable discovery algorithms: an agent-net discoverer (parameterized by
/// the activity frequency filter) and an interaction-net discoverer
/// (parameterized by its noise threshold).
using AgentNetDiscovery = std::function<WorkflowNet(const EventLog&, double ff)>;
using InteractionNetDiscovery = std::function<WorkflowNet(const EventLog&, double threshold)>;

/// Default ANDA: the agent log's directly-follows graph, frequency-filtered,
/// translated to a workflow net and reduced by Fusion of Series Places.
WorkflowNet dfg_anda(const EventLog& log, double ff);

/// Default INDA: inductive discovery with the given noise threshold.
WorkflowNet inductive_inda(const EventLog& log, double threshold);

/// The three outputs of a discovery run plus the parameters that produced
/// them.
struct DiscoveryBundle {
    WorkflowNet interaction_net;
    std::map<std::string, WorkflowNet> agent_nets;  // agent (type) -> net
    WorkflowNet mas_net;
    double ff = 1.0;
    double th = 0.0;
    std::vector<std::string> warnings;
};

class IterationRemovalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Prunes silent back-edges that let an observable transition re-fire with
/// no other observable in between. A deletion is kept only when the net
/// stays a workflow net and no repeat-free behavior is lost (interaction
/// traces never repeat an agent, so such behavior is spurious). Throws
/// IterationRemovalError when iterations exist but none can be removed.
WorkflowNet remove_observable_iterations(const WorkflowNet& inet,
                                         std::size_t state_bound = kDefaultStateBound);

struct DiscoveryOptions {
    double ff = 1.0;
    double th = 0.0;
    bool remove_iterations = true;
    std::size_t state_bound = kDefaultStateBound;
    AgentNetDiscovery anda = dfg_anda;
    InteractionNetDiscovery inda = inductive_inda;
};

/// Runs the six discovery steps: agent trace set, interaction log, i-net
/// (INDA plus iteration removal), agent logs, agent nets (ANDA on
/// ff-filtered agent logs), and the MAS net (refinement of every observable
/// i-net transition followed by Fusion of Series Places).
DiscoveryBundle discover(const EventSelection& selection, const DiscoveryOptions& options = {});

struct NetVerdict {
    std::string name;
    bool safe = false;
    bool sound = false;
    std::string error;  // nonempty when the state bound was exceeded
};

struct BundleReport {
    std::vector<NetVerdict> verdicts;
    bool all_safe_and_sound() const;
};

BundleReport verify_bundle(const DiscoveryBundle& bundle,
                           std::size_t state_bound = kDefaultStateBound);

/// Writes one PNML and one DOT file per net plus a JSON manifest with the
/// parameters and per-net size/verdicts into `directory`.
void export_bundle(const DiscoveryBundle& bundle, const std::string& directory,
                   std::size_t state_bound = kDefaultStateBound);

}  // namespace am
