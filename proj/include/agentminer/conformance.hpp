#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agentminer/event_log.hpp"
#include "agentminer/petri_net.hpp"

namespace am {

/// Deterministic finite automaton with a partial transition function
/// (a missing entry rejects). Symbols are indices into `alphabet`.
struct Dfa {
    std::vector<std::string> alphabet;
    std::vector<std::map<int, int>> next;  // per state: symbol -> state
    int initial = 0;
    std::vector<bool> accepting;

    std::size_t state_count() const { return next.size(); }
    bool accepts(const std::vector<std::string>& word) const;
    bool language_empty() const;

    /// Words of the language up to the given length, in shortlex order.
    /// Intended for desk-scale checks.
    std::vector<std::vector<std::string>> words_up_to(std::size_t max_length,
                                                      std::size_t max_words = 100000) const;
};

/// Prefix-tree acceptor of the log's label sequences (set semantics).
Dfa log_automaton(const EventLog& log);
Dfa sequences_automaton(const std::vector<std::vector<std::string>>& sequences);

/// Observable language of a workflow net: reachability graph, silent-step
/// closure, subset construction, trimmed to states on accepting paths.
/// Throws BoundExceededError on state explosion and std::runtime_error on
/// unsafe nets.
Dfa model_automaton(const WorkflowNet& wfnet, std::size_t state_bound = kDefaultStateBound);

/// Product automaton over the union alphabet, accepting the intersection
/// language, trimmed.
Dfa intersect(const Dfa& a, const Dfa& b);

/// Keeps only states that lie on a path from the initial state to an
/// accepting state. An empty language collapses to one rejecting state.
Dfa trim(const Dfa& dfa);

/// Moore partition refinement.
Dfa minimize(const Dfa& dfa);

/// Language equality.
bool equivalent(const Dfa& a, const Dfa& b);

/// Accepts exactly the words without two consecutive equal symbols.
Dfa repeat_free_dfa(const std::vector<std::string>& alphabet);

/// Topological entropy of the language: the natural log of the largest
/// spectral radius over the strongly connected components of the
/// short-circuited automaton graph (accepting states looped back to the
/// initial state over a fresh symbol). Empty language: 0.
double topological_entropy(const Dfa& dfa);
/// Same quantity via a dense eigenvalue solver; states capped at 4096.
double topological_entropy_dense(const Dfa& dfa);

struct QualityReport {
    double recall = 0.0;
    double precision = 0.0;
    std::size_t size = 0;
    double ent_log = 0.0;
    double ent_model = 0.0;
    double ent_intersection = 0.0;
};

/// Entropy-based recall and precision of a net against a log's case traces:
/// recall = ent(model ∩ log) / ent(log), precision = ent(model ∩ log) /
/// ent(model), with 0/0 = 1. The report also carries net_size(wfnet).
QualityReport measure(const WorkflowNet& wfnet, const EventLog& log,
                      std::size_t state_bound = kDefaultStateBound);

}  // namespace am
