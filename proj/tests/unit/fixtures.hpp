#pragma once

// Shared fixtures and independent oracles for the test suites.
//
// The 20-event running example covers two health-surveillance cases handled
// by three agent types: checks and prescriptions by a1, tests by a2, and a
// three-round therapy block by a3. Events are lettered a..t in id order, so
// expected traces read as letter strings.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "agentminer/conformance.hpp"
#include "agentminer/event_log.hpp"
#include "agentminer/log_io.hpp"
#include "agentminer/petri_net.hpp"

namespace fixtures {

inline std::string table1_csv(bool typed) {
    const char* d1 = typed ? "a1" : "d1";
    const char* d3 = typed ? "a3" : "d3";
    const char* d4 = typed ? "a2" : "d4";
    std::string rows[20][4] = {
        {"case1", "check", d1, "2023-03-30T16:34:00"},
        {"case1", "analyze", d1, "2023-03-30T16:35:00"},
        {"case2", "check", d1, "2023-03-31T16:35:00"},
        {"case2", "analyze", d1, "2023-04-01T08:22:00"},
        {"case1", "prescribe", d1, "2023-04-01T16:05:00"},
        {"case1", "B-test", d4, "2023-04-03T11:55:00"},
        {"case1", "X-ray", d4, "2023-04-03T16:59:00"},
        {"case1", "physio", d3, "2023-04-06T10:02:00"},
        {"case1", "swim", d3, "2023-04-06T11:01:00"},
        {"case1", "yoga", d3, "2023-04-07T11:11:00"},
        {"case1", "physio", d3, "2023-04-07T15:55:00"},
        {"case1", "swim", d3, "2023-04-10T13:13:00"},
        {"case1", "yoga", d3, "2023-04-10T15:05:00"},
        {"case1", "physio", d3, "2023-04-11T09:12:00"},
        {"case1", "swim", d3, "2023-04-11T10:05:00"},
        {"case1", "yoga", d3, "2023-04-13T11:03:00"},
        {"case1", "check", d1, "2023-04-13T14:57:00"},
        {"case1", "analyze", d1, "2023-04-16T12:11:00"},
        {"case1", "prescribe", d1, "2023-04-17T10:03:00"},
        {"case2", "prescribe", d1, "2023-04-17T16:36:00"},
    };
    std::string csv = "case,activity,agent,timestamp\n";
    for (const auto& row : rows)
        csv += row[0] + "," + row[1] + "," + row[2] + "," + row[3] + "\n";
    return csv;
}

inline am::EventSelection table1(bool typed = true) {
    return am::parse_csv_text(table1_csv(typed));
}

/// Events of the running example are identified by letters a..t in row
/// order, which is also id order.
inline char letter_of(const am::Event& e) { return static_cast<char>('a' + e.id - 1); }

inline std::string letters_of(const am::Trace& trace) {
    std::string out;
    for (const am::Event& e : trace) out.push_back(letter_of(e));
    return out;
}

inline std::set<std::string> letters_of(const std::vector<am::Trace>& traces) {
    std::set<std::string> out;
    for (const auto& t : traces) out.insert(letters_of(t));
    return out;
}

inline std::set<char> letters_of(const am::EventSelection& selection) {
    std::set<char> out;
    for (const am::Event& e : selection.events()) out.insert(letter_of(e));
    return out;
}

// ---- hand-built nets from the running example ----

/// The small interaction net: a1 first, then any number of a2-a3-a1 rounds.
/// Language over agents: a1 (a2 a3 a1)*.
inline am::WorkflowNet small_inet() {
    am::WorkflowNet wf;
    wf.discipline = am::LabelDiscipline::Interaction;
    for (const char* p : {"p1", "p2", "p3", "p4", "p5"}) wf.net.add_place(p);
    wf.net.add_transition("t1", "");
    wf.net.add_transition("t2", "a3");
    wf.net.add_transition("t3", "a2");
    wf.net.add_transition("t4", "");
    wf.net.add_transition("t5", "a1");
    wf.net.add_arc("p1", "t1");
    wf.net.add_arc("t1", "p2");
    wf.net.add_arc("p2", "t5");
    wf.net.add_arc("t5", "p4");
    wf.net.add_arc("p4", "t3");
    wf.net.add_arc("t3", "p3");
    wf.net.add_arc("p3", "t2");
    wf.net.add_arc("t2", "p2");
    wf.net.add_arc("p4", "t4");
    wf.net.add_arc("t4", "p5");
    wf.initial_place = "p1";
    wf.final_place = "p5";
    return wf;
}

/// The large interaction net: a1, then either finish or run a2 and a3 in
/// parallel and hand back to a1.
inline am::WorkflowNet parallel_inet() {
    am::WorkflowNet wf;
    wf.discipline = am::LabelDiscipline::Interaction;
    for (const char* p : {"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"}) wf.net.add_place(p);
    wf.net.add_transition("t1", "");
    wf.net.add_transition("t2", "");
    wf.net.add_transition("t3", "a3");
    wf.net.add_transition("t4", "a2");
    wf.net.add_transition("t5", "a1");
    wf.net.add_transition("t6", "");
    wf.net.add_transition("t7", "");
    wf.net.add_arc("p1", "t1");
    wf.net.add_arc("t1", "p2");
    wf.net.add_arc("p2", "t5");
    wf.net.add_arc("t5", "p7");
    wf.net.add_arc("p7", "t6");
    wf.net.add_arc("p7", "t7");
    wf.net.add_arc("t6", "p5");
    wf.net.add_arc("t6", "p6");
    wf.net.add_arc("p5", "t3");
    wf.net.add_arc("p6", "t4");
    wf.net.add_arc("t3", "p3");
    wf.net.add_arc("t4", "p4");
    wf.net.add_arc("p3", "t2");
    wf.net.add_arc("p4", "t2");
    wf.net.add_arc("t2", "p2");
    wf.net.add_arc("t7", "p8");
    wf.initial_place = "p1";
    wf.final_place = "p8";
    return wf;
}

/// Agent net a1: check -> analyze -> prescribe, one straight line.
inline am::WorkflowNet agent_net_a1() {
    am::WorkflowNet wf;
    wf.discipline = am::LabelDiscipline::Agent;
    for (const char* p : {"p1", "p2", "p3", "p4"}) wf.net.add_place(p);
    wf.net.add_transition("t1", am::encode_pair_label("a1", "check"));
    wf.net.add_transition("t2", am::encode_pair_label("a1", "analyze"));
    wf.net.add_transition("t3", am::encode_pair_label("a1", "prescribe"));
    wf.net.add_arc("p1", "t1");
    wf.net.add_arc("t1", "p2");
    wf.net.add_arc("p2", "t2");
    wf.net.add_arc("t2", "p3");
    wf.net.add_arc("p3", "t3");
    wf.net.add_arc("t3", "p4");
    wf.initial_place = "p1";
    wf.final_place = "p4";
    return wf;
}

/// Workflow net over a1's four activities with an internal rework loop:
/// language (c a p)^k (c d | nothing more after a final c a p run), i.e.
/// check/analyze rounds with prescribe, ending by discharge or after a
/// prescription.
inline am::WorkflowNet doctor_net() {
    am::WorkflowNet wf;
    for (const char* p : {"p1", "p2", "p3", "p4", "p5", "p6"}) wf.net.add_place(p);
    wf.net.add_transition("t1", "");
    wf.net.add_transition("t2", "check");
    wf.net.add_transition("t3", "prescribe");
    wf.net.add_transition("t4", "");
    wf.net.add_transition("t5", "discharge");
    wf.net.add_transition("t6", "analyze");
    wf.net.add_transition("t7", "");
    wf.net.add_arc("p1", "t1");
    wf.net.add_arc("t1", "p2");
    wf.net.add_arc("p2", "t2");
    wf.net.add_arc("t2", "p3");
    wf.net.add_arc("p3", "t5");
    wf.net.add_arc("t5", "p6");
    wf.net.add_arc("p3", "t6");
    wf.net.add_arc("t6", "p4");
    wf.net.add_arc("p4", "t3");
    wf.net.add_arc("t3", "p5");
    wf.net.add_arc("p5", "t4");
    wf.net.add_arc("t4", "p2");
    wf.net.add_arc("p5", "t7");
    wf.net.add_arc("t7", "p6");
    wf.initial_place = "p1";
    wf.final_place = "p6";
    return wf;
}

/// Agent net a3: (physio swim yoga)+ with a silent loop back.
inline am::WorkflowNet agent_net_a3() {
    am::WorkflowNet wf;
    wf.discipline = am::LabelDiscipline::Agent;
    for (const char* p : {"p1", "p2", "p3", "p4", "p5", "p6"}) wf.net.add_place(p);
    wf.net.add_transition("t1", "");
    wf.net.add_transition("t2", am::encode_pair_label("a3", "physio"));
    wf.net.add_transition("t3", am::encode_pair_label("a3", "swim"));
    wf.net.add_transition("t4", am::encode_pair_label("a3", "yoga"));
    wf.net.add_transition("t5", "");
    wf.net.add_transition("t6", "");
    wf.net.add_arc("p1", "t1");
    wf.net.add_arc("t1", "p2");
    wf.net.add_arc("p2", "t2");
    wf.net.add_arc("t2", "p3");
    wf.net.add_arc("p3", "t3");
    wf.net.add_arc("t3", "p4");
    wf.net.add_arc("p4", "t4");
    wf.net.add_arc("t4", "p5");
    wf.net.add_arc("p5", "t5");
    wf.net.add_arc("t5", "p6");
    wf.net.add_arc("p5", "t6");
    wf.net.add_arc("t6", "p2");
    wf.initial_place = "p1";
    wf.final_place = "p6";
    return wf;
}

// ---- independent oracles ----

/// Number of walks of each length from the initial state in the
/// short-circuited automaton graph (transitions plus one loop per accepting
/// state back to the initial state). Independent of the entropy code path.
inline std::vector<double> short_circuit_walk_counts(const am::Dfa& dfa, std::size_t max_length) {
    std::size_t n = dfa.state_count();
    std::vector<std::vector<double>> adjacency(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& [sym, to] : dfa.next[s]) adjacency[s][static_cast<std::size_t>(to)] += 1.0;
    for (std::size_t s = 0; s < n; ++s)
        if (dfa.accepting[s]) adjacency[s][static_cast<std::size_t>(dfa.initial)] += 1.0;

    std::vector<double> current(n, 0.0);
    current[static_cast<std::size_t>(dfa.initial)] = 1.0;
    std::vector<double> counts;  // counts[k] = walks of length k+1
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<double> next(n, 0.0);
        for (std::size_t u = 0; u < n; ++u) {
            if (current[u] == 0.0) continue;
            for (std::size_t v = 0; v < n; ++v) next[v] += current[u] * adjacency[u][v];
        }
        current = std::move(next);
        double total = 0.0;
        for (double c : current) total += c;
        counts.push_back(total);
    }
    return counts;
}

/// Brute-force nondominated filter used to check pareto_front.
struct RawPoint {
    double x, y;
    std::string id;
};
inline std::vector<RawPoint> brute_force_front(const std::vector<RawPoint>& points,
                                               bool minimize_x) {
    auto gain = [&](const RawPoint& p) { return minimize_x ? -p.x : p.x; };
    std::vector<RawPoint> front;
    for (const auto& p : points) {
        bool dominated = false;
        for (const auto& q : points)
            if ((gain(q) >= gain(p) && q.y > p.y) || (gain(q) > gain(p) && q.y >= p.y))
                dominated = true;
        if (!dominated) front.push_back(p);
    }
    return front;
}

/// Direct implementation of the agent-trace relation: two events are
/// related iff same agent, same case, and no event of the same case by a
/// different agent lies strictly between them. Used as an oracle for the
/// cut-on-agent-change construction.
inline std::vector<std::vector<std::uint64_t>> pairwise_agent_parts(const am::EventSelection& s) {
    const auto& events = s.events();
    std::size_t n = events.size();
    auto related = [&](std::size_t i, std::size_t j) {
        if (events[i].agent != events[j].agent) return false;
        if (events[i].case_id != events[j].case_id) return false;
        std::int64_t lo = std::min(events[i].timestamp_us, events[j].timestamp_us);
        std::int64_t hi = std::max(events[i].timestamp_us, events[j].timestamp_us);
        for (std::size_t k = 0; k < n; ++k) {
            if (events[k].timestamp_us <= lo || events[k].timestamp_us >= hi) continue;
            if (events[k].case_id == events[i].case_id && events[k].agent != events[i].agent)
                return false;
        }
        return true;
    };
    // Union-find over the relation.
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (related(i, j)) parent[find(i)] = find(j);
    std::map<std::size_t, std::vector<std::size_t>> parts;
    for (std::size_t i = 0; i < n; ++i) parts[find(i)].push_back(i);
    std::vector<std::vector<std::uint64_t>> out;
    for (auto& [root, members] : parts) {
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return am::event_before(events[a], events[b]);
        });
        std::vector<std::uint64_t> ids;
        for (std::size_t m : members) ids.push_back(events[m].id);
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- random log generation for property tests ----

struct RandomLogParams {
    std::size_t agent_types = 3;
    std::size_t activities = 6;
    std::size_t traces = 16;
    std::size_t max_segments = 5;
    std::size_t max_segment_length = 3;
    std::uint64_t seed = 1;
};

/// Multi-agent log: each activity belongs to one agent type; every case is a
/// sequence of agent segments with no immediate agent repetition. Handovers
/// follow a per-log random graph (a random agent permutation as a backbone
/// plus a few extra edges), so the logs carry sequence, choice and loop
/// structure rather than uniform alternation.
inline am::EventSelection random_multi_agent_log(const RandomLogParams& params) {
    std::mt19937_64 rng(params.seed);
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    std::size_t types = params.agent_types;
    std::vector<std::string> agents;
    for (std::size_t a = 0; a < types; ++a) agents.push_back("g" + std::to_string(a + 1));
    std::vector<std::vector<std::string>> owned(types);
    for (std::size_t act = 0; act < params.activities; ++act) {
        std::size_t owner = act < types ? act : below(types);
        owned[owner].push_back("act" + std::to_string(act + 1));
    }

    // Handover structure: a random permutation chain plus ~types extra edges.
    std::vector<std::size_t> backbone(types);
    for (std::size_t a = 0; a < types; ++a) backbone[a] = a;
    for (std::size_t a = types; a > 1; --a) std::swap(backbone[a - 1], backbone[below(a)]);
    std::vector<std::set<std::size_t>> successors(types);
    for (std::size_t i = 0; i + 1 < types; ++i) successors[backbone[i]].insert(backbone[i + 1]);
    for (std::size_t extra = 0; extra < types; ++extra) {
        std::size_t from = below(types), to = below(types);
        if (from != to) successors[from].insert(to);
    }

    std::vector<am::Event> events;
    std::uint64_t next_id = 1;
    std::int64_t clock = 1600000000000000;
    for (std::size_t c = 0; c < params.traces; ++c) {
        std::string case_id = "c" + std::to_string(c + 1);
        std::size_t segments = 1 + below(params.max_segments);
        std::size_t agent = backbone[0];
        for (std::size_t s = 0; s < segments; ++s) {
            if (!owned[agent].empty()) {
                std::size_t length = 1 + below(params.max_segment_length);
                for (std::size_t e = 0; e < length; ++e) {
                    clock += 1 + static_cast<std::int64_t>(below(1000));
                    events.push_back(am::Event{next_id++, clock, case_id,
                                               owned[agent][below(owned[agent].size())],
                                               agents[agent], {}});
                }
            }
            std::vector<std::size_t> candidates(successors[agent].begin(),
                                                successors[agent].end());
            if (candidates.empty()) break;
            agent = candidates[below(candidates.size())];
        }
        if (events.empty() || events.back().case_id != case_id) {
            // Guarantee a nonempty case.
            clock += 1;
            std::size_t fallback = backbone[0];
            if (owned[fallback].empty())
                for (std::size_t a = 0; a < types; ++a)
                    if (!owned[a].empty()) fallback = a;
            events.push_back(
                am::Event{next_id++, clock, case_id, owned[fallback][0], agents[fallback], {}});
        }
    }
    return am::EventSelection(std::move(events));
}

}  // namespace fixtures
