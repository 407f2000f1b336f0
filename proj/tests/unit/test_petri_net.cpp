#include <doctest.h>

#include <deque>
#include <random>

#include "agentminer/conformance.hpp"
#include "agentminer/petri_io.hpp"
#include "agentminer/petri_net.hpp"
#include "fixtures.hpp"

using namespace am;

namespace {

WorkflowNet chain_net() {
    // i -> t -> f, one observable transition labeled "a".
    WorkflowNet wf;
    wf.net.add_place("i");
    wf.net.add_place("f");
    wf.net.add_transition("t", "a");
    wf.net.add_arc("i", "t");
    wf.net.add_arc("t", "f");
    wf.initial_place = "i";
    wf.final_place = "f";
    return wf;
}

/// Exhaustive enumeration oracle: explores markings with a plain recursive
/// sweep, independent of the indexed exploration in the library.
struct Enumerated {
    std::vector<Marking> markings;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    std::map<std::string, bool> fired;
};

Enumerated enumerate_markings(const WorkflowNet& wf, std::size_t cap = 20000) {
    Enumerated out;
    for (const auto& t : wf.net.transitions) out.fired[t] = false;
    std::map<Marking, std::size_t> index;
    std::deque<Marking> queue{wf.initial_marking()};
    index[wf.initial_marking()] = 0;
    out.markings.push_back(wf.initial_marking());
    while (!queue.empty()) {
        Marking m = queue.front();
        queue.pop_front();
        std::size_t from = index.at(m);
        for (const auto& t : enabled(wf.net, m)) {
            Marking next = fire(wf.net, m, t);
            out.fired[t] = true;
            auto [it, inserted] = index.emplace(next, out.markings.size());
            if (inserted) {
                out.markings.push_back(next);
                REQUIRE(out.markings.size() <= cap);
                queue.push_back(next);
            }
            out.edges.insert({from, it->second});
        }
    }
    return out;
}

bool oracle_safe(const WorkflowNet& wf) {
    for (const Marking& m : enumerate_markings(wf).markings)
        for (const auto& [p, count] : m)
            if (count > 1) return false;
    return true;
}

bool oracle_sound(const WorkflowNet& wf) {
    Enumerated e = enumerate_markings(wf);
    Marking target{{wf.final_place, 1}};
    std::size_t final_index = e.markings.size();
    for (std::size_t i = 0; i < e.markings.size(); ++i)
        if (e.markings[i] == target) final_index = i;
    if (final_index == e.markings.size()) return false;
    // Repeated sweeps instead of a worklist, as an independent route.
    std::vector<bool> completes(e.markings.size(), false);
    completes[final_index] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [from, to] : e.edges)
            if (completes[to] && !completes[from]) {
                completes[from] = true;
                changed = true;
            }
    }
    for (bool ok : completes)
        if (!ok) return false;
    for (const auto& [t, fired] : e.fired)
        if (!fired) return false;
    return true;
}

}  // namespace

TEST_CASE("enabled and fire on the parallel interaction net") {
    WorkflowNet wf = fixtures::parallel_inet();
    Marking m0 = wf.initial_marking();
    CHECK(enabled(wf.net, m0) == std::set<std::string>{"t1"});
    Marking m1 = fire(wf.net, m0, "t1");
    CHECK(m1 == Marking{{"p2", 1}});
    CHECK_THROWS_WITH_AS(fire(wf.net, m0, "t5"), doctest::Contains("not enabled"),
                         std::runtime_error);
}

TEST_CASE("transition with empty preset is always enabled") {
    LabeledNet net;
    net.add_place("p");
    net.add_transition("t", "x");
    net.add_arc("t", "p");
    CHECK(enabled(net, Marking{}) == std::set<std::string>{"t"});
    CHECK(enabled(net, Marking{{"p", 3}}) == std::set<std::string>{"t"});
}

TEST_CASE("empty marking enables nothing when every preset is nonempty") {
    CHECK(enabled(fixtures::parallel_inet().net, Marking{}).empty());
}

TEST_CASE("self-loop fire keeps the token") {
    LabeledNet net;
    net.add_place("p");
    net.add_transition("t", "x");
    net.add_arc("p", "t");
    net.add_arc("t", "p");
    CHECK(fire(net, Marking{{"p", 1}}, "t") == Marking{{"p", 1}});
}

TEST_CASE("fire conserves tokens up to preset/postset sizes") {
    WorkflowNet wf = fixtures::parallel_inet();
    ReachabilityGraph graph = reachability_graph(wf);
    auto total = [](const Marking& m) {
        std::size_t n = 0;
        for (const auto& [p, c] : m) n += c;
        return n;
    };
    for (const auto& edge : graph.edges) {
        std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(wf.net.postset(edge.transition).size()) -
                               static_cast<std::ptrdiff_t>(wf.net.preset(edge.transition).size());
        CHECK(static_cast<std::ptrdiff_t>(total(graph.markings[edge.to])) -
                  static_cast<std::ptrdiff_t>(total(graph.markings[edge.from])) ==
              delta);
    }
}

TEST_CASE("reachability graph shapes") {
    SUBCASE("the small interaction net's root has one outgoing edge") {
        ReachabilityGraph graph = reachability_graph(fixtures::small_inet());
        std::size_t from_root = 0;
        for (const auto& e : graph.edges)
            if (e.from == 0) {
                ++from_root;
                CHECK(e.transition == "t1");
            }
        CHECK(from_root == 1);
    }
    SUBCASE("marked self-loop has one state and one edge") {
        WorkflowNet wf;
        wf.net.add_place("p");
        wf.net.add_transition("t", "x");
        wf.net.add_arc("p", "t");
        wf.net.add_arc("t", "p");
        wf.initial_place = "p";
        wf.final_place = "p";
        ReachabilityGraph graph = reachability_graph(wf);
        CHECK(graph.markings.size() == 1);
        CHECK(graph.edges.size() == 1);
    }
    SUBCASE("unbounded net hits the bound") {
        WorkflowNet wf;
        wf.net.add_place("p");
        wf.net.add_place("f");
        wf.net.add_transition("t", "x");
        wf.net.add_transition("u", "y");
        wf.net.add_arc("p", "t");
        wf.net.add_arc("t", "p");
        wf.net.add_arc("t", "p");  // duplicate arc collapses in a set; add a second place
        wf.net.add_place("q");
        wf.net.add_arc("t", "q");
        wf.net.add_arc("q", "u");
        wf.net.add_arc("u", "p");
        wf.net.add_arc("u", "f");
        wf.initial_place = "p";
        wf.final_place = "f";
        CHECK_THROWS_AS(reachability_graph(wf, 10), BoundExceededError);
    }
}

TEST_CASE("safeness") {
    CHECK(is_safe(fixtures::parallel_inet()));
    CHECK(is_safe(chain_net()));

    // Two tokens funnelled into one place.
    WorkflowNet funnel;
    funnel.net.add_place("i");
    funnel.net.add_place("a");
    funnel.net.add_place("b");
    funnel.net.add_place("joint");
    funnel.net.add_place("f");
    funnel.net.add_transition("split", "");
    funnel.net.add_transition("left", "l");
    funnel.net.add_transition("right", "r");
    funnel.net.add_transition("drain", "d");
    funnel.net.add_arc("i", "split");
    funnel.net.add_arc("split", "a");
    funnel.net.add_arc("split", "b");
    funnel.net.add_arc("a", "left");
    funnel.net.add_arc("b", "right");
    funnel.net.add_arc("left", "joint");
    funnel.net.add_arc("right", "joint");
    funnel.net.add_arc("joint", "drain");
    funnel.net.add_arc("drain", "f");
    funnel.initial_place = "i";
    funnel.final_place = "f";
    CHECK_FALSE(is_safe(funnel));
    CHECK(oracle_safe(funnel) == is_safe(funnel));
}

TEST_CASE("soundness") {
    CHECK(is_sound(fixtures::parallel_inet()));
    CHECK(is_sound(fixtures::small_inet()));
    CHECK(is_sound(fixtures::agent_net_a1()));
    CHECK(is_sound(fixtures::agent_net_a3()));
    CHECK(is_sound(fixtures::doctor_net()));
    CHECK(is_safe(fixtures::doctor_net()));

    SUBCASE("dead transition") {
        WorkflowNet wf = chain_net();
        wf.net.add_place("orphan");
        wf.net.add_transition("dead", "z");
        wf.net.add_arc("orphan", "dead");
        wf.net.add_arc("dead", "f");
        CHECK_FALSE(is_sound(wf));
        CHECK(oracle_sound(wf) == is_sound(wf));
    }
    SUBCASE("deadlock before the final place") {
        // A choice that can strand the token: left branch waits for a
        // partner token that is only produced on the right branch.
        WorkflowNet wf;
        for (const char* p : {"i", "a", "b", "f"}) wf.net.add_place(p);
        wf.net.add_transition("go_left", "l");
        wf.net.add_transition("go_right", "r");
        wf.net.add_transition("join", "j");
        wf.net.add_arc("i", "go_left");
        wf.net.add_arc("i", "go_right");
        wf.net.add_arc("go_left", "a");
        wf.net.add_arc("go_right", "a");
        wf.net.add_arc("go_right", "b");
        wf.net.add_arc("a", "join");
        wf.net.add_arc("b", "join");
        wf.net.add_arc("join", "f");
        wf.initial_place = "i";
        wf.final_place = "f";
        CHECK_FALSE(is_sound(wf));  // go_left strands the token in a
        CHECK(is_safe(wf));
        CHECK(oracle_sound(wf) == is_sound(wf));
        CHECK(oracle_safe(wf) == is_safe(wf));
    }
}

TEST_CASE("safety and soundness match exhaustive enumeration on fixtures") {
    std::vector<WorkflowNet> corpus{chain_net(), fixtures::small_inet(), fixtures::parallel_inet(),
                                    fixtures::agent_net_a1(), fixtures::agent_net_a3()};
    for (const auto& wf : corpus) {
        CHECK(oracle_safe(wf) == is_safe(wf));
        CHECK(oracle_sound(wf) == is_sound(wf));
    }
}

TEST_CASE("fusion of series places") {
    SUBCASE("definition instance collapses") {
        LabeledNet net;
        net.add_place("p");
        net.add_place("q");
        net.add_transition("tau", "");
        net.add_transition("in", "x");
        net.add_transition("out", "y");
        net.add_arc("in", "p");
        net.add_arc("p", "tau");
        net.add_arc("tau", "q");
        net.add_arc("q", "out");
        LabeledNet fused = fuse_series_places(net);
        CHECK(fused.places.size() == 1);
        CHECK(fused.transitions == std::set<std::string>{"in", "out"});
    }
    SUBCASE("no silent transitions, no change") {
        WorkflowNet wf = fixtures::agent_net_a1();
        CHECK(fuse_series_places(wf.net).flow == wf.net.flow);
    }
    SUBCASE("observable transitions are never fused") {
        LabeledNet net;
        net.add_place("p");
        net.add_place("q");
        net.add_transition("obs", "x");
        net.add_arc("p", "obs");
        net.add_arc("obs", "q");
        CHECK(fuse_series_places(net).places.size() == 2);
    }
    SUBCASE("language is preserved on the interaction nets") {
        for (const WorkflowNet& wf : {fixtures::small_inet(), fixtures::parallel_inet()}) {
            WorkflowNet fused = fuse_series_places(wf);
            CHECK(fused.is_structurally_valid());
            CHECK(equivalent(model_automaton(wf), model_automaton(fused)));
        }
    }
    SUBCASE("final place designation survives merging") {
        // i --a--> p --tau--> f : p and f fuse, final moves to the survivor.
        WorkflowNet wf;
        wf.net.add_place("i");
        wf.net.add_place("p");
        wf.net.add_place("f");
        wf.net.add_transition("a", "a");
        wf.net.add_transition("tau", "");
        wf.net.add_arc("i", "a");
        wf.net.add_arc("a", "p");
        wf.net.add_arc("p", "tau");
        wf.net.add_arc("tau", "f");
        wf.initial_place = "i";
        wf.final_place = "f";
        WorkflowNet fused = fuse_series_places(wf);
        CHECK(fused.net.places.size() == 2);
        CHECK(fused.net.places.count(fused.final_place) == 1);
        CHECK(fused.is_structurally_valid());
        CHECK(equivalent(model_automaton(wf), model_automaton(fused)));
    }
}

TEST_CASE("refine_transition") {
    SUBCASE("sequence in sequence") {
        WorkflowNet host = chain_net();
        WorkflowNet sub;
        sub.net.add_place("si");
        sub.net.add_place("sf");
        sub.net.add_transition("st", "inner");
        sub.net.add_arc("si", "st");
        sub.net.add_arc("st", "sf");
        sub.initial_place = "si";
        sub.final_place = "sf";

        WorkflowNet refined = refine_transition(host, "t", sub);
        CHECK(refined.net.places.size() + refined.net.transitions.size() == 7);
        CHECK(refined.is_structurally_valid());
        Dfa language = model_automaton(refined);
        CHECK(language.accepts({"inner"}));
        CHECK_FALSE(language.accepts({}));
        CHECK_FALSE(language.accepts({"inner", "inner"}));
    }
    SUBCASE("refining the running example's a1 transition") {
        WorkflowNet refined =
            refine_transition(fixtures::small_inet(), "t5", fixtures::agent_net_a1());
        CHECK(refined.is_structurally_valid());
        Dfa language = model_automaton(refined);
        std::string c = encode_pair_label("a1", "check");
        std::string a = encode_pair_label("a1", "analyze");
        std::string p = encode_pair_label("a1", "prescribe");
        CHECK(language.accepts({c, a, p}));
        CHECK(language.accepts({c, a, p, "a2", "a3", c, a, p}));
        CHECK_FALSE(language.accepts({c, a}));
    }
    SUBCASE("contract violations") {
        WorkflowNet host = fixtures::small_inet();
        CHECK_THROWS_AS(refine_transition(host, "t1", fixtures::agent_net_a1()),
                        std::runtime_error);  // silent
        CHECK_THROWS_AS(refine_transition(host, "missing", fixtures::agent_net_a1()),
                        std::runtime_error);
    }
    SUBCASE("refining with a one-transition net only relabels the host") {
        WorkflowNet host = fixtures::small_inet();
        WorkflowNet sub;
        sub.net.add_place("si");
        sub.net.add_place("sf");
        sub.net.add_transition("st", "fresh");
        sub.net.add_arc("si", "st");
        sub.net.add_arc("st", "sf");
        sub.initial_place = "si";
        sub.final_place = "sf";
        WorkflowNet refined = refine_transition(host, "t5", sub);

        WorkflowNet relabeled = host;
        relabeled.net.labels["t5"] = "fresh";
        CHECK(equivalent(model_automaton(relabeled), model_automaton(refined)));
    }
}

TEST_CASE("rewrite_labels_to_activity") {
    WorkflowNet a1 = fixtures::agent_net_a1();
    a1.discipline = LabelDiscipline::Mas;
    WorkflowNet rewritten = rewrite_labels_to_activity(a1);
    std::set<std::string> labels;
    for (const auto& [t, label] : rewritten.net.labels) labels.insert(label);
    CHECK(labels == std::set<std::string>{"check", "analyze", "prescribe"});

    SUBCASE("collisions are allowed") {
        WorkflowNet twin;
        twin.discipline = LabelDiscipline::Mas;
        twin.net.add_place("i");
        twin.net.add_place("m");
        twin.net.add_place("f");
        twin.net.add_transition("t1", encode_pair_label("a2", "X-ray"));
        twin.net.add_transition("t2", encode_pair_label("a4", "X-ray"));
        twin.net.add_arc("i", "t1");
        twin.net.add_arc("t1", "m");
        twin.net.add_arc("m", "t2");
        twin.net.add_arc("t2", "f");
        twin.initial_place = "i";
        twin.final_place = "f";
        WorkflowNet out = rewrite_labels_to_activity(twin);
        CHECK(out.net.label_of("t1") == "X-ray");
        CHECK(out.net.label_of("t2") == "X-ray");
    }
    SUBCASE("silent stays silent; wrong discipline rejected") {
        WorkflowNet a3 = fixtures::agent_net_a3();
        a3.discipline = LabelDiscipline::Mas;
        WorkflowNet out = rewrite_labels_to_activity(a3);
        CHECK(out.net.is_silent("t1"));
        WorkflowNet plain = chain_net();
        CHECK_THROWS_AS(rewrite_labels_to_activity(plain), std::runtime_error);
    }
    SUBCASE("all-silent net is unchanged") {
        WorkflowNet silent;
        silent.discipline = LabelDiscipline::Mas;
        silent.net.add_place("i");
        silent.net.add_place("f");
        silent.net.add_transition("t", kSilent);
        silent.net.add_arc("i", "t");
        silent.net.add_arc("t", "f");
        silent.initial_place = "i";
        silent.final_place = "f";
        CHECK(rewrite_labels_to_activity(silent).net.labels == silent.net.labels);
    }
}

TEST_CASE("net size") {
    CHECK(net_size(LabeledNet{}) == 0);
    CHECK(net_size(chain_net()) == 5);
    // Eight places, seven transitions, sixteen arcs in the parallel i-net.
    CHECK(net_size(fixtures::parallel_inet()) == 8 + 7 + 16);
}

TEST_CASE("pnml round trip") {
    for (const WorkflowNet& wf :
         {fixtures::small_inet(), fixtures::parallel_inet(), fixtures::agent_net_a3()}) {
        std::string path = "roundtrip.pnml";
        write_pnml(wf, path);
        WorkflowNet loaded = read_pnml(path);
        CHECK(loaded.net.places == wf.net.places);
        CHECK(loaded.net.transitions == wf.net.transitions);
        CHECK(loaded.net.flow == wf.net.flow);
        CHECK(loaded.net.labels == wf.net.labels);
        CHECK(loaded.initial_place == wf.initial_place);
        CHECK(loaded.final_place == wf.final_place);
    }
}

TEST_CASE("dot export mentions every node") {
    WorkflowNet wf = fixtures::small_inet();
    std::string dot = to_dot(wf);
    for (const auto& p : wf.net.places) CHECK(dot.find("\"" + p + "\"") != std::string::npos);
    CHECK(dot.find("fillcolor=black") != std::string::npos);  // silent transitions
    CHECK(dot.find("\"a1\"") != std::string::npos);
}
