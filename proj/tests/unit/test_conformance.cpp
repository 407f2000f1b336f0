#include <doctest.h>

#include <cmath>

#include "agentminer/conformance.hpp"
#include "agentminer/inductive.hpp"
#include "fixtures.hpp"

using namespace am;

namespace {

Dfa dfa_for(const std::vector<std::vector<std::string>>& words) {
    return sequences_automaton(words);
}

WorkflowNet chain_of(const std::vector<std::string>& labels) {
    WorkflowNet wf;
    wf.net.add_place("p0");
    wf.initial_place = "p0";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        wf.net.add_place("p" + std::to_string(i + 1));
        wf.net.add_transition("t" + std::to_string(i), labels[i]);
        wf.net.add_arc("p" + std::to_string(i), "t" + std::to_string(i));
        wf.net.add_arc("t" + std::to_string(i), "p" + std::to_string(i + 1));
    }
    wf.final_place = "p" + std::to_string(labels.size());
    return wf;
}

/// All-words automaton over the given alphabet (one accepting state with a
/// self loop per symbol) - the flower language.
Dfa universal_dfa(const std::vector<std::string>& alphabet) {
    Dfa dfa;
    dfa.alphabet = alphabet;
    dfa.next.emplace_back();
    dfa.accepting.push_back(true);
    for (std::size_t i = 0; i < alphabet.size(); ++i) dfa.next[0][static_cast<int>(i)] = 0;
    return dfa;
}

}  // namespace

TEST_CASE("log automaton is a trie with set semantics") {
    EventLog log;
    std::vector<Event> events{{1, 1, "c1", "a", "u", {}},
                              {2, 2, "c2", "a", "u", {}},
                              {3, 3, "c2", "b", "u", {}}};
    log.selection = EventSelection{events};
    log.traces = case_trace_set(log.selection);
    log.naming = NamingKind::ActivityOnly;
    Dfa dfa = log_automaton(log);
    CHECK(dfa.accepts({"a"}));
    CHECK(dfa.accepts({"a", "b"}));
    CHECK_FALSE(dfa.accepts({"b"}));
    CHECK(dfa.state_count() == 3);
    int accepting = 0;
    for (bool a : dfa.accepting) accepting += a ? 1 : 0;
    CHECK(accepting == 2);

    SUBCASE("multiplicity does not change the automaton") {
        Dfa one = dfa_for({{"a", "b"}});
        Dfa many = dfa_for(std::vector<std::vector<std::string>>(1000, {"a", "b"}));
        CHECK(equivalent(one, many));
    }
    SUBCASE("running example trie accepts two words of lengths 17 and 3") {
        EventLog table = case_log(fixtures::table1(), NamingKind::ActivityOnly);
        Dfa trie = log_automaton(table);
        std::set<std::size_t> lengths;
        for (const auto& word : trie.words_up_to(20)) lengths.insert(word.size());
        CHECK(lengths == std::set<std::size_t>{3, 17});
    }
}

TEST_CASE("model automaton") {
    SUBCASE("single chain accepts exactly its word") {
        Dfa dfa = model_automaton(chain_of({"a"}));
        CHECK(dfa.accepts({"a"}));
        CHECK_FALSE(dfa.accepts({}));
        CHECK_FALSE(dfa.accepts({"a", "a"}));
    }
    SUBCASE("the a3 agent net accepts (physio swim yoga)+") {
        Dfa dfa = model_automaton(fixtures::agent_net_a3());
        std::string p = encode_pair_label("a3", "physio");
        std::string s = encode_pair_label("a3", "swim");
        std::string y = encode_pair_label("a3", "yoga");
        std::set<std::vector<std::string>> got;
        for (const auto& word : dfa.words_up_to(9)) got.insert(word);
        std::set<std::vector<std::string>> expected{
            {p, s, y}, {p, s, y, p, s, y}, {p, s, y, p, s, y, p, s, y}};
        CHECK(got == expected);
    }
    SUBCASE("unsafe nets are rejected") {
        WorkflowNet funnel;
        for (const char* p : {"i", "a", "b", "m", "f"}) funnel.net.add_place(p);
        funnel.net.add_transition("split", "");
        funnel.net.add_transition("l", "l");
        funnel.net.add_transition("r", "r");
        funnel.net.add_transition("drain", "d");
        funnel.net.add_arc("i", "split");
        funnel.net.add_arc("split", "a");
        funnel.net.add_arc("split", "b");
        funnel.net.add_arc("a", "l");
        funnel.net.add_arc("b", "r");
        funnel.net.add_arc("l", "m");
        funnel.net.add_arc("r", "m");
        funnel.net.add_arc("m", "drain");
        funnel.net.add_arc("drain", "f");
        funnel.initial_place = "i";
        funnel.final_place = "f";
        CHECK_THROWS_WITH_AS(model_automaton(funnel), doctest::Contains("not safe"),
                             std::runtime_error);
    }
}

TEST_CASE("intersection") {
    Dfa just_a = dfa_for({{"a"}});
    Dfa a_or_b = dfa_for({{"a"}, {"b"}});
    CHECK(equivalent(intersect(just_a, a_or_b), just_a));

    Dfa disjoint = intersect(dfa_for({{"a"}}), dfa_for({{"b"}}));
    CHECK(disjoint.language_empty());

    SUBCASE("idempotence via minimized bisimulation") {
        for (const auto& dfa : {just_a, a_or_b, dfa_for({{"a", "b", "c"}, {"a", "c"}})}) {
            CHECK(equivalent(intersect(dfa, dfa), dfa));
            CHECK(equivalent(minimize(dfa), dfa));
        }
    }
}

TEST_CASE("repeat-free automaton") {
    Dfa rf = repeat_free_dfa({"x", "y"});
    CHECK(rf.accepts({}));
    CHECK(rf.accepts({"x", "y", "x"}));
    CHECK_FALSE(rf.accepts({"x", "x"}));
    CHECK_FALSE(rf.accepts({"x", "y", "y"}));
}

TEST_CASE("topological entropy") {
    SUBCASE("all words over two symbols: ln 3 after the circuit loop") {
        Dfa dfa = universal_dfa({"a", "b"});
        CHECK(topological_entropy(dfa) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
        CHECK(topological_entropy_dense(dfa) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    }
    SUBCASE("empty language") {
        Dfa empty;
        empty.alphabet = {"a"};
        empty.next.emplace_back();
        empty.accepting.push_back(false);
        CHECK(topological_entropy(empty) == 0.0);
    }
    SUBCASE("a-star gives ln 2") {
        Dfa dfa = universal_dfa({"a"});
        CHECK(topological_entropy(dfa) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    }
    SUBCASE("single finite word gives zero growth") {
        CHECK(topological_entropy(dfa_for({{"a", "b"}})) == doctest::Approx(0.0));
    }
    SUBCASE("walk-count oracle agrees on small fixtures") {
        std::vector<Dfa> corpus{
            universal_dfa({"a", "b"}),
            universal_dfa({"a"}),
            dfa_for({{"a"}, {"a", "b"}}),
            dfa_for({{"a", "b"}, {"b", "a"}, {"a", "b", "a"}}),
            minimize(model_automaton(fixtures::agent_net_a3())),
            minimize(model_automaton(fixtures::small_inet())),
        };
        for (const auto& dfa : corpus) {
            Dfa trimmed = trim(dfa);
            REQUIRE(trimmed.state_count() <= 8);
            auto counts = fixtures::short_circuit_walk_counts(trimmed, 64);
            double estimate = std::log(counts.back()) / 64.0;
            CHECK(topological_entropy(trimmed) == doctest::Approx(estimate).epsilon(0.03));
            CHECK(std::abs(topological_entropy(trimmed) - topological_entropy_dense(trimmed)) <
                  1e-7);
        }
    }
}

TEST_CASE("measure") {
    // Log: two traces over {a, b}.
    EventLog log;
    std::vector<Event> events{{1, 1, "c1", "a", "u", {}}, {2, 2, "c1", "b", "u", {}},
                              {3, 3, "c2", "a", "u", {}}, {4, 4, "c2", "a", "u", {}},
                              {5, 5, "c2", "b", "u", {}}};
    log.selection = EventSelection{events};
    log.traces = case_trace_set(log.selection);
    log.naming = NamingKind::ActivityOnly;

    SUBCASE("model equals the log language") {
        // Exclusive of the two chains replays exactly the log.
        ProcessTree tree = ProcessTree::node(
            ProcessTree::Kind::Exclusive,
            {ProcessTree::node(ProcessTree::Kind::Sequence,
                               {ProcessTree::activity("a"), ProcessTree::activity("b")}),
             ProcessTree::node(ProcessTree::Kind::Sequence,
                               {ProcessTree::activity("a"), ProcessTree::activity("a"),
                                ProcessTree::activity("b")})});
        QualityReport q = measure(tree_to_wfnet(tree), log);
        CHECK(q.recall == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(q.precision == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("flower model: perfect recall, poor precision") {
        ProcessTree flower = ProcessTree::node(
            ProcessTree::Kind::Loop,
            {ProcessTree::silent(), ProcessTree::node(ProcessTree::Kind::Exclusive,
                                                      {ProcessTree::activity("a"),
                                                       ProcessTree::activity("b")})});
        QualityReport q = measure(tree_to_wfnet(flower), log);
        CHECK(q.recall == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(q.precision < 1.0);
        CHECK(q.precision > 0.0);
    }
    SUBCASE("model missing log behavior: recall below one") {
        WorkflowNet chain = chain_of({"a", "b"});  // misses the a a b trace
        QualityReport q = measure(chain, log);
        CHECK(q.recall < 1.0);
        CHECK(q.ent_model < q.ent_log);
    }
    SUBCASE("size is the net size") {
        WorkflowNet chain = chain_of({"a", "b"});
        CHECK(measure(chain, log).size == net_size(chain));
    }
    SUBCASE("single-word languages have zero entropy and ratio one") {
        EventLog tiny;
        std::vector<Event> pair{{1, 1, "c1", "a", "u", {}}, {2, 2, "c1", "b", "u", {}}};
        tiny.selection = EventSelection{pair};
        tiny.traces = case_trace_set(tiny.selection);
        tiny.naming = NamingKind::ActivityOnly;
        QualityReport q = measure(chain_of({"a", "b"}), tiny);
        CHECK(q.ent_log == 0.0);
        CHECK(q.ent_model == 0.0);
        CHECK(q.recall == 1.0);  // 0/0 convention
        CHECK(q.precision == 1.0);
    }
}

TEST_CASE("measure monotonicity on a fixture family") {
    // Fixed model: xor of three chains; logs grow within the model language.
    ProcessTree tree = ProcessTree::node(
        ProcessTree::Kind::Exclusive,
        {ProcessTree::node(ProcessTree::Kind::Sequence,
                           {ProcessTree::activity("a"), ProcessTree::activity("b")}),
         ProcessTree::node(ProcessTree::Kind::Sequence,
                           {ProcessTree::activity("a"), ProcessTree::activity("c")}),
         ProcessTree::node(ProcessTree::Kind::Sequence,
                           {ProcessTree::activity("b"), ProcessTree::activity("c")})});
    WorkflowNet model = tree_to_wfnet(tree);

    auto log_of = [](const std::vector<std::vector<std::string>>& words) {
        EventLog log;
        std::vector<Event> events;
        std::uint64_t id = 1;
        std::int64_t clock = 1;
        int case_no = 1;
        for (const auto& word : words) {
            std::string case_id = "c" + std::to_string(case_no++);
            for (const auto& act : word) events.push_back(Event{id++, clock++, case_id, act, "u", {}});
        }
        log.selection = EventSelection{events};
        log.traces = case_trace_set(log.selection);
        log.naming = NamingKind::ActivityOnly;
        return log;
    };

    double recall_small = measure(model, log_of({{"a", "b"}})).recall;
    double recall_bigger = measure(model, log_of({{"a", "b"}, {"a", "c"}})).recall;
    double recall_full = measure(model, log_of({{"a", "b"}, {"a", "c"}, {"b", "c"}})).recall;
    CHECK(recall_small <= recall_bigger + 1e-9);
    CHECK(recall_bigger <= recall_full + 1e-9);
    CHECK(recall_full == doctest::Approx(1.0).epsilon(1e-6));

    // Precision never rises when the model gains behavior outside the log.
    ProcessTree wider = ProcessTree::node(
        ProcessTree::Kind::Exclusive,
        {tree, ProcessTree::node(ProcessTree::Kind::Sequence,
                                 {ProcessTree::activity("c"), ProcessTree::activity("c"),
                                  ProcessTree::activity("c")})});
    EventLog log = log_of({{"a", "b"}, {"a", "c"}});
    CHECK(measure(tree_to_wfnet(wider), log).precision <= measure(model, log).precision + 1e-9);
}

TEST_CASE("measure is invariant under minimization of the inputs") {
    EventLog log;
    std::vector<Event> events{{1, 1, "c1", "a", "u", {}},
                              {2, 2, "c1", "b", "u", {}},
                              {3, 3, "c2", "a", "u", {}}};
    log.selection = EventSelection{events};
    log.traces = case_trace_set(log.selection);
    log.naming = NamingKind::ActivityOnly;

    WorkflowNet model = chain_of({"a", "b"});
    Dfa model_dfa = model_automaton(model);
    Dfa log_dfa = log_automaton(log);
    double direct = topological_entropy(intersect(model_dfa, log_dfa));
    double minimized = topological_entropy(intersect(minimize(model_dfa), minimize(log_dfa)));
    CHECK(direct == doctest::Approx(minimized).epsilon(1e-9));
}
