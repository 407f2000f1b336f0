#include "agentminer/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace am {

bool Dfa::accepts(const std::vector<std::string>& word) const {
    std::map<std::string, int> symbol;
    for (std::size_t i = 0; i < alphabet.size(); ++i) symbol[alphabet[i]] = static_cast<int>(i);
    int state = initial;
    for (const auto& label : word) {
        auto s = symbol.find(label);
        if (s == symbol.end()) return false;
        auto t = next[static_cast<std::size_t>(state)].find(s->second);
        if (t == next[static_cast<std::size_t>(state)].end()) return false;
        state = t->second;
    }
    return accepting[static_cast<std::size_t>(state)];
}

bool Dfa::language_empty() const {
    std::set<int> seen{initial};
    std::deque<int> queue{initial};
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        if (accepting[static_cast<std::size_t>(s)]) return false;
        for (const auto& [symbol, to] : next[static_cast<std::size_t>(s)])
            if (seen.insert(to).second) queue.push_back(to);
    }
    return true;
}

std::vector<std::vector<std::string>> Dfa::words_up_to(std::size_t max_length,
                                                       std::size_t max_words) const {
    std::vector<std::vector<std::string>> out;
    struct Item {
        int state;
        std::vector<std::string> word;
    };
    std::deque<Item> queue{{initial, {}}};
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        if (accepting[static_cast<std::size_t>(item.state)]) {
            out.push_back(item.word);
            if (out.size() > max_words) throw std::runtime_error("word enumeration overflow");
        }
        if (item.word.size() == max_length) continue;
        for (const auto& [symbol, to] : next[static_cast<std::size_t>(item.state)]) {
            Item extended{to, item.word};
            extended.word.push_back(alphabet[static_cast<std::size_t>(symbol)]);
            queue.push_back(std::move(extended));
        }
    }
    return out;
}

Dfa sequences_automaton(const std::vector<std::vector<std::string>>& sequences) {
    std::set<std::string> labels;
    for (const auto& word : sequences)
        for (const auto& label : word) labels.insert(label);
    Dfa dfa;
    dfa.alphabet.assign(labels.begin(), labels.end());
    std::map<std::string, int> symbol;
    for (std::size_t i = 0; i < dfa.alphabet.size(); ++i)
        symbol[dfa.alphabet[i]] = static_cast<int>(i);

    dfa.next.emplace_back();
    dfa.accepting.push_back(false);
    for (const auto& word : sequences) {
        int state = 0;
        for (const auto& label : word) {
            int sym = symbol.at(label);
            auto it = dfa.next[static_cast<std::size_t>(state)].find(sym);
            if (it == dfa.next[static_cast<std::size_t>(state)].end()) {
                int fresh = static_cast<int>(dfa.next.size());
                dfa.next[static_cast<std::size_t>(state)][sym] = fresh;
                dfa.next.emplace_back();
                dfa.accepting.push_back(false);
                state = fresh;
            } else {
                state = it->second;
            }
        }
        dfa.accepting[static_cast<std::size_t>(state)] = true;
    }
    return dfa;
}

Dfa log_automaton(const EventLog& log) {
    if (log.traces.empty()) throw std::runtime_error("empty log");
    return sequences_automaton(log.label_sequences());
}

namespace {

constexpr std::size_t kDeterminizationCap = 1000000;

struct SubsetHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

Dfa model_automaton(const WorkflowNet& wfnet, std::size_t state_bound) {
    ReachabilityGraph graph = reachability_graph(wfnet, state_bound);
    for (const Marking& m : graph.markings)
        for (const auto& [place, count] : m)
            if (count > 1) throw std::runtime_error("net is not safe; language automaton undefined");

    // NFA over markings: observable edges keep their label, silent edges are
    // epsilon moves.
    std::set<std::string> labels;
    for (const auto& edge : graph.edges) {
        const std::string& label = wfnet.net.label_of(edge.transition);
        if (!label.empty()) labels.insert(label);
    }
    Dfa dfa;
    dfa.alphabet.assign(labels.begin(), labels.end());
    std::map<std::string, int> symbol;
    for (std::size_t i = 0; i < dfa.alphabet.size(); ++i)
        symbol[dfa.alphabet[i]] = static_cast<int>(i);

    std::size_t n = graph.markings.size();
    std::vector<std::vector<std::size_t>> eps(n);
    std::vector<std::map<int, std::set<std::size_t>>> moves(n);
    for (const auto& edge : graph.edges) {
        const std::string& label = wfnet.net.label_of(edge.transition);
        if (label.empty()) eps[edge.from].push_back(edge.to);
        else moves[edge.from][symbol.at(label)].insert(edge.to);
    }

    // The accepting marking is exactly {final: 1}.
    std::vector<bool> nfa_accepting(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const Marking& m = graph.markings[i];
        nfa_accepting[i] = m.size() == 1 && m.begin()->first == wfnet.final_place &&
                           m.begin()->second == 1;
    }

    auto closure = [&](std::set<std::size_t> states) {
        std::deque<std::size_t> queue(states.begin(), states.end());
        while (!queue.empty()) {
            std::size_t s = queue.front();
            queue.pop_front();
            for (std::size_t t : eps[s])
                if (states.insert(t).second) queue.push_back(t);
        }
        return states;
    };
    auto pack = [](const std::set<std::size_t>& states) {
        std::vector<std::uint32_t> packed(states.begin(), states.end());
        return packed;
    };

    std::unordered_map<std::vector<std::uint32_t>, int, SubsetHash> index;
    std::vector<std::set<std::size_t>> subsets;
    std::deque<int> queue;

    std::set<std::size_t> start = closure({0});
    index.emplace(pack(start), 0);
    subsets.push_back(start);
    queue.push_back(0);
    dfa.next.emplace_back();
    dfa.accepting.push_back(false);

    while (!queue.empty()) {
        int si = queue.front();
        queue.pop_front();
        std::set<std::size_t> subset = subsets[static_cast<std::size_t>(si)];
        bool acc = false;
        std::map<int, std::set<std::size_t>> outgoing;
        for (std::size_t s : subset) {
            if (nfa_accepting[s]) acc = true;
            for (const auto& [sym, targets] : moves[s]) outgoing[sym].insert(targets.begin(), targets.end());
        }
        dfa.accepting[static_cast<std::size_t>(si)] = acc;
        for (const auto& [sym, targets] : outgoing) {
            std::set<std::size_t> closed = closure(targets);
            auto packed = pack(closed);
            auto [it, inserted] = index.emplace(std::move(packed), static_cast<int>(subsets.size()));
            if (inserted) {
                if (subsets.size() + 1 > kDeterminizationCap)
                    throw std::runtime_error("determinization exceeded the subset-state cap");
                subsets.push_back(std::move(closed));
                dfa.next.emplace_back();
                dfa.accepting.push_back(false);
                queue.push_back(it->second);
            }
            dfa.next[static_cast<std::size_t>(si)][sym] = it->second;
        }
    }
    return trim(dfa);
}

Dfa trim(const Dfa& dfa) {
    std::size_t n = dfa.state_count();
    std::vector<bool> reachable(n, false);
    std::deque<int> queue{dfa.initial};
    reachable[static_cast<std::size_t>(dfa.initial)] = true;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& [sym, to] : dfa.next[static_cast<std::size_t>(s)])
            if (!reachable[static_cast<std::size_t>(to)]) {
                reachable[static_cast<std::size_t>(to)] = true;
                queue.push_back(to);
            }
    }
    std::vector<std::vector<int>> reverse(n);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& [sym, to] : dfa.next[s]) reverse[static_cast<std::size_t>(to)].push_back(static_cast<int>(s));
    std::vector<bool> productive(n, false);
    std::deque<int> back;
    for (std::size_t s = 0; s < n; ++s)
        if (dfa.accepting[s] && reachable[s]) {
            productive[s] = true;
            back.push_back(static_cast<int>(s));
        }
    while (!back.empty()) {
        int s = back.front();
        back.pop_front();
        for (int p : reverse[static_cast<std::size_t>(s)])
            if (!productive[static_cast<std::size_t>(p)]) {
                productive[static_cast<std::size_t>(p)] = true;
                back.push_back(p);
            }
    }

    std::vector<int> remap(n, -1);
    int live = 0;
    for (std::size_t s = 0; s < n; ++s)
        if (reachable[s] && productive[s]) remap[s] = live++;
    if (remap[static_cast<std::size_t>(dfa.initial)] == -1) {
        Dfa empty;
        empty.alphabet = dfa.alphabet;
        empty.next.emplace_back();
        empty.accepting.push_back(false);
        empty.initial = 0;
        return empty;
    }
    Dfa out;
    out.alphabet = dfa.alphabet;
    out.next.resize(static_cast<std::size_t>(live));
    out.accepting.resize(static_cast<std::size_t>(live));
    out.initial = remap[static_cast<std::size_t>(dfa.initial)];
    for (std::size_t s = 0; s < n; ++s) {
        if (remap[s] == -1) continue;
        out.accepting[static_cast<std::size_t>(remap[s])] = dfa.accepting[s];
        for (const auto& [sym, to] : dfa.next[s])
            if (remap[static_cast<std::size_t>(to)] != -1)
                out.next[static_cast<std::size_t>(remap[s])][sym] = remap[static_cast<std::size_t>(to)];
    }
    return out;
}

Dfa intersect(const Dfa& a, const Dfa& b) {
    std::set<std::string> union_labels(a.alphabet.begin(), a.alphabet.end());
    union_labels.insert(b.alphabet.begin(), b.alphabet.end());
    std::vector<std::string> alphabet(union_labels.begin(), union_labels.end());

    auto symbol_map = [&](const Dfa& d) {
        std::map<int, int> remap;  // shared symbol -> local symbol
        std::map<std::string, int> local;
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) local[d.alphabet[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            auto it = local.find(alphabet[i]);
            if (it != local.end()) remap[static_cast<int>(i)] = it->second;
        }
        return remap;
    };
    std::map<int, int> map_a = symbol_map(a);
    std::map<int, int> map_b = symbol_map(b);

    Dfa out;
    out.alphabet = alphabet;
    std::map<std::pair<int, int>, int> index;
    std::deque<std::pair<int, int>> queue;
    auto state_of = [&](int sa, int sb) {
        auto [it, inserted] = index.emplace(std::make_pair(sa, sb), static_cast<int>(out.next.size()));
        if (inserted) {
            out.next.emplace_back();
            out.accepting.push_back(a.accepting[static_cast<std::size_t>(sa)] &&
                                    b.accepting[static_cast<std::size_t>(sb)]);
            queue.push_back({sa, sb});
        }
        return it->second;
    };
    out.initial = state_of(a.initial, b.initial);
    while (!queue.empty()) {
        auto [sa, sb] = queue.front();
        queue.pop_front();
        int from = index.at({sa, sb});
        for (std::size_t sym = 0; sym < alphabet.size(); ++sym) {
            auto la = map_a.find(static_cast<int>(sym));
            auto lb = map_b.find(static_cast<int>(sym));
            if (la == map_a.end() || lb == map_b.end()) continue;
            auto ta = a.next[static_cast<std::size_t>(sa)].find(la->second);
            if (ta == a.next[static_cast<std::size_t>(sa)].end()) continue;
            auto tb = b.next[static_cast<std::size_t>(sb)].find(lb->second);
            if (tb == b.next[static_cast<std::size_t>(sb)].end()) continue;
            out.next[static_cast<std::size_t>(from)][static_cast<int>(sym)] =
                state_of(ta->second, tb->second);
        }
    }
    return trim(out);
}

Dfa minimize(const Dfa& dfa) {
    Dfa t = trim(dfa);
    std::size_t n = t.state_count();
    std::vector<int> block(n);
    for (std::size_t s = 0; s < n; ++s) block[s] = t.accepting[s] ? 1 : 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::vector<int>, int> signature_to_block;
        std::vector<int> next_block(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<int> signature{block[s]};
            for (std::size_t sym = 0; sym < t.alphabet.size(); ++sym) {
                auto it = t.next[s].find(static_cast<int>(sym));
                signature.push_back(it == t.next[s].end() ? -1 : block[static_cast<std::size_t>(it->second)]);
            }
            auto [slot, inserted] =
                signature_to_block.emplace(std::move(signature), static_cast<int>(signature_to_block.size()));
            next_block[s] = slot->second;
        }
        if (next_block != block) {
            block = std::move(next_block);
            changed = true;
        }
    }
    int blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
    Dfa out;
    out.alphabet = t.alphabet;
    out.next.resize(static_cast<std::size_t>(std::max(blocks, 1)));
    out.accepting.assign(static_cast<std::size_t>(std::max(blocks, 1)), false);
    if (n == 0) return out;
    out.initial = block[static_cast<std::size_t>(t.initial)];
    for (std::size_t s = 0; s < n; ++s) {
        if (t.accepting[s]) out.accepting[static_cast<std::size_t>(block[s])] = true;
        for (const auto& [sym, to] : t.next[s])
            out.next[static_cast<std::size_t>(block[s])][sym] = block[static_cast<std::size_t>(to)];
    }
    return out;
}

bool equivalent(const Dfa& a, const Dfa& b) {
    std::set<std::string> union_labels(a.alphabet.begin(), a.alphabet.end());
    union_labels.insert(b.alphabet.begin(), b.alphabet.end());
    std::vector<std::string> alphabet(union_labels.begin(), union_labels.end());

    auto local_symbols = [&](const Dfa& d) {
        std::map<std::string, int> local;
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) local[d.alphabet[i]] = static_cast<int>(i);
        std::vector<int> remap(alphabet.size(), -1);
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            auto it = local.find(alphabet[i]);
            if (it != local.end()) remap[i] = it->second;
        }
        return remap;
    };
    std::vector<int> map_a = local_symbols(a);
    std::vector<int> map_b = local_symbols(b);

    // Pairwise exploration with an implicit dead state (-1).
    auto step = [](const Dfa& d, const std::vector<int>& remap, int state, std::size_t sym) -> int {
        if (state == -1) return -1;
        int local = remap[sym];
        if (local == -1) return -1;
        auto it = d.next[static_cast<std::size_t>(state)].find(local);
        return it == d.next[static_cast<std::size_t>(state)].end() ? -1 : it->second;
    };
    auto is_accepting = [](const Dfa& d, int state) {
        return state != -1 && d.accepting[static_cast<std::size_t>(state)];
    };

    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> queue{{a.initial, b.initial}};
    seen.insert({a.initial, b.initial});
    while (!queue.empty()) {
        auto [sa, sb] = queue.front();
        queue.pop_front();
        if (is_accepting(a, sa) != is_accepting(b, sb)) return false;
        if (sa == -1 && sb == -1) continue;
        for (std::size_t sym = 0; sym < alphabet.size(); ++sym) {
            auto pair = std::make_pair(step(a, map_a, sa, sym), step(b, map_b, sb, sym));
            if (pair.first == -1 && pair.second == -1) continue;
            if (seen.insert(pair).second) queue.push_back(pair);
        }
    }
    return true;
}

Dfa repeat_free_dfa(const std::vector<std::string>& alphabet) {
    Dfa dfa;
    dfa.alphabet = alphabet;
    std::size_t n = alphabet.size() + 1;  // state 0: nothing read yet; i+1: last symbol i
    dfa.next.resize(n);
    dfa.accepting.assign(n, true);
    for (std::size_t state = 0; state < n; ++state)
        for (std::size_t sym = 0; sym < alphabet.size(); ++sym)
            if (state != sym + 1) dfa.next[state][static_cast<int>(sym)] = static_cast<int>(sym + 1);
    return dfa;
}

namespace {

/// Adjacency counts of the short-circuited automaton graph: one edge per
/// (state, symbol) transition plus one circuit edge per accepting state back
/// to the initial state.
struct CountGraph {
    std::size_t n = 0;
    std::vector<std::map<std::size_t, double>> out;  // multiplicities

    explicit CountGraph(const Dfa& dfa) {
        n = dfa.state_count();
        out.resize(n);
        for (std::size_t s = 0; s < n; ++s)
            for (const auto& [sym, to] : dfa.next[s]) out[s][static_cast<std::size_t>(to)] += 1.0;
        for (std::size_t s = 0; s < n; ++s)
            if (dfa.accepting[s]) out[s][static_cast<std::size_t>(dfa.initial)] += 1.0;
    }
};

/// Strongly connected components, iterative Tarjan.
std::vector<std::vector<std::size_t>> strongly_connected(const CountGraph& graph) {
    std::size_t n = graph.n;
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    int counter = 0;

    struct Frame {
        std::size_t node;
        std::map<std::size_t, double>::const_iterator it;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, graph.out[root].begin()}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            if (frame.it != graph.out[frame.node].end()) {
                std::size_t child = frame.it->first;
                ++frame.it;
                if (index[child] == -1) {
                    index[child] = low[child] = counter++;
                    stack.push_back(child);
                    on_stack[child] = true;
                    frames.push_back({child, graph.out[child].begin()});
                } else if (on_stack[child]) {
                    low[frame.node] = std::min(low[frame.node], index[child]);
                }
            } else {
                std::size_t node = frame.node;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[node]);
                if (low[node] == index[node]) {
                    std::vector<std::size_t> component;
                    while (true) {
                        std::size_t member = stack.back();
                        stack.pop_back();
                        on_stack[member] = false;
                        component.push_back(member);
                        if (member == node) break;
                    }
                    components.push_back(std::move(component));
                }
            }
        }
    }
    return components;
}

/// Power iteration on (A + I) of one component; returns the spectral radius
/// of A. The identity shift averages consecutive iterates, which settles
/// period-2 oscillation on bipartite components.
double component_spectral_radius(const CountGraph& graph, const std::vector<std::size_t>& component,
                                 bool& converged) {
    std::size_t m = component.size();
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < m; ++i) local[component[i]] = i;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(m);
    bool has_edge = false;
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [to, count] : graph.out[component[i]]) {
            auto it = local.find(to);
            if (it == local.end()) continue;
            rows[i].push_back({it->second, count});
            has_edge = true;
        }
    }
    converged = true;
    if (!has_edge) return 0.0;

    constexpr double kTolerance = 1e-9;
    constexpr std::size_t kMaxIterations = 100000;
    std::vector<double> x(m, 1.0 / std::sqrt(static_cast<double>(m)));
    std::vector<double> z(m);
    auto apply_shifted = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t i = 0; i < m; ++i) {
            out[i] = in[i];  // identity shift settles period-2 oscillation
            for (const auto& [j, count] : rows[i]) out[i] += count * in[j];
        }
    };
    double lambda = 0.0;
    for (std::size_t iteration = 0; iteration < kMaxIterations; ++iteration) {
        apply_shifted(x, z);
        double norm = std::sqrt(std::inner_product(z.begin(), z.end(), z.begin(), 0.0));
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < m; ++i) x[i] = z[i] / norm;
        apply_shifted(x, z);
        lambda = std::inner_product(x.begin(), x.end(), z.begin(), 0.0);  // Rayleigh quotient
        double residual = 0.0;
        for (std::size_t i = 0; i < m; ++i) residual += (z[i] - lambda * x[i]) * (z[i] - lambda * x[i]);
        if (std::sqrt(residual) <= kTolerance * std::max(1.0, lambda)) return lambda - 1.0;
    }
    converged = false;
    return lambda - 1.0;
}

double dense_spectral_radius(const CountGraph& graph, const std::vector<std::size_t>& component) {
    std::size_t m = component.size();
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < m; ++i) local[component[i]] = i;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [to, count] : graph.out[component[i]]) {
            auto it = local.find(to);
            if (it == local.end()) continue;
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(it->second)) = count;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    double radius = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        radius = std::max(radius, std::abs(solver.eigenvalues()[i]));
    return radius;
}

/// Components on a cycle through the initial state of the short-circuited
/// graph (reachable and co-reachable from it), after trimming.
double entropy_impl(const Dfa& dfa, bool force_dense) {
    Dfa trimmed = trim(dfa);
    if (trimmed.language_empty()) return 0.0;
    CountGraph graph(trimmed);
    double best = 0.0;
    for (const auto& component : strongly_connected(graph)) {
        double radius;
        if (force_dense) {
            if (component.size() > 4096)
                throw std::runtime_error("component too large for the dense eigenvalue solver");
            radius = dense_spectral_radius(graph, component);
        } else {
            bool converged = true;
            radius = component_spectral_radius(graph, component, converged);
            if (!converged) {
                if (component.size() <= 512) {
                    radius = dense_spectral_radius(graph, component);
                } else {
                    throw std::runtime_error(
                        "power iteration did not converge after 100000 iterations; last estimate " +
                        std::to_string(radius) + " on a component of " +
                        std::to_string(component.size()) + " states");
                }
            }
        }
        best = std::max(best, radius);
    }
    if (best <= 0.0) return 0.0;
    double entropy = std::log(best);
    // Finite languages have spectral radius exactly 1; absorb solver noise.
    return std::abs(entropy) < 1e-12 ? 0.0 : entropy;
}

}  // namespace

double topological_entropy(const Dfa& dfa) { return entropy_impl(dfa, false); }

double topological_entropy_dense(const Dfa& dfa) { return entropy_impl(dfa, true); }

QualityReport measure(const WorkflowNet& wfnet, const EventLog& log, std::size_t state_bound) {
    Dfa log_dfa = log_automaton(log);
    Dfa model_dfa = model_automaton(wfnet, state_bound);
    Dfa both = intersect(model_dfa, log_dfa);

    QualityReport report;
    report.size = net_size(wfnet);
    report.ent_log = topological_entropy(log_dfa);
    report.ent_model = topological_entropy(model_dfa);
    report.ent_intersection = topological_entropy(both);

    auto ratio = [](double numerator, double denominator) {
        if (denominator == 0.0) {
            if (numerator == 0.0) return 1.0;
            throw std::runtime_error("degenerate denominator in quality ratio");
        }
        return std::clamp(numerator / denominator, 0.0, 1.0);
    };
    report.recall = ratio(report.ent_intersection, report.ent_log);
    report.precision = ratio(report.ent_intersection, report.ent_model);
    return report;
}

}  // namespace am
