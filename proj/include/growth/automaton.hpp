// Deterministic weighted finite-state automata over symmetric alphabets.
// Weights are exact rationals end-to-end; census values are computed by
// iterating the state-weight vector (w(L_n) = V_0 A^n V_a).
#ifndef GROWTH_AUTOMATON_HPP
#define GROWTH_AUTOMATON_HPP

#include <algorithm>
#include <deque>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace growth {

struct RawTransition {
    int from = 0;
    std::string label;
    int to = 0;
    Rational weight = 1;
};

/// Unvalidated automaton description, as parsed from JSON or built ad hoc.
struct RawAutomaton {
    Alphabet alphabet;
    int num_states = 0;
    int start = 0;
    std::vector<int> accepts;
    std::vector<RawTransition> transitions;
};

struct Edge {
    int letter;
    int to;
    Rational weight;
};

class Automaton {
public:
    Automaton(Alphabet alphabet, int num_states, int start, std::vector<bool> accept,
              std::vector<std::vector<Edge>> out)
        : alphabet_(std::move(alphabet)),
          num_states_(num_states),
          start_(start),
          accept_(std::move(accept)),
          out_(std::move(out)) {
        for (auto& edges : out_)
            std::sort(edges.begin(), edges.end(),
                      [](const Edge& a, const Edge& b) { return a.letter < b.letter; });
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int num_states() const { return num_states_; }
    int start() const { return start_; }
    bool is_accept(int s) const { return accept_[s]; }

    std::vector<int> accept_states() const {
        std::vector<int> out;
        for (int s = 0; s < num_states_; ++s)
            if (accept_[s]) out.push_back(s);
        return out;
    }

    const std::vector<Edge>& edges_from(int s) const { return out_[s]; }

    const Edge* find_edge(int s, int letter) const {
        const auto& edges = out_[s];
        auto it = std::lower_bound(edges.begin(), edges.end(), letter,
                                   [](const Edge& e, int l) { return e.letter < l; });
        if (it == edges.end() || it->letter != letter) return nullptr;
        return &*it;
    }

    std::size_t num_transitions() const {
        std::size_t n = 0;
        for (const auto& e : out_) n += e.size();
        return n;
    }

private:
    Alphabet alphabet_;
    int num_states_;
    int start_;
    std::vector<bool> accept_;
    std::vector<std::vector<Edge>> out_;
};

/// Exact per-length and cumulative weighted word counts (f_L(n) = w(L_{<=n})).
struct CensusTable {
    std::vector<Rational> per_length;
    std::vector<Rational> cumulative;

    int max_length() const { return static_cast<int>(per_length.size()) - 1; }
};

inline Automaton validate(const RawAutomaton& raw) {
    if (raw.num_states <= 0)
        throw Error(Errc::dangling_state_reference, "automaton needs at least one state");
    if (raw.start < 0 || raw.start >= raw.num_states)
        throw Error(Errc::dangling_state_reference, "start state out of range");
    std::vector<bool> accept(raw.num_states, false);
    for (int s : raw.accepts) {
        if (s < 0 || s >= raw.num_states)
            throw Error(Errc::dangling_state_reference, "accept state out of range: " + std::to_string(s));
        accept[s] = true;
    }
    std::vector<std::vector<Edge>> out(raw.num_states);
    for (const auto& t : raw.transitions) {
        if (t.from < 0 || t.from >= raw.num_states || t.to < 0 || t.to >= raw.num_states)
            throw Error(Errc::dangling_state_reference,
                        "transition references missing state " + std::to_string(t.from) + "->" +
                            std::to_string(t.to));
        int letter = raw.alphabet.index_of(t.label);
        if (letter < 0)
            throw Error(Errc::malformed_input, "transition label not in alphabet: '" + t.label + "'");
        if (t.weight <= 0)
            throw Error(Errc::nonpositive_weight,
                        "transition " + std::to_string(t.from) + " -" + t.label + "-> " +
                            std::to_string(t.to) + " has weight " + rational_string(t.weight));
        for (const Edge& e : out[t.from])
            if (e.letter == letter)
                throw Error(Errc::nondeterministic_transition,
                            "state " + std::to_string(t.from) + " has two '" + t.label + "' edges");
        out[t.from].push_back(Edge{letter, t.to, t.weight});
    }
    return Automaton(raw.alphabet, raw.num_states, raw.start, std::move(accept), std::move(out));
}

namespace detail {

inline std::vector<bool> reachable_from_start(const Automaton& g) {
    std::vector<bool> seen(g.num_states(), false);
    std::deque<int> queue{g.start()};
    seen[g.start()] = true;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const Edge& e : g.edges_from(s))
            if (!seen[e.to]) {
                seen[e.to] = true;
                queue.push_back(e.to);
            }
    }
    return seen;
}

inline std::vector<bool> coreachable_to_accept(const Automaton& g) {
    std::vector<std::vector<int>> rev(g.num_states());
    for (int s = 0; s < g.num_states(); ++s)
        for (const Edge& e : g.edges_from(s)) rev[e.to].push_back(s);
    std::vector<bool> seen(g.num_states(), false);
    std::deque<int> queue;
    for (int s = 0; s < g.num_states(); ++s)
        if (g.is_accept(s)) {
            seen[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : rev[s])
            if (!seen[p]) {
                seen[p] = true;
                queue.push_back(p);
            }
    }
    return seen;
}

}  // namespace detail

inline bool is_pruned(const Automaton& g) {
    auto fwd = detail::reachable_from_start(g);
    auto bwd = detail::coreachable_to_accept(g);
    for (int s = 0; s < g.num_states(); ++s)
        if (!(fwd[s] && bwd[s])) return false;
    return true;
}

inline bool is_empty_language(const Automaton& g) {
    auto fwd = detail::reachable_from_start(g);
    for (int s = 0; s < g.num_states(); ++s)
        if (fwd[s] && g.is_accept(s)) return false;
    return true;
}

/// Drops states off every start->accept path. An empty language yields the
/// distinguished one-state automaton with no accept states.
inline Automaton prune(const Automaton& g) {
    auto fwd = detail::reachable_from_start(g);
    auto bwd = detail::coreachable_to_accept(g);
    std::vector<int> remap(g.num_states(), -1);
    int next = 0;
    for (int s = 0; s < g.num_states(); ++s)
        if (fwd[s] && bwd[s]) remap[s] = next++;
    if (remap[g.start()] < 0) {
        return Automaton(g.alphabet(), 1, 0, std::vector<bool>{false}, {{}});
    }
    std::vector<bool> accept(next, false);
    std::vector<std::vector<Edge>> out(next);
    for (int s = 0; s < g.num_states(); ++s) {
        if (remap[s] < 0) continue;
        accept[remap[s]] = g.is_accept(s);
        for (const Edge& e : g.edges_from(s))
            if (remap[e.to] >= 0) out[remap[s]].push_back(Edge{e.letter, remap[e.to], e.weight});
    }
    return Automaton(g.alphabet(), next, remap[g.start()], std::move(accept), std::move(out));
}

/// Runs the unique path reading w; (accepted, path weight).
inline std::pair<bool, Rational> accepts(const Automaton& g, const Word& w) {
    int s = g.start();
    Rational weight = 1;
    for (int letter : w) {
        const Edge* e = g.find_edge(s, letter);
        if (!e) return {false, Rational(0)};
        weight *= e->weight;
        s = e->to;
    }
    if (!g.is_accept(s)) return {false, Rational(0)};
    return {true, weight};
}

inline CensusTable census(const Automaton& g, int n_max) {
    if (n_max < 0) throw Error(Errc::malformed_input, "census length must be >= 0");
    CensusTable table;
    std::vector<Rational> v(g.num_states(), Rational(0));
    v[g.start()] = 1;
    Rational running = 0;
    for (int n = 0; n <= n_max; ++n) {
        Rational total = 0;
        for (int s = 0; s < g.num_states(); ++s)
            if (g.is_accept(s)) total += v[s];
        running += total;
        table.per_length.push_back(total);
        table.cumulative.push_back(running);
        if (n == n_max) break;
        std::vector<Rational> next(g.num_states(), Rational(0));
        for (int s = 0; s < g.num_states(); ++s) {
            if (v[s] == 0) continue;
            for (const Edge& e : g.edges_from(s)) next[e.to] += v[s] * e.weight;
        }
        v.swap(next);
    }
    return table;
}

/// Product with last-letter memory: keeps exactly the freely reduced words of g
/// (primes project to their base letter before the backtracking test).
inline Automaton reduced_word_product(const Automaton& g) {
    const Alphabet& ab = g.alphabet();
    const int no_last = -1;
    std::vector<std::vector<int>> index(g.num_states(), std::vector<int>(ab.size() + 1, -1));
    auto slot = [&](int state, int last) -> int& { return index[state][last + 1]; };

    std::vector<std::pair<int, int>> states;  // (underlying state, last letter)
    std::vector<std::vector<Edge>> out;
    std::vector<bool> accept;
    auto intern = [&](int state, int last) {
        int& idx = slot(state, last);
        if (idx < 0) {
            idx = static_cast<int>(states.size());
            states.emplace_back(state, last);
            out.emplace_back();
            accept.push_back(g.is_accept(state));
        }
        return idx;
    };
    int start = intern(g.start(), no_last);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [state, last] = states[i];
        int banned = last == no_last ? -1 : ab.inverse_of_base(last);
        for (const Edge& e : g.edges_from(state)) {
            if (banned >= 0 && ab.base(e.letter) == banned) continue;
            int j = intern(e.to, e.letter);
            out[i].push_back(Edge{e.letter, j, e.weight});
        }
    }
    return Automaton(ab, static_cast<int>(states.size()), start, std::move(accept), std::move(out));
}

/// All accepted words of length <= n_max, in BFS/letter order. Desk scale only.
inline std::vector<Word> enumerate_accepted_words(const Automaton& g, int n_max) {
    std::vector<Word> result;
    struct Item {
        int state;
        Word word;
    };
    std::deque<Item> queue{{g.start(), {}}};
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        if (g.is_accept(item.state)) result.push_back(item.word);
        if (static_cast<int>(item.word.size()) == n_max) continue;
        for (const Edge& e : g.edges_from(item.state)) {
            Word w = item.word;
            w.push_back(e.letter);
            queue.push_back({e.to, std::move(w)});
        }
    }
    return result;
}

}  // namespace growth

#endif  // GROWTH_AUTOMATON_HPP
