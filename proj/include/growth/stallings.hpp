// Stallings core graphs for finitely generated subgroups of free groups.
// A core graph is folded (deterministic in both directions) and trimmed so
// that every non-basepoint vertex lies on a reduced loop at the basepoint.
// Reduced words in H correspond exactly to loops at the basepoint.
#ifndef GROWTH_STALLINGS_HPP
#define GROWTH_STALLINGS_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "errors.hpp"
#include "freegroup.hpp"

namespace growth {

struct CoreGraph {
    int rank = 0;       // ambient free-group rank
    int basepoint = 0;
    // adj[v][letter] = target vertex, -1 if absent; letters indexed as in
    // Alphabet::free_group(rank). Consistency: adj[u][x] == v iff adj[v][x^-1] == u.
    std::vector<std::vector<int>> adj;

    int num_vertices() const { return static_cast<int>(adj.size()); }

    int num_edges() const {  // positive-letter edges
        int count = 0;
        for (const auto& row : adj)
            for (int x = 0; x < rank * 2; x += 2)
                if (row[x] >= 0) ++count;
        return count;
    }

    int degree(int v) const {
        int d = 0;
        for (int x = 0; x < rank * 2; ++x)
            if (adj[v][x] >= 0) ++d;
        return d;
    }

    int graph_rank() const { return num_edges() - num_vertices() + 1; }

    /// Covering criterion: every vertex sees all 2r oriented letters.
    bool is_cover() const {
        for (int v = 0; v < num_vertices(); ++v)
            if (degree(v) != 2 * rank) return false;
        return true;
    }

    std::string signature() const {
        std::string s = "r" + std::to_string(rank) + ";v" + std::to_string(num_vertices()) + ";";
        for (int v = 0; v < num_vertices(); ++v)
            for (int x = 0; x < rank * 2; ++x)
                if (adj[v][x] >= 0 && (x % 2 == 0))
                    s += std::to_string(v) + "." + std::to_string(x) + "." +
                         std::to_string(adj[v][x]) + ";";
        return s;
    }
};

struct SubgroupRecord {
    std::vector<Word> generators;
    CoreGraph core;
    bool finite_index = false;
    int rank = 0;

    int index() const { return finite_index ? core.num_vertices() : -1; }
};

namespace detail {

/// Wedge-of-loops arena folded by repeated identification of same-labeled
/// edge pairs at a vertex. Desk-scale quadratic rebuild, order-independent
/// up to isomorphism.
class FoldArena {
public:
    explicit FoldArena(int rank) : rank_(rank) { parent_.push_back(0); }

    int basepoint() const { return 0; }

    int fresh() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }

    void add_edge(int u, int x, int v) { edges_.push_back({u, x, v}); }

    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    void fold(const Alphabet& ab) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<std::pair<int, int>, int> dart;  // (vertex, oriented letter) -> target
            for (const auto& [u0, x, v0] : edges_) {
                int u = find(u0), v = find(v0);
                int xi = ab.inverse(x);
                for (auto [from, letter, to] : {std::tuple{u, x, v}, std::tuple{v, xi, u}}) {
                    auto it = dart.find({from, letter});
                    if (it == dart.end()) {
                        dart[{from, letter}] = to;
                    } else if (it->second != to) {
                        merge(it->second, to);
                        changed = true;
                        break;
                    }
                }
                if (changed) break;
            }
        }
    }

    CoreGraph extract(const Alphabet& ab) {
        // dedup folded edges
        std::set<std::tuple<int, int, int>> dedup;
        for (const auto& [u0, x, v0] : edges_) {
            int u = find(u0), v = find(v0);
            dedup.insert({u, x, v});
        }
        std::map<int, int> live;
        auto intern = [&](int v) {
            auto [it, inserted] = live.try_emplace(v, static_cast<int>(live.size()));
            return it->second;
        };
        intern(find(0));
        for (const auto& [u, x, v] : dedup) {
            intern(u);
            intern(v);
        }
        CoreGraph g;
        g.rank = rank_;
        g.basepoint = 0;
        g.adj.assign(live.size(), std::vector<int>(2 * rank_, -1));
        for (const auto& [u, x, v] : dedup) {
            int a = live[u], b = live[v];
            g.adj[a][x] = b;
            g.adj[b][ab.inverse(x)] = a;
        }
        return g;
    }

private:
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // keep the basepoint's root stable
        parent_[b] = a;
    }

    int rank_;
    std::vector<int> parent_;
    std::vector<std::tuple<int, int, int>> edges_;
};

/// Removes degree-<=1 vertices other than the basepoint, repeatedly.
inline CoreGraph trim_core(CoreGraph g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (v == g.basepoint || g.degree(v) > 1) continue;
            for (int x = 0; x < 2 * g.rank; ++x) {
                int w = g.adj[v][x];
                if (w >= 0) {
                    g.adj[w][x ^ 1] = -1;  // inverse pairs are (2i, 2i+1)
                    g.adj[v][x] = -1;
                }
            }
            // compact: drop vertex v
            g.adj.erase(g.adj.begin() + v);
            for (auto& row : g.adj)
                for (int& t : row)
                    if (t > v)
                        --t;
                    else if (t == v)
                        t = -1;
            if (g.basepoint > v) --g.basepoint;
            changed = true;
            break;
        }
    }
    return g;
}

/// BFS renumbering from the basepoint with edges taken in letter order;
/// folded graphs get a canonical labeling this way.
inline CoreGraph canonicalize_core(const CoreGraph& g) {
    std::vector<int> remap(g.num_vertices(), -1);
    std::deque<int> queue{g.basepoint};
    remap[g.basepoint] = 0;
    int next = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int x = 0; x < 2 * g.rank; ++x) {
            int w = g.adj[v][x];
            if (w >= 0 && remap[w] < 0) {
                remap[w] = next++;
                queue.push_back(w);
            }
        }
    }
    CoreGraph out;
    out.rank = g.rank;
    out.basepoint = 0;
    out.adj.assign(next, std::vector<int>(2 * g.rank, -1));
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (remap[v] < 0) continue;  // unreachable (cannot happen after folding a wedge)
        for (int x = 0; x < 2 * g.rank; ++x)
            if (g.adj[v][x] >= 0) out.adj[remap[v]][x] = remap[g.adj[v][x]];
    }
    return out;
}

inline void assert_folded(const CoreGraph& g) {
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int x = 0; x < 2 * g.rank; ++x) {
            int w = g.adj[v][x];
            if (w >= 0 && g.adj[w][x ^ 1] != v)
                throw Error(Errc::malformed_input, "core graph is not folded/consistent");
        }
}

}  // namespace detail

inline SubgroupRecord record_from_core(CoreGraph core, std::vector<Word> generators);

/// Stallings folding: wedge the generator loops at the basepoint, fold, trim.
inline SubgroupRecord build_core(const std::vector<Word>& generators, int rank) {
    Alphabet ab = Alphabet::free_group(rank);
    std::vector<Word> kept;
    for (const Word& g : generators) {
        if (g.empty()) continue;  // trivial generators are dropped
        if (!is_reduced(ab, g))
            throw Error(Errc::malformed_input, "generator is not reduced: " + ab.format_word(g));
        for (int x : g)
            if (x < 0 || x >= 2 * rank)
                throw Error(Errc::malformed_input, "generator letter outside rank-" +
                                                       std::to_string(rank) + " alphabet");
        kept.push_back(g);
    }
    detail::FoldArena arena(rank);
    for (const Word& g : kept) {
        int at = arena.basepoint();
        for (std::size_t i = 0; i < g.size(); ++i) {
            int next = (i + 1 == g.size()) ? arena.basepoint() : arena.fresh();
            int x = g[i];
            if (x % 2 == 0)
                arena.add_edge(at, x, next);
            else
                arena.add_edge(next, x ^ 1, at);
            at = next;
        }
    }
    arena.fold(ab);
    CoreGraph core = detail::canonicalize_core(detail::trim_core(arena.extract(ab)));
    detail::assert_folded(core);
    return record_from_core(std::move(core), kept);
}

inline SubgroupRecord record_from_core(CoreGraph core, std::vector<Word> generators) {
    SubgroupRecord rec;
    rec.core = std::move(core);
    rec.generators = std::move(generators);
    rec.rank = rec.core.graph_rank();
    rec.finite_index = rec.core.is_cover();
    return rec;
}

/// Membership: w is in H iff its reduction reads a loop at the basepoint.
inline bool contains(const SubgroupRecord& rec, const Word& w) {
    Alphabet ab = Alphabet::free_group(rec.core.rank);
    Word r = reduce(ab, w);
    int at = rec.core.basepoint;
    for (int x : r) {
        if (x < 0 || x >= 2 * rec.core.rank) return false;
        at = rec.core.adj[at][x];
        if (at < 0) return false;
    }
    return at == rec.core.basepoint;
}

/// The regular language L_H: freely reduced words that represent elements of
/// H, realized as core-graph traversal with last-letter memory. The language
/// maps bijectively to H. The result is pruned.
inline Automaton subgroup_automaton(const SubgroupRecord& rec) {
    const CoreGraph& g = rec.core;
    Alphabet ab = Alphabet::free_group(g.rank);
    const int letters = 2 * g.rank;
    const int no_last = -1;

    std::vector<std::vector<int>> index(g.num_vertices(), std::vector<int>(letters + 1, -1));
    std::vector<std::pair<int, int>> states;
    std::vector<std::vector<Edge>> out;
    std::vector<bool> accept;
    auto intern = [&](int vertex, int last) {
        int& idx = index[vertex][last + 1];
        if (idx < 0) {
            idx = static_cast<int>(states.size());
            states.emplace_back(vertex, last);
            out.emplace_back();
            accept.push_back(vertex == g.basepoint);
        }
        return idx;
    };
    int start = intern(g.basepoint, no_last);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [vertex, last] = states[i];
        int banned = last == no_last ? -1 : ab.inverse(last);
        for (int x = 0; x < letters; ++x) {
            if (x == banned) continue;
            int w = g.adj[vertex][x];
            if (w < 0) continue;
            int target = intern(w, x);  // may grow `out`; take the reference after
            out[i].push_back(Edge{x, target, Rational(1)});
        }
    }
    Automaton raw(ab, static_cast<int>(states.size()), start, std::move(accept), std::move(out));
    return prune(raw);
}

enum class Certificate { certified, failed, degenerate };

/// Rank certificate for <H, g> = H * <g>: folding gens(H) + g must raise the
/// rank by exactly one. Free groups are Hopfian, so the rank jump forces the
/// natural surjection H * <g> -> <H, g> to be an isomorphism.
inline Certificate free_product_certificate(const SubgroupRecord& rec, const Word& g) {
    Alphabet ab = Alphabet::free_group(rec.core.rank);
    Word r = reduce(ab, g);
    if (r.empty()) return Certificate::degenerate;
    std::vector<Word> gens = rec.generators;
    gens.push_back(r);
    SubgroupRecord joined = build_core(gens, rec.core.rank);
    return joined.rank == rec.rank + 1 ? Certificate::certified : Certificate::failed;
}

/// Short-lex-least reduced g with a certified free product <H, g> = H * <g>.
/// Refused outright for finite-index subgroups (no such g can exist).
inline std::optional<Word> find_free_factor_element(const SubgroupRecord& rec, int max_len = 8) {
    if (rec.finite_index)
        throw Error(Errc::finite_index_subgroup,
                    "subgroup has finite index " + std::to_string(rec.index()) +
                        "; no free-product partner exists");
    for (int len = 1; len <= max_len; ++len) {
        std::optional<Word> found;
        enumerate_reduced_words(rec.core.rank, len, [&](const Word& w) {
            if (found) return;
            if (free_product_certificate(rec, w) == Certificate::certified) found = w;
        });
        if (found) return found;
    }
    return std::nullopt;
}

/// Reduced path words from the basepoint plus one generator per non-tree edge.
inline std::vector<Word> spanning_tree_generators(const CoreGraph& g) {
    Alphabet ab = Alphabet::free_group(g.rank);
    std::vector<Word> path(g.num_vertices());
    std::vector<bool> seen(g.num_vertices(), false);
    std::set<std::tuple<int, int, int>> tree;
    std::deque<int> queue{g.basepoint};
    seen[g.basepoint] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int x = 0; x < 2 * g.rank; ++x) {
            int w = g.adj[v][x];
            if (w < 0 || seen[w]) continue;
            seen[w] = true;
            path[w] = path[v];
            path[w].push_back(x);
            int a = v, b = w, letter = x;
            if (letter % 2 == 1) {
                letter ^= 1;
                std::swap(a, b);
            }
            tree.insert({a, letter, b});
            queue.push_back(w);
        }
    }
    std::vector<Word> gens;
    for (int v = 0; v < g.num_vertices(); ++v) {
        for (int x = 0; x < 2 * g.rank; x += 2) {
            int w = g.adj[v][x];
            if (w < 0 || tree.count({v, x, w})) continue;
            Word word = path[v];
            word.push_back(x);
            Word back = concat_reduce(ab, word, inverse_word(ab, path[w]));
            if (!back.empty()) gens.push_back(back);
        }
    }
    return gens;
}

}  // namespace growth

#endif  // GROWTH_STALLINGS_HPP
