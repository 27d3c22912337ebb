// Strongly connected components (Tarjan, iterative) and digraph periods.
// Blocks come out in a topological order, so the reordered matrix is block
// upper-triangular with irreducible diagonal blocks.
#ifndef GROWTH_SCC_HPP
#define GROWTH_SCC_HPP

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace growth {

struct SCCDecomposition {
    std::vector<std::vector<int>> blocks;       // topological order, each sorted
    std::vector<int> permutation;               // permutation[new] = old state index
    std::vector<std::pair<int, int>> dag_edges;  // condensation edges (block i -> block j, i < j)
    std::vector<int> block_of;                  // state -> block index
    std::vector<int> maximal_blocks;            // filled by spectral analysis
};

inline SCCDecomposition scc_condense(const TransitionMatrix& a) {
    const int n = a.dimension();
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    // iterative Tarjan
    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& row = a.row(f.v);
            if (f.edge < row.size()) {
                int w = row[f.edge].first;
                ++f.edge;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    // Tarjan emits sinks first; reverse for a topological order.
    std::reverse(comps.begin(), comps.end());

    SCCDecomposition d;
    d.blocks = std::move(comps);
    d.block_of.assign(n, -1);
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for (int v : d.blocks[b]) d.block_of[v] = static_cast<int>(b);
    for (const auto& block : d.blocks)
        for (int v : block) d.permutation.push_back(v);
    std::set<std::pair<int, int>> dag;
    for (int v = 0; v < n; ++v)
        for (const auto& [w, weight] : a.row(v)) {
            int bi = d.block_of[v], bj = d.block_of[w];
            if (bi != bj) dag.insert({bi, bj});
        }
    d.dag_edges.assign(dag.begin(), dag.end());
    return d;
}

inline bool has_cycle(const TransitionMatrix& block) {
    for (int i = 0; i < block.dimension(); ++i)
        if (!block.row(i).empty()) return true;  // irreducible: any edge implies a cycle
    return false;
}

/// Period of an irreducible matrix: gcd of cycle lengths, via BFS layering.
/// Throws NoCycle for the [0] convention block.
inline int period(const TransitionMatrix& block) {
    const int n = block.dimension();
    if (n == 1 && block.is_zero())
        throw Error(Errc::no_cycle, "the [0] block has no cycle");
    std::vector<int> level(n, -1);
    std::deque<int> queue{0};
    level[0] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& [w, weight] : block.row(v))
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
    }
    long g = 0;
    for (int v = 0; v < n; ++v) {
        if (level[v] < 0) throw Error(Errc::no_cycle, "block is not strongly connected");
        for (const auto& [w, weight] : block.row(v))
            g = std::gcd(g, static_cast<long>(level[v]) + 1 - level[w]);
    }
    if (g == 0) throw Error(Errc::no_cycle, "block has no cycle");
    return static_cast<int>(g < 0 ? -g : g);
}

}  // namespace growth

#endif  // GROWTH_SCC_HPP
