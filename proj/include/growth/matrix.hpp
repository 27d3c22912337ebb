// Sparse non-negative rational matrices summarizing weighted digraphs:
// entry (i,j) is the total weight of edges i -> j.
#ifndef GROWTH_MATRIX_HPP
#define GROWTH_MATRIX_HPP

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace growth {

class TransitionMatrix {
public:
    explicit TransitionMatrix(int dimension = 0) : rows_(dimension) {}

    int dimension() const { return static_cast<int>(rows_.size()); }

    void add(int i, int j, const Rational& w) {
        if (w < 0) throw Error(Errc::nonpositive_weight, "negative matrix entry");
        if (w == 0) return;
        auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const auto& p, int col) { return p.first < col; });
        if (it != row.end() && it->first == j)
            it->second += w;
        else
            row.insert(it, {j, w});
    }

    Rational entry(int i, int j) const {
        const auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const auto& p, int col) { return p.first < col; });
        if (it != row.end() && it->first == j) return it->second;
        return Rational(0);
    }

    const std::vector<std::pair<int, Rational>>& row(int i) const { return rows_[i]; }

    std::size_t num_entries() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    bool is_zero() const { return num_entries() == 0; }

    bool is_integral() const {
        for (const auto& r : rows_)
            for (const auto& [j, w] : r)
                if (!is_integer(w)) return false;
        return true;
    }

    /// y = A x  (rows dot x).
    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        std::vector<Rational> y(dimension(), Rational(0));
        for (int i = 0; i < dimension(); ++i)
            for (const auto& [j, w] : rows_[i]) y[i] += w * x[j];
        return y;
    }

    /// y = x^T A  (column action), used for census-style iteration.
    std::vector<Rational> apply_left(const std::vector<Rational>& x) const {
        std::vector<Rational> y(dimension(), Rational(0));
        for (int i = 0; i < dimension(); ++i) {
            if (x[i] == 0) continue;
            for (const auto& [j, w] : rows_[i]) y[j] += x[i] * w;
        }
        return y;
    }

    std::vector<Rational> row_sums() const {
        std::vector<Rational> out(dimension(), Rational(0));
        for (int i = 0; i < dimension(); ++i)
            for (const auto& [j, w] : rows_[i]) out[i] += w;
        return out;
    }

    TransitionMatrix submatrix(const std::vector<int>& states) const {
        std::vector<int> where(dimension(), -1);
        for (std::size_t k = 0; k < states.size(); ++k) where[states[k]] = static_cast<int>(k);
        TransitionMatrix sub(static_cast<int>(states.size()));
        for (std::size_t k = 0; k < states.size(); ++k)
            for (const auto& [j, w] : rows_[states[k]])
                if (where[j] >= 0) sub.add(static_cast<int>(k), where[j], w);
        return sub;
    }

    /// Embeds into a larger matrix, indices preserved; new rows/columns are zero.
    TransitionMatrix padded(int new_dimension) const {
        if (new_dimension < dimension())
            throw Error(Errc::not_comparable, "padded dimension smaller than matrix");
        TransitionMatrix out(new_dimension);
        for (int i = 0; i < dimension(); ++i) out.rows_[i] = rows_[i];
        return out;
    }

    TransitionMatrix multiply(const TransitionMatrix& other) const {
        TransitionMatrix out(dimension());
        for (int i = 0; i < dimension(); ++i) {
            std::map<int, Rational> acc;
            for (const auto& [k, w] : rows_[i])
                for (const auto& [j, v] : other.rows_[k]) acc[j] += w * v;
            for (auto& [j, w] : acc)
                if (w != 0) out.rows_[i].emplace_back(j, w);
        }
        return out;
    }

    bool operator==(const TransitionMatrix& other) const {
        return dimension() == other.dimension() && rows_ == other.rows_;
    }

    /// Entrywise a <= b.
    static bool leq(const TransitionMatrix& a, const TransitionMatrix& b) {
        if (a.dimension() != b.dimension()) return false;
        for (int i = 0; i < a.dimension(); ++i)
            for (const auto& [j, w] : a.rows_[i])
                if (w > b.entry(i, j)) return false;
        return true;
    }

private:
    std::vector<std::vector<std::pair<int, Rational>>> rows_;
};

inline TransitionMatrix transition_matrix(const Automaton& g) {
    TransitionMatrix m(g.num_states());
    for (int s = 0; s < g.num_states(); ++s)
        for (const Edge& e : g.edges_from(s)) m.add(s, e.to, e.weight);
    return m;
}

/// Total weight of length-n paths i -> j ((A^n)_{ij}).
inline Rational matrix_power_count(const TransitionMatrix& a, int i, int j, int n) {
    if (n < 0) throw Error(Errc::malformed_input, "negative path length");
    std::vector<Rational> v(a.dimension(), Rational(0));
    v[i] = 1;
    for (int step = 0; step < n; ++step) v = a.apply_left(v);
    return v[j];
}

}  // namespace growth

#endif  // GROWTH_MATRIX_HPP
