// The Gamma_M construction: attach, for each accept state of Gamma_H, an arc
// reading the connector g back to the start state. The arc's first letter is
// primed to preserve determinism and carries weight 1/|F| (1 in the
// torsion-free case). The certified chain is lambda_H = rho_H < rho_M <= lambda_G.
#ifndef GROWTH_EXTENSION_HPP
#define GROWTH_EXTENSION_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "errors.hpp"
#include "freegroup.hpp"
#include "matrix.hpp"
#include "spectral.hpp"
#include "stallings.hpp"

namespace growth {

/// Builds Gamma_M from a pruned Gamma_H with nonempty language.
inline Automaton gamma_m(const Automaton& gh, const Word& g, int cofactor_order = 1) {
    if (cofactor_order < 1) throw Error(Errc::malformed_input, "cofactor order must be >= 1");
    if (is_empty_language(gh)) throw Error(Errc::empty_language, "Gamma_H accepts no words");
    if (!is_pruned(gh)) throw Error(Errc::malformed_input, "Gamma_H must be pruned");
    if (g.empty()) throw Error(Errc::malformed_input, "connector g must be nonempty");
    const Alphabet& ab = gh.alphabet();
    for (int x : g) {
        if (x < 0 || x >= ab.size())
            throw Error(Errc::malformed_input, "connector letter outside alphabet");
        if (ab.is_primed(x))
            throw Error(Errc::determinism_clash, "connector may not use primed letters");
    }
    if (!is_reduced(ab, g))
        throw Error(Errc::malformed_input, "connector g is not reduced: " + ab.format_word(g));

    Alphabet ab2 = ab.with_prime(g[0]);  // throws DeterminismClash if x' already present
    const int primed = ab2.size() - 1;
    const int n = gh.num_states();
    const int arc_len = static_cast<int>(g.size());
    std::vector<int> accepts = gh.accept_states();

    int total = n + static_cast<int>(accepts.size()) * (arc_len - 1);
    std::vector<bool> accept(total, false);
    std::vector<std::vector<Edge>> out(total);
    for (int s = 0; s < n; ++s) {
        accept[s] = gh.is_accept(s);
        out[s] = gh.edges_from(s);
    }
    Rational first_weight(1, cofactor_order);
    first_weight.canonicalize();
    int fresh = n;
    for (int v : accepts) {
        int at = v;
        for (int i = 0; i < arc_len; ++i) {
            int next = (i + 1 == arc_len) ? gh.start() : fresh++;
            out[at].push_back(Edge{i == 0 ? primed : g[i], next, i == 0 ? first_weight : Rational(1)});
            at = next;
        }
    }
    Automaton gm(ab2, total, gh.start(), std::move(accept), std::move(out));
    if (scc_condense(transition_matrix(gm)).blocks.size() != 1)
        throw Error(Errc::malformed_input, "Gamma_M construction failed to be strongly connected");
    return gm;
}

struct InjectivityReport {
    long long words_checked = 0;
    Rational f_M;   // cumulative weighted census at length n
    Rational ball;  // f_{F_r}(n)
};

/// Enumerates L_M up to length n, projects primes away, reduces, and checks
/// that distinct words map to distinct group elements with f_M(n) <= f_{F_r}(n).
inline InjectivityReport monoid_injectivity_check(const Automaton& gm, const SubgroupRecord& rec,
                                                  const Word& g, int n) {
    (void)g;
    const Alphabet& ab = gm.alphabet();
    std::set<Word> elements;
    auto words = enumerate_accepted_words(gm, n);
    for (const Word& w : words) {
        Word el = reduce(ab, w);
        if (!elements.insert(el).second)
            throw Error(Errc::injectivity_violation,
                        "two words of L_M map to the group element '" + ab.format_word(el) + "'");
    }
    InjectivityReport report;
    report.words_checked = static_cast<long long>(words.size());
    report.f_M = census(gm, n).cumulative[n];
    report.ball = ball_census(rec.core.rank, n).cumulative[n];
    if (report.f_M > report.ball)
        throw Error(Errc::injectivity_violation,
                    "f_M(" + std::to_string(n) + ") = " + rational_string(report.f_M) +
                        " exceeds the ball census " + rational_string(report.ball));
    return report;
}

struct GrowthVerdict {
    SpectralEnclosure rho_H;
    SpectralEnclosure rho_M;
    SpectralEnclosure lambda_H;  // max{rho_H, 1}
    Rational lambda_G;           // 2r - 1, exact
    Rational margin;             // lambda_G - lambda_H.upper
    bool chain_certified = false;
    Word g_used;
    std::string diagnostics;
};

struct VerdictOptions {
    int max_g_len = 8;
    int max_refinements = 10;
    int sandwich_check_length = 8;
    PfOptions pf;
};

/// Full pipeline: Gamma_H, connector search, Gamma_M, domination, and the
/// upper leg rho_M <= 2r-1. The upper leg is certified by (in order) the max
/// row sum, the refined enclosure, or an exact rational solve of
/// (lambda_G I - A_M) u = 1 whose positive solution pins rho_M < lambda_G.
inline GrowthVerdict strict_growth_verdict(const SubgroupRecord& rec, int rank, const Rational& tol,
                                           VerdictOptions opts = {}) {
    if (rank < 2) throw Error(Errc::malformed_input, "ambient rank must be >= 2");
    if (rec.core.rank != rank) throw Error(Errc::malformed_input, "record rank mismatch");
    if (rec.finite_index)
        throw Error(Errc::finite_index_subgroup,
                    "subgroup has finite index " + std::to_string(rec.index()));

    GrowthVerdict v;
    v.lambda_G = 2 * rank - 1;

    Automaton gh = subgroup_automaton(rec);
    auto g = find_free_factor_element(rec, opts.max_g_len);
    if (!g) {
        GrowthReport report = growth_rate(gh, tol, 12, opts.pf);
        v.rho_H = report.rho;
        v.lambda_H = report.rho;
        v.lambda_H.lower = report.lambda_lower;
        v.lambda_H.upper = report.lambda_upper;
        v.margin = v.lambda_G - v.lambda_H.upper;
        v.diagnostics = "no certified free-product partner of length <= " +
                        std::to_string(opts.max_g_len);
        return v;
    }
    v.g_used = *g;

    Automaton gm = gamma_m(gh, *g, 1);
    TransitionMatrix a_h = transition_matrix(gh).padded(gm.num_states());
    TransitionMatrix a_m = transition_matrix(gm);

    DominationVerdict dom = dominates(a_h, a_m, tol, opts.max_refinements);
    v.rho_H = dom.rho_a;
    v.rho_M = dom.rho_b;
    v.lambda_H = v.rho_H;
    v.lambda_H.lower = std::max(v.rho_H.lower, Rational(1));
    v.lambda_H.upper = std::max(v.rho_H.upper, Rational(1));

    bool upper_leg = false;
    Rational max_row = 0;
    for (const Rational& s : a_m.row_sums())
        if (s > max_row) max_row = s;
    if (max_row <= v.lambda_G) {
        upper_leg = true;
        if (max_row < v.rho_M.upper) v.rho_M.upper = max_row;
    }
    if (!upper_leg && v.rho_M.upper <= v.lambda_G) upper_leg = true;
    if (!upper_leg && a_m.dimension() <= 400) {
        if (auto u = positive_supereigenvector(a_m, v.lambda_G)) {
            std::vector<Rational> au = a_m.apply(*u);
            Rational hi = au[0] / (*u)[0];
            for (int i = 1; i < a_m.dimension(); ++i) {
                Rational q = au[i] / (*u)[i];
                if (q > hi) hi = q;
            }
            if (hi < v.rho_M.upper) v.rho_M.upper = hi;
            upper_leg = v.rho_M.upper <= v.lambda_G;
        }
    }

    // Secondary check (finite prefix of the census sandwich).
    CensusTable fm = census(gm, opts.sandwich_check_length);
    CensusTable ball = ball_census(rank, opts.sandwich_check_length);
    bool sandwich_ok = true;
    for (int i = 0; i <= opts.sandwich_check_length; ++i)
        if (fm.cumulative[i] > ball.cumulative[i]) sandwich_ok = false;

    bool lower_leg = dom.kind == DominationKind::strictly_less &&
                     v.lambda_H.upper < v.rho_M.lower;
    v.chain_certified = lower_leg && upper_leg && sandwich_ok;
    v.margin = v.lambda_G - v.lambda_H.upper;
    if (!v.chain_certified) {
        if (!sandwich_ok)
            v.diagnostics = "census sandwich f_M(n) <= f_G(n) failed";
        else if (!lower_leg)
            v.diagnostics = dom.kind == DominationKind::separation_failed
                                ? "separation failed: rho_H and rho_M enclosures overlap at the "
                                  "refinement cap"
                                : "lambda_H upper bound does not clear rho_M lower bound";
        else
            v.diagnostics = "could not certify rho_M <= lambda_G";
    }
    return v;
}

}  // namespace growth

#endif  // GROWTH_EXTENSION_HPP
