// Certified Perron-Frobenius analysis. Floating-point power iteration only
// proposes witness vectors; the enclosure itself comes from exact rational
// Collatz-Wielandt quotients min_i (Ax)_i/x_i <= rho_A <= max_i (Ax)_i/x_i,
// which are sound for any positive x. Periodicity is defeated by shifting
// A + I before iterating and subtracting 1 from the bounds.
#ifndef GROWTH_SPECTRAL_HPP
#define GROWTH_SPECTRAL_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "automaton.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "scc.hpp"

namespace growth {

struct SpectralEnclosure {
    Rational lower = 0;
    Rational upper = 0;
    int period = 1;
    std::vector<Rational> witness;
    long iterations = 0;
    bool converged = true;

    Rational width() const { return upper - lower; }
    Rational midpoint() const { return (lower + upper) / 2; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

struct PfOptions {
    long max_iterations = 100000;  // exact-iteration cap
    long float_iterations = 0;     // 0 = automatic
};

namespace detail {

inline constexpr long long kFloatGrid = 1LL << 53;

inline std::vector<double> to_double_rows(const TransitionMatrix& a,
                                          std::vector<std::vector<std::pair<int, double>>>& rows) {
    rows.assign(a.dimension(), {});
    for (int i = 0; i < a.dimension(); ++i)
        for (const auto& [j, w] : a.row(i)) rows[i].emplace_back(j, w.get_d());
    return {};
}

/// Tries to promote the float iterate to an exact eigenvector with small
/// rational entries; exact hits give width-zero enclosures.
inline bool try_exact_snap(const TransitionMatrix& a, const std::vector<double>& v,
                           SpectralEnclosure& out) {
    const int n = a.dimension();
    std::vector<Rational> rv(n);
    for (int i = 0; i < n; ++i) {
        if (!(v[i] > 0)) return false;
        rv[i] = small_rational_from_double(v[i], 1 << 20);
        if (rv[i] <= 0) return false;
    }
    std::vector<Rational> av = a.apply(rv);
    Rational q = av[0] / rv[0];
    for (int i = 1; i < n; ++i)
        if (av[i] != q * rv[i]) return false;
    out.lower = out.upper = q;
    out.witness = std::move(rv);
    out.converged = true;
    return true;
}

inline unsigned grid_bits_for(const Rational& tol) {
    unsigned bits = 64;
    Rational grid(Integer(1), Integer(1) << 64);
    while (grid * 1024 > tol && bits < 4096) {
        bits += 64;
        grid /= Integer(1) << 64;
    }
    return bits;
}

}  // namespace detail

/// Certified enclosure of the Perron-Frobenius eigenvalue of an irreducible
/// non-negative matrix. Guarantees lower <= rho <= upper; on convergence,
/// upper - lower <= tol * lower. The [0] block yields the exact [0, 0].
inline SpectralEnclosure pf_enclosure(const TransitionMatrix& block, const Rational& tol,
                                      PfOptions opts = {}) {
    if (tol <= 0) throw Error(Errc::malformed_input, "tolerance must be positive");
    const int n = block.dimension();
    if (n == 0) throw Error(Errc::malformed_input, "empty matrix");

    SpectralEnclosure enc;
    if (block.is_zero()) {
        enc.lower = enc.upper = 0;
        enc.period = 1;  // [0] convention; the block has no cycle
        enc.witness.assign(n, Rational(1));
        return enc;
    }
    enc.period = period(block);
    if (n == 1) {
        enc.lower = enc.upper = block.entry(0, 0);
        enc.witness = {Rational(1)};
        return enc;
    }

    // Float power iteration on A + I to propose a witness.
    std::vector<std::vector<std::pair<int, double>>> rows;
    detail::to_double_rows(block, rows);
    std::vector<double> v(n, 1.0);
    const double tol_d = std::max(tol.get_d() * 0.01, 1e-16);
    long float_cap = opts.float_iterations > 0
                         ? opts.float_iterations
                         : std::min<long>(20000, std::max<long>(1000, 50L * n));
    double best_gap = 1e300;
    long best_at = 0;
    long fiters = 0;
    for (; fiters < float_cap; ++fiters) {
        std::vector<double> w(v);  // the +I shift
        for (int i = 0; i < n; ++i)
            for (const auto& [j, x] : rows[i]) w[i] += x * v[j];
        double qmin = 1e300, qmax = 0, wmax = 0;
        for (int i = 0; i < n; ++i) {
            double q = w[i] / v[i];
            qmin = std::min(qmin, q);
            qmax = std::max(qmax, q);
            wmax = std::max(wmax, w[i]);
        }
        for (int i = 0; i < n; ++i) v[i] = w[i] / wmax;
        double gap = (qmax - qmin) / qmin;
        if (gap < best_gap * 0.999) {
            best_gap = gap;
            best_at = fiters;
        }
        if (gap <= tol_d || fiters - best_at > 200) break;
    }

    if (detail::try_exact_snap(block, v, enc)) {
        enc.iterations = fiters;
        return enc;
    }

    // Exact certification loop on B = A + I.
    const unsigned bits = detail::grid_bits_for(tol);
    const Integer grid_den = Integer(1) << bits;
    std::vector<Rational> vq(n);
    for (int i = 0; i < n; ++i) {
        double x = std::max(v[i], 1e-15);
        long long scaled = std::llround(x * static_cast<double>(detail::kFloatGrid));
        if (scaled < 1) scaled = 1;
        vq[i] = Rational(Integer(static_cast<long>(scaled)),
                         Integer(static_cast<long>(detail::kFloatGrid)));
        vq[i].canonicalize();
    }

    bool first = true;
    long iters = 0;
    const Rational conv_factor = tol * Rational(63, 64);
    while (true) {
        std::vector<Rational> w = block.apply(vq);
        for (int i = 0; i < n; ++i) w[i] += vq[i];
        Rational lo = w[0] / vq[0], hi = lo;
        for (int i = 1; i < n; ++i) {
            Rational q = w[i] / vq[i];
            if (q < lo) lo = q;
            if (q > hi) hi = q;
        }
        lo -= 1;
        hi -= 1;
        if (first) {
            enc.lower = lo;
            enc.upper = hi;
            first = false;
        } else {
            if (lo > enc.lower) enc.lower = lo;
            if (hi < enc.upper) enc.upper = hi;
        }
        enc.witness = vq;
        if (enc.upper - enc.lower <= conv_factor * enc.lower) {
            enc.converged = true;
            break;
        }
        if (iters >= opts.max_iterations) {
            enc.converged = false;
            break;
        }
        // next iterate: normalize by the max entry, then round onto a fixed
        // grid (any positive vector keeps the bounds sound)
        Rational m = *std::max_element(w.begin(), w.end());
        for (int i = 0; i < n; ++i) {
            Rational scaled = w[i] / m;
            Integer num = scaled.get_num() << bits;
            Integer p;
            mpz_fdiv_q(p.get_mpz_t(), num.get_mpz_t(), scaled.get_den().get_mpz_t());
            if (p <= 0) p = 1;
            vq[i] = Rational(p, grid_den);
            vq[i].canonicalize();
        }
        ++iters;
    }
    enc.iterations = fiters + iters;

    // Integral nonzero irreducible blocks have rho >= 1.
    if (block.is_integral() && enc.lower < 1 && enc.upper >= 1) enc.lower = 1;

    // Compact the certified bounds (enclosure only ever widens slightly).
    Rational width = enc.upper - enc.lower;
    if (width > 0) {
        unsigned k = 64;
        Rational g(Integer(1), Integer(1) << 64);
        while (g * 256 > width && k < 8192) {
            k += 64;
            g /= Integer(1) << 64;
        }
        enc.lower = round_down_pow2(enc.lower, k);
        enc.upper = round_up_pow2(enc.upper, k);
        if (enc.lower < 0) enc.lower = 0;
    }
    return enc;
}

struct SpectralAnalysis {
    SCCDecomposition scc;
    std::vector<SpectralEnclosure> block_enclosures;
    SpectralEnclosure rho;
};

/// Per-block enclosures plus the aggregate rho_A = max over diagonal blocks.
inline SpectralAnalysis analyze_spectrum(const TransitionMatrix& a, const Rational& tol,
                                         PfOptions opts = {}) {
    SpectralAnalysis out;
    out.scc = scc_condense(a);
    out.rho.iterations = 0;
    bool first = true;
    for (const auto& block : out.scc.blocks) {
        SpectralEnclosure e = pf_enclosure(a.submatrix(block), tol, opts);
        out.rho.iterations += e.iterations;
        if (first || e.lower > out.rho.lower) out.rho.lower = e.lower;
        if (first || e.upper > out.rho.upper) out.rho.upper = e.upper;
        first = false;
        out.block_enclosures.push_back(std::move(e));
    }
    long p = 1;
    out.rho.converged = true;
    for (std::size_t b = 0; b < out.block_enclosures.size(); ++b) {
        const auto& e = out.block_enclosures[b];
        if (e.upper >= out.rho.lower) {
            out.scc.maximal_blocks.push_back(static_cast<int>(b));
            p = std::lcm(p, static_cast<long>(e.period));
            if (!e.converged) out.rho.converged = false;
        }
    }
    out.rho.period = static_cast<int>(p);
    return out;
}

inline SpectralEnclosure spectral_radius(const TransitionMatrix& a, const Rational& tol,
                                         PfOptions opts = {}) {
    return analyze_spectrum(a, tol, opts).rho;
}

// ---------------------------------------------------------------------------
// Domination (rho monotonicity certification)

enum class DominationKind { equal, strictly_less, less_or_equal, separation_failed };

struct DominationVerdict {
    DominationKind kind;
    SpectralEnclosure rho_a;
    SpectralEnclosure rho_b;
};

/// Certifies rho_a < rho_b for a <= b, a != b, b irreducible, by refining both
/// enclosures until they are disjoint rational intervals.
inline DominationVerdict dominates(const TransitionMatrix& a, const TransitionMatrix& b,
                                   const Rational& tol, int max_refinements = 10) {
    if (a.dimension() != b.dimension())
        throw Error(Errc::not_comparable, "matrices differ in dimension");
    if (!TransitionMatrix::leq(a, b))
        throw Error(Errc::not_comparable, "a <= b fails entrywise");
    if (a == b) {
        SpectralEnclosure e = spectral_radius(a, tol);
        return {DominationKind::equal, e, e};
    }
    bool b_irreducible = scc_condense(b).blocks.size() == 1;
    Rational t = tol;
    SpectralEnclosure ea = spectral_radius(a, t);
    SpectralEnclosure eb = spectral_radius(b, t);
    if (!b_irreducible) return {DominationKind::less_or_equal, ea, eb};
    for (int round = 0; round < max_refinements; ++round) {
        if (ea.upper < eb.lower) return {DominationKind::strictly_less, ea, eb};
        t /= 65536;
        ea = spectral_radius(a, t);
        eb = spectral_radius(b, t);
    }
    if (ea.upper < eb.lower) return {DominationKind::strictly_less, ea, eb};
    return {DominationKind::separation_failed, ea, eb};
}

// ---------------------------------------------------------------------------
// Exact certificate that rho_A < c: solve (cI - A) u = 1. When the solution
// exists and is positive, (Au)_i / u_i = c - 1/u_i < c for every i.

inline std::optional<std::vector<Rational>> positive_supereigenvector(const TransitionMatrix& a,
                                                                      const Rational& c) {
    const int n = a.dimension();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
    for (int i = 0; i < n; ++i) {
        m[i][i] = c;
        for (const auto& [j, w] : a.row(i)) m[i][j] -= w;
        m[i][n] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(m[col], m[pivot]);
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (int k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    std::vector<Rational> u(n);
    for (int i = n - 1; i >= 0; --i) {
        Rational acc = m[i][n];
        for (int k = i + 1; k < n; ++k) acc -= m[i][k] * u[k];
        u[i] = acc / m[i][i];
        if (u[i] <= 0) return std::nullopt;
    }
    return u;
}

// ---------------------------------------------------------------------------
// Growth rates of regular languages: lambda = max{rho_A, 1}.

struct PolyExpClassFit {
    int residue = 0;
    bool all_zero = false;
    int degree = 0;  // 4 means "not resolved at degree <= 3"
    double leading = 0.0;
    std::vector<int> lengths;
    std::vector<double> residuals;
};

struct PolyExpReport {
    int period = 1;
    Rational rho_hat;
    std::vector<PolyExpClassFit> classes;
    bool nonzero_class_found = false;
};

/// Empirical verification of w(L_n) = pi_s(n) rho^n + O(tau^n): estimates the
/// polynomial degree per residue class by successive finite differencing of
/// w(L_n)/rho^n and reports residual decay. tau itself is never computed.
inline PolyExpReport polyexp_fit(const CensusTable& c, const SpectralEnclosure& rho) {
    const int h = std::max(1, rho.period);
    const int n_max = c.max_length();
    if (n_max + 1 < 6 * h)
        throw Error(Errc::insufficient_data,
                    "census has " + std::to_string(n_max + 1) + " entries, need >= " +
                        std::to_string(6 * h));
    if (rho.upper <= 0)
        throw Error(Errc::insufficient_data, "zero spectral radius: census is eventually zero");

    PolyExpReport report;
    report.period = h;
    report.rho_hat = rho.midpoint();

    for (int s = 0; s < h; ++s) {
        PolyExpClassFit fit;
        fit.residue = s;
        std::vector<double> y;
        Rational pw = rational_pow(report.rho_hat, static_cast<unsigned long>(s));
        Rational step = rational_pow(report.rho_hat, static_cast<unsigned long>(h));
        bool all_zero = true;
        for (int n = s; n <= n_max; n += h) {
            Rational val = c.per_length[n] / pw;
            if (c.per_length[n] != 0) all_zero = false;
            y.push_back(val.get_d());
            fit.lengths.push_back(n);
            pw *= step;
        }
        fit.all_zero = all_zero;
        const int samples = static_cast<int>(y.size());
        if (all_zero || samples < 4) {
            fit.degree = 0;
            fit.leading = 0.0;
            fit.residuals.assign(samples, 0.0);
            report.classes.push_back(std::move(fit));
            continue;
        }
        double scale = 0;
        for (double v : y) scale = std::max(scale, std::fabs(v));

        // Successive differencing; degree d is accepted once the (d+1)-th
        // differences have visibly decayed.
        auto diff = [](const std::vector<double>& v) {
            std::vector<double> d(v.size() > 0 ? v.size() - 1 : 0);
            for (std::size_t i = 0; i + 1 < v.size(); ++i) d[i] = v[i + 1] - v[i];
            return d;
        };
        auto decayed = [&](const std::vector<double>& v) {
            if (v.empty()) return true;
            const std::size_t last = v.size() - 1;
            double t = std::fabs(v[last]);
            if (t <= 1e-6 * scale) return true;
            std::size_t back = std::max<std::size_t>(3, v.size() / 4);
            if (back > last) back = last;
            return t <= 0.25 * std::fabs(v[last - back]);
        };
        std::vector<double> level = y;
        int degree = 4;
        for (int d = 0; d <= 3; ++d) {
            std::vector<double> next = diff(level);
            if (decayed(next)) {
                degree = d;
                break;
            }
            level = std::move(next);
        }
        fit.degree = degree;
        int d_eff = std::min(degree, 3);
        // leading coefficient in n: tail of the d-th differences / (d! h^d)
        double denom = 1;
        for (int i = 1; i <= d_eff; ++i) denom *= i * h;
        std::vector<double> dth = y;
        for (int i = 0; i < d_eff; ++i) dth = diff(dth);
        fit.leading = dth.empty() ? 0.0 : dth.back() / denom;

        // Residuals against the polynomial interpolating the last d+1 samples
        // (Newton backward form).
        std::vector<std::vector<double>> table{y};
        for (int i = 0; i < d_eff; ++i) table.push_back(diff(table.back()));
        auto fitted = [&](int m) {
            // backward Newton at anchor m0 = samples-1
            double acc = 0;
            double binom = 1;
            int m0 = samples - 1;
            for (int i = 0; i <= d_eff; ++i) {
                int anchor = static_cast<int>(table[i].size()) - 1;
                if (anchor < 0) break;
                acc += binom * table[i][anchor];
                binom *= static_cast<double>(m - m0 + i) / (i + 1);
            }
            return acc;
        };
        fit.residuals.resize(samples);
        for (int m = 0; m < samples; ++m) fit.residuals[m] = std::fabs(y[m] - fitted(m));
        if (std::fabs(fit.leading) > 1e-8 * (1 + scale)) report.nonzero_class_found = true;
        report.classes.push_back(std::move(fit));
    }
    return report;
}

struct GrowthReport {
    SpectralEnclosure rho;
    Rational lambda_lower;
    Rational lambda_upper;
    CensusTable census_used;
    std::optional<PolyExpReport> polyfit;
    SpectralAnalysis analysis;
};

/// lambda_L = max{rho_A, 1} with the census attached for cross-validation.
inline GrowthReport growth_rate(const Automaton& g, const Rational& tol, int census_length = -1,
                                PfOptions opts = {}) {
    Automaton p = is_pruned(g) ? g : prune(g);
    if (is_empty_language(p)) throw Error(Errc::empty_language, "automaton accepts no words");
    GrowthReport report;
    report.analysis = analyze_spectrum(transition_matrix(p), tol, opts);
    report.rho = report.analysis.rho;
    report.lambda_lower = std::max(report.rho.lower, Rational(1));
    report.lambda_upper = std::max(report.rho.upper, Rational(1));
    int h = std::max(1, report.rho.period);
    int n = census_length > 0 ? census_length : std::max(30, 7 * h);
    report.census_used = census(p, n);
    if (report.rho.upper > 0 && n + 1 >= 6 * h)
        report.polyfit = polyexp_fit(report.census_used, report.rho);
    return report;
}

}  // namespace growth

#endif  // GROWTH_SPECTRAL_HPP
