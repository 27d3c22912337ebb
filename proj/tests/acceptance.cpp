// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <growth/growth.hpp>

using namespace growth;

namespace {

const Rational kTol(1, 1000000000);

struct Outcome {
    bool pass = true;
    std::string detail;
};

using CheckFn = std::function<void(Outcome&)>;

void expect(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.pass) {
        o.pass = false;
        o.detail = what;
    }
}

// --- shared fixtures -------------------------------------------------------

struct SubgroupCase {
    SubgroupRecord rec;
    GrowthVerdict verdict;
};

std::vector<SubgroupCase>& random_subgroup_cases() {
    static std::vector<SubgroupCase> cases = [] {
        std::vector<SubgroupCase> out;
        std::mt19937 rng(20250810);
        std::uniform_int_distribution<int> gen_count(1, 3), gen_len(1, 6), letter(0, 3);
        Alphabet ab = Alphabet::free_group(2);
        while (out.size() < 100) {
            std::vector<Word> gens;
            int count = gen_count(rng);
            for (int i = 0; i < count; ++i) {
                int len = gen_len(rng);
                Word w;
                while (static_cast<int>(w.size()) < len) {
                    int x = letter(rng);
                    if (!w.empty() && x == ab.inverse(w.back())) continue;
                    w.push_back(x);
                }
                gens.push_back(std::move(w));
            }
            SubgroupRecord rec = build_core(gens, 2);
            if (rec.finite_index) continue;  // infinite-index filter
            SubgroupCase c{rec, {}};
            out.push_back(std::move(c));
        }
        return out;
    }();
    return cases;
}

// --- criteria --------------------------------------------------------------

void criterion1(Outcome& o) {
    auto table = census(shortlex_automaton(2), 12);
    Rational pow3 = 1;  // 3^n
    for (int n = 0; n <= 12; ++n) {
        Rational sphere = (n == 0) ? Rational(1) : 4 * pow3 / 3;
        expect(o, table.per_length[n] == sphere,
               "sphere count != 4*3^(n-1) at n=" + std::to_string(n));
        expect(o, table.cumulative[n] == 2 * pow3 - 1,
               "cumulative != 2*3^n-1 at n=" + std::to_string(n));
        pow3 *= 3;
    }
    // closed form and tree enumeration agree (ball_census enumerates to n=12 here)
    auto ball = ball_census(2, 12);
    for (int n = 0; n <= 12; ++n)
        expect(o, ball.cumulative[n] == table.cumulative[n], "ball census mismatch");
    auto counts = count_reduced_words_by_length(2, 8);
    for (int n = 0; n <= 8; ++n)
        expect(o, table.per_length[n] == Rational(static_cast<long>(counts[n])),
               "tree enumeration mismatch at n=" + std::to_string(n));
}

void criterion2(Outcome& o) {
    auto report = growth_rate(shortlex_automaton(2), kTol);
    expect(o, report.rho.contains(3), "rho enclosure must contain 3");
    expect(o, report.rho.width() <= kTol, "rho enclosure width above 1e-9");
    expect(o, report.lambda_lower <= 3 && 3 <= report.lambda_upper, "lambda must enclose 3");
}

void criterion3(Outcome& o) {
    auto rec = build_core({Alphabet::free_group(2).parse_word("a")}, 2);
    auto v = strict_growth_verdict(rec, 2, kTol);
    expect(o, v.lambda_H.lower == 1 && v.lambda_H.upper == 1, "lambda_H must be exactly [1,1]");
    expect(o, v.chain_certified, "chain must be certified");
    expect(o, v.margin >= Rational(2) - kTol, "margin must be >= 2 - 1e-9");
}

void criterion4(Outcome& o) {
    auto& cases = random_subgroup_cases();
    int certified = 0;
    for (auto& c : cases) {
        c.verdict = strict_growth_verdict(c.rec, 2, kTol);
        if (c.verdict.chain_certified && c.verdict.lambda_H.upper < 3) ++certified;
        expect(o, c.verdict.chain_certified,
               "uncertified chain: " + c.verdict.diagnostics);
        expect(o, c.verdict.lambda_H.upper < 3, "lambda_H upper not below 3");
    }
    expect(o, certified == 100, "expected 100 certified verdicts, got " + std::to_string(certified));
}

void criterion5(Outcome& o) {
    auto ball = ball_census(2, 8);
    for (auto& c : random_subgroup_cases()) {
        if (c.verdict.g_used.empty()) continue;
        auto gh = subgroup_automaton(c.rec);
        auto gm = gamma_m(gh, c.verdict.g_used);
        auto fm = census(gm, 8);
        for (int n = 0; n <= 8; ++n)
            expect(o, fm.cumulative[n] <= ball.cumulative[n],
                   "f_M exceeds 2*3^n-1 at n=" + std::to_string(n));
        try {
            monoid_injectivity_check(gm, c.rec, c.verdict.g_used, 6);
        } catch (const Error& e) {
            expect(o, false, e.what());
        }
    }
}

void criterion6(Outcome& o) {
    auto report = nonuniform_experiment(3, kTol, 7);
    expect(o, report.rows.size() == 3, "expected 3 rows");
    for (const auto& row : report.rows) {
        expect(o, row.girth >= 2 * row.k + 1, "girth below 2k+1");
        expect(o, row.certified, "row not certified at k=" + std::to_string(row.k));
        expect(o, row.bound_upper <= row.lambda.upper, "lower bound fails");
        expect(o, row.lambda.upper < 3, "lambda upper not below 3");
    }
    const double expected_bounds[3] = {2.0, 2.449489742783178, 2.620741394208897};
    for (int i = 0; i < 3; ++i) {
        double got = report.rows[i].bound_lower.get_d();
        expect(o, std::fabs(got - expected_bounds[i]) < 1e-6,
               "bound value off at k=" + std::to_string(i + 1));
    }
}

void criterion7(Outcome& o) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> state_count(2, 8);
    int certified = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = state_count(rng);
        TransitionMatrix b(n);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i) b.add(perm[i], perm[(i + 1) % n], 1);
        std::uniform_int_distribution<int> state(0, n - 1);
        for (int e = 0; e < 2 * n; ++e) {
            int i = state(rng), j = state(rng);
            if (b.entry(i, j) == 0) b.add(i, j, 1);
        }
        std::vector<std::pair<int, int>> entries;
        for (int i = 0; i < n; ++i)
            for (const auto& [j, w] : b.row(i)) entries.emplace_back(i, j);
        std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
        auto [di, dj] = entries[pick(rng)];
        TransitionMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (const auto& [j, w] : b.row(i))
                if (!(i == di && j == dj)) a.add(i, j, w);
        auto verdict = dominates(a, b, kTol);
        if (verdict.kind == DominationKind::strictly_less) ++certified;
    }
    expect(o, certified == 50,
           "expected 50 strict domination certificates, got " + std::to_string(certified));
}

void criterion8(Outcome& o) {
    const Rational tight(Integer(1), Integer(1) << 100);
    // F2 automaton
    auto f2 = growth_rate(shortlex_automaton(2), tight, 31);
    expect(o, f2.polyfit.has_value(), "F2 polyfit missing");
    if (f2.polyfit) {
        const auto& cls = f2.polyfit->classes.at(0);
        expect(o, cls.degree == 0, "F2 degree must be 0");
        double floor = 1e-14 * std::max(1.0, std::fabs(cls.leading));
        for (std::size_t m = 10; m + 1 < cls.residuals.size(); ++m)
            expect(o, cls.residuals[m + 1] <= 0.75 * cls.residuals[m] + floor,
                   "F2 residuals fail geometric decay at n=" + std::to_string(m));
    }
    // Fibonacci automaton
    RawAutomaton raw;
    raw.alphabet = Alphabet::from_parts({"a", "A"}, {{"a", "A"}}, {});
    raw.num_states = 2;
    raw.start = 0;
    raw.accepts = {0, 1};
    raw.transitions = {{0, "a", 0, 1}, {0, "A", 1, 1}, {1, "a", 0, 1}};
    auto fib = growth_rate(validate(raw), tight, 31);
    expect(o, fib.polyfit.has_value(), "Fibonacci polyfit missing");
    if (fib.polyfit) {
        const auto& cls = fib.polyfit->classes.at(0);
        expect(o, cls.degree == 0, "Fibonacci degree must be 0");
        double floor = 1e-14 * std::max(1.0, std::fabs(cls.leading));
        for (std::size_t m = 10; m + 1 < cls.residuals.size(); ++m)
            expect(o, cls.residuals[m + 1] <= 0.75 * cls.residuals[m] + floor,
                   "Fibonacci residuals fail geometric decay at n=" + std::to_string(m));
    }
}

void criterion9(Outcome& o) {
    for (auto& c : random_subgroup_cases()) {
        auto aut = subgroup_automaton(c.rec);
        auto table = census(aut, 7);
        for (int n = 0; n <= 7; ++n) {
            long count = (n == 0) ? 1 : 0;
            if (n > 0)
                enumerate_reduced_words(2, n, [&](const Word& w) {
                    if (contains(c.rec, w)) ++count;
                });
            expect(o, table.per_length[n] == Rational(count),
                   "census != ball enumeration at n=" + std::to_string(n));
        }
    }
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;  // 0 = no stated limit
    CheckFn fn;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "free-group growth formula f(n) = 2*3^n - 1", 1.0, criterion1},
        {2, "lambda_G enclosure around 3, width <= 1e-9", 1.0, criterion2},
        {3, "elementary subgroup <a>: lambda_H = [1,1], margin >= 2 - 1e-9", 1.0, criterion3},
        {4, "strict gap certified for 100 random infinite-index subgroups", 30.0, criterion4},
        {5, "monoid sandwich f_M(n) <= 2*3^n - 1 and L_M injectivity", 0.0, criterion5},
        {6, "non-uniformity experiment k = 1..3", 300.0, criterion6},
        {7, "domination: 50 random edge deletions strictly drop rho", 10.0, criterion7},
        {8, "polyexp: degree-0 classes with geometrically decaying residuals", 0.0, criterion8},
        {9, "oracle equivalence: automaton census = ball enumeration", 0.0, criterion9},
    };
    bool all_pass = true;
    for (auto& c : criteria) {
        Outcome outcome;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(outcome);
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
            outcome.pass = false;
            outcome.detail = "runtime " + std::to_string(seconds) + "s exceeds " +
                             std::to_string(c.time_limit_s) + "s";
        }
        std::printf("criterion %d [%s] %s (%.2fs)%s%s\n", c.id, outcome.pass ? "PASS" : "FAIL",
                    c.name, seconds, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
