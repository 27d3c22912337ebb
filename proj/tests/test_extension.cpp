#include <catch2/catch_amalgamated.hpp>

#include <map>

#include <growth/extension.hpp>
#include <growth/json_io.hpp>

using namespace growth;

namespace {

const Rational kTol(1, 1000000000);
Alphabet ab2 = Alphabet::free_group(2);

SubgroupRecord record(std::initializer_list<const char*> gens) {
    std::vector<Word> words;
    for (const char* g : gens) words.push_back(ab2.parse_word(g));
    return build_core(words, 2);
}

int count_primed_letters(const Automaton& gm, const Word& w) {
    int k = 0;
    for (int x : w)
        if (gm.alphabet().is_primed(x)) ++k;
    return k;
}

}  // namespace

TEST_CASE("gamma_m attaches one arc per accept state and is strongly connected") {
    auto gh = subgroup_automaton(record({"a"}));
    auto gm = gamma_m(gh, ab2.parse_word("b"));
    // |g| = 1: no fresh states, one primed edge per accept state
    REQUIRE(gm.num_states() == gh.num_states());
    REQUIRE(gm.num_transitions() == gh.num_transitions() + gh.accept_states().size());
    REQUIRE(scc_condense(transition_matrix(gm)).blocks.size() == 1);
    auto rho = spectral_radius(transition_matrix(gm), kTol);
    REQUIRE(rho.lower > 1);
}

TEST_CASE("gamma_m on the trivial subgroup with |g| = 1 is a single cycle") {
    auto gh = subgroup_automaton(build_core({}, 2));
    auto gm = gamma_m(gh, ab2.parse_word("a"));
    REQUIRE(gm.num_states() == 1);
    auto rho = spectral_radius(transition_matrix(gm), kTol);
    REQUIRE(rho.lower == 1);
    REQUIRE(rho.upper == 1);
}

TEST_CASE("gamma_m arc carries weight 1/|F| on its first edge") {
    auto gh = subgroup_automaton(record({"a"}));
    auto gm1 = gamma_m(gh, ab2.parse_word("b"), 1);
    auto gm2 = gamma_m(gh, ab2.parse_word("b"), 2);
    // every accepted word with k arc crossings weighs 2^-k under cofactor 2
    auto words = enumerate_accepted_words(gm2, 5);
    for (const Word& w : words) {
        auto [ok, weight] = accepts(gm2, w);
        REQUIRE(ok);
        int k = count_primed_letters(gm2, w);
        REQUIRE(weight == Rational(1, Integer(1) << k));
    }
    // and the census halves the count of each crossing
    auto c1 = census(gm1, 5), c2 = census(gm2, 5);
    for (int n = 0; n <= 5; ++n) {
        Rational expected = 0;
        for (const Word& w : words)
            if (static_cast<int>(w.size()) == n)
                expected += Rational(1, Integer(1) << count_primed_letters(gm2, w));
        REQUIRE(c2.per_length[n] == expected);
        REQUIRE(c2.per_length[n] <= c1.per_length[n]);
    }
}

TEST_CASE("gamma_m with cofactor 1 gives every monoid element total weight 1") {
    auto gh = subgroup_automaton(record({"a"}));
    auto gm = gamma_m(gh, ab2.parse_word("b"), 1);
    std::map<Word, Rational> weight_by_element;
    for (const Word& w : enumerate_accepted_words(gm, 6)) {
        auto [ok, weight] = accepts(gm, w);
        REQUIRE(ok);
        weight_by_element[reduce(gm.alphabet(), w)] += weight;
    }
    for (const auto& [element, total] : weight_by_element) REQUIRE(total == 1);
}

TEST_CASE("gamma_m requires a pruned automaton with a nonempty language") {
    RawAutomaton raw;
    raw.alphabet = ab2;
    raw.num_states = 2;
    raw.start = 0;
    raw.accepts = {0};
    raw.transitions = {{0, "a", 1, 1}};  // state 1 is dead
    auto unpruned = validate(raw);
    try {
        gamma_m(unpruned, ab2.parse_word("b"));
        FAIL("expected rejection of an unpruned automaton");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::malformed_input);
    }

    raw.accepts = {};
    try {
        gamma_m(validate(raw), ab2.parse_word("b"));
        FAIL("expected EmptyLanguage");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::empty_language);
    }
}

TEST_CASE("gamma_m rejects automata that already use the primed letter") {
    auto gh = subgroup_automaton(record({"a"}));
    auto gm = gamma_m(gh, ab2.parse_word("b"));
    try {
        gamma_m(gm, gm.alphabet().parse_word("b"));
        FAIL("expected DeterminismClash");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::determinism_clash);
    }
}

TEST_CASE("gamma_m with a longer connector adds arc states") {
    auto gh = subgroup_automaton(record({"a"}));
    Word g = ab2.parse_word("b a");
    auto gm = gamma_m(gh, g);
    REQUIRE(gm.num_states() ==
            gh.num_states() + static_cast<int>(gh.accept_states().size()) * 1);
    REQUIRE(scc_condense(transition_matrix(gm)).blocks.size() == 1);
}

TEST_CASE("monoid injectivity check for <a> with g = b at n = 4") {
    auto rec = record({"a"});
    auto gh = subgroup_automaton(rec);
    auto gm = gamma_m(gh, ab2.parse_word("b"));
    auto report = monoid_injectivity_check(gm, rec, ab2.parse_word("b"), 4);
    REQUIRE(report.ball == 161);  // 2*3^4 - 1
    REQUIRE(report.f_M <= report.ball);
}

TEST_CASE("monoid words for the trivial subgroup are powers of the primed letter") {
    auto rec = build_core({}, 2);
    auto gh = subgroup_automaton(rec);
    auto gm = gamma_m(gh, ab2.parse_word("a"));
    auto report = monoid_injectivity_check(gm, rec, ab2.parse_word("a"), 5);
    REQUIRE(report.words_checked == 6);  // (a')^k for k = 0..5
}

TEST_CASE("a bad connector breaks injectivity and is detected") {
    auto rec = record({"a"});
    auto gh = subgroup_automaton(rec);
    auto gm = gamma_m(gh, ab2.parse_word("a a"));  // g = a^2 lies in <a>
    try {
        monoid_injectivity_check(gm, rec, ab2.parse_word("a a"), 4);
        FAIL("expected InjectivityViolation");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::injectivity_violation);
    }
}

TEST_CASE("strict growth verdict for <a>: margin 2, chain certified, g = b") {
    auto v = strict_growth_verdict(record({"a"}), 2, kTol);
    REQUIRE(v.chain_certified);
    REQUIRE(v.lambda_H.lower == 1);
    REQUIRE(v.lambda_H.upper == 1);
    REQUIRE(v.lambda_G == 3);
    REQUIRE(v.margin == 2);
    REQUIRE(v.g_used == ab2.parse_word("b"));
    REQUIRE(v.lambda_H.upper < v.rho_M.lower);
    REQUIRE(v.rho_M.upper <= 3);
}

TEST_CASE("strict growth verdict for <a^2, b> certifies lambda_H < 3") {
    auto rec = record({"aa", "b"});
    auto v = strict_growth_verdict(rec, 2, kTol);
    REQUIRE(v.chain_certified);
    REQUIRE(v.lambda_H.upper < 3);
    // cross-check lambda_H against the census growth ratio at n = 25
    auto c = census(subgroup_automaton(rec), 26);
    double ratio = Rational(c.cumulative[25] / c.cumulative[24]).get_d();
    double mid = v.lambda_H.midpoint().get_d();
    REQUIRE(std::fabs(ratio - mid) < 0.05 * mid);
}

TEST_CASE("strict growth verdict refuses finite-index subgroups") {
    try {
        strict_growth_verdict(record({"a", "b"}), 2, kTol);
        FAIL("expected FiniteIndexSubgroup");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::finite_index_subgroup);
    }
}

TEST_CASE("monotone sandwich: f_M(n) <= f_G(n) for n <= 8") {
    for (auto rec : {record({"a"}), record({"aa", "b"}), record({"a b A"})}) {
        auto gh = subgroup_automaton(rec);
        auto g = find_free_factor_element(rec);
        REQUIRE(g.has_value());
        auto gm = gamma_m(gh, *g);
        auto fm = census(gm, 8);
        auto ball = ball_census(2, 8);
        for (int n = 0; n <= 8; ++n) REQUIRE(fm.cumulative[n] <= ball.cumulative[n]);
    }
}

TEST_CASE("verdict JSON carries the documented keys") {
    auto v = strict_growth_verdict(record({"a"}), 2, kTol);
    json j = verdict_to_json(v, ab2);
    REQUIRE(j["lambda_G"] == "3");
    REQUIRE(j["g"] == "b");
    REQUIRE(j["certified"] == true);
    REQUIRE(j["margin"] == "2");
    REQUIRE(j["lambda_H"]["upper"] == "1");
}
