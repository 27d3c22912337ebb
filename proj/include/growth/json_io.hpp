// Canonical JSON/CSV report emission and ingestion. Emission is deterministic:
// fixed key order (ordered_json), sorted transition lists, exact "p/q" strings
// for certified bounds, directed decimal rounding for CSV columns.
#ifndef GROWTH_JSON_IO_HPP
#define GROWTH_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "automaton.hpp"
#include "covers.hpp"
#include "errors.hpp"
#include "extension.hpp"
#include "spectral.hpp"
#include "stallings.hpp"

namespace growth {

using json = nlohmann::ordered_json;

/// Parse with a line-anchored diagnostic on failure.
inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw Error(Errc::malformed_input,
                    source + ":" + std::to_string(line) + ": " + e.what());
    }
}

inline json alphabet_to_json_parts(const Alphabet& ab, json& out) {
    json letters = json::array();
    for (int i = 0; i < ab.size(); ++i) letters.push_back(ab.letter(i));
    out["alphabet"] = letters;
    json invol = json::array();
    for (auto [i, j] : ab.involution_pairs()) invol.push_back({ab.letter(i), ab.letter(j)});
    out["involution"] = invol;
    json primes = json::object();
    for (auto [p, b] : ab.prime_pairs()) primes[ab.letter(p)] = ab.letter(b);
    out["primes"] = primes;
    return out;
}

inline json automaton_to_json(const Automaton& g) {
    json out;
    alphabet_to_json_parts(g.alphabet(), out);
    out["states"] = g.num_states();
    out["start"] = g.start();
    json accepts = json::array();
    for (int s : g.accept_states()) accepts.push_back(s);
    out["accepts"] = accepts;
    json transitions = json::array();
    for (int s = 0; s < g.num_states(); ++s)
        for (const Edge& e : g.edges_from(s)) {
            json t;
            t["from"] = s;
            t["label"] = g.alphabet().letter(e.letter);
            t["to"] = e.to;
            t["weight"] = rational_string(e.weight);
            transitions.push_back(std::move(t));
        }
    out["transitions"] = transitions;
    return out;
}

inline RawAutomaton raw_automaton_from_json(const json& j) {
    auto fail = [](const std::string& msg) -> void { throw Error(Errc::malformed_input, msg); };
    if (!j.is_object()) fail("automaton JSON must be an object");
    for (const char* key : {"alphabet", "states", "start", "accepts", "transitions"})
        if (!j.contains(key)) fail(std::string("missing field '") + key + "'");

    std::vector<std::string> letters;
    for (const auto& l : j.at("alphabet")) letters.push_back(l.get<std::string>());
    std::vector<std::pair<std::string, std::string>> involution;
    if (j.contains("involution"))
        for (const auto& pair : j.at("involution")) {
            if (!pair.is_array() || pair.size() != 2) fail("involution entries must be pairs");
            involution.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
    std::map<std::string, std::string> primes;
    if (j.contains("primes"))
        for (auto it = j.at("primes").begin(); it != j.at("primes").end(); ++it)
            primes[it.key()] = it.value().get<std::string>();

    RawAutomaton raw;
    raw.alphabet = Alphabet::from_parts(letters, involution, primes);
    raw.num_states = j.at("states").get<int>();
    raw.start = j.at("start").get<int>();
    for (const auto& s : j.at("accepts")) raw.accepts.push_back(s.get<int>());
    for (const auto& t : j.at("transitions")) {
        RawTransition tr;
        tr.from = t.at("from").get<int>();
        tr.label = t.at("label").get<std::string>();
        tr.to = t.at("to").get<int>();
        if (t.contains("weight")) {
            const auto& w = t.at("weight");
            if (w.is_string())
                tr.weight = parse_rational(w.get<std::string>());
            else if (w.is_number_integer())
                tr.weight = make_rational(w.get<long>());
            else
                fail("weights must be decimal-free rational strings or integers");
        }
        raw.transitions.push_back(std::move(tr));
    }
    return raw;
}

inline json enclosure_to_json(const SpectralEnclosure& e) {
    json out;
    out["lower"] = rational_string(e.lower);
    out["upper"] = rational_string(e.upper);
    return out;
}

inline json growth_report_to_json(const GrowthReport& r) {
    json out;
    out["rho"] = enclosure_to_json(r.rho);
    out["period"] = r.rho.period;
    json lambda;
    lambda["lower"] = rational_string(r.lambda_lower);
    lambda["upper"] = rational_string(r.lambda_upper);
    out["lambda"] = lambda;
    json blocks = json::array();
    for (std::size_t b = 0; b < r.analysis.block_enclosures.size(); ++b) {
        const auto& e = r.analysis.block_enclosures[b];
        json jb;
        jb["states"] = r.analysis.scc.blocks[b];
        jb["rho"] = enclosure_to_json(e);
        jb["period"] = e.period;
        bool maximal = false;
        for (int m : r.analysis.scc.maximal_blocks)
            if (m == static_cast<int>(b)) maximal = true;
        jb["maximal"] = maximal;
        blocks.push_back(std::move(jb));
    }
    out["blocks"] = blocks;
    json polyfit = json::array();
    if (r.polyfit) {
        for (const auto& cls : r.polyfit->classes) {
            json jc;
            jc["class"] = cls.residue;
            jc["degree"] = cls.degree;
            jc["leading"] = decimal_string(small_rational_from_double(cls.leading, 1000000000), 9);
            jc["all_zero"] = cls.all_zero;
            polyfit.push_back(std::move(jc));
        }
    }
    out["polyfit"] = polyfit;
    return out;
}

inline json census_to_json(const CensusTable& c) {
    json out;
    json per = json::array(), cum = json::array();
    for (const auto& v : c.per_length) per.push_back(rational_string(v));
    for (const auto& v : c.cumulative) cum.push_back(rational_string(v));
    out["per_length"] = per;
    out["cumulative"] = cum;
    return out;
}

inline std::string census_to_csv(const CensusTable& c) {
    std::string out = "n,per_length,cumulative\n";
    for (std::size_t n = 0; n < c.per_length.size(); ++n)
        out += std::to_string(n) + "," + rational_string(c.per_length[n]) + "," +
               rational_string(c.cumulative[n]) + "\n";
    return out;
}

inline json core_graph_to_json(const CoreGraph& g) {
    Alphabet ab = Alphabet::free_group(g.rank);
    json out;
    out["rank"] = g.rank;
    out["vertices"] = g.num_vertices();
    out["basepoint"] = g.basepoint;
    json edges = json::array();  // canonical order: by (origin, label)
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int x = 0; x < 2 * g.rank; x += 2) {
            if (g.adj[v][x] < 0) continue;
            json e;
            e["from"] = v;
            e["label"] = ab.letter(x);
            e["to"] = g.adj[v][x];
            edges.push_back(std::move(e));
        }
    out["edges"] = edges;
    return out;
}

inline json subgroup_record_to_json(const SubgroupRecord& rec) {
    Alphabet ab = Alphabet::free_group(rec.core.rank);
    json out;
    json gens = json::array();
    for (const Word& g : rec.generators) gens.push_back(ab.format_word(g));
    out["generators"] = gens;
    out["core"] = core_graph_to_json(rec.core);
    out["rank"] = rec.rank;
    out["finite_index"] = rec.finite_index;
    if (rec.finite_index) out["index"] = rec.index();
    return out;
}

inline json verdict_to_json(const GrowthVerdict& v, const Alphabet& ab) {
    json out;
    out["lambda_H"] = enclosure_to_json(v.lambda_H);
    out["rho_M"] = enclosure_to_json(v.rho_M);
    out["lambda_G"] = rational_string(v.lambda_G);
    out["g"] = ab.format_word(v.g_used);
    out["certified"] = v.chain_certified;
    out["margin"] = rational_string(v.margin);
    return out;
}

inline std::string nonuniform_csv(const NonuniformReport& report) {
    std::string out = "k,degree,girth,lambda_lower,lambda_upper,bound_lower,certified\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.k) + "," + std::to_string(row.degree) + "," +
               std::to_string(row.girth) + "," +
               decimal_string(row.lambda.lower, 12, DecimalRounding::down) + "," +
               decimal_string(row.lambda.upper, 12, DecimalRounding::up) + "," +
               decimal_string(row.bound_lower, 12, DecimalRounding::down) + "," +
               (row.certified ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace growth

#endif  // GROWTH_JSON_IO_HPP
