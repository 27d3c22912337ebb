// growth: command-line surface over the library.
//
// Exit codes: 0 certified success, 2 uncertified/partial results
// (separation failures, attempt caps), 1 input errors.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <growth/growth.hpp>

namespace {

using namespace growth;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::malformed_input, "cannot open input file: " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Automaton load_automaton(const std::string& path) {
    json j = parse_json_text(read_file(path), path);
    return validate(raw_automaton_from_json(j));
}

Rational parse_tolerance(const std::string& text) {
    Rational tol = text.find('/') != std::string::npos ? parse_rational(text) : parse_decimal(text);
    if (tol <= 0) throw Error(Errc::malformed_input, "tolerance must be positive: " + text);
    return tol;
}

std::vector<Word> parse_generators(const Alphabet& ab, const std::string& text) {
    std::vector<Word> gens;
    std::string tok;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            if (!tok.empty()) {
                Word w = ab.parse_word(tok);
                if (!is_reduced(ab, w))
                    throw Error(Errc::malformed_input,
                                "generator '" + tok + "' is not freely reduced");
                gens.push_back(std::move(w));
                tok.clear();
            }
        } else if (tok.empty() && text[i] == ' ') {
            continue;
        } else {
            tok += text[i];
        }
    }
    return gens;
}

struct Config {
    std::string input;
    std::string gens;
    std::string connector;
    std::string tol_text = "1e-9";
    std::string format = "json";
    int rank = 2;
    int n_max = 20;
    int k_max = 3;
    int cofactor = 1;
    int max_g_len = 8;
    long attempt_cap = 5000;
    unsigned long long seed = 0;
};

int run_spectral(const Config& cfg) {
    Automaton g = load_automaton(cfg.input);
    GrowthReport report = growth_rate(g, parse_tolerance(cfg.tol_text));
    std::cout << growth_report_to_json(report).dump(2) << "\n";
    return report.rho.converged ? 0 : 2;
}

int run_census(const Config& cfg) {
    if (cfg.n_max < 0) throw Error(Errc::malformed_input, "--nmax must be >= 0");
    Automaton g = load_automaton(cfg.input);
    CensusTable table = census(g, cfg.n_max);
    if (cfg.format == "csv")
        std::cout << census_to_csv(table);
    else
        std::cout << census_to_json(table).dump(2) << "\n";
    return 0;
}

int run_stallings(const Config& cfg) {
    Alphabet ab = Alphabet::free_group(cfg.rank);
    SubgroupRecord rec = build_core(parse_generators(ab, cfg.gens), cfg.rank);
    std::cout << subgroup_record_to_json(rec).dump(2) << "\n";
    return 0;
}

int run_verdict(const Config& cfg) {
    Alphabet ab = Alphabet::free_group(cfg.rank);
    SubgroupRecord rec = build_core(parse_generators(ab, cfg.gens), cfg.rank);
    VerdictOptions opts;
    opts.max_g_len = cfg.max_g_len;
    GrowthVerdict v = strict_growth_verdict(rec, cfg.rank, parse_tolerance(cfg.tol_text), opts);
    std::cout << verdict_to_json(v, ab).dump(2) << "\n";
    if (!v.chain_certified) {
        std::cerr << "uncertified: " << v.diagnostics << "\n";
        return 2;
    }
    return 0;
}

int run_nonuniform(const Config& cfg) {
    NonuniformReport report =
        nonuniform_experiment(cfg.k_max, parse_tolerance(cfg.tol_text), cfg.seed, cfg.attempt_cap);
    std::cout << nonuniform_csv(report);
    return report.all_certified ? 0 : 2;
}

int run_gamma_m(const Config& cfg) {
    Alphabet ab = Alphabet::free_group(cfg.rank);
    SubgroupRecord rec = build_core(parse_generators(ab, cfg.gens), cfg.rank);
    Word g = ab.parse_word(cfg.connector);
    if (!is_reduced(ab, g))
        throw Error(Errc::malformed_input, "connector '" + cfg.connector + "' is not freely reduced");
    Automaton gh = subgroup_automaton(rec);
    Automaton gm = gamma_m(gh, g, cfg.cofactor);
    std::cout << automaton_to_json(gm).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified growth rates of regular languages, free groups, and their subgroups"};
    app.require_subcommand(1);
    Config cfg;

    auto* spectral = app.add_subcommand("spectral", "Certified spectral radius and growth report");
    spectral->add_option("--in", cfg.input, "automaton JSON file")->required();
    spectral->add_option("--tol", cfg.tol_text, "relative tolerance (decimal)");

    auto* census_cmd = app.add_subcommand("census", "Exact word census of an automaton");
    census_cmd->add_option("--in", cfg.input, "automaton JSON file")->required();
    census_cmd->add_option("--nmax", cfg.n_max, "maximum word length");
    census_cmd->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* stallings_cmd = app.add_subcommand("stallings", "Fold a subgroup core graph");
    stallings_cmd->add_option("--rank", cfg.rank, "ambient free-group rank");
    stallings_cmd->add_option("--gens", cfg.gens, "comma-separated reduced generators")->required();

    auto* verdict = app.add_subcommand("verdict", "Certified strict growth gap for a subgroup");
    verdict->add_option("--rank", cfg.rank, "ambient free-group rank");
    verdict->add_option("--gens", cfg.gens, "comma-separated reduced generators")->required();
    verdict->add_option("--tol", cfg.tol_text, "relative tolerance (decimal)");
    verdict->add_option("--max-g-len", cfg.max_g_len, "connector search bound");

    auto* nonuniform = app.add_subcommand("nonuniform", "Girth covers experiment (lambda_k -> 3)");
    nonuniform->add_option("--kmax", cfg.k_max, "largest k");
    nonuniform->add_option("--seed", cfg.seed, "search seed");
    nonuniform->add_option("--tol", cfg.tol_text, "relative tolerance (decimal)");
    nonuniform->add_option("--attempt-cap", cfg.attempt_cap, "cover search attempt cap");

    auto* gamma = app.add_subcommand("gamma-m", "Emit the Gamma_M automaton for a subgroup");
    gamma->add_option("--rank", cfg.rank, "ambient free-group rank");
    gamma->add_option("--gens", cfg.gens, "comma-separated reduced generators")->required();
    gamma->add_option("--g", cfg.connector, "connector word")->required();
    gamma->add_option("--cofactor", cfg.cofactor, "cofactor order |F| (weights 1/|F|)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectral->parsed()) return run_spectral(cfg);
        if (census_cmd->parsed()) return run_census(cfg);
        if (stallings_cmd->parsed()) return run_stallings(cfg);
        if (verdict->parsed()) return run_verdict(cfg);
        if (nonuniform->parsed()) return run_nonuniform(cfg);
        if (gamma->parsed()) return run_gamma_m(cfg);
    } catch (const growth::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == growth::Errc::attempt_cap_exceeded ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
