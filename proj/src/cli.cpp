#include "cliqueblowup/cli.hpp"

#include "cliqueblowup/blowup.hpp"
#include "cliqueblowup/error.hpp"
#include "cliqueblowup/graph.hpp"
#include "cliqueblowup/indexes.hpp"
#include "cliqueblowup/json_io.hpp"
#include "cliqueblowup/spectral.hpp"
#include "cliqueblowup/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

namespace cliqueblowup {

namespace {

struct RunConfig {
    std::string input;
    std::string family;
    int n = 3;
    int r = 1;
    std::string method = "both";
    std::string route = "all";
    double tol = kDefaultMatchTol;
    std::optional<std::size_t> max_vertices;
    std::string output;
    std::string format = "table";
    int jobs = 1;

    std::size_t vertex_cap() const { return max_vertices ? *max_vertices : max_vertices_from_env(); }
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SizeCapExceeded:
        return kExitResourceCap;
    case ErrorKind::ParseError:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::SelfLoop:
    case ErrorKind::InvalidParameter:
    case ErrorKind::NotConnected:
    case ErrorKind::DegreeZero:
    case ErrorKind::NotSymmetric:
        return kExitInvalidInput;
    case ErrorKind::InconsistentSpectrum:
    case ErrorKind::InternalAssertion:
    case ErrorKind::NumericalFailure:
        return kExitMismatch;
    }
    return kExitMismatch;
}

Graph load_graph(const RunConfig& cfg) {
    if (!cfg.family.empty() && !cfg.input.empty()) {
        throw Error(ErrorKind::InvalidParameter, "give either --input or --family, not both");
    }
    if (!cfg.family.empty()) {
        return graph_from_spec(cfg.family);
    }
    if (cfg.input.empty()) {
        throw Error(ErrorKind::InvalidParameter, "no graph given; use --input FILE or --family SPEC");
    }
    std::string text;
    if (cfg.input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(cfg.input, std::ios::binary);
        if (!in) {
            throw Error(ErrorKind::InvalidParameter, "cannot open " + cfg.input);
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return parse_edge_list(text);
}

// Writes to --output when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& data) {
    if (cfg.output.empty() || cfg.output == "-") {
        out << data;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        throw Error(ErrorKind::InvalidParameter, "cannot write " + cfg.output);
    }
    file << data;
}

void check_format(const RunConfig& cfg) {
    if (cfg.format != "json" && cfg.format != "table") {
        throw Error(ErrorKind::InvalidParameter, "--format must be json or table");
    }
}

std::string spectrum_table(const std::string& title, const SpectrumMultiset& sigma) {
    std::ostringstream os;
    os << "# " << title << " (" << sigma.order() << " eigenvalues)\n";
    os << std::left << std::setw(26) << "value" << "multiplicity\n";
    for (const auto& e : sigma.entries()) {
        os << std::left << std::setw(26) << format_double(e.value) << e.multiplicity << '\n';
    }
    return os.str();
}

int cmd_gen(const std::string& family_name, int k, const RunConfig& cfg, std::ostream& out) {
    const auto family = parse_family(family_name);
    if (!family) {
        throw Error(ErrorKind::InvalidParameter, "unknown family '" + family_name + "'");
    }
    emit(cfg, out, serialize_edge_list(gen_family(*family, k)));
    return kExitOk;
}

int cmd_blowup(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Graph g = load_graph(cfg);
    const BlowupParams p{cfg.n, cfg.r};
    const Graph h = blowup_iterate(g, p, cfg.vertex_cap());
    emit(cfg, out, serialize_edge_list(h));
    err << "N=" << h.vertex_count() << " E=" << h.edge_count() << '\n';
    return kExitOk;
}

int cmd_spectra(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_format(cfg);
    if (cfg.method != "theorem" && cfg.method != "numeric" && cfg.method != "both") {
        throw Error(ErrorKind::InvalidParameter, "--method must be theorem, numeric or both");
    }
    const Graph g = load_graph(cfg);
    const BlowupParams p{cfg.n, cfg.r};
    p.validate();
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, "input graph is not connected");
    }
    const std::size_t cap = cfg.vertex_cap();

    std::optional<SpectrumMultiset> theorem;
    std::optional<SpectrumMultiset> numeric;
    if (cfg.method != "numeric") {
        const auto sigma = normalized_spectrum(g);
        theorem = spectrum_iterated(sigma, g.vertex_count(), g.edge_count(), p, bipartition(g).is_bipartite, cap);
    }
    if (cfg.method != "theorem") {
        numeric = normalized_spectrum(blowup_iterate(g, p, cap));
    }
    std::optional<MatchReport> match;
    if (theorem && numeric) {
        match = multiset_match(*theorem, *numeric, cfg.tol);
    }

    std::string data;
    if (cfg.format == "json") {
        data = "{";
        std::string sep;
        if (theorem) {
            data += "\"theorem\": " + to_json(*theorem);
            sep = ", ";
        }
        if (numeric) {
            data += sep + "\"numeric\": " + to_json(*numeric);
        }
        if (match) {
            data += std::string(", \"match\": ") + (match->matched ? "true" : "false") +
                    ", \"max_deviation\": " + format_double(match->max_deviation);
        }
        data += "}\n";
    } else {
        const std::string label = "CL_" + std::to_string(p.r) + "(G), n=" + std::to_string(p.n);
        if (theorem) data += spectrum_table("theorem spectrum of " + label, *theorem);
        if (numeric) data += spectrum_table("numeric spectrum of " + label, *numeric);
        if (match) data += std::string("match: ") + (match->matched ? "yes" : "no") + " - " + match->summary() + "\n";
    }
    emit(cfg, out, data);
    if (match && !match->matched) {
        err << "spectra disagree: " << match->summary() << '\n';
        return kExitMismatch;
    }
    return kExitOk;
}

double rel_delta(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

int cmd_indexes(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_format(cfg);
    const Graph g = load_graph(cfg);
    const BlowupParams p{cfg.n, cfg.r};
    p.validate();
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, "input graph is not connected");
    }
    const Limits limits{cfg.vertex_cap(), kDefaultExactCap};

    std::vector<Route> routes;
    if (cfg.route == "spectral") routes = {Route::Spectral};
    else if (cfg.route == "closed" || cfg.route == "closed_form") routes = {Route::ClosedForm};
    else if (cfg.route == "oracle") routes = {Route::Oracle};
    else if (cfg.route == "all") routes = {Route::Spectral, Route::ClosedForm, Route::Oracle};
    else throw Error(ErrorKind::InvalidParameter, "--route must be spectral, closed, oracle or all");

    std::vector<IndexReport> reports;
    for (const Route route : routes) {
        try {
            switch (route) {
            case Route::Spectral: reports.push_back(indexes_spectral(g, p, limits)); break;
            case Route::ClosedForm: reports.push_back(indexes_closed_form(g, p, limits)); break;
            case Route::Oracle: reports.push_back(indexes_oracle(g, p, limits)); break;
            }
        } catch (const Error& ex) {
            if (routes.size() == 1 || ex.kind() != ErrorKind::SizeCapExceeded) {
                throw;
            }
            err << "skipping " << to_string(route) << " route: " << ex.what() << '\n';
        }
    }
    if (reports.empty()) {
        throw Error(ErrorKind::SizeCapExceeded, "no route fits within the configured caps");
    }

    if (p.r >= 2) {
        const BigInt n0 = static_cast<unsigned long>(g.vertex_count());
        const BigInt e0 = static_cast<unsigned long>(g.edge_count());
        try {
            const BigRational ke0 = kf_star_exact(g) / (2 * BigRational(e0));
            const BigRational published = kemeny_r_form_published(ke0, n0, e0, p);
            const BigRational recurrence = kemeny_r_form(ke0, n0, e0, p);
            if (published != recurrence) {
                err << "note: published r-level Kemeny form gives " << to_string(published)
                    << ", the recurrence gives " << to_string(recurrence) << '\n';
            }
        } catch (const Error&) {
            // Base graph over the exact cap; nothing to compare.
        }
    }

    double d_kf = 0.0;
    double d_ke = 0.0;
    double d_tau = 0.0;
    for (std::size_t i = 1; i < reports.size(); ++i) {
        d_kf = std::max(d_kf, rel_delta(reports[i].kf_star, reports[0].kf_star));
        d_ke = std::max(d_ke, rel_delta(reports[i].kemeny, reports[0].kemeny));
        d_tau = std::max(d_tau, std::abs(reports[i].tau_log - reports[0].tau_log));
    }

    std::string data;
    if (cfg.format == "json") {
        if (reports.size() == 1) {
            data = to_json(reports[0]) + "\n";
        } else {
            data = "{\"reports\": [";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                data += (i ? ", " : "") + to_json(reports[i]);
            }
            data += "], \"deltas\": {\"kf_star\": " + format_double(d_kf) + ", \"kemeny\": " + format_double(d_ke) +
                    ", \"tau_log\": " + format_double(d_tau) + "}}\n";
        }
    } else {
        std::ostringstream os;
        os << "# indexes of CL_" << p.r << "(G), n=" << p.n << '\n';
        os << std::left << std::setw(14) << "quantity";
        for (const auto& rep : reports) os << std::setw(28) << to_string(rep.route);
        os << '\n';
        const auto row = [&](const std::string& name, auto&& cell) {
            os << std::left << std::setw(14) << name;
            for (const auto& rep : reports) os << std::setw(28) << cell(rep);
            os << '\n';
        };
        row("kf_star", [](const IndexReport& r) { return format_double(r.kf_star); });
        row("kf_star_exact", [](const IndexReport& r) { return r.kf_star_exact ? to_string(*r.kf_star_exact) : "-"; });
        row("kemeny", [](const IndexReport& r) { return format_double(r.kemeny); });
        row("kemeny_exact", [](const IndexReport& r) { return r.kemeny_exact ? to_string(*r.kemeny_exact) : "-"; });
        row("tau_float", [](const IndexReport& r) { return format_double(r.tau_float); });
        row("tau_exact", [](const IndexReport& r) { return r.tau_exact ? r.tau_exact->get_str() : "-"; });
        if (reports.size() > 1) {
            os << "max relative delta: kf_star " << format_double(d_kf) << ", kemeny " << format_double(d_ke)
               << ", log tau " << format_double(d_tau) << '\n';
        }
        data = os.str();
    }
    emit(cfg, out, data);

    if (d_kf > std::max(cfg.tol, 1e-7) || d_ke > std::max(cfg.tol, 1e-7) || d_tau > 1e-6) {
        err << "routes disagree beyond tolerance\n";
        return kExitMismatch;
    }
    return kExitOk;
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParameter, std::string(flag) + ": bad integer '" + item + "'");
        }
    }
    return out;
}

int cmd_verify(const RunConfig& cfg, const std::string& corpus_spec, const std::string& n_list,
               const std::string& r_list, std::ostream& out, std::ostream& err) {
    const auto corpus = corpus_spec.empty() ? default_corpus() : parse_corpus(corpus_spec);
    if (corpus.empty()) {
        throw Error(ErrorKind::InvalidParameter, "empty corpus");
    }
    VerifyOptions options;
    options.n_values = parse_int_list(n_list, "--n");
    options.r_values = parse_int_list(r_list, "--r");
    options.tol = cfg.tol;
    options.limits.max_vertices = cfg.vertex_cap();
    options.jobs = cfg.jobs;
    for (const int n : options.n_values) BlowupParams{n, 0}.validate();
    for (const int r : options.r_values) BlowupParams{3, r}.validate();

    const VerifyReport report = run_verify(corpus, options);
    std::ostringstream os;
    print_verify_matrix(report, os);
    for (const auto& note : report.notes) {
        os << "note: " << note << '\n';
    }
    const std::size_t failures = static_cast<std::size_t>(
        std::count_if(report.results.begin(), report.results.end(), [](const CheckResult& c) { return !c.passed; }));
    os << report.results.size() - failures << "/" << report.results.size() << " checks passed\n";
    emit(cfg, out, os.str());
    if (const CheckResult* f = report.first_failure()) {
        err << "first failure: " << f->graph << " n=" << f->n << " r=" << f->r << " [" << f->check << "] "
            << f->detail << '\n';
        return kExitMismatch;
    }
    return kExitOk;
}

void add_graph_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--input", cfg.input, "edge-list file ('-' for stdin)");
    sub->add_option("--family", cfg.family, "inline generator, e.g. complete:3, cycle:4, petersen");
    sub->add_option("--n", cfg.n, "clique size (>= 3)");
    sub->add_option("--r", cfg.r, "iteration depth (>= 0)");
    sub->add_option("--max-vertices", cfg.max_vertices, "vertex cap for explicit constructions");
    sub->add_option("--output", cfg.output, "output file (default stdout)");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clique blowup graphs: construction, normalized Laplacian spectra, Kirchhoff-type indices",
                 "cliqueblowup"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string gen_family_name;
    int gen_k = 0;
    auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    gen->add_option("family", gen_family_name, "complete, path, cycle or star")->required();
    gen->add_option("k", gen_k, "size parameter")->required();
    gen->add_option("--output", cfg.output, "output file (default stdout)");

    auto* blowup = app.add_subcommand("blowup", "emit the edge list of CL_r(G)");
    add_graph_options(blowup, cfg);

    auto* spectra = app.add_subcommand("spectra", "normalized Laplacian spectrum of CL_r(G)");
    add_graph_options(spectra, cfg);
    spectra->add_option("--method", cfg.method, "theorem, numeric or both");
    spectra->add_option("--tol", cfg.tol, "relative match tolerance");
    spectra->add_option("--format", cfg.format, "json or table");

    auto* indexes = app.add_subcommand("indexes", "Kf*, Kemeny's constant and spanning trees of CL_r(G)");
    add_graph_options(indexes, cfg);
    indexes->add_option("--route", cfg.route, "spectral, closed, oracle or all");
    indexes->add_option("--tol", cfg.tol, "relative tolerance between routes");
    indexes->add_option("--format", cfg.format, "json or table");

    std::string corpus_spec;
    std::string n_list = "3,4,5";
    std::string r_list = "1,2";
    auto* verify = app.add_subcommand("verify", "run the invariant and oracle suites over a corpus");
    verify->add_option("--corpus,--family", corpus_spec, "comma-separated generator specs (default: built-in corpus)");
    verify->add_option("--n", n_list, "comma-separated clique sizes");
    verify->add_option("--r", r_list, "comma-separated depths");
    verify->add_option("--tol", cfg.tol, "relative spectrum match tolerance");
    verify->add_option("--max-vertices", cfg.max_vertices, "vertex cap for explicit constructions");
    verify->add_option("--jobs", cfg.jobs, "corpus entries verified in parallel");
    verify->add_option("--output", cfg.output, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInvalidInput;
    }

    try {
        if (*gen) return cmd_gen(gen_family_name, gen_k, cfg, out);
        if (cfg.tol <= 0.0 || !std::isfinite(cfg.tol)) {
            throw Error(ErrorKind::InvalidParameter, "--tol must be positive");
        }
        if (*blowup) return cmd_blowup(cfg, out, err);
        if (*spectra) return cmd_spectra(cfg, out, err);
        if (*indexes) return cmd_indexes(cfg, out, err);
        if (*verify) {
            if (cfg.jobs < 1) throw Error(ErrorKind::InvalidParameter, "--jobs must be >= 1");
            // An explicitly empty --corpus is an empty corpus, not the default.
            if (verify->count("--corpus") > 0 && parse_corpus(corpus_spec).empty()) {
                throw Error(ErrorKind::InvalidParameter, "empty corpus");
            }
            return cmd_verify(cfg, corpus_spec, n_list, r_list, out, err);
        }
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_code_for(ex.kind());
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitMismatch;
    }
    return kExitInvalidInput;
}

} // namespace cliqueblowup
