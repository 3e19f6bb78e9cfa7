#include "cliqueblowup/verify.hpp"

#include "cliqueblowup/blowup.hpp"
#include "cliqueblowup/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

namespace cliqueblowup {

std::vector<CorpusEntry> parse_corpus(std::string_view spec) {
    std::vector<CorpusEntry> corpus;
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        auto item = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item.empty()) {
            continue;
        }
        corpus.push_back({std::string(item), graph_from_spec(item)});
    }
    return corpus;
}

std::vector<CorpusEntry> default_corpus() {
    return parse_corpus("complete:2,path:3,path:4,cycle:4,cycle:5,complete:3,complete:4,star:5,petersen");
}

bool VerifyReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerifyReport::first_failure() const {
    const auto it = std::find_if(results.begin(), results.end(), [](const CheckResult& c) { return !c.passed; });
    return it == results.end() ? nullptr : &*it;
}

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

class Recorder {
public:
    Recorder(std::vector<CheckResult>& out, std::string graph, int n, int r)
        : out_(out), graph_(std::move(graph)), n_(n), r_(r) {}

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        try {
            Outcome o = fn();
            out_.push_back({graph_, name, n_, r_, o.passed, std::move(o.detail)});
        } catch (const std::exception& ex) {
            out_.push_back({graph_, name, n_, r_, false, ex.what()});
        }
    }

private:
    std::vector<CheckResult>& out_;
    std::string graph_;
    int n_;
    int r_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

Outcome relative(double got, double want, double tol) {
    const double dev = std::abs(got - want);
    const bool ok = dev <= tol * std::max(std::abs(want), 1e-300);
    return {ok, fmt(got) + " vs " + fmt(want) + " (rel dev " + fmt(dev / std::max(std::abs(want), 1e-300)) + ")"};
}

// Spectral checks shared by base graphs and explicit blowups.
void structural_checks(Recorder& rec, const Graph& g, const SpectrumMultiset& sigma, const VerifyOptions& options) {
    const double order = static_cast<double>(g.vertex_count());
    rec.run("trace", [&] {
        double trace = 0.0;
        for (const double v : sigma.values()) trace += v;
        return relative(trace, order, 1e-6);
    });
    rec.run("range", [&] {
        const double lo = sigma.values().front();
        const double hi = sigma.values().back();
        return Outcome{lo >= -1e-9 && hi <= 2.0 + 1e-9, "[" + fmt(lo) + ", " + fmt(hi) + "]"};
    });
    rec.run("bipartite", [&] {
        const bool bip = bipartition(g).is_bipartite;
        const double top = sigma.values().back();
        if (!bip) {
            return Outcome{top < 2.0 - 1e-6, "non-bipartite, lambda_max = " + fmt(top)};
        }
        std::vector<double> mirrored;
        for (const double v : sigma.values()) mirrored.push_back(2.0 - v);
        const auto m = multiset_match(SpectrumMultiset::from_values(mirrored), sigma, options.tol);
        return Outcome{std::abs(top - 2.0) <= options.tol && m.matched,
                       "bipartite, lambda_max = " + fmt(top) + ", mirror " + m.summary()};
    });
}

void oracle_checks(Recorder& rec, const Graph& h, const SpectrumMultiset& sigma) {
    const BigInt m = static_cast<unsigned long>(h.edge_count());
    rec.run("oracle_kf", [&] { return relative(kf_star_spectral(sigma, m), kf_star_direct(h), 1e-7); });
    rec.run("oracle_tau", [&] {
        const BigInt exact = tau_exact(h);
        return relative(tau_spectral(h, sigma), exact.get_d(), 1e-6);
    });
    rec.run("kf_2m_ke", [&] {
        return relative(kf_star_spectral(sigma, m), 2.0 * m.get_d() * kemeny_spectral(sigma), 1e-12);
    });
}

struct EntryResult {
    std::vector<CheckResult> results;
    std::vector<std::string> notes;
};

EntryResult verify_entry(const CorpusEntry& entry, const VerifyOptions& options) {
    EntryResult out;
    const Graph& g = entry.graph;
    const BigInt n0 = static_cast<unsigned long>(g.vertex_count());
    const BigInt e0 = static_cast<unsigned long>(g.edge_count());

    Recorder base(out.results, entry.name, 0, 0);
    if (!is_connected(g) || g.vertex_count() < 2) {
        base.run("connected", [] { return Outcome{false, "corpus graphs must be connected with at least one edge"}; });
        return out;
    }
    const Bipartition bip = bipartition(g);
    const SpectrumMultiset sigma = normalized_spectrum(g);
    structural_checks(base, g, sigma, options);
    base.run("incidence_rank", [&] {
        const std::size_t want = g.vertex_count() - (bip.is_bipartite ? 1 : 0);
        const std::size_t got = incidence_rank(g);
        return Outcome{got == want, std::to_string(got) + " vs " + std::to_string(want)};
    });
    if (g.vertex_count() <= options.limits.exact_cap) {
        oracle_checks(base, g, sigma);
    }

    const BigRational kf0 = kf_star_exact(g, options.limits.exact_cap);
    const BigRational ke0 = kf0 / (2 * BigRational(e0));
    const BigInt tau0 = tau_exact(g, options.limits.exact_cap);

    for (const int n : options.n_values) {
        for (const int r : options.r_values) {
            const BlowupParams p{n, r};
            Recorder rec(out.results, entry.name, n, r);
            BlowupCounts counts;
            try {
                counts = blowup_counts(n0, e0, p);
            } catch (const std::exception& ex) {
                rec.run("counts", [&] { return Outcome{false, ex.what()}; });
                continue;
            }

            rec.run("r_forms", [&] {
                // Each call asserts its recurrence against the r-level form.
                kf_star_blowup_closed(kf0, n0, e0, p);
                kemeny_blowup_closed(ke0, n0, e0, p);
                tau_blowup_closed(tau0, n0, e0, p);
                return Outcome{true, "Kf*, K_e, tau recurrences agree with r-level forms"};
            });
            const BigRational published = kemeny_r_form_published(ke0, n0, e0, p);
            const BigRational recurrence = kemeny_r_form(ke0, n0, e0, p);
            if (published != recurrence) {
                out.notes.push_back(entry.name + " n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                    ": published K_e r-level form gives " + to_string(published) +
                                    ", recurrence gives " + to_string(recurrence));
            }

            if (counts.vertices > BigInt(std::to_string(options.limits.max_vertices))) {
                continue;
            }
            const Graph h = blowup_iterate(g, p, options.limits.max_vertices);
            rec.run("counts", [&] {
                const bool ok = BigInt(static_cast<unsigned long>(h.vertex_count())) == counts.vertices &&
                                BigInt(static_cast<unsigned long>(h.edge_count())) == counts.edges;
                return Outcome{ok, std::to_string(h.vertex_count()) + "/" + std::to_string(h.edge_count()) + " vs " +
                                       counts.vertices.get_str() + "/" + counts.edges.get_str()};
            });

            const SpectrumMultiset numeric = normalized_spectrum(h);
            SpectrumMultiset theorem;
            rec.run("spectrum", [&] {
                theorem = spectrum_iterated(sigma, n0, e0, p, bip.is_bipartite, options.limits.max_vertices);
                const auto m = multiset_match(theorem, numeric, options.tol);
                return Outcome{m.matched, m.summary()};
            });
            structural_checks(rec, h, numeric, options);
            rec.run("scaling", [&] {
                const Graph prev = blowup_iterate(g, {n, r - 1}, options.limits.max_vertices);
                const SpectrumMultiset prev_sigma = normalized_spectrum(prev);
                const double skip_two = 2.0 / (n - 1);
                const double skip_top = static_cast<double>(n) / (n - 1);
                for (const double mu : numeric.values()) {
                    if (std::abs(mu - skip_two) <= numeric.cluster_tol() ||
                        std::abs(mu - skip_top) <= numeric.cluster_tol()) {
                        continue;
                    }
                    const double target = (n - 1) * mu;
                    const auto pv = prev_sigma.values();
                    const bool found = std::any_of(pv.begin(), pv.end(), [&](double x) {
                        return std::abs(x - target) <= options.tol * std::max(1.0, std::abs(target));
                    });
                    if (!found) {
                        return Outcome{false, "(n-1)*" + fmt(mu) + " is not an eigenvalue of CL_{r-1}"};
                    }
                }
                return Outcome{true, "every non-special eigenvalue scales back"};
            });

            if (h.vertex_count() > options.limits.exact_cap) {
                continue;
            }
            rec.run("incidence_rank", [&] {
                const std::size_t got = incidence_rank(h);
                return Outcome{got == h.vertex_count(), std::to_string(got) + " vs " + std::to_string(h.vertex_count())};
            });
            oracle_checks(rec, h, numeric);
            const BigRational kf_h = kf_star_exact(h, options.limits.exact_cap);
            rec.run("closed_kf", [&] {
                const BigRational closed = kf_star_blowup_closed(kf0, n0, e0, p) + options.closed_form_perturbation;
                return Outcome{closed == kf_h, to_string(closed) + " vs " + to_string(kf_h)};
            });
            rec.run("closed_ke", [&] {
                const BigRational closed = kemeny_blowup_closed(ke0, n0, e0, p);
                const BigRational want = kf_h / (2 * BigInt(static_cast<unsigned long>(h.edge_count())));
                return Outcome{closed == want, to_string(closed) + " vs " + to_string(want)};
            });
            rec.run("closed_tau", [&] {
                const BigInt closed = tau_blowup_closed(tau0, n0, e0, p);
                const BigInt exact = tau_exact(h, options.limits.exact_cap);
                return Outcome{closed == exact, closed.get_str() + " vs " + exact.get_str()};
            });
        }
    }
    return out;
}

} // namespace

VerifyReport run_verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options) {
    std::vector<EntryResult> per_entry(corpus.size());
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, options.jobs));
    if (jobs == 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            per_entry[i] = verify_entry(corpus[i], options);
        }
    } else {
        for (std::size_t start = 0; start < corpus.size(); start += jobs) {
            std::vector<std::future<EntryResult>> batch;
            for (std::size_t i = start; i < std::min(corpus.size(), start + jobs); ++i) {
                batch.push_back(std::async(std::launch::async, verify_entry, std::cref(corpus[i]), std::cref(options)));
            }
            for (std::size_t k = 0; k < batch.size(); ++k) {
                per_entry[start + k] = batch[k].get();
            }
        }
    }
    VerifyReport report;
    for (auto& e : per_entry) {
        report.results.insert(report.results.end(), e.results.begin(), e.results.end());
        report.notes.insert(report.notes.end(), e.notes.begin(), e.notes.end());
    }
    return report;
}

void print_verify_matrix(const VerifyReport& report, std::ostream& out) {
    std::vector<std::string> columns;
    for (const auto& c : report.results) {
        if (std::find(columns.begin(), columns.end(), c.check) == columns.end()) {
            columns.push_back(c.check);
        }
    }
    struct Row {
        std::string graph;
        int n;
        int r;
        std::vector<std::string> cells;
    };
    std::vector<Row> rows;
    for (const auto& c : report.results) {
        if (rows.empty() || rows.back().graph != c.graph || rows.back().n != c.n || rows.back().r != c.r) {
            rows.push_back({c.graph, c.n, c.r, std::vector<std::string>(columns.size(), "-")});
        }
        const auto col = static_cast<std::size_t>(std::find(columns.begin(), columns.end(), c.check) - columns.begin());
        rows.back().cells[col] = c.passed ? "ok" : "FAIL";
    }

    out << std::left << std::setw(14) << "graph" << std::setw(4) << "n" << std::setw(4) << "r";
    for (const auto& col : columns) {
        out << std::setw(static_cast<int>(std::max<std::size_t>(col.size(), 4) + 1)) << col;
    }
    out << '\n';
    for (const auto& row : rows) {
        out << std::left << std::setw(14) << row.graph << std::setw(4) << (row.n == 0 ? "-" : std::to_string(row.n))
            << std::setw(4) << (row.n == 0 ? "-" : std::to_string(row.r));
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out << std::setw(static_cast<int>(std::max<std::size_t>(columns[i].size(), 4) + 1)) << row.cells[i];
        }
        out << '\n';
    }
}

} // namespace cliqueblowup
