// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cliqueblowup/blowup.hpp"
#include "cliqueblowup/error.hpp"
#include "cliqueblowup/graph.hpp"
#include "cliqueblowup/indexes.hpp"
#include "cliqueblowup/spectral.hpp"
#include "cliqueblowup/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace cliqueblowup;

namespace {

struct Tally {
    std::size_t checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

bool rel_close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

struct Case {
    std::string name;
    Graph g;
    int n;
    int r;
};

std::string label(const Case& c) {
    return c.name + " n=" + std::to_string(c.n) + " r=" + std::to_string(c.r);
}

// Criterion-1 grid: full corpus at r=1 for n=3..6, then a few r=2 cases.
std::vector<Case> grid() {
    std::vector<Case> out;
    for (const auto& e : default_corpus())
        for (int n = 3; n <= 6; ++n) out.push_back({e.name, e.graph, n, 1});
    for (const char* spec : {"complete:2", "complete:3", "cycle:4"})
        for (int n : {3, 5}) out.push_back({spec, graph_from_spec(spec), n, 2});
    return out;
}

Tally criterion_spectrum(const std::vector<Case>& cases) {
    Tally t;
    for (const auto& c : cases) {
        const auto counts = blowup_counts(c.g.vertex_count(), c.g.edge_count(), {c.n, c.r});
        if (counts.vertices > kDefaultMaxVertices) {
            t.expect(false, label(c) + ": over the vertex cap");
            continue;
        }
        const auto theorem = spectrum_iterated(normalized_spectrum(c.g), c.g.vertex_count(), c.g.edge_count(),
                                               {c.n, c.r}, bipartition(c.g).is_bipartite);
        const auto direct = normalized_spectrum(blowup_iterate(c.g, {c.n, c.r}));
        const auto m = multiset_match(theorem, direct, 1e-7);
        t.expect(m.matched, label(c) + ": " + m.summary());
    }
    return t;
}

Tally criterion_fixture() {
    Tally t;
    const Graph k3 = gen_family(Family::Complete, 3);
    const Graph cl = clique_blowup(k3, 5);
    t.expect(cl.vertex_count() == 12, "vertex count " + std::to_string(cl.vertex_count()));
    t.expect(cl.edge_count() == 30, "edge count " + std::to_string(cl.edge_count()));

    const std::vector<double> want = [] {
        std::vector<double> v{0.0, 0.375, 0.375};
        v.resize(12, 1.25);
        return v;
    }();
    const auto numeric = normalized_spectrum(cl);
    const auto theorem = spectrum_by_theorem(normalized_spectrum(k3), 3, 3, 5, false);
    for (const auto* s : {&numeric, &theorem}) {
        const auto v = s->values();
        bool ok = v.size() == want.size();
        for (std::size_t i = 0; ok && i < v.size(); ++i) ok = std::abs(v[i] - want[i]) <= 1e-9;
        t.expect(ok, std::string(s == &numeric ? "numeric" : "theorem") + " spectrum differs from {0, 3/8 x2, 5/4 x9}");
    }
    t.expect(numeric.multiplicity_near(0.0) == 1 && numeric.multiplicity_near(0.375) == 2 &&
                 numeric.multiplicity_near(1.25) == 9,
             "clustered multiplicities");

    const double kf_spectral = kf_star_spectral(numeric, 30);
    const BigRational kf_closed = kf_star_blowup_closed(kf_star_exact(k3), 3, 3, {5, 1});
    const double kf_oracle = kf_star_direct(cl);
    t.expect(rel_close(kf_spectral, 752.0, 1e-8), "spectral Kf* " + num(kf_spectral));
    t.expect(kf_closed == 752, "closed-form Kf* " + to_string(kf_closed));
    t.expect(rel_close(kf_oracle, 752.0, 1e-8), "resistance Kf* " + num(kf_oracle));
    t.expect(kf_star_exact(cl) == 752, "exact resistance Kf*");

    const BigRational ke_closed = kemeny_blowup_closed(make_rational(4, 3), 3, 3, {5, 1});
    const RationalSpectrum exact_sigma =
        spectrum_by_theorem_exact({{0, 1}, {make_rational(3, 2), 2}}, 3, 3, 5, false);
    t.expect(ke_closed == make_rational(188, 15), "closed-form K_e " + to_string(ke_closed));
    t.expect(kemeny_spectral_exact(exact_sigma) == make_rational(188, 15), "exact spectral K_e");
    t.expect(kf_star_exact(cl) / 60 == make_rational(188, 15), "Kf*/2m");

    const BigInt tau = tau_exact(cl);
    const BigInt tau_closed = tau_blowup_closed(3, 3, 3, {5, 1});
    t.expect(tau == 2343750, "Matrix-Tree tau " + to_string(tau));
    t.expect(tau_closed == 2343750, "closed-form tau " + to_string(tau_closed));
    t.expect(BigInt(2) * pow(BigInt(5), 8) * 3 == tau, "2*5^8*3");
    return t;
}

Tally criterion_degenerate() {
    Tally t;
    const Graph k2 = gen_family(Family::Complete, 2);
    for (int n = 3; n <= 6; ++n) {
        const std::string at = "n=" + std::to_string(n) + ": ";
        const Graph cl = clique_blowup(k2, n);
        t.expect(cl == gen_family(Family::Complete, n), at + "CL(K_2) is not K_n");

        const auto exact = spectrum_iterated_exact({{0, 1}, {2, 1}}, 2, 1, {n, 1});
        t.expect(exact.size() == 2 && exact[0].value == 0 && exact[0].multiplicity == 1 &&
                     exact[1].value == make_rational(n, n - 1) && exact[1].multiplicity == n - 1,
                 at + "exact theorem spectrum");
        const auto numeric = normalized_spectrum(cl);
        t.expect(numeric.entries().size() == 2 && numeric.multiplicity_near(static_cast<double>(n) / (n - 1)) ==
                                                      static_cast<std::size_t>(n - 1),
                 at + "numeric spectrum");

        const BigInt cayley = pow(BigInt(n), static_cast<unsigned long>(n - 2));
        t.expect(tau_exact(cl) == cayley, at + "Matrix-Tree tau");
        t.expect(tau_blowup_closed(1, 2, 1, {n, 1}) == cayley, at + "closed-form tau");

        const BigInt cube = pow(BigInt(n - 1), 3);
        t.expect(kf_star_exact(cl) == cube, at + "exact Kf*");
        t.expect(kf_star_blowup_closed(1, 2, 1, {n, 1}) == cube, at + "closed-form Kf*");
        t.expect(kf_star_spectral_exact(exact, BigInt(n * (n - 1) / 2)) == cube, at + "exact spectral Kf*");

        const BigRational ke = make_rational((n - 1) * (n - 1), n);
        t.expect(kemeny_blowup_closed(make_rational(1, 2), 2, 1, {n, 1}) == ke, at + "closed-form K_e");
        t.expect(kemeny_spectral_exact(exact) == ke, at + "exact spectral K_e");
    }
    return t;
}

// The one-step recurrences, iterated here without going through the library.
struct Iterated {
    BigRational kf;
    BigRational ke;
    BigInt exp_two = 0;
    BigInt exp_n = 0;
};

Iterated iterate_recurrences(BigRational kf, BigRational ke, BigInt big_n, BigInt big_e, int n, int r) {
    Iterated it{kf, ke};
    for (int k = 0; k < r; ++k) {
        const BigRational nn = n;
        it.kf = nn * (n - 1) * (n - 1) / 2 * it.kf + make_rational(3, 2) * (n - 1) * (n - 1) * (n - 2) * big_e * big_e -
                make_rational(1, 2) * (n - 1) * (n - 1) * (n - 2) * big_e * big_n;
        it.ke = BigRational(n - 1) * it.ke + make_rational(3 * (n - 1) * (n - 2), 2 * n) * big_e -
                make_rational((n - 1) * (n - 2), 2 * n) * big_n;
        it.ke.canonicalize();
        it.exp_two += big_e - big_n + 1;
        it.exp_n += (n - 3) * big_e + big_n - 1;
        big_n += (n - 2) * big_e;
        big_e = big_e * n * (n - 1) / 2;
    }
    return it;
}

struct FourResult {
    Tally kf;
    Tally ke;
    Tally tau;
    std::vector<std::string> notes;
};

FourResult criterion_closed_forms(const std::vector<Case>& cases) {
    FourResult res;
    for (const auto& c : cases) {
        const BigInt n0 = c.g.vertex_count();
        const BigInt e0 = c.g.edge_count();
        const BlowupParams p{c.n, c.r};
        const BigRational kf0 = kf_star_exact(c.g);
        const BigRational ke0 = kf0 / (2 * e0);
        const Iterated it = iterate_recurrences(kf0, ke0, n0, e0, c.n, c.r);

        const BigRational kf_form = kf_star_r_form(kf0, n0, e0, p);
        res.kf.expect(it.kf == kf_form, label(c) + ": " + to_string(it.kf) + " vs " + to_string(kf_form));

        const BigRational ke_form = kemeny_r_form_published(ke0, n0, e0, p);
        res.ke.expect(it.ke == ke_form, label(c) + ": recurrence " + to_string(it.ke) + " vs r-level form " +
                                            to_string(ke_form));
        if (it.ke != ke_form && it.ke == kemeny_r_form(ke0, n0, e0, p)) {
            res.notes.push_back(label(c) + ": recurrence matches the re-derived r-level K_e form");
        }

        const TauExponents alpha = tau_exponents_alpha(n0, e0, p);
        const bool integral = is_integer(alpha.of_two) && is_integer(alpha.of_n);
        res.tau.expect(integral, label(c) + ": alpha-form exponents not integral");
        res.tau.expect(alpha.of_two == BigRational(it.exp_two) && alpha.of_n == BigRational(it.exp_n),
                       label(c) + ": exponents (" + to_string(alpha.of_two) + ", " + to_string(alpha.of_n) +
                           ") vs (" + to_string(it.exp_two) + ", " + to_string(it.exp_n) + ")");
        const BigInt tau0 = tau_exact(c.g);
        const BigInt expected = tau0 * pow(BigInt(2), it.exp_two.get_ui()) * pow(BigInt(c.n), it.exp_n.get_ui());
        res.tau.expect(tau_blowup_closed(tau0, n0, e0, p) == expected, label(c) + ": tau value");
    }
    return res;
}

void structural(Tally& t, const std::string& name, const Graph& g) {
    const auto s = normalized_spectrum(g);
    const auto v = s.values();
    const double trace = std::accumulate(v.begin(), v.end(), 0.0);
    const auto big_n = static_cast<double>(g.vertex_count());
    t.expect(std::abs(trace - big_n) <= 1e-6 * big_n, name + ": trace " + num(trace));
    t.expect(v.front() >= 0.0 - 1e-9 && v.back() <= 2.0 + 1e-9,
             name + ": eigenvalue outside [0, 2]: " + num(v.front()) + ", " + num(v.back()));
    const bool bip = bipartition(g).is_bipartite;
    if (bip) {
        bool sym = true;
        for (std::size_t i = 0; i < v.size(); ++i) sym = sym && std::abs(v[i] + v[v.size() - 1 - i] - 2.0) <= 1e-9;
        t.expect(sym, name + ": bipartite spectrum not symmetric about 1");
        t.expect(std::abs(v.back() - 2.0) <= 1e-9, name + ": bipartite lambda_max " + num(v.back()));
    } else {
        t.expect(v.back() < 2.0 - 1e-6, name + ": non-bipartite lambda_max " + num(v.back()));
    }
    const std::size_t rank = incidence_rank(g);
    t.expect(rank == g.vertex_count() - (bip ? 1 : 0), name + ": incidence rank " + std::to_string(rank));
}

Tally criterion_structure(const std::vector<Case>& cases) {
    Tally t;
    for (const auto& e : default_corpus()) structural(t, e.name, e.graph);
    for (const auto& c : cases) structural(t, label(c), blowup_iterate(c.g, {c.n, c.r}));
    return t;
}

void oracle_closure(Tally& t, const std::string& name, const Graph& g) {
    const auto s = normalized_spectrum(g);
    const BigInt m = g.edge_count();
    const double kf_s = kf_star_spectral(s, m);
    const double kf_d = kf_star_direct(g);
    t.expect(rel_close(kf_s, kf_d, 1e-7), name + ": Kf* spectral " + num(kf_s) + " vs direct " + num(kf_d));
    const double tau_s = tau_spectral(g, s);
    const BigInt tau_e = tau_exact(g);
    t.expect(std::abs(tau_s - tau_e.get_d()) <= 1e-6 * tau_e.get_d(),
             name + ": tau spectral " + num(tau_s) + " vs exact " + to_string(tau_e));
    const double ke = kemeny_spectral(s);
    t.expect(std::abs(kf_s - 2.0 * m.get_d() * ke) <= 1e-12 * std::abs(kf_s), name + ": Kf* vs 2m K_e");
}

Tally criterion_oracles(const std::vector<Case>& cases) {
    Tally t;
    for (const auto& e : default_corpus()) oracle_closure(t, e.name, e.graph);
    for (const auto& c : cases) {
        const Graph h = blowup_iterate(c.g, {c.n, c.r});
        if (h.vertex_count() <= 200) oracle_closure(t, label(c), h);
    }
    return t;
}

bool report(int id, const std::string& title, const Tally& t, double seconds) {
    const bool ok = t.failures.empty();
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << title << "  ("
              << (t.checks - t.failures.size()) << "/" << t.checks << " checks, " << fixed2(seconds) << " s)\n";
    const std::size_t shown = std::min<std::size_t>(t.failures.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) std::cout << "    - " << t.failures[i] << '\n';
    if (t.failures.size() > shown) std::cout << "    ... " << t.failures.size() - shown << " more\n";
    return ok;
}

double timed(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main() {
    const auto cases = grid();
    bool all = true;
    try {
        Tally t1, t2, t3, t5, t6;
        FourResult t4;
        double s1 = timed([&] { t1 = criterion_spectrum(cases); });
        all &= report(1, "theorem spectrum vs explicit eigendecomposition, rel tol 1e-7", t1, s1);
        double s2 = timed([&] { t2 = criterion_fixture(); });
        all &= report(2, "CL(K_3), n=5 fixture", t2, s2);
        double s3 = timed([&] { t3 = criterion_degenerate(); });
        all &= report(3, "CL(K_2) = K_n, n=3..6, exact", t3, s3);
        double s4 = timed([&] { t4 = criterion_closed_forms(cases); });
        Tally merged;
        merged.checks = t4.kf.checks + t4.ke.checks + t4.tau.checks;
        for (const Tally* part : {&t4.kf, &t4.ke, &t4.tau}) {
            merged.failures.insert(merged.failures.end(), part->failures.begin(), part->failures.end());
        }
        all &= report(4, "r-level closed forms vs iterated recurrences, exact", merged, s4);
        std::cout << "    Kf*: " << (t4.kf.failures.empty() ? "PASS" : "FAIL") << ", K_e: "
                  << (t4.ke.failures.empty() ? "PASS" : "FAIL") << ", tau: " << (t4.tau.failures.empty() ? "PASS" : "FAIL")
                  << '\n';
        for (const auto& note : t4.notes) std::cout << "    note: " << note << '\n';
        double s5 = timed([&] { t5 = criterion_structure(cases); });
        all &= report(5, "trace, range, bipartite symmetry, incidence rank", t5, s5);
        double s6 = timed([&] { t6 = criterion_oracles(cases); });
        all &= report(6, "oracle closure on graphs up to 200 vertices", t6, s6);
    } catch (const std::exception& ex) {
        std::cout << "acceptance aborted: " << ex.what() << '\n';
        return 1;
    }
    std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << '\n';
    return all ? 0 : 1;
}
