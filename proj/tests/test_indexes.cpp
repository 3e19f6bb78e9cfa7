#include "oracle.hpp"

#include "cliqueblowup/blowup.hpp"
#include "cliqueblowup/error.hpp"
#include "cliqueblowup/indexes.hpp"
#include "cliqueblowup/json_io.hpp"
#include "cliqueblowup/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cliqueblowup;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InternalAssertion;
}

SpectrumMultiset of(const Graph& g) { return normalized_spectrum(g); }

const Graph& k2() {
    static const Graph g = gen_family(Family::Complete, 2);
    return g;
}
const Graph& k3() {
    static const Graph g = gen_family(Family::Complete, 3);
    return g;
}

} // namespace

TEST_CASE("kf_star_spectral examples") {
    CHECK(kf_star_spectral(of(k2()), 1) == doctest::Approx(1.0));
    CHECK(kf_star_spectral(of(k3()), 3) == doctest::Approx(8.0));
    const Graph cl = clique_blowup(k3(), 5);
    CHECK(kf_star_spectral(of(cl), 30) == doctest::Approx(752.0).epsilon(1e-10));
    const auto two_zeros = SpectrumMultiset::from_values({0.0, 0.0, 2.0, 2.0});
    CHECK(kind_of([&] { kf_star_spectral(two_zeros, 2); }) == ErrorKind::InconsistentSpectrum);
    CHECK(kind_of([&] { kemeny_spectral(SpectrumMultiset::from_values({1.0, 2.0})); }) ==
          ErrorKind::InconsistentSpectrum);
}

TEST_CASE("kemeny_spectral examples") {
    CHECK(kemeny_spectral(of(k2())) == doctest::Approx(0.5));
    CHECK(kemeny_spectral(of(k3())) == doctest::Approx(4.0 / 3.0));
    const double closed = 2.0 * 0.5 + 3.0 * 2 * 1 * 1 / 6.0 - 2.0 * 1 * 2 / 6.0;
    CHECK(kemeny_spectral(of(clique_blowup(k2(), 3))) == doctest::Approx(closed));
    CHECK(closed == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("exact spectral formulas") {
    RationalSpectrum s{{0, 1}, {make_rational(3, 2), 2}};
    CHECK(kf_star_spectral_exact(s, 3) == 8);
    CHECK(kemeny_spectral_exact(s) == make_rational(4, 3));
}

TEST_CASE("tau_spectral examples") {
    CHECK(tau_spectral(k3(), of(k3())) == doctest::Approx(3.0));
    const Graph c4 = gen_family(Family::Cycle, 4);
    CHECK(tau_spectral(c4, of(c4)) == doctest::Approx(4.0));
    const Graph k4 = gen_family(Family::Complete, 4);
    CHECK(tau_spectral(k4, of(k4)) == doctest::Approx(16.0));
    CHECK(tau_exact(k4) == 16);
}

TEST_CASE("resistance_matrix examples") {
    const auto r2 = resistance_matrix(k2());
    CHECK(r2(0, 1) == doctest::Approx(1.0));
    CHECK(r2(0, 0) == doctest::Approx(0.0));
    const auto r3 = resistance_matrix(k3());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(r3(i, j) == doctest::Approx(2.0 / 3.0));
    const auto p3 = resistance_matrix(gen_family(Family::Path, 3));
    CHECK(p3(0, 2) == doctest::Approx(2.0));
    CHECK(kind_of([] { resistance_matrix(parse_edge_list("0 1\n2 3")); }) == ErrorKind::NotConnected);
}

TEST_CASE("kf_star_direct and kf_star_exact examples") {
    CHECK(kf_star_direct(k2()) == doctest::Approx(1.0));
    CHECK(kf_star_direct(k3()) == doctest::Approx(8.0));
    const Graph cl = clique_blowup(k3(), 5);
    CHECK(kf_star_direct(cl) == doctest::Approx(752.0).epsilon(1e-8));
    CHECK(kf_star_exact(cl) == 752);
    CHECK(kf_star_exact(k3()) == 8);
    CHECK(kind_of([&] { kf_star_exact(cl, 11); }) == ErrorKind::SizeCapExceeded);
}

TEST_CASE("tau_exact examples") {
    CHECK(tau_exact(k3()) == 3);
    CHECK(tau_exact(petersen_graph()) == 2000);
    CHECK(oracle::spanning_trees_brute(petersen_graph()) == 2000);
    const Graph cl = clique_blowup(k3(), 5);
    CHECK(tau_exact(cl) == 2343750);
    CHECK(BigInt(2) * pow(BigInt(5), 8) * 3 == 2343750);
    CHECK(kind_of([&] { tau_exact(cl, 11); }) == ErrorKind::SizeCapExceeded);
    CHECK(log_tau_cholesky(cl) == doctest::Approx(std::log(2343750.0)));
    CHECK(tau_exact(Graph::from_edges(1, {})) == 1);
}

TEST_CASE("bareiss_determinant") {
    std::vector<BigInt> m{0, 2, 1, 3, 1, 0, 1, 1, 1}; // needs a row swap
    CHECK(bareiss_determinant(m, 3) == -4);
    CHECK(bareiss_determinant({2, 4, 1, 2}, 2) == 0);
    CHECK(bareiss_determinant({}, 0) == 1);
}

TEST_CASE("kf_star_blowup_closed examples") {
    auto v = kf_star_blowup_closed(1, 2, 1, {3, 1});
    CHECK(v == 8);
    CHECK(kf_star_direct(clique_blowup(k2(), 3)) == doctest::Approx(8.0));
    CHECK(kf_star_blowup_closed(8, 3, 3, {5, 1}) == 752);
    CHECK(kf_star_blowup_closed(make_rational(17, 3), 5, 9, {4, 0}) == make_rational(17, 3));
}

TEST_CASE("kemeny_blowup_closed examples") {
    CHECK(kemeny_blowup_closed(make_rational(1, 2), 2, 1, {3, 1}) == make_rational(4, 3));
    CHECK(kemeny_blowup_closed(make_rational(4, 3), 3, 3, {5, 1}) == make_rational(188, 15));
    CHECK(make_rational(752, 60) == make_rational(188, 15));
    CHECK(kemeny_blowup_closed(make_rational(2, 7), 3, 3, {5, 0}) == make_rational(2, 7));
}

TEST_CASE("published r-level Kemeny form only holds at r = 1") {
    const BigRational ke = make_rational(1, 2);
    CHECK(kemeny_r_form_published(ke, 2, 1, {3, 1}) == kemeny_r_form(ke, 2, 1, {3, 1}));
    CHECK(kemeny_blowup_closed(ke, 2, 1, {3, 2}) == make_rational(14, 3));
    CHECK(kemeny_r_form_published(ke, 2, 1, {3, 2}) == make_rational(55, 12));
    // The oracle sides with the recurrence.
    CHECK(kemeny_spectral(of(blowup_iterate(k2(), {3, 2}))) == doctest::Approx(14.0 / 3.0));
    for (int n = 3; n <= 6; ++n) {
        const BigRational gap =
            kemeny_r_form(ke, 2, 1, {n, 2}) - kemeny_r_form_published(ke, 2, 1, {n, 2});
        CHECK(gap == make_rational((n - 2) * (n - 2), n * (n + 1)));
    }
}

TEST_CASE("tau_blowup_closed examples") {
    CHECK(tau_blowup_closed(1, 2, 1, {3, 1}) == 3);
    const auto ex = tau_exponents_alpha(2, 1, {3, 1});
    CHECK(ex.of_two == 0);
    CHECK(ex.of_n == 1);
    CHECK(tau_blowup_closed(3, 3, 3, {5, 1}) == 2343750);
    CHECK(tau_blowup_closed(77, 3, 3, {5, 0}) == 77);
    for (int n = 3; n <= 6; ++n)
        for (int r = 1; r <= 5; ++r)
            CHECK(tau_exponents_alpha(10, 15, {n, r}) == tau_exponents_recurrence(10, 15, {n, r}));
}

TEST_CASE("index routes agree") {
    const auto s = indexes_spectral(k3(), {5, 1});
    const auto c = indexes_closed_form(k3(), {5, 1});
    const auto o = indexes_oracle(k3(), {5, 1});
    CHECK(s.kf_star == doctest::Approx(752.0).epsilon(1e-10));
    CHECK(c.kf_star_exact == BigRational(752));
    CHECK(o.kf_star_exact == BigRational(752));
    CHECK(c.kemeny_exact == make_rational(188, 15));
    CHECK(o.kemeny_exact == make_rational(188, 15));
    CHECK(c.tau_exact == BigInt(2343750));
    CHECK(o.tau_exact == BigInt(2343750));
    CHECK(s.tau_float == doctest::Approx(2343750.0).epsilon(1e-10));

    const auto base = indexes_oracle(petersen_graph(), {3, 0});
    CHECK(base.tau_exact == BigInt(2000));
    const auto k = indexes_closed_form(k2(), {3, 1});
    CHECK(k.kf_star_exact == BigRational(8));
    CHECK(k.tau_exact == BigInt(3));
    CHECK(k.kemeny_exact == make_rational(4, 3));

    const std::string js = to_json(c);
    CHECK(js.find("\"tau_exact\": \"2343750\"") != std::string::npos);
    CHECK(js.find("\"kemeny_exact\": \"188/15\"") != std::string::npos);
    CHECK(js.find("\"route\": \"closed_form\"") != std::string::npos);
}

TEST_CASE("log_degree_product_blowup matches the explicit graph") {
    const Graph g = gen_family(Family::Star, 5);
    const Graph cl = blowup_iterate(g, {4, 2});
    double direct = 0.0;
    for (Vertex v = 0; v < cl.vertex_count(); ++v) direct += std::log(static_cast<double>(cl.degree(v)));
    CHECK(log_degree_product_blowup(g, {4, 2}) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("property: oracles agree on random graphs") {
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = oracle::random_connected(rng, 2 + rng() % 9, rng() % 9);
        CAPTURE(serialize_edge_list(g));
        const auto sigma = of(g);
        const BigInt m = g.edge_count();
        const double ref = oracle::kf_star(g);
        CHECK(kf_star_direct(g) == doctest::Approx(ref).epsilon(1e-9));
        CHECK(kf_star_spectral(sigma, m) == doctest::Approx(ref).epsilon(1e-9));
        CHECK(kf_star_exact(g).get_d() == doctest::Approx(ref).epsilon(1e-9));
        CHECK(kf_star_spectral(sigma, m) ==
              doctest::Approx(2.0 * static_cast<double>(g.edge_count()) * kemeny_spectral(sigma)).epsilon(1e-12));
        if (g.edge_count() <= 16) {
            const BigInt t = tau_exact(g);
            CHECK(t == oracle::spanning_trees_brute(g));
            CHECK(tau_spectral(g, sigma) == doctest::Approx(t.get_d()).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: closed forms agree with explicit blowups") {
    std::mt19937 rng(1618);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = oracle::random_connected(rng, 2 + rng() % 6, rng() % 5);
        const int n = 3 + static_cast<int>(rng() % 3);
        const int r = 1 + static_cast<int>(rng() % 2);
        CAPTURE(serialize_edge_list(g));
        CAPTURE(n);
        CAPTURE(r);
        const auto counts = blowup_counts(g.vertex_count(), g.edge_count(), {n, r});
        if (counts.vertices > 150) continue;
        const Graph cl = blowup_iterate(g, {n, r});
        const BigInt n0 = g.vertex_count();
        const BigInt e0 = g.edge_count();
        const BigRational kf = kf_star_exact(g);
        CHECK(kf_star_blowup_closed(kf, n0, e0, {n, r}) == kf_star_exact(cl));
        CHECK(kemeny_blowup_closed(kf / (2 * e0), n0, e0, {n, r}) == kf_star_exact(cl) / (2 * counts.edges));
        CHECK(tau_blowup_closed(tau_exact(g), n0, e0, {n, r}) == tau_exact(cl));
    }
}
