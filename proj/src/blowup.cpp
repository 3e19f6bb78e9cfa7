#include "cliqueblowup/blowup.hpp"

#include "cliqueblowup/error.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

namespace cliqueblowup {

void BlowupParams::validate() const {
    if (n < 3) {
        throw Error(ErrorKind::InvalidParameter, "clique size n must be >= 3, got " + std::to_string(n));
    }
    if (r < 0) {
        throw Error(ErrorKind::InvalidParameter, "iteration depth r must be >= 0, got " + std::to_string(r));
    }
}

Graph clique_blowup(const Graph& g, int n) {
    BlowupParams{n, 1}.validate();
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, "clique_blowup needs a connected graph");
    }
    const auto added = static_cast<std::size_t>(n - 2);
    const std::size_t n0 = g.vertex_count();
    const std::size_t e0 = g.edge_count();
    const std::size_t order = n0 + added * e0;

    std::vector<Edge> edges;
    edges.reserve(e0 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    std::vector<Vertex> clique(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < e0; ++s) {
        const auto& e = g.edges()[s];
        clique[0] = e.u;
        clique[1] = e.v;
        for (std::size_t l = 0; l < added; ++l) {
            clique[2 + l] = static_cast<Vertex>(n0 + s * added + l);
        }
        for (std::size_t a = 0; a < clique.size(); ++a) {
            for (std::size_t b = a + 1; b < clique.size(); ++b) {
                edges.push_back({clique[a], clique[b]});
            }
        }
    }
    return Graph::from_edges(order, std::move(edges));
}

Graph blowup_iterate(const Graph& g, BlowupParams p, std::size_t max_vertices) {
    p.validate();
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, "blowup_iterate needs a connected graph");
    }
    const auto counts = blowup_counts(g.vertex_count(), g.edge_count(), p);
    if (counts.vertices > BigInt(std::to_string(max_vertices))) {
        throw Error(ErrorKind::SizeCapExceeded, "CL_" + std::to_string(p.r) + " would have " +
                                                    counts.vertices.get_str() + " vertices, cap is " +
                                                    std::to_string(max_vertices));
    }
    Graph current = g;
    for (int level = 0; level < p.r; ++level) {
        current = clique_blowup(current, p.n);
    }
    return current;
}

std::vector<BlowupCounts> blowup_count_levels(const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    if (n0 < 1 || e0 < 0) {
        throw Error(ErrorKind::InvalidParameter, "need N0 >= 1 and E0 >= 0");
    }
    const BigInt n = p.n;
    std::vector<BlowupCounts> levels{{n0, e0}};
    levels.reserve(static_cast<std::size_t>(p.r) + 1);
    for (int k = 0; k < p.r; ++k) {
        const auto& prev = levels.back();
        BigInt edges = n * (n - 1) * prev.edges;
        mpz_divexact_ui(edges.get_mpz_t(), edges.get_mpz_t(), 2);
        levels.push_back({prev.vertices + (n - 2) * prev.edges, edges});
    }
    return levels;
}

BlowupCounts blowup_counts(const BigInt& n0, const BigInt& e0, BlowupParams p) {
    const auto levels = blowup_count_levels(n0, e0, p);
    const auto& stepped = levels.back();

    // E_r = q^r E0 and N_r = N0 + 2 E0 (q^r - 1)/(n + 1) with q = n(n-1)/2.
    const BigRational q = make_rational(p.n * (p.n - 1), 2);
    const BigRational qr = pow(q, static_cast<unsigned long>(p.r));
    const BigRational edges = qr * BigRational(e0);
    const BigRational vertices = BigRational(n0) + 2 * BigRational(e0) * (qr - 1) / (p.n + 1);
    if (!is_integer(edges) || !is_integer(vertices) || edges.get_num() != stepped.edges ||
        vertices.get_num() != stepped.vertices) {
        throw Error(ErrorKind::InternalAssertion, "closed-form counts (" + to_string(vertices) + ", " +
                                                      to_string(edges) + ") disagree with recurrence (" +
                                                      stepped.vertices.get_str() + ", " +
                                                      stepped.edges.get_str() + ")");
    }
    return stepped;
}

std::size_t max_vertices_from_env() {
    const char* raw = std::getenv("CLIQUE_BLOWUP_MAX_VERTICES");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultMaxVertices;
    }
    const std::string_view text(raw);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::InvalidParameter, "CLIQUE_BLOWUP_MAX_VERTICES is not a non-negative integer");
    }
    return value;
}

} // namespace cliqueblowup
