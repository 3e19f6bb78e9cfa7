#include "cliqueblowup/graph.hpp"

#include "cliqueblowup/error.hpp"
#include "cliqueblowup/exact.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <queue>
#include <sstream>

namespace cliqueblowup {

Graph Graph::from_edges(std::size_t vertex_count, std::vector<Edge> edges) {
    if (vertex_count > std::numeric_limits<Vertex>::max()) {
        throw Error(ErrorKind::InvalidParameter, "vertex count too large");
    }
    for (auto& e : edges) {
        if (e.u == e.v) {
            throw Error(ErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        if (e.v >= vertex_count) {
            throw Error(ErrorKind::InvalidParameter,
                        "label " + std::to_string(e.v) + " outside [0, " + std::to_string(vertex_count) + ")");
        }
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw Error(ErrorKind::DuplicateEdge,
                    "edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) + ") appears twice");
    }

    Graph g;
    g.vertex_count_ = vertex_count;
    g.edges_ = std::move(edges);

    std::vector<std::size_t> deg(vertex_count, 0);
    for (const auto& e : g.edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    g.offsets_.assign(vertex_count + 1, 0);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    }
    g.adjacency_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted, so each adjacency list is filled in increasing order
    // for the smaller endpoint; the larger endpoint needs a sort.
    for (const auto& e : g.edges_) {
        g.adjacency_[fill[e.u]++] = e.v;
        g.adjacency_[fill[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }
    return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    if (v >= vertex_count_) {
        throw Error(ErrorKind::InvalidParameter, "vertex " + std::to_string(v) + " out of range");
    }
    return std::span<const Vertex>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::size_t Graph::degree(Vertex v) const { return neighbors(v).size(); }

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\f\v");
    return s.substr(first, last - first + 1);
}

Vertex parse_label(std::string_view token, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || value > std::numeric_limits<Vertex>::max() - 1) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line_no) + ": bad vertex label '" + std::string(token) + "'");
    }
    return static_cast<Vertex>(value);
}

} // namespace

Graph parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    std::vector<std::size_t> line_of;
    std::size_t vertex_count = 0;
    std::size_t line_no = 0;

    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }

        std::vector<std::string_view> tokens;
        while (!line.empty()) {
            const auto ws = line.find_first_of(" \t\r\f\v");
            tokens.push_back(line.substr(0, ws));
            line = ws == std::string_view::npos ? std::string_view{} : trim(line.substr(ws));
        }
        if (tokens.size() != 2) {
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line_no) + ": expected two vertex labels, got " +
                            std::to_string(tokens.size()) + " tokens");
        }
        const Vertex u = parse_label(tokens[0], line_no);
        const Vertex v = parse_label(tokens[1], line_no);
        if (u == v) {
            throw Error(ErrorKind::SelfLoop, "line " + std::to_string(line_no) + ": self-loop at " + std::to_string(u));
        }
        edges.push_back({std::min(u, v), std::max(u, v)});
        line_of.push_back(line_no);
        vertex_count = std::max<std::size_t>(vertex_count, std::size_t{std::max(u, v)} + 1);
    }

    // Report duplicates with the line of the second occurrence.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (edges[order[i]] == edges[order[i - 1]]) {
            const auto& e = edges[order[i]];
            throw Error(ErrorKind::DuplicateEdge, "line " + std::to_string(line_of[order[i]]) + ": edge (" +
                                                      std::to_string(e.u) + ", " + std::to_string(e.v) +
                                                      ") already given on line " +
                                                      std::to_string(line_of[order[i - 1]]));
        }
    }
    return Graph::from_edges(vertex_count, std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
    std::string out;
    out.reserve(g.edge_count() * 12);
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "complete") return Family::Complete;
    if (name == "path") return Family::Path;
    if (name == "cycle") return Family::Cycle;
    if (name == "star") return Family::Star;
    return std::nullopt;
}

std::string_view to_string(Family family) {
    switch (family) {
    case Family::Complete: return "complete";
    case Family::Path: return "path";
    case Family::Cycle: return "cycle";
    case Family::Star: return "star";
    }
    return "unknown";
}

Graph gen_family(Family family, int k) {
    const int min_k = family == Family::Cycle ? 3 : family == Family::Complete ? 2 : 1;
    if (k < min_k) {
        throw Error(ErrorKind::InvalidParameter, std::string(to_string(family)) + " needs k >= " +
                                                     std::to_string(min_k) + ", got " + std::to_string(k));
    }
    const auto order = static_cast<Vertex>(k);
    std::vector<Edge> edges;
    switch (family) {
    case Family::Complete:
        for (Vertex u = 0; u < order; ++u) {
            for (Vertex v = u + 1; v < order; ++v) {
                edges.push_back({u, v});
            }
        }
        break;
    case Family::Path:
        for (Vertex u = 0; u + 1 < order; ++u) {
            edges.push_back({u, u + 1});
        }
        break;
    case Family::Cycle:
        for (Vertex u = 0; u < order; ++u) {
            edges.push_back({u, (u + 1) % order});
        }
        break;
    case Family::Star:
        for (Vertex v = 1; v < order; ++v) {
            edges.push_back({0, v});
        }
        break;
    }
    return Graph::from_edges(order, std::move(edges));
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({5 + i, 5 + (i + 2) % 5});
    }
    return Graph::from_edges(10, std::move(edges));
}

Graph graph_from_spec(std::string_view spec) {
    if (spec == "petersen") {
        return petersen_graph();
    }
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::InvalidParameter, "generator spec must look like family:k, got '" + std::string(spec) + "'");
    }
    const auto family = parse_family(spec.substr(0, colon));
    if (!family) {
        throw Error(ErrorKind::InvalidParameter, "unknown graph family '" + std::string(spec.substr(0, colon)) + "'");
    }
    const auto arg = spec.substr(colon + 1);
    int k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
        throw Error(ErrorKind::InvalidParameter, "bad size in generator spec '" + std::string(spec) + "'");
    }
    return gen_family(*family, k);
}

bool is_connected(const Graph& g) {
    const std::size_t order = g.vertex_count();
    if (order == 0) {
        return false;
    }
    std::vector<bool> seen(order, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const Vertex w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == order;
}

Bipartition bipartition(const Graph& g) {
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, "bipartition needs a connected graph");
    }
    const std::size_t order = g.vertex_count();
    std::vector<int> color(order, -1);
    std::queue<Vertex> queue;
    color[0] = 0;
    queue.push(0);
    bool ok = true;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop();
        for (const Vertex w : g.neighbors(v)) {
            if (color[w] < 0) {
                color[w] = 1 - color[v];
                queue.push(w);
            } else if (color[w] == color[v]) {
                ok = false;
            }
        }
    }
    Bipartition result;
    result.is_bipartite = ok;
    result.side_of.reserve(order);
    for (const int c : color) {
        result.side_of.push_back(c == 0 ? Side::X : Side::Y);
    }
    return result;
}

std::size_t incidence_rank(const Graph& g) {
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, "incidence_rank needs a connected graph");
    }
    const std::size_t rows = g.vertex_count();
    const std::size_t cols = g.edge_count();
    std::vector<BigInt> m(rows * cols, 0);
    const auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * cols + j]; };
    for (std::size_t s = 0; s < cols; ++s) {
        const auto& e = g.edges()[s];
        at(e.u, s) = 1;
        at(e.v, s) = 1;
    }

    // Fraction-free row echelon reduction; every division below is exact.
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        if (pivot != rank) {
            for (std::size_t j = col; j < cols; ++j) {
                std::swap(at(pivot, j), at(rank, j));
            }
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                BigInt num = at(rank, col) * at(i, j) - at(i, col) * at(rank, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, col) = 0;
        }
        prev = at(rank, col);
        ++rank;
    }
    return rank;
}

} // namespace cliqueblowup
