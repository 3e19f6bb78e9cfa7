#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cliqueblowup {

using Vertex = std::uint32_t;

/// Unordered vertex pair stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Simple undirected graph on the dense label range [0, vertex_count).
 *
 * The edge list is kept in canonical order (lexicographic on (u, v) with
 * u < v). That order is part of the public contract: clique_blowup numbers
 * the vertices it adds by the position of each edge in this list.
 * Adjacency lists are derived from the edges and sorted.
 */
class Graph {
public:
    Graph() = default;

    /// Normalizes and sorts `edges`. Throws SelfLoop, DuplicateEdge, or
    /// InvalidParameter (label out of range).
    static Graph from_edges(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adjacency_;
};

/// Whitespace-separated "u v" per line; '#' starts a comment. vertex_count is
/// one more than the largest label seen.
Graph parse_edge_list(std::string_view text);

/// One "u v" line per edge in canonical order, each terminated by '\n'.
std::string serialize_edge_list(const Graph& g);

enum class Family { Complete, Path, Cycle, Star };

std::optional<Family> parse_family(std::string_view name);
std::string_view to_string(Family family);

Graph gen_family(Family family, int k);
Graph petersen_graph();

/// Parses an inline generator spec such as "complete:3", "cycle:4" or
/// "petersen".
Graph graph_from_spec(std::string_view spec);

bool is_connected(const Graph& g);

enum class Side : std::uint8_t { X, Y };

struct Bipartition {
    std::vector<Side> side_of;
    bool is_bipartite = false;
};

/// BFS two-coloring from vertex 0 (which lands in X). Throws NotConnected.
Bipartition bipartition(const Graph& g);

/// Rank over Q of the vertex-edge incidence matrix, by fraction-free
/// elimination. Throws NotConnected.
std::size_t incidence_rank(const Graph& g);

} // namespace cliqueblowup
