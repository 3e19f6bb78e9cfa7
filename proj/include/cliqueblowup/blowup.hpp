#pragma once

#include "cliqueblowup/exact.hpp"
#include "cliqueblowup/graph.hpp"

#include <cstddef>

namespace cliqueblowup {

inline constexpr std::size_t kDefaultMaxVertices = 20000;

/// Clique size n and iteration depth r. r == 0 is the identity transform.
struct BlowupParams {
    int n = 3;
    int r = 1;

    /// Throws InvalidParameter unless n >= 3 and r >= 0.
    void validate() const;
};

struct BlowupCounts {
    BigInt vertices;
    BigInt edges;
};

/// Replaces every edge e_s by a K_n. The n-2 vertices added for e_s are
/// labeled N_0 + s(n-2) + l, l = 0..n-3; original labels are kept.
Graph clique_blowup(const Graph& g, int n);

/// r-fold clique_blowup. Throws SizeCapExceeded before building anything if
/// the predicted vertex count exceeds `max_vertices`.
Graph blowup_iterate(const Graph& g, BlowupParams p, std::size_t max_vertices = kDefaultMaxVertices);

/// Vertex and edge counts of CL_r(G) from (N0, E0). Evaluates the closed
/// form and the step recurrence and throws InternalAssertion if they differ.
BlowupCounts blowup_counts(const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Counts at every level 0..r; element k holds (N_k, E_k).
std::vector<BlowupCounts> blowup_count_levels(const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Vertex cap from CLIQUE_BLOWUP_MAX_VERTICES, falling back to the default.
std::size_t max_vertices_from_env();

} // namespace cliqueblowup
