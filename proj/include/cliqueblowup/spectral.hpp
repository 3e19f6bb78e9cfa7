#pragma once

#include "cliqueblowup/blowup.hpp"
#include "cliqueblowup/exact.hpp"
#include "cliqueblowup/graph.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cliqueblowup {

inline constexpr double kDefaultClusterTol = 1e-6;
inline constexpr double kDefaultMatchTol = 1e-7;
inline constexpr double kSymmetryTol = 1e-12;

/// Row-major square matrix. Symmetry is checked by eig_sym, not on
/// construction.
class DenseSymMatrix {
public:
    DenseSymMatrix() = default;
    explicit DenseSymMatrix(std::size_t order) : order_(order), entries_(order * order, 0.0) {}
    DenseSymMatrix(std::size_t order, std::vector<double> row_major);

    std::size_t order() const noexcept { return order_; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

    std::span<const double> entries() const noexcept { return entries_; }

    bool is_symmetric(double tol = kSymmetryTol) const;

private:
    std::size_t order_ = 0;
    std::vector<double> entries_;
};

struct SpectrumEntry {
    double value = 0.0;
    std::size_t multiplicity = 0;
};

/**
 * Eigenvalue multiset.
 *
 * entries() is the clustered view: sorted values are grouped by single
 * linkage (consecutive gaps <= cluster_tol) and each group is represented by
 * its middle element. values() keeps every raw eigenvalue, sorted, so
 * comparisons never depend on how clusters were formed.
 */
class SpectrumMultiset {
public:
    SpectrumMultiset() = default;

    static SpectrumMultiset from_values(std::vector<double> values, double cluster_tol = kDefaultClusterTol);
    static SpectrumMultiset from_entries(std::span<const SpectrumEntry> entries,
                                         double cluster_tol = kDefaultClusterTol);

    std::span<const SpectrumEntry> entries() const noexcept { return entries_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t order() const noexcept { return values_.size(); }
    double cluster_tol() const noexcept { return cluster_tol_; }

    std::vector<double> flatten() const { return values_; }

    /// Multiplicity of the cluster within cluster_tol of `value`, 0 if none.
    std::size_t multiplicity_near(double value) const;

private:
    std::vector<double> values_;
    std::vector<SpectrumEntry> entries_;
    double cluster_tol_ = kDefaultClusterTol;
};

/// Exact eigenvalue with a big-integer multiplicity, used where the theorem
/// produces values without any rounding.
struct RationalEigenvalue {
    BigRational value;
    BigInt multiplicity;
};

/// Sorted by value, values distinct.
using RationalSpectrum = std::vector<RationalEigenvalue>;

/// I - D^{-1/2} A D^{-1/2}. Throws DegreeZero on an isolated vertex.
DenseSymMatrix normalized_laplacian(const Graph& g);

/// Full spectrum of a symmetric matrix. Throws NotSymmetric.
SpectrumMultiset eig_sym(const DenseSymMatrix& m, double cluster_tol = kDefaultClusterTol);

/// eig_sym(normalized_laplacian(g)).
SpectrumMultiset normalized_spectrum(const Graph& g, double cluster_tol = kDefaultClusterTol);

/**
 * Normalized Laplacian spectrum of CL(G) from the spectrum of G:
 *   0 once; lambda/(n-1) for every lambda of G other than 0 (and, when G is
 *   bipartite, other than its single eigenvalue 2); 2/(n-1) with multiplicity
 *   E0 - N0 (+1 if bipartite); n/(n-1) with multiplicity (n-3)E0 + N0.
 */
SpectrumMultiset spectrum_by_theorem(const SpectrumMultiset& sigma_g, const BigInt& n0, const BigInt& e0, int n,
                                     bool bipartite);

/// Applies the one-step mapping r times; r == 0 returns sigma_g. The
/// bipartite flag only affects the first level and, when not given, is read
/// off the spectrum (largest eigenvalue within cluster_tol of 2). Values
/// introduced by the mapping are carried exactly and only rounded when the
/// result is materialized. Throws SizeCapExceeded if N_r exceeds
/// `max_vertices`.
SpectrumMultiset spectrum_iterated(const SpectrumMultiset& sigma_g, const BigInt& n0, const BigInt& e0,
                                   BlowupParams p, std::optional<bool> bipartite = std::nullopt,
                                   std::size_t max_vertices = kDefaultMaxVertices);

/// Exact counterparts; no size cap since nothing is materialized.
RationalSpectrum spectrum_by_theorem_exact(const RationalSpectrum& sigma_g, const BigInt& n0, const BigInt& e0,
                                           int n, bool bipartite);
RationalSpectrum spectrum_iterated_exact(const RationalSpectrum& sigma_g, const BigInt& n0, const BigInt& e0,
                                         BlowupParams p);

/// Rounds an exact spectrum into a SpectrumMultiset. Throws SizeCapExceeded
/// if the total multiplicity exceeds `max_values`.
SpectrumMultiset to_multiset(const RationalSpectrum& exact, double cluster_tol = kDefaultClusterTol,
                             std::size_t max_values = kDefaultMaxVertices);

struct MatchReport {
    bool matched = false;
    std::size_t length_a = 0;
    std::size_t length_b = 0;
    std::optional<std::size_t> first_divergence;
    double a_value = 0.0;
    double b_value = 0.0;
    double max_deviation = 0.0;

    std::string summary() const;
};

/// Compares flattened sorted lists: equal lengths and
/// |a_i - b_i| <= tol * max(1, |b_i|) for all i.
MatchReport multiset_match(const SpectrumMultiset& a, const SpectrumMultiset& b, double tol = kDefaultMatchTol);

} // namespace cliqueblowup
