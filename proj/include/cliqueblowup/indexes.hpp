#pragma once

#include "cliqueblowup/blowup.hpp"
#include "cliqueblowup/exact.hpp"
#include "cliqueblowup/graph.hpp"
#include "cliqueblowup/spectral.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cliqueblowup {

/// Largest order handled by the exact (big-integer / rational) oracles.
inline constexpr std::size_t kDefaultExactCap = 200;

// ---- spectral formulas -------------------------------------------------

/// 2m * sum over nonzero eigenvalues of 1/lambda. Throws
/// InconsistentSpectrum unless 0 occurs exactly once.
double kf_star_spectral(const SpectrumMultiset& sigma, const BigInt& m);

/// Sum over nonzero eigenvalues of 1/lambda.
double kemeny_spectral(const SpectrumMultiset& sigma);

/// Spanning-tree count (prod d_i)(prod nonzero lambda)/(2m), evaluated in the
/// log domain. Relative error stays within 1e-6 of tau_exact for order <= 200.
double tau_spectral(const Graph& g, const SpectrumMultiset& sigma);

/// Natural log of the same quantity, given log(prod d_i) and m directly.
double log_tau_spectral(double log_degree_product, const BigInt& m, const SpectrumMultiset& sigma);

BigRational kf_star_spectral_exact(const RationalSpectrum& sigma, const BigInt& m);
BigRational kemeny_spectral_exact(const RationalSpectrum& sigma);

/// log(prod of degrees) of CL_r(G), from the degree histogram of G alone.
double log_degree_product_blowup(const Graph& g, BlowupParams p);

// ---- oracles -------------------------------------------------------------

/// Effective resistances, from the pseudoinverse (L + J/N)^{-1} - J/N of the
/// combinatorial Laplacian. Throws NotConnected or NumericalFailure.
DenseSymMatrix resistance_matrix(const Graph& g);

/// sum_{i<j} d_i d_j r_ij over resistance_matrix.
double kf_star_direct(const Graph& g);

/// Same sum with exact rational resistances (rational inverse of L + J/N).
BigRational kf_star_exact(const Graph& g, std::size_t cap = kDefaultExactCap);

/// Determinant of a square integer matrix (row-major) by Bareiss
/// fraction-free elimination.
BigInt bareiss_determinant(std::vector<BigInt> entries, std::size_t order);

/// Matrix-Tree count: determinant of the Laplacian with its last row and
/// column removed. Throws SizeCapExceeded above `cap`.
BigInt tau_exact(const Graph& g, std::size_t cap = kDefaultExactCap);

/// log tau via Cholesky of the reduced Laplacian; used when tau_exact is
/// over its cap.
double log_tau_cholesky(const Graph& g);

// ---- closed forms under iterated blowup ---------------------------------

/// Iterates Kf*(CL(H)) = n(n-1)^2/2 Kf*(H) + 3/2 (n-1)^2 (n-2) E^2
///                      - 1/2 (n-1)^2 (n-2) E N
/// exactly and asserts agreement with kf_star_r_form.
BigRational kf_star_blowup_closed(const BigRational& kf, const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Direct r-level expression for Kf*(CL_r(G)).
BigRational kf_star_r_form(const BigRational& kf, const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Iterates K_e(CL(H)) = (n-1)K_e(H) + 3(n-1)(n-2)E/(2n) - (n-1)(n-2)N/(2n)
/// exactly and asserts agreement with kemeny_r_form.
BigRational kemeny_blowup_closed(const BigRational& ke, const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Direct r-level expression for K_e(CL_r(G)), obtained by summing the
/// recurrence.
BigRational kemeny_r_form(const BigRational& ke, const BigInt& n0, const BigInt& e0, BlowupParams p);

/// The r-level K_e expression as it is usually published. It agrees with the
/// recurrence at r = 1 and differs from it by a multiple of E0 for r >= 2;
/// kept so the discrepancy can be reported.
BigRational kemeny_r_form_published(const BigRational& ke, const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Exponents of 2 and n in tau(CL_r(G)) / tau(G).
struct TauExponents {
    BigRational of_two;
    BigRational of_n;

    friend bool operator==(const TauExponents&, const TauExponents&) = default;
};

/// Exponents summed level by level from the one-step formula.
TauExponents tau_exponents_recurrence(const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Exponents from the alpha form, alpha = (n^r(n-1)^r/2^r - 1)/(n^2-n-2).
TauExponents tau_exponents_alpha(const BigInt& n0, const BigInt& e0, BlowupParams p);

/// Iterates tau(CL(H)) = 2^{E-N+1} n^{(n-3)E+N-1} tau(H). Throws
/// InternalAssertion if the alpha-form exponents are not integers or
/// disagree with the recurrence.
BigInt tau_blowup_closed(const BigInt& tau, const BigInt& n0, const BigInt& e0, BlowupParams p);

// ---- reports ----------------------------------------------------------------

enum class Route { Spectral, ClosedForm, Oracle };

std::string_view to_string(Route route);

struct IndexReport {
    double kf_star = 0.0;
    double kemeny = 0.0;
    double tau_float = 0.0;
    double tau_log = 0.0;
    std::optional<BigRational> kf_star_exact;
    std::optional<BigRational> kemeny_exact;
    std::optional<BigInt> tau_exact;
    Route route = Route::Spectral;
    std::optional<BlowupParams> params;
};

struct Limits {
    std::size_t max_vertices = kDefaultMaxVertices;
    std::size_t exact_cap = kDefaultExactCap;
};

/// Theorem-derived spectrum of CL_r(G) fed through the spectral formulas.
IndexReport indexes_spectral(const Graph& g, BlowupParams p, const Limits& limits = {});

/// Exact indices of G pushed through the closed-form recurrences.
IndexReport indexes_closed_form(const Graph& g, BlowupParams p, const Limits& limits = {});

/// Explicit CL_r(G) with resistance distances and the Matrix-Tree determinant.
IndexReport indexes_oracle(const Graph& g, BlowupParams p, const Limits& limits = {});

} // namespace cliqueblowup
