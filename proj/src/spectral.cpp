#include "cliqueblowup/spectral.hpp"

#include "cliqueblowup/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <variant>

namespace cliqueblowup {

DenseSymMatrix::DenseSymMatrix(std::size_t order, std::vector<double> row_major)
    : order_(order), entries_(std::move(row_major)) {
    if (entries_.size() != order_ * order_) {
        throw Error(ErrorKind::InvalidParameter, "matrix of order " + std::to_string(order_) + " needs " +
                                                     std::to_string(order_ * order_) + " entries, got " +
                                                     std::to_string(entries_.size()));
    }
}

bool DenseSymMatrix::is_symmetric(double tol) const {
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = i + 1; j < order_; ++j) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

SpectrumMultiset SpectrumMultiset::from_values(std::vector<double> values, double cluster_tol) {
    if (!(cluster_tol >= 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "cluster_tol must be non-negative");
    }
    std::sort(values.begin(), values.end());
    SpectrumMultiset s;
    s.cluster_tol_ = cluster_tol;
    std::size_t begin = 0;
    while (begin < values.size()) {
        std::size_t end = begin + 1;
        while (end < values.size() && values[end] - values[end - 1] <= cluster_tol) {
            ++end;
        }
        s.entries_.push_back({values[begin + (end - begin - 1) / 2], end - begin});
        begin = end;
    }
    s.values_ = std::move(values);
    return s;
}

SpectrumMultiset SpectrumMultiset::from_entries(std::span<const SpectrumEntry> entries, double cluster_tol) {
    std::vector<double> values;
    for (const auto& e : entries) {
        values.insert(values.end(), e.multiplicity, e.value);
    }
    return from_values(std::move(values), cluster_tol);
}

std::size_t SpectrumMultiset::multiplicity_near(double value) const {
    for (const auto& e : entries_) {
        if (std::abs(e.value - value) <= cluster_tol_) {
            return e.multiplicity;
        }
    }
    return 0;
}

DenseSymMatrix normalized_laplacian(const Graph& g) {
    const std::size_t order = g.vertex_count();
    std::vector<double> inv_sqrt_deg(order);
    for (Vertex v = 0; v < order; ++v) {
        const auto d = g.degree(v);
        if (d == 0) {
            throw Error(ErrorKind::DegreeZero, "vertex " + std::to_string(v) + " is isolated");
        }
        inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    DenseSymMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) {
        m(i, i) = 1.0;
    }
    for (const auto& e : g.edges()) {
        const double w = -inv_sqrt_deg[e.u] * inv_sqrt_deg[e.v];
        m(e.u, e.v) = w;
        m(e.v, e.u) = w;
    }
    return m;
}

SpectrumMultiset eig_sym(const DenseSymMatrix& m, double cluster_tol) {
    if (!m.is_symmetric()) {
        throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric within " + std::to_string(kSymmetryTol));
    }
    const auto order = static_cast<Eigen::Index>(m.order());
    if (order == 0) {
        return SpectrumMultiset::from_values({}, cluster_tol);
    }
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
        m.entries().data(), order, order);
    const Eigen::MatrixXd dense = view;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "symmetric eigensolver did not converge");
    }
    const auto& ev = solver.eigenvalues();
    return SpectrumMultiset::from_values(std::vector<double>(ev.data(), ev.data() + ev.size()), cluster_tol);
}

SpectrumMultiset normalized_spectrum(const Graph& g, double cluster_tol) {
    return eig_sym(normalized_laplacian(g), cluster_tol);
}

namespace {

// An eigenvalue either measured numerically or produced exactly by the
// mapping. Exact values are only rounded on materialization.
using LevelValue = std::variant<double, BigRational>;

struct LevelEntry {
    LevelValue value;
    BigInt multiplicity;
};

double approx(const LevelValue& v) {
    return std::visit(
        [](const auto& x) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>) {
                return x;
            } else {
                return x.get_d();
            }
        },
        v);
}

bool near(const LevelValue& v, long target, double tol) {
    if (const auto* d = std::get_if<double>(&v)) {
        return std::abs(*d - static_cast<double>(target)) <= tol;
    }
    return std::get<BigRational>(v) == target;
}

LevelValue divided(const LevelValue& v, int divisor) {
    if (const auto* d = std::get_if<double>(&v)) {
        return *d / static_cast<double>(divisor);
    }
    return LevelValue{std::get<BigRational>(v) / divisor};
}

std::vector<LevelEntry> theorem_step(const std::vector<LevelEntry>& sigma, const BigInt& n0, const BigInt& e0, int n,
                                     bool bipartite, double tol) {
    BlowupParams{n, 1}.validate();
    BigInt total = 0;
    BigInt at_zero = 0;
    BigInt at_two = 0;
    std::vector<LevelEntry> out;
    out.push_back({BigRational(0), 1});
    for (const auto& e : sigma) {
        total += e.multiplicity;
        if (near(e.value, 0, tol)) {
            at_zero += e.multiplicity;
        } else if (near(e.value, 2, tol)) {
            at_two += e.multiplicity;
        } else {
            out.push_back({divided(e.value, n - 1), e.multiplicity});
        }
    }
    if (at_zero != 1) {
        throw Error(ErrorKind::InconsistentSpectrum,
                    "eigenvalue 0 has multiplicity " + at_zero.get_str() + "; a connected graph has exactly one");
    }
    if (e0 == 0 && total == n0) {
        // Single vertex: nothing to blow up.
        return {{BigRational(0), 1}};
    }
    if (bipartite && at_two != 1) {
        throw Error(ErrorKind::InconsistentSpectrum,
                    "bipartite input needs exactly one eigenvalue at 2, found " + at_two.get_str());
    }
    if (!bipartite && at_two != 0) {
        throw Error(ErrorKind::InconsistentSpectrum, "non-bipartite input has an eigenvalue at 2");
    }
    if (total != n0) {
        throw Error(ErrorKind::InternalAssertion,
                    "spectrum has " + total.get_str() + " eigenvalues but N0 = " + n0.get_str());
    }

    const BigInt m_two = e0 - n0 + (bipartite ? 1 : 0);
    if (m_two < 0) {
        throw Error(ErrorKind::InconsistentSpectrum, "negative multiplicity for 2/(n-1): " + m_two.get_str());
    }
    if (m_two > 0) {
        out.push_back({make_rational(2, n - 1), m_two});
    }
    const BigInt m_top = (n - 3) * e0 + n0;
    if (m_top > 0) {
        out.push_back({make_rational(n, n - 1), m_top});
    }

    BigInt produced = 0;
    for (const auto& e : out) {
        produced += e.multiplicity;
    }
    if (produced != n0 + (n - 2) * e0) {
        throw Error(ErrorKind::InternalAssertion, "mapped spectrum has " + produced.get_str() +
                                                      " eigenvalues, expected N0 + (n-2)E0 = " +
                                                      BigInt(n0 + (n - 2) * e0).get_str());
    }
    return out;
}

std::vector<LevelEntry> iterate_levels(std::vector<LevelEntry> sigma, const BigInt& n0, const BigInt& e0,
                                       BlowupParams p, bool bipartite, double tol) {
    const auto levels = blowup_count_levels(n0, e0, p);
    for (int k = 0; k < p.r; ++k) {
        const auto& counts = levels[static_cast<std::size_t>(k)];
        sigma = theorem_step(sigma, counts.vertices, counts.edges, p.n, k == 0 && bipartite, tol);
    }
    return sigma;
}

std::vector<LevelEntry> level_entries(const SpectrumMultiset& s) {
    std::vector<LevelEntry> out;
    out.reserve(s.order());
    for (const double v : s.values()) {
        out.push_back({v, 1});
    }
    return out;
}

SpectrumMultiset materialize(const std::vector<LevelEntry>& entries, double cluster_tol, std::size_t max_values) {
    BigInt total = 0;
    for (const auto& e : entries) {
        total += e.multiplicity;
    }
    if (total > BigInt(std::to_string(max_values))) {
        throw Error(ErrorKind::SizeCapExceeded,
                    "spectrum has " + total.get_str() + " eigenvalues, cap is " + std::to_string(max_values));
    }
    std::vector<double> values;
    values.reserve(total.get_ui());
    for (const auto& e : entries) {
        values.insert(values.end(), e.multiplicity.get_ui(), approx(e.value));
    }
    return SpectrumMultiset::from_values(std::move(values), cluster_tol);
}

RationalSpectrum merge_exact(const std::vector<LevelEntry>& entries) {
    std::map<BigRational, BigInt> merged;
    for (const auto& e : entries) {
        merged[std::get<BigRational>(e.value)] += e.multiplicity;
    }
    RationalSpectrum out;
    for (auto& [value, mult] : merged) {
        if (mult != 0) {
            out.push_back({value, mult});
        }
    }
    return out;
}

std::vector<LevelEntry> level_entries(const RationalSpectrum& s) {
    std::vector<LevelEntry> out;
    for (const auto& e : s) {
        if (e.multiplicity < 0) {
            throw Error(ErrorKind::InconsistentSpectrum, "negative multiplicity in exact spectrum");
        }
        out.push_back({e.value, e.multiplicity});
    }
    return out;
}

} // namespace

SpectrumMultiset spectrum_by_theorem(const SpectrumMultiset& sigma_g, const BigInt& n0, const BigInt& e0, int n,
                                     bool bipartite) {
    const auto out = theorem_step(level_entries(sigma_g), n0, e0, n, bipartite, sigma_g.cluster_tol());
    return materialize(out, sigma_g.cluster_tol(), std::numeric_limits<std::size_t>::max());
}

SpectrumMultiset spectrum_iterated(const SpectrumMultiset& sigma_g, const BigInt& n0, const BigInt& e0,
                                   BlowupParams p, std::optional<bool> bipartite, std::size_t max_vertices) {
    p.validate();
    const auto counts = blowup_counts(n0, e0, p);
    if (counts.vertices > BigInt(std::to_string(max_vertices))) {
        throw Error(ErrorKind::SizeCapExceeded, "CL_" + std::to_string(p.r) + " spectrum would have " +
                                                    counts.vertices.get_str() + " eigenvalues, cap is " +
                                                    std::to_string(max_vertices));
    }
    // A connected graph is bipartite iff 2 is an eigenvalue.
    const bool bip = bipartite.value_or(sigma_g.order() > 0 &&
                                        std::abs(sigma_g.values().back() - 2.0) <= sigma_g.cluster_tol());
    const auto out = iterate_levels(level_entries(sigma_g), n0, e0, p, bip, sigma_g.cluster_tol());
    return materialize(out, sigma_g.cluster_tol(), max_vertices);
}

RationalSpectrum spectrum_by_theorem_exact(const RationalSpectrum& sigma_g, const BigInt& n0, const BigInt& e0,
                                           int n, bool bipartite) {
    return merge_exact(theorem_step(level_entries(sigma_g), n0, e0, n, bipartite, 0.0));
}

RationalSpectrum spectrum_iterated_exact(const RationalSpectrum& sigma_g, const BigInt& n0, const BigInt& e0,
                                         BlowupParams p) {
    p.validate();
    const bool bipartite = !sigma_g.empty() && sigma_g.back().value == 2;
    return merge_exact(iterate_levels(level_entries(sigma_g), n0, e0, p, bipartite, 0.0));
}

SpectrumMultiset to_multiset(const RationalSpectrum& exact, double cluster_tol, std::size_t max_values) {
    return materialize(level_entries(exact), cluster_tol, max_values);
}

std::string MatchReport::summary() const {
    std::ostringstream os;
    os.precision(17);
    if (matched) {
        os << "match (" << length_a << " eigenvalues, max deviation " << max_deviation << ")";
    } else if (length_a != length_b) {
        os << "length mismatch: " << length_a << " vs " << length_b;
    } else {
        os << "mismatch at index " << first_divergence.value_or(0) << ": " << a_value << " vs " << b_value;
    }
    return os.str();
}

MatchReport multiset_match(const SpectrumMultiset& a, const SpectrumMultiset& b, double tol) {
    MatchReport report;
    report.length_a = a.order();
    report.length_b = b.order();
    if (report.length_a != report.length_b) {
        return report;
    }
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) {
        const double dev = std::abs(av[i] - bv[i]);
        report.max_deviation = std::max(report.max_deviation, dev);
        if (!(dev <= tol * std::max(1.0, std::abs(bv[i]))) && !report.first_divergence) {
            report.first_divergence = i;
            report.a_value = av[i];
            report.b_value = bv[i];
        }
    }
    report.matched = !report.first_divergence;
    return report;
}

} // namespace cliqueblowup
