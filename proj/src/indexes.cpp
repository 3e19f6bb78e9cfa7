#include "cliqueblowup/indexes.hpp"

#include "cliqueblowup/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>

namespace cliqueblowup {

namespace {

// Nonzero eigenvalues, after checking that 0 occurs exactly once.
std::vector<double> nonzero_values(const SpectrumMultiset& sigma) {
    std::vector<double> out;
    std::size_t zeros = 0;
    for (const double v : sigma.values()) {
        if (std::abs(v) <= sigma.cluster_tol()) {
            ++zeros;
        } else {
            out.push_back(v);
        }
    }
    if (zeros != 1) {
        throw Error(ErrorKind::InconsistentSpectrum,
                    "eigenvalue 0 has multiplicity " + std::to_string(zeros) + "; expected 1");
    }
    return out;
}

void check_single_zero(const RationalSpectrum& sigma) {
    BigInt zeros = 0;
    for (const auto& e : sigma) {
        if (e.value == 0) {
            zeros += e.multiplicity;
        }
    }
    if (zeros != 1) {
        throw Error(ErrorKind::InconsistentSpectrum,
                    "eigenvalue 0 has multiplicity " + zeros.get_str() + "; expected 1");
    }
}

// Integer powers with negative exponents allowed.
BigRational rpow(const BigRational& base, long exponent) {
    if (exponent >= 0) {
        return pow(base, static_cast<unsigned long>(exponent));
    }
    return 1 / pow(base, static_cast<unsigned long>(-exponent));
}

BigRational rpow(long base, long exponent) { return rpow(BigRational(base), exponent); }

void require_connected(const Graph& g, const char* what) {
    if (!is_connected(g)) {
        throw Error(ErrorKind::NotConnected, std::string(what) + " needs a connected graph");
    }
}

BigInt checked_exponent(const BigRational& e) {
    if (!is_integer(e) || e < 0) {
        throw Error(ErrorKind::InternalAssertion, "exponent " + to_string(e) + " is not a non-negative integer");
    }
    return e.get_num();
}

BigInt power_of(long base, const BigInt& exponent) {
    // 2^26 bits is far past anything the exact routes can use downstream.
    if (exponent > (1L << 26)) {
        throw Error(ErrorKind::SizeCapExceeded, "exponent " + exponent.get_str() + " too large for exact evaluation");
    }
    return pow(BigInt(base), exponent.get_ui());
}

Eigen::MatrixXd shifted_laplacian(const Graph& g) {
    const auto order = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(order, order, 1.0 / static_cast<double>(order));
    for (Eigen::Index v = 0; v < order; ++v) {
        m(v, v) += static_cast<double>(g.degree(static_cast<Vertex>(v)));
    }
    for (const auto& e : g.edges()) {
        m(e.u, e.v) -= 1.0;
        m(e.v, e.u) -= 1.0;
    }
    return m;
}

} // namespace

double kf_star_spectral(const SpectrumMultiset& sigma, const BigInt& m) {
    return 2.0 * m.get_d() * kemeny_spectral(sigma);
}

double kemeny_spectral(const SpectrumMultiset& sigma) {
    double sum = 0.0;
    for (const double v : nonzero_values(sigma)) {
        sum += 1.0 / v;
    }
    return sum;
}

double log_tau_spectral(double log_degree_product, const BigInt& m, const SpectrumMultiset& sigma) {
    double log_eigen = 0.0;
    for (const double v : nonzero_values(sigma)) {
        if (v <= 0.0) {
            throw Error(ErrorKind::InconsistentSpectrum, "negative eigenvalue in normalized Laplacian spectrum");
        }
        log_eigen += std::log(v);
    }
    if (m == 0) {
        return 0.0;
    }
    return log_degree_product + log_eigen - std::log(2.0 * m.get_d());
}

double tau_spectral(const Graph& g, const SpectrumMultiset& sigma) {
    require_connected(g, "tau_spectral");
    double log_deg = 0.0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        log_deg += std::log(static_cast<double>(g.degree(v)));
    }
    return std::exp(log_tau_spectral(log_deg, g.edge_count(), sigma));
}

BigRational kemeny_spectral_exact(const RationalSpectrum& sigma) {
    check_single_zero(sigma);
    BigRational sum = 0;
    for (const auto& e : sigma) {
        if (e.value != 0) {
            sum += BigRational(e.multiplicity) / e.value;
        }
    }
    return sum;
}

BigRational kf_star_spectral_exact(const RationalSpectrum& sigma, const BigInt& m) {
    return 2 * BigRational(m) * kemeny_spectral_exact(sigma);
}

double log_degree_product_blowup(const Graph& g, BlowupParams p) {
    require_connected(g, "log_degree_product_blowup");
    const auto levels = blowup_count_levels(g.vertex_count(), g.edge_count(), p);
    std::map<BigInt, BigInt> histogram;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        histogram[BigInt(static_cast<unsigned long>(g.degree(v)))] += 1;
    }
    // Old vertices multiply their degree by n-1; each edge adds n-2 vertices
    // of degree n-1.
    for (int k = 0; k < p.r; ++k) {
        std::map<BigInt, BigInt> next;
        for (const auto& [deg, count] : histogram) {
            next[deg * (p.n - 1)] += count;
        }
        next[BigInt(p.n - 1)] += (p.n - 2) * levels[static_cast<std::size_t>(k)].edges;
        histogram = std::move(next);
    }
    double sum = 0.0;
    for (const auto& [deg, count] : histogram) {
        sum += count.get_d() * log_of(deg);
    }
    return sum;
}

DenseSymMatrix resistance_matrix(const Graph& g) {
    require_connected(g, "resistance_matrix");
    const std::size_t order = g.vertex_count();
    const Eigen::MatrixXd shifted = shifted_laplacian(g);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        throw Error(ErrorKind::NumericalFailure, "L + J/N is not positive definite");
    }
    // The J/N term cancels in r_ij, so the inverse of the shifted system is
    // used as is.
    const Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(shifted.rows(), shifted.cols()));
    if (!inv.allFinite()) {
        throw Error(ErrorKind::NumericalFailure, "singular shifted Laplacian");
    }
    DenseSymMatrix r(order);
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = i + 1; j < order; ++j) {
            const auto a = static_cast<Eigen::Index>(i);
            const auto b = static_cast<Eigen::Index>(j);
            const double value = inv(a, a) + inv(b, b) - inv(a, b) - inv(b, a);
            r(i, j) = value;
            r(j, i) = value;
        }
    }
    return r;
}

double kf_star_direct(const Graph& g) {
    const auto r = resistance_matrix(g);
    double sum = 0.0;
    for (Vertex i = 0; i < g.vertex_count(); ++i) {
        const auto di = static_cast<double>(g.degree(i));
        for (Vertex j = i + 1; j < g.vertex_count(); ++j) {
            sum += di * static_cast<double>(g.degree(j)) * r(i, j);
        }
    }
    return sum;
}

BigRational kf_star_exact(const Graph& g, std::size_t cap) {
    require_connected(g, "kf_star_exact");
    const std::size_t order = g.vertex_count();
    if (order > cap) {
        throw Error(ErrorKind::SizeCapExceeded,
                    "exact resistances limited to " + std::to_string(cap) + " vertices, graph has " +
                        std::to_string(order));
    }
    // Gauss-Jordan on [L + J/N | I].
    const std::size_t width = 2 * order;
    std::vector<BigRational> a(order * width, 0);
    const auto at = [&](std::size_t i, std::size_t j) -> BigRational& { return a[i * width + j]; };
    const BigRational shift = make_rational(1, static_cast<long>(order));
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = 0; j < order; ++j) {
            at(i, j) = shift;
        }
        at(i, i) += static_cast<long>(g.degree(static_cast<Vertex>(i)));
        at(i, order + i) = 1;
    }
    for (const auto& e : g.edges()) {
        at(e.u, e.v) -= 1;
        at(e.v, e.u) -= 1;
    }
    for (std::size_t col = 0; col < order; ++col) {
        std::size_t pivot = col;
        while (pivot < order && at(pivot, col) == 0) {
            ++pivot;
        }
        if (pivot == order) {
            throw Error(ErrorKind::NumericalFailure, "singular shifted Laplacian");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < width; ++j) {
                std::swap(at(pivot, j), at(col, j));
            }
        }
        const BigRational inv_pivot = 1 / at(col, col);
        for (std::size_t j = col; j < width; ++j) {
            at(col, j) *= inv_pivot;
        }
        for (std::size_t i = 0; i < order; ++i) {
            if (i == col || at(i, col) == 0) {
                continue;
            }
            const BigRational factor = at(i, col);
            for (std::size_t j = col; j < width; ++j) {
                at(i, j) -= factor * at(col, j);
            }
        }
    }
    BigRational sum = 0;
    for (std::size_t i = 0; i < order; ++i) {
        const long di = static_cast<long>(g.degree(static_cast<Vertex>(i)));
        for (std::size_t j = i + 1; j < order; ++j) {
            const long dj = static_cast<long>(g.degree(static_cast<Vertex>(j)));
            const BigRational rij = at(i, order + i) + at(j, order + j) - at(i, order + j) - at(j, order + i);
            sum += di * dj * rij;
        }
    }
    return sum;
}

BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t order) {
    if (m.size() != order * order) {
        throw Error(ErrorKind::InvalidParameter, "determinant needs a square matrix");
    }
    if (order == 0) {
        return 1;
    }
    const auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * order + j]; };
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < order; ++k) {
        if (at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < order && at(swap_row, k) == 0) {
                ++swap_row;
            }
            if (swap_row == order) {
                return 0;
            }
            for (std::size_t j = k; j < order; ++j) {
                std::swap(at(k, j), at(swap_row, j));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < order; ++i) {
            for (std::size_t j = k + 1; j < order; ++j) {
                BigInt num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = at(k, k);
    }
    return sign * at(order - 1, order - 1);
}

BigInt tau_exact(const Graph& g, std::size_t cap) {
    require_connected(g, "tau_exact");
    const std::size_t order = g.vertex_count();
    if (order > cap) {
        throw Error(ErrorKind::SizeCapExceeded, "exact determinant limited to " + std::to_string(cap) +
                                                    " vertices, graph has " + std::to_string(order));
    }
    const std::size_t minor = order - 1;
    std::vector<BigInt> m(minor * minor, 0);
    for (std::size_t v = 0; v < minor; ++v) {
        m[v * minor + v] = static_cast<unsigned long>(g.degree(static_cast<Vertex>(v)));
    }
    for (const auto& e : g.edges()) {
        if (e.v < minor) {
            m[e.u * minor + e.v] = -1;
            m[e.v * minor + e.u] = -1;
        }
    }
    return bareiss_determinant(std::move(m), minor);
}

double log_tau_cholesky(const Graph& g) {
    require_connected(g, "log_tau_cholesky");
    const auto minor = static_cast<Eigen::Index>(g.vertex_count()) - 1;
    if (minor == 0) {
        return 0.0;
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(minor, minor);
    for (Eigen::Index v = 0; v < minor; ++v) {
        m(v, v) = static_cast<double>(g.degree(static_cast<Vertex>(v)));
    }
    for (const auto& e : g.edges()) {
        if (e.v < minor) {
            m(e.u, e.v) = -1.0;
            m(e.v, e.u) = -1.0;
        }
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "reduced Laplacian is not positive definite");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < minor; ++i) {
        sum += std::log(llt.matrixLLT()(i, i));
    }
    return 2.0 * sum;
}

BigRational kf_star_r_form(const BigRational& kf, const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    const long n = p.n;
    const long r = p.r;
    const BigRational bn0(n0);
    const BigRational be0(e0);
    const BigRational leading = rpow(n, r) * rpow(n - 1, 2 * r) / rpow(2, r);
    const BigRational cross = rpow(n, r - 1) * rpow(n - 1, 2 * r + 1) / rpow(2, r) * (1 - rpow(n - 1, -r));
    const BigRational square = rpow(n - 1, 2 * r) * rpow(n, r - 1) / rpow(2, r - 1) *
                               (3 * (rpow(n, r) / rpow(2, r) - 1) -
                                (rpow(n, r) / rpow(2, r - 1) + rpow(n - 1, -(r - 1)) - n - 1) / (n + 1));
    return leading * kf - cross * be0 * bn0 + square * be0 * be0;
}

BigRational kf_star_blowup_closed(const BigRational& kf, const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    if (kf < 0) {
        throw Error(ErrorKind::InvalidParameter, "Kf* must be non-negative");
    }
    const auto levels = blowup_count_levels(n0, e0, p);
    const long n = p.n;
    const BigRational a = make_rational(n * (n - 1) * (n - 1), 2);
    const BigRational b = make_rational(3 * (n - 1) * (n - 1) * (n - 2), 2);
    const BigRational c = make_rational((n - 1) * (n - 1) * (n - 2), 2);
    BigRational value = kf;
    for (int k = 0; k < p.r; ++k) {
        const BigRational e(levels[static_cast<std::size_t>(k)].edges);
        const BigRational v(levels[static_cast<std::size_t>(k)].vertices);
        value = a * value + b * e * e - c * e * v;
    }
    const BigRational closed = kf_star_r_form(kf, n0, e0, p);
    if (closed != value) {
        throw Error(ErrorKind::InternalAssertion,
                    "Kf* recurrence gives " + to_string(value) + " but the r-level form gives " + to_string(closed));
    }
    return value;
}

BigRational kemeny_r_form(const BigRational& ke, const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    const long n = p.n;
    const long r = p.r;
    const BigRational growth = rpow(n, r) / rpow(2, r) - 1;
    const BigRational n_coeff = rpow(n - 1, r + 1) / (2 * n) * (rpow(n - 1, -r) - 1);
    const BigRational e_coeff = 3 * rpow(n - 1, r) / n * growth - 2 * rpow(n - 1, r) / (n * (n + 1)) * growth +
                                (n - 1) * (rpow(n - 1, r) - 1) / (n * (n + 1));
    return rpow(n - 1, r) * ke + n_coeff * BigRational(n0) + e_coeff * BigRational(e0);
}

BigRational kemeny_r_form_published(const BigRational& ke, const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    const long n = p.n;
    const long r = p.r;
    const BigRational n_coeff = rpow(n - 1, r + 1) / (2 * n) * (rpow(n - 1, -r) - 1);
    const BigRational e_coeff = 3 * rpow(n - 1, r) / n * (rpow(n, r) / rpow(2, r) - 1) +
                                rpow(n - 1, r) / (n + 1) * (1 - rpow(n, r - 1) / rpow(2, r - 1)) +
                                rpow(n - 1, r - 1) / (n * (n + 1)) * (1 - rpow(n - 1, -(r - 1)));
    return rpow(n - 1, r) * ke + n_coeff * BigRational(n0) + e_coeff * BigRational(e0);
}

BigRational kemeny_blowup_closed(const BigRational& ke, const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    if (ke < 0) {
        throw Error(ErrorKind::InvalidParameter, "Kemeny's constant must be non-negative");
    }
    const auto levels = blowup_count_levels(n0, e0, p);
    const long n = p.n;
    const BigRational e_coeff = make_rational(3 * (n - 1) * (n - 2), 2 * n);
    const BigRational n_coeff = make_rational((n - 1) * (n - 2), 2 * n);
    BigRational value = ke;
    for (int k = 0; k < p.r; ++k) {
        const auto& lv = levels[static_cast<std::size_t>(k)];
        value = (n - 1) * value + e_coeff * BigRational(lv.edges) - n_coeff * BigRational(lv.vertices);
    }
    const BigRational closed = kemeny_r_form(ke, n0, e0, p);
    if (closed != value) {
        throw Error(ErrorKind::InternalAssertion, "K_e recurrence gives " + to_string(value) +
                                                      " but the r-level form gives " + to_string(closed));
    }
    return value;
}

TauExponents tau_exponents_recurrence(const BigInt& n0, const BigInt& e0, BlowupParams p) {
    const auto levels = blowup_count_levels(n0, e0, p);
    TauExponents out{0, 0};
    for (int k = 0; k < p.r; ++k) {
        const auto& lv = levels[static_cast<std::size_t>(k)];
        out.of_two += BigRational(lv.edges - lv.vertices + 1);
        out.of_n += BigRational((p.n - 3) * lv.edges + lv.vertices - 1);
    }
    return out;
}

TauExponents tau_exponents_alpha(const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    const long n = p.n;
    const long r = p.r;
    const BigRational alpha = (rpow(n, r) * rpow(n - 1, r) / rpow(2, r) - 1) / (n * n - n - 2);
    const BigRational bn0(n0);
    const BigRational be0(e0);
    const BigRational shared = 2 * be0 / (n + 1) * (2 * alpha - r);
    return {2 * be0 * alpha - r * bn0 - shared + r, 2 * (n - 3) * be0 * alpha + r * bn0 + shared - r};
}

BigInt tau_blowup_closed(const BigInt& tau, const BigInt& n0, const BigInt& e0, BlowupParams p) {
    p.validate();
    if (tau < 1) {
        throw Error(ErrorKind::InvalidParameter, "spanning-tree count must be >= 1");
    }
    const auto levels = blowup_count_levels(n0, e0, p);
    BigInt value = tau;
    for (int k = 0; k < p.r; ++k) {
        const auto& lv = levels[static_cast<std::size_t>(k)];
        const BigInt two_exp = lv.edges - lv.vertices + 1;
        const BigInt n_exp = (p.n - 3) * lv.edges + lv.vertices - 1;
        value *= power_of(2, checked_exponent(BigRational(two_exp))) * power_of(p.n, checked_exponent(BigRational(n_exp)));
    }

    const TauExponents alpha = tau_exponents_alpha(n0, e0, p);
    const BigInt two_exp = checked_exponent(alpha.of_two);
    const BigInt n_exp = checked_exponent(alpha.of_n);
    if (alpha != tau_exponents_recurrence(n0, e0, p)) {
        throw Error(ErrorKind::InternalAssertion, "alpha-form exponents (" + two_exp.get_str() + ", " +
                                                      n_exp.get_str() + ") disagree with the recurrence");
    }
    const BigInt closed = tau * power_of(2, two_exp) * power_of(p.n, n_exp);
    if (closed != value) {
        throw Error(ErrorKind::InternalAssertion, "alpha-form tau disagrees with the recurrence");
    }
    return value;
}

std::string_view to_string(Route route) {
    switch (route) {
    case Route::Spectral: return "spectral";
    case Route::ClosedForm: return "closed_form";
    case Route::Oracle: return "oracle";
    }
    return "unknown";
}

IndexReport indexes_spectral(const Graph& g, BlowupParams p, const Limits& limits) {
    p.validate();
    const Bipartition bip = bipartition(g);
    const auto sigma = normalized_spectrum(g);
    const auto sigma_r = spectrum_iterated(sigma, g.vertex_count(), g.edge_count(), p, bip.is_bipartite,
                                           limits.max_vertices);
    const auto counts = blowup_counts(g.vertex_count(), g.edge_count(), p);

    IndexReport report;
    report.route = Route::Spectral;
    report.params = p;
    report.kemeny = kemeny_spectral(sigma_r);
    report.kf_star = kf_star_spectral(sigma_r, counts.edges);
    report.tau_log = log_tau_spectral(log_degree_product_blowup(g, p), counts.edges, sigma_r);
    report.tau_float = std::exp(report.tau_log);
    return report;
}

IndexReport indexes_closed_form(const Graph& g, BlowupParams p, const Limits& limits) {
    p.validate();
    const BigInt n0 = static_cast<unsigned long>(g.vertex_count());
    const BigInt e0 = static_cast<unsigned long>(g.edge_count());
    const BigRational kf0 = kf_star_exact(g, limits.exact_cap);
    const BigRational ke0 = e0 == 0 ? BigRational(0) : kf0 / (2 * BigRational(e0));
    const BigInt tau0 = tau_exact(g, limits.exact_cap);

    IndexReport report;
    report.route = Route::ClosedForm;
    report.params = p;
    report.kf_star_exact = kf_star_blowup_closed(kf0, n0, e0, p);
    report.kemeny_exact = kemeny_blowup_closed(ke0, n0, e0, p);
    report.tau_exact = tau_blowup_closed(tau0, n0, e0, p);
    report.kf_star = report.kf_star_exact->get_d();
    report.kemeny = report.kemeny_exact->get_d();
    report.tau_log = log_of(*report.tau_exact);
    report.tau_float = std::exp(report.tau_log);
    return report;
}

IndexReport indexes_oracle(const Graph& g, BlowupParams p, const Limits& limits) {
    const Graph h = blowup_iterate(g, p, limits.max_vertices);
    const auto edges = static_cast<double>(h.edge_count());

    IndexReport report;
    report.route = Route::Oracle;
    report.params = p;
    report.kf_star = kf_star_direct(h);
    report.kemeny = edges == 0 ? 0.0 : report.kf_star / (2.0 * edges);
    if (h.vertex_count() <= limits.exact_cap) {
        report.kf_star_exact = kf_star_exact(h, limits.exact_cap);
        if (edges > 0) {
            report.kemeny_exact = *report.kf_star_exact / (2 * BigRational(static_cast<unsigned long>(h.edge_count())));
        } else {
            report.kemeny_exact = BigRational(0);
        }
        report.tau_exact = tau_exact(h, limits.exact_cap);
        report.tau_log = log_of(*report.tau_exact);
    } else {
        report.tau_log = log_tau_cholesky(h);
    }
    report.tau_float = std::exp(report.tau_log);
    return report;
}

} // namespace cliqueblowup
