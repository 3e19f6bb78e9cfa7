#include "cliqueblowup/exact.hpp"

#include "cliqueblowup/error.hpp"

#include <cmath>

namespace cliqueblowup {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::InconsistentSpectrum: return "InconsistentSpectrum";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw Error(ErrorKind::InvalidParameter, "zero denominator");
    }
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

std::string to_string(const BigRational& q) {
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

BigRational parse_rational(const std::string& text) {
    BigRational q;
    if (q.set_str(text, 10) != 0) {
        throw Error(ErrorKind::ParseError, "not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

BigRational pow(const BigRational& base, unsigned long exponent) {
    return make_rational(pow(BigInt(base.get_num()), exponent), pow(BigInt(base.get_den()), exponent));
}

bool is_integer(const BigRational& q) { return q.get_den() == 1; }

double log_of(const BigInt& z) {
    if (z <= 0) {
        throw Error(ErrorKind::InvalidParameter, "log of non-positive integer");
    }
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

} // namespace cliqueblowup
