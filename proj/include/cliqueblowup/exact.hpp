#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace cliqueblowup {

using BigInt = mpz_class;
/// Always canonical: gmpxx normalizes after every arithmetic operation.
using BigRational = mpq_class;

BigRational make_rational(const BigInt& num, const BigInt& den);
BigRational make_rational(long num, long den = 1);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

BigRational parse_rational(const std::string& text);

BigInt pow(const BigInt& base, unsigned long exponent);
BigRational pow(const BigRational& base, unsigned long exponent);

bool is_integer(const BigRational& q);

/// Natural log of a positive big integer without overflowing a double.
double log_of(const BigInt& z);

} // namespace cliqueblowup
