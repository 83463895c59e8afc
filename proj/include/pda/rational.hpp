#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pda {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt binomial(const BigInt& n, const BigInt& k);
BigInt int_pow(const BigInt& base, unsigned exp);
BigInt factorial(unsigned n);

/// Gaussian binomial coefficient: prod_{i=0}^{t-1} (p^{k-i}-1)/(p^{t-i}-1).
BigInt gaussian_binomial(const BigInt& p, unsigned k, unsigned t);

/// "n/d" for non-integers, plain digits otherwise.
std::string rational_string(const BigRat& value);

/// Decimal rendering with the given number of significant digits.
std::string decimal_string(const BigRat& value, int significant_digits = 6);

}  // namespace pda
