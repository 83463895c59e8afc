#include "pda/rational.hpp"

#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace pda {

BigInt binomial(const BigInt& n, const BigInt& k) {
  if (k < 0 || k > n) return 0;
  BigInt kk = k;
  if (kk > n - kk) kk = n - kk;
  BigInt result = 1;
  for (BigInt i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    result /= i;
  }
  return result;
}

BigInt int_pow(const BigInt& base, unsigned exp) {
  BigInt result = 1, b = base;
  while (exp > 0) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt gaussian_binomial(const BigInt& p, unsigned k, unsigned t) {
  if (t > k) return 0;
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < t; ++i) {
    num *= int_pow(p, k - i) - 1;
    den *= int_pow(p, t - i) - 1;
  }
  BigInt q = num / den;
  if (q * den != num) throw std::logic_error("gaussian binomial is not integral");
  return q;
}

std::string rational_string(const BigRat& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string decimal_string(const BigRat& value, int significant_digits) {
  using Dec = boost::multiprecision::cpp_dec_float_100;
  const Dec num(boost::multiprecision::numerator(value));
  const Dec den(boost::multiprecision::denominator(value));
  std::ostringstream out;
  out << std::setprecision(significant_digits) << num / den;
  return out.str();
}

}  // namespace pda
