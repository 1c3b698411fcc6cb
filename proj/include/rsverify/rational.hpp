#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact base^exponent for a nonzero rational base and any integer exponent.
inline Rational pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0) {
    if (exponent < 0) throw std::domain_error("pow: zero to a negative power");
    return Rational(0);
  }
  const unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                       : static_cast<unsigned long>(exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exponent < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

/// p^exponent as an exact rational.
inline Rational prime_power(long p, long exponent) {
  return pow(Rational(p), exponent);
}

/// p-adic valuation of a nonzero rational.
inline int valuation(const Rational& x, long p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  Integer n = x.get_num(), d = x.get_den();
  const Integer pp(p);
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    n /= pp;
    ++v;
  }
  while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
    d /= pp;
    --v;
  }
  return v;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace rsv
