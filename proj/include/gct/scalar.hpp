#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "gct/error.hpp"

namespace gct {

using Integer = mpz_class;
using Scalar = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline Scalar parse_scalar(std::string_view text) {
  Scalar q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw FormatError("not a rational number: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

// a / b in lowest terms.
inline Scalar ratio(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division by zero");
  Scalar q(a, b);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// n! / (k_1! ... k_r!) with n = sum of the k_i.
template <typename T>
Integer multinomial(std::span<const T> parts) {
  Integer r = 1;
  unsigned long total = 0;
  for (auto k : parts) {
    for (unsigned long i = 1; i <= static_cast<unsigned long>(k); ++i) {
      ++total;
      r *= total;
      r /= i;
    }
  }
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Scalar pow(const Scalar& base, unsigned long e) {
  Scalar r(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  r.canonicalize();
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// floor(a / b) for b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace gct
