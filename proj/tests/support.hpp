#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gct/matrix.hpp"
#include "gct/polynomial.hpp"
#include "gct/scalar.hpp"

namespace gct::testkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

  // Small rational with numerator in [-bound, bound] and denominator in [1, 4].
  Scalar rational(long bound = 5) {
    Scalar q(integer(-bound, bound), integer(1, 4));
    q.canonicalize();
    return q;
  }

  std::vector<Scalar> vector(std::size_t n, long bound = 5) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational(bound));
    return v;
  }

  Matrix<Scalar> matrix(std::size_t r, std::size_t c, long bound = 5) {
    Matrix<Scalar> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(bound);
    return m;
  }

  Matrix<Scalar> invertible(std::size_t n) {
    while (true) {
      auto m = matrix(n, n);
      if (determinant(m) != 0) return m;
    }
  }

  Polynomial homogeneous(std::size_t nv, unsigned d, std::size_t terms) {
    auto basis = monomials_of_degree(nv, d);
    std::vector<Term> out;
    for (std::size_t t = 0; t < terms; ++t)
      out.push_back({basis[static_cast<std::size_t>(integer(0, static_cast<long>(basis.size()) - 1))], rational()});
    return Polynomial::from_terms(nv, std::move(out));
  }

  Polynomial dense(std::size_t nv, unsigned max_degree, std::size_t terms) {
    std::vector<Term> out;
    for (std::size_t t = 0; t < terms; ++t) {
      Monomial m(nv);
      unsigned left = static_cast<unsigned>(integer(0, max_degree));
      while (left--) {
        std::size_t i = static_cast<std::size_t>(integer(0, static_cast<long>(nv) - 1));
        m.set(i, m[i] + 1u);
      }
      out.push_back({m, rational()});
    }
    return Polynomial::from_terms(nv, std::move(out));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gct::testkit
