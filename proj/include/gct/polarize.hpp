#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gct/digest.hpp"
#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/polynomial.hpp"

namespace gct {

// Matrix of the polarization P_{k,d-k}: column m holds the coefficients of
// apply_diff(m, P) in the degree d-k monomial basis.
struct FlatteningMatrix {
  std::vector<Monomial> rows;  // degree d-k, grevlex descending
  std::vector<Monomial> cols;  // degree k, grevlex descending
  Matrix<Scalar> entries;
  std::string source_digest;
  unsigned k = 0;
};

inline constexpr std::size_t kMaxFlatteningColumns = 5000;

inline FlatteningMatrix polarize(const Polynomial& p, unsigned k) {
  if (p.is_zero()) throw DomainError("polarize: the zero polynomial has no flattening");
  if (!p.is_homogeneous()) throw DomainError("polarize: polynomial is not homogeneous");
  const unsigned d = *p.degree();
  if (k < 1 || k + 1 > d) {
    throw DomainError("polarize: k = " + std::to_string(k) + " outside [1, " + std::to_string(d) + "-1]");
  }
  const std::size_t nv = p.num_vars();
  if (binomial(nv + k - 1, k) > kMaxFlatteningColumns || binomial(nv + d - k - 1, d - k) > 50 * kMaxFlatteningColumns) {
    throw CapacityError("polarize: flattening exceeds " + std::to_string(kMaxFlatteningColumns) + " columns");
  }
  FlatteningMatrix f;
  f.k = k;
  f.rows = monomials_of_degree(nv, d - k);
  f.cols = monomials_of_degree(nv, k);
  f.source_digest = digest_of(p);
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_index, col_index;
  for (std::size_t i = 0; i < f.rows.size(); ++i) row_index.emplace(f.rows[i], i);
  for (std::size_t j = 0; j < f.cols.size(); ++j) col_index.emplace(f.cols[j], j);
  f.entries = Matrix<Scalar>(f.rows.size(), f.cols.size(), Scalar(0));

  // Enumerate the degree-k divisors m of each term t.
  Monomial div(nv);
  for (const auto& t : p.terms()) {
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (left == 0) {
        Monomial rest = div.cofactor_in(t.monomial);
        f.entries(row_index.at(rest), col_index.at(div)) += t.coeff * falling_factor(div, t.monomial);
        return;
      }
      if (i == nv) return;
      unsigned top = std::min<unsigned>(left, t.monomial[i]);
      for (unsigned e = 0; e <= top; ++e) {
        div.set(i, e);
        rec(i + 1, left - e);
      }
      div.set(i, 0);
    };
    rec(0, k);
  }
  return f;
}

}  // namespace gct
