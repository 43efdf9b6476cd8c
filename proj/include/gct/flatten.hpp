#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/polarize.hpp"
#include "gct/polynomial.hpp"

namespace gct {

inline RankCertificate exact_rank(const FlatteningMatrix& f) { return exact_rank(f.entries); }

struct FlatteningBound {
  std::size_t bound = 0;
  unsigned best_k = 0;
  std::vector<std::size_t> ranks;  // ranks[k-1] = rank P_{k,d-k}
};

namespace detail {

inline void require_flattenable(const Polynomial& p, const char* op) {
  if (p.is_zero()) throw DomainError(std::string(op) + ": zero polynomial");
  if (!p.is_homogeneous()) throw DomainError(std::string(op) + ": polynomial is not homogeneous");
}

// Ranks of P_{k,d-k} for k = 1..d-1, using rank(k) = rank(d-k).
inline std::vector<std::size_t> flattening_ranks(const Polynomial& p) {
  const unsigned d = *p.degree();
  std::vector<std::size_t> ranks(d > 1 ? d - 1 : 0);
  for (unsigned k = 1; 2 * k <= d; ++k) {
    std::size_t r = exact_rank(polarize(p, k)).rank;
    ranks[k - 1] = r;
    ranks[d - k - 1] = r;
  }
  return ranks;
}

}  // namespace detail

// max_k rank P_{k,d-k}: a lower bound for the Waring border rank.
inline FlatteningBound waring_border_lower_bound(const Polynomial& p) {
  detail::require_flattenable(p, "waring_border_lower_bound");
  FlatteningBound b;
  if (*p.degree() <= 1) {
    b.bound = 1;
    return b;
  }
  b.ranks = detail::flattening_ranks(p);
  for (std::size_t i = 0; i < b.ranks.size(); ++i)
    if (b.ranks[i] > b.bound) {
      b.bound = b.ranks[i];
      b.best_k = static_cast<unsigned>(i + 1);
    }
  return b;
}

// max_k ceil(rank P_{k,d-k} / binom(d,k)): a lower bound for the Chow border rank.
inline FlatteningBound chow_border_lower_bound(const Polynomial& p) {
  detail::require_flattenable(p, "chow_border_lower_bound");
  FlatteningBound b;
  const unsigned d = *p.degree();
  if (d <= 1) {
    b.bound = 1;
    return b;
  }
  b.ranks = detail::flattening_ranks(p);
  for (std::size_t i = 0; i < b.ranks.size(); ++i) {
    Integer q = ceil_div(Integer(static_cast<unsigned long>(b.ranks[i])), binomial(d, i + 1));
    std::size_t v = q.get_ui();
    if (v > b.bound) {
      b.bound = v;
      b.best_k = static_cast<unsigned>(i + 1);
    }
  }
  return b;
}

inline constexpr std::size_t kMaxShiftedGenerators = 200000;

// dim span { m'' * d^{m'} P : deg m' = k, deg m'' = l }.
inline RankCertificate shifted_partials_dim(const Polynomial& p, unsigned k, unsigned l) {
  detail::require_flattenable(p, "shifted_partials_dim");
  const unsigned d = *p.degree();
  if (k >= d) throw DomainError("shifted_partials_dim: need k < deg P");
  const std::size_t nv = p.num_vars();

  // A basis of the k-th partials first; shifting a dependent set adds nothing.
  std::vector<Polynomial> partials;
  if (k == 0) {
    partials.push_back(p);
  } else {
    FlatteningMatrix f = polarize(p, k);
    Matrix<Integer> work = clear_denominators(f.entries);
    std::vector<std::size_t> pivots;
    bareiss_echelon(work, &pivots);
    for (auto c : pivots) partials.push_back(apply_diff(Polynomial::monomial(f.cols[c]), p));
  }
  auto shifts = monomials_of_degree(nv, l);
  if (partials.size() * shifts.size() > kMaxShiftedGenerators) {
    throw CapacityError("shifted_partials_dim: more than " + std::to_string(kMaxShiftedGenerators) + " generators");
  }
  auto target = monomials_of_degree(nv, d - k + l);
  if (target.size() > 50 * kMaxFlatteningColumns) throw CapacityError("shifted_partials_dim: target space too large");
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < target.size(); ++i) index.emplace(target[i], i);

  Matrix<Scalar> m(partials.size() * shifts.size(), target.size(), Scalar(0));
  std::size_t row = 0;
  for (const auto& q : partials)
    for (const auto& s : shifts) {
      for (const auto& t : q.terms()) m(row, index.at(t.monomial * s)) = t.coeff;
      ++row;
    }
  return exact_rank(m);
}

}  // namespace gct
