#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/parallel.hpp"
#include "gct/polymatrix.hpp"
#include "gct/poly_io.hpp"
#include "gct/polynomial.hpp"
#include "gct/scalar.hpp"
#include "gct/zoo.hpp"

namespace gct {

inline PolyMatrix hessian(const Polynomial& p) {
  if (p.is_zero() || !p.is_homogeneous() || *p.degree() < 2)
    throw DomainError("hessian: need a homogeneous polynomial of degree >= 2");
  const std::size_t nv = p.num_vars();
  PolyMatrix h(nv, nv);
  std::vector<Polynomial> first(nv);
  for (std::size_t i = 0; i < nv; ++i) first[i] = p.derivative(i);
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i; j < nv; ++j) {
      Polynomial e = first[i].derivative(j);
      h.set(i, j, e);
      if (i != j) h.set(j, i, std::move(e));
    }
  return h;
}

// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t t = i; t < k; ++t) s[t] = s[t - 1] + 1;
  }
  return out;
}

// s-th coefficient of the characteristic polynomial: the sum of all s x s principal minors.
inline Polynomial charpoly_coeff(const PolyMatrix& m, std::size_t s, unsigned threads = 1) {
  if (s > m.size()) throw DomainError("charpoly_coeff: s larger than the matrix");
  auto idx = subsets(m.size(), s);
  std::vector<Polynomial> minors(idx.size());
  parallel_for(idx.size(), threads, [&](std::size_t i) { minors[i] = determinant(m.submatrix(idx[i], idx[i])); });
  PolynomialAccumulator acc(m.num_vars());
  for (const auto& p : minors) acc.add(p);
  return acc.finish();
}

// cp_0 .. cp_{up_to}
inline std::vector<Polynomial> charpoly_coeffs(const PolyMatrix& m, std::size_t up_to, unsigned threads = 1) {
  if (up_to > m.size()) throw DomainError("charpoly_coeffs: up_to larger than the matrix");
  std::vector<Polynomial> out;
  for (std::size_t s = 0; s <= up_to; ++s) out.push_back(charpoly_coeff(m, s, threads));
  return out;
}

// Matrix of k x k minors, rows and columns indexed by k-subsets in lexicographic order.
inline PolyMatrix compound(const PolyMatrix& m, std::size_t k) {
  if (k == 0 || k > m.size()) throw DomainError("compound: k out of range");
  auto idx = subsets(m.size(), k);
  PolyMatrix c(idx.size(), m.num_vars());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) c.set(i, j, determinant(m.submatrix(idx[i], idx[j])));
  return c;
}

inline Matrix<Scalar> compound(const Matrix<Scalar>& m, std::size_t k) {
  if (m.rows() != m.cols()) throw DimensionError("compound: matrix is not square");
  if (k == 0 || k > m.rows()) throw DomainError("compound: k out of range");
  auto idx = subsets(m.rows(), k);
  Matrix<Scalar> c(idx.size(), idx.size(), Scalar(0));
  Matrix<Scalar> sub(k, k, Scalar(0));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(idx[i][a], idx[j][b]);
      c(i, j) = determinant(sub);
    }
  return c;
}

struct Division {
  Polynomial quotient;
  Polynomial remainder;
};

// Multivariate division by a single divisor, grevlex order. The remainder is
// zero exactly when d divides p.
inline Division divide(const Polynomial& p, const Polynomial& d) {
  check_same_space(p, d, "divide");
  if (d.is_zero()) throw DomainError("divide: division by zero");
  const Term& lead = d.leading_term();
  PolynomialAccumulator q(p.num_vars()), rem(p.num_vars());
  Polynomial r = p;
  while (!r.is_zero()) {
    const Term t = r.leading_term();
    if (lead.monomial.divides(t.monomial)) {
      Polynomial step = Polynomial::monomial(lead.monomial.cofactor_in(t.monomial), t.coeff / lead.coeff);
      q.add(step);
      r = sub(r, mul(step, d));
    } else {
      rem.add(t.monomial, t.coeff);
      r = sub(r, Polynomial::monomial(t.monomial, t.coeff));
    }
  }
  return {q.finish(), rem.finish()};
}

// Symbolic v x v matrix with entry (i, j) the variable i*v + j.
inline PolyMatrix generic_matrix(std::size_t v) {
  PolyMatrix a(v, v * v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) a.set(i, j, Polynomial::variable(v * v, i * v + j));
  return a;
}

// Q(A) = trace(A A^T)
inline Polynomial trace_form(std::size_t v) {
  PolynomialAccumulator acc(v * v);
  for (std::size_t i = 0; i < v * v; ++i) acc.add(Monomial::variable(v * v, i, 2), Scalar(1));
  return acc.finish();
}

struct IdentityCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SfturboReport {
  unsigned v = 0;
  std::vector<IdentityCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

namespace detail {

// The constant c with p = c * base, if there is one.
inline std::optional<Scalar> constant_ratio(const Polynomial& p, const Polynomial& base) {
  auto div = divide(p, base);
  if (!div.remainder.is_zero()) return std::nullopt;
  if (div.quotient.is_zero()) return Scalar(0);
  if (div.quotient.size() != 1 || div.quotient.leading_term().monomial.degree() != 0) return std::nullopt;
  return div.quotient.leading_term().coeff;
}

inline std::string ratio_detail(const std::optional<Scalar>& found, const Scalar& expected, const std::string& base) {
  std::string s = "expected " + to_string(expected) + "*" + base + ", found ";
  return s + (found ? to_string(*found) + "*" + base : "no constant multiple");
}

}  // namespace detail

// Identities for the coefficients cp_s of the characteristic polynomial of the
// Hessian of det_v:
//   cp_1 = 0, det_v | cp_s for odd s >= 3 with cofactor degree s(v-2) - v,
//   cp_{v^2} = (-1)^{binom(v+1,2)} (v-1) det_v^{v(v-2)},
//   cp_{v^2-1} = 2 det_v^{v(v-2)-1} Q.
// `which` selects the coefficients; empty means cp_1, cp_3 and, for v = 3, the top two.
inline SfturboReport verify_sfturbo(unsigned v, std::set<unsigned> which = {}, unsigned threads = 1) {
  if (v < 3 || v > 4) throw CapacityError("verify_sfturbo: v must be 3 or 4");
  const unsigned top = v * v;
  if (which.empty()) {
    which = {1, 3};
    if (v == 3) which.insert({top - 1, top});
  }
  Polynomial det = zoo::det(v);
  PolyMatrix h = hessian(det);
  SfturboReport rep;
  rep.v = v;
  for (unsigned s : which) {
    if (s == 0 || s > top) throw DomainError("verify_sfturbo: coefficient index out of range");
    Polynomial cp = charpoly_coeff(h, s, threads);
    IdentityCheck c;
    c.name = "cp_" + std::to_string(s);
    if (s == 1) {
      c.ok = cp.is_zero();
      c.detail = c.ok ? "cp_1 = 0" : "cp_1 has " + std::to_string(cp.size()) + " terms";
    } else if (s == top) {
      Scalar expected = ((v * (v + 1) / 2) % 2 ? -1 : 1) * static_cast<long>(v - 1);
      auto found = detail::constant_ratio(cp, pow(det, v * (v - 2)));
      c.ok = found && *found == expected;
      c.detail = detail::ratio_detail(found, expected, "det^" + std::to_string(v * (v - 2)));
    } else if (s == top - 1) {
      auto found = detail::constant_ratio(cp, mul(pow(det, v * (v - 2) - 1), trace_form(v)));
      c.ok = found && *found == 2;
      c.detail = detail::ratio_detail(found, Scalar(2), "det^" + std::to_string(v * (v - 2) - 1) + "*Q");
    } else {
      auto div = divide(cp, det);
      long predicted = static_cast<long>(s) * (v - 2) - v;
      c.ok = div.remainder.is_zero() && !div.quotient.is_zero() && predicted >= 0 &&
             *div.quotient.degree() == static_cast<unsigned>(predicted) && div.quotient.is_homogeneous();
      if (!div.remainder.is_zero())
        c.detail = "remainder has leading term " + pretty(Polynomial::monomial(div.remainder.leading_term().monomial,
                                                                                div.remainder.leading_term().coeff));
      else if (div.quotient.is_zero())
        c.detail = "cp is zero";
      else
        c.detail = "det | cp, cofactor degree " + std::to_string(*div.quotient.degree()) + " (predicted " +
                   std::to_string(predicted) + ")";
    }
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

// det(H(delta)) == 3888 delta^2
inline bool verify_discriminant_identity(const Polynomial& delta) {
  return determinant(hessian(delta)) == scale(mul(delta, delta), Scalar(3888));
}

inline bool verify_discriminant_identity() { return verify_discriminant_identity(zoo::discriminant()); }

// <det_n(y), det_n(x)^{s+1}> == (s+n)!/s! det_n(x)^s
inline bool cayley_check(unsigned n, unsigned s) {
  if (n == 0) throw DomainError("cayley_check: n must be positive");
  if (n > 3 || s > 2) throw CapacityError("cayley_check: need n <= 3 and s <= 2");
  Polynomial det = zoo::det(n);
  Scalar factor(factorial(s + n) / factorial(s));
  return apply_diff(det, pow(det, s + 1)) == scale(pow(det, s), factor);
}

// det(A)^p divides cp_{binom(v-1,k)+p} of the k-th compound of a generic v x v matrix.
inline Division sylvester_franke_division(unsigned v, unsigned k, unsigned p, unsigned threads = 1) {
  if (v == 0 || v > 4) throw CapacityError("sylvester_franke: v must be in [1, 4]");
  if (k == 0 || k > v) throw DomainError("sylvester_franke: k out of range");
  const unsigned long s = binomial(v - 1, k).get_ui() + p;
  if (s > binomial(v, k).get_ui()) throw DomainError("sylvester_franke: coefficient index beyond the compound size");
  PolyMatrix a = generic_matrix(v);
  Polynomial cp = charpoly_coeff(compound(a, k), s, threads);
  return divide(cp, pow(determinant(a), p));
}

inline bool verify_sylvester_franke(unsigned v, unsigned k, unsigned p, unsigned threads = 1) {
  return sylvester_franke_division(v, k, p, threads).remainder.is_zero();
}

// dim of the dual variety at a smooth point w of Z(P): rank of the Hessian at w minus 2.
inline long dual_dimension_at(const Polynomial& p, std::span<const Scalar> w) {
  if (w.size() != p.num_vars()) throw DimensionError("dual_dimension_at: point has the wrong length");
  if (p.evaluate(w) != 0) throw DomainError("dual_dimension_at: point is not on the hypersurface");
  bool smooth = false;
  for (std::size_t i = 0; i < p.num_vars() && !smooth; ++i) smooth = p.derivative(i).evaluate(w) != 0;
  if (!smooth) throw DomainError("dual_dimension_at: point is singular");
  auto h = hessian(p).evaluate(w);
  return static_cast<long>(exact_rank(h).rank) - 2;
}

// g diag(1,..,1,0,..,0) h with random invertible rational g, h; row-major entries.
template <typename Rng>
std::vector<Scalar> random_matrix_of_rank(std::size_t n, std::size_t rank, Rng& rng) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  auto random_invertible = [&] {
    while (true) {
      Matrix<Scalar> m(n, n, Scalar(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = ratio(Integer(num(rng)), Integer(den(rng)));
      if (determinant(m) != 0) return m;
    }
  };
  Matrix<Scalar> d(n, n, Scalar(0));
  for (std::size_t i = 0; i < rank; ++i) d(i, i) = 1;
  Matrix<Scalar> m = random_invertible() * d * random_invertible();
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(m(i, j));
  return out;
}

// All ones except 1 - m in the (1,1) slot; a zero of perm_m.
inline std::vector<Scalar> perm_special_point(std::size_t m) {
  std::vector<Scalar> w(m * m, Scalar(1));
  w[0] = Scalar(1 - static_cast<long>(m));
  return w;
}

// dim { X in gl(v) : sum_ij X_ij x_j dP/dx_i = 0 }
inline std::size_t stabilizer_lie_dim(const Polynomial& p) {
  if (!p.is_homogeneous()) throw DomainError("stabilizer_lie_dim: polynomial is not homogeneous");
  const std::size_t v = p.num_vars();
  std::vector<Polynomial> cols;
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  for (std::size_t i = 0; i < v; ++i) {
    Polynomial di = p.derivative(i);
    for (std::size_t j = 0; j < v; ++j) {
      cols.push_back(mul(Polynomial::variable(v, j), di));
      for (const auto& t : cols.back().terms()) row_of.try_emplace(t.monomial, row_of.size());
    }
  }
  Matrix<Scalar> m(row_of.size(), cols.size(), Scalar(0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& t : cols[c].terms()) m(row_of.at(t.monomial), c) = t.coeff;
  return v * v - exact_rank(m).rank;
}

}  // namespace gct
