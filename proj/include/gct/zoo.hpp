#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/polymatrix.hpp"
#include "gct/polynomial.hpp"
#include "gct/scalar.hpp"

namespace gct::zoo {

namespace detail {

// Calls f(perm, sign) for every permutation of {0..n-1} in lexicographic order.
template <typename F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    f(std::span<const std::size_t>(p), inversions % 2 ? -1 : 1);
  } while (std::next_permutation(p.begin(), p.end()));
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace detail

// Variable x_{ij} of an n x n matrix (0-based) sits at index i*n + j.
inline Polynomial det(std::size_t n) {
  detail::require(n >= 1, "det: n must be positive");
  std::vector<Term> terms;
  detail::for_each_permutation(n, [&](std::span<const std::size_t> p, int sign) {
    Monomial m(n * n);
    for (std::size_t i = 0; i < n; ++i) m.set(i * n + p[i], 1);
    terms.push_back({std::move(m), Scalar(sign)});
  });
  return Polynomial::from_terms(n * n, std::move(terms));
}

inline Polynomial perm(std::size_t n) {
  detail::require(n >= 1, "perm: n must be positive");
  std::vector<Term> terms;
  detail::for_each_permutation(n, [&](std::span<const std::size_t> p, int) {
    Monomial m(n * n);
    for (std::size_t i = 0; i < n; ++i) m.set(i * n + p[i], 1);
    terms.push_back({std::move(m), Scalar(1)});
  });
  return Polynomial::from_terms(n * n, std::move(terms));
}

// e^k_n: sum of all squarefree degree-k monomials in n variables.
inline Polynomial elementary(std::size_t k, std::size_t n) {
  detail::require(n >= 1 && k <= n, "elementary: need 0 <= k <= n, n >= 1");
  std::vector<Term> terms;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) m.set(i, 1);
    terms.push_back({std::move(m), Scalar(1)});
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return Polynomial::from_terms(n, std::move(terms));
}

inline Polynomial chow(std::size_t n) {
  detail::require(n >= 1, "chow: n must be positive");
  Monomial m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, 1);
  return Polynomial::monomial(m);
}

// x_1^d + ... + x_n^d
inline Polynomial fermat(unsigned d, std::size_t n) {
  detail::require(n >= 1 && d >= 1, "fermat: need d, n >= 1");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i) terms.push_back({Monomial::variable(n, i, d), Scalar(1)});
  return Polynomial::from_terms(n, std::move(terms));
}

// x_1^d in num_vars variables.
inline Polynomial power(unsigned d, std::size_t num_vars) {
  detail::require(num_vars >= 1, "power: need at least one variable");
  return Polynomial::monomial(Monomial::variable(num_vars, 0, d));
}

// S^n_m = sum_{i<m} prod_{j<n} x_{ij}, variable x_{ij} at index i*n + j.
inline Polynomial sum_product(std::size_t n, std::size_t m) {
  detail::require(n >= 1 && m >= 1, "sumprod: need n, m >= 1");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < m; ++i) {
    Monomial mono(n * m);
    for (std::size_t j = 0; j < n; ++j) mono.set(i * n + j, 1);
    terms.push_back({std::move(mono), Scalar(1)});
  }
  return Polynomial::from_terms(n * m, std::move(terms));
}

// IMM^k_n = trace(X_1 X_2 ... X_n) for k x k matrices; entry (a, b) of X_t
// at index t*k*k + a*k + b.
inline Polynomial imm(std::size_t k, std::size_t n) {
  detail::require(k >= 1 && n >= 1, "imm: need k, n >= 1");
  const std::size_t nv = k * k * n;
  std::vector<Term> terms;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Monomial m(nv);
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t v = t * k * k + idx[t] * k + idx[(t + 1) % n];
      m.set(v, m[v] + 1);
    }
    terms.push_back({std::move(m), Scalar(1)});
    std::size_t t = 0;
    while (t < n && ++idx[t] == k) idx[t++] = 0;
    if (t == n) break;
  }
  return Polynomial::from_terms(nv, std::move(terms));
}

// Four-factor Pascal determinant:
//   sum over s2, s3, s4 in S_m of sgn(s2 s3 s4) prod_i a_{i, s2(i), s3(i), s4(i)},
// variable a_{ijkl} at index ((i*m + j)*m + k)*m + l.
inline Polynomial pascal_det(std::size_t m) {
  detail::require(m >= 1 && m <= 4, "pascal: m must be in [1, 4]");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<int> signs;
  detail::for_each_permutation(m, [&](std::span<const std::size_t> p, int s) {
    perms.emplace_back(p.begin(), p.end());
    signs.push_back(s);
  });
  const std::size_t nv = m * m * m * m;
  std::vector<Term> terms;
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b)
      for (std::size_t c = 0; c < perms.size(); ++c) {
        Monomial mono(nv);
        for (std::size_t i = 0; i < m; ++i) {
          std::size_t v = ((i * m + perms[a][i]) * m + perms[b][i]) * m + perms[c][i];
          mono.set(v, 1);
        }
        terms.push_back({std::move(mono), Scalar(signs[a] * signs[b] * signs[c])});
      }
  return Polynomial::from_terms(nv, std::move(terms));
}

// Pfaffian of an even skew-symmetric matrix by first-row expansion, with
// Pf([[0, a], [-a, 0]]) = a.
inline Polynomial pfaffian(const PolyMatrix& a, std::vector<std::size_t> idx) {
  if (idx.empty()) return Polynomial::constant(a.num_vars(), 1);
  if (idx.size() % 2) throw DomainError("pfaffian of an odd-size matrix");
  PolynomialAccumulator acc(a.num_vars());
  const std::size_t first = idx[0];
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const Polynomial& e = a(first, idx[j]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != j) rest.push_back(idx[t]);
    acc.add(mul(e, pfaffian(a, std::move(rest))), j % 2 ? Scalar(1) : Scalar(-1));
  }
  return acc.finish();
}

inline Polynomial pfaffian(const PolyMatrix& a) {
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  return pfaffian(a, std::move(idx));
}

// Boundary polynomial P_Lambda(M) = sum_{i,j} (M_S)_{ij} Pf_i(M_L) Pf_j(M_L) for
// odd n, where Pf_i(M_L) = (-1)^i Pf of the skew part with row/column i removed.
inline Polynomial p_lambda(std::size_t n) {
  detail::require(n >= 1 && n % 2 == 1, "plambda: n must be odd");
  const std::size_t nv = n * n;
  PolyMatrix sym(n, nv), skew(n, nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial xij = Polynomial::variable(nv, i * n + j, Scalar(1, 2));
      Polynomial xji = Polynomial::variable(nv, j * n + i, Scalar(1, 2));
      sym.set(i, j, add(xij, xji));
      skew.set(i, j, sub(xij, xji));
    }
  std::vector<Polynomial> pf(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < n; ++t)
      if (t != i) idx.push_back(t);
    pf[i] = pfaffian(skew, std::move(idx));
    if (i % 2) pf[i] = -pf[i];
  }
  PolynomialAccumulator acc(nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc.add(mul(sym(i, j), mul(pf[i], pf[j])));
  return acc.finish();
}

// Discriminant of the binary cubic, as a quartic in its four coefficients.
inline Polynomial discriminant() {
  return Polynomial::from_terms(4, {{Monomial{2, 0, 0, 2}, Scalar(27)},
                                    {Monomial{1, 0, 3, 0}, Scalar(4)},
                                    {Monomial{0, 3, 0, 1}, Scalar(4)},
                                    {Monomial{0, 2, 2, 0}, Scalar(-1)},
                                    {Monomial{1, 1, 1, 1}, Scalar(-18)}});
}

struct Family {
  std::string name;
  std::string params;
  std::string summary;
};

inline const std::vector<Family>& families() {
  static const std::vector<Family> list = {
      {"det", "n", "n x n determinant"},
      {"perm", "n", "n x n permanent"},
      {"elementary", "k n", "elementary symmetric e^k_n"},
      {"chow", "n", "x1 x2 ... xn"},
      {"fermat", "d n", "x1^d + ... + xn^d"},
      {"power", "d v", "x1^d in v variables"},
      {"sumprod", "n m", "sum-product S^n_m"},
      {"imm", "k n", "trace of a product of n k x k matrices"},
      {"pascal", "m", "four-factor Pascal determinant"},
      {"plambda", "n", "boundary polynomial P_Lambda, n odd"},
      {"discriminant", "", "discriminant of the binary cubic"},
  };
  return list;
}

inline Polynomial make(std::string_view name, std::span<const long> params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw DomainError(std::string(name) + " takes " + std::to_string(count) + " parameter(s), got " +
                        std::to_string(params.size()));
    }
    for (long p : params)
      if (p < 0) throw DomainError(std::string(name) + ": parameters must be non-negative");
  };
  auto u = [&](std::size_t i) { return static_cast<std::size_t>(params[i]); };
  if (name == "det") return want(1), det(u(0));
  if (name == "perm") return want(1), perm(u(0));
  if (name == "elementary" || name == "e") return want(2), elementary(u(0), u(1));
  if (name == "chow") return want(1), chow(u(0));
  if (name == "fermat") return want(2), fermat(static_cast<unsigned>(u(0)), u(1));
  if (name == "power") return want(2), power(static_cast<unsigned>(u(0)), u(1));
  if (name == "sumprod") return want(2), sum_product(u(0), u(1));
  if (name == "imm") return want(2), imm(u(0), u(1));
  if (name == "pascal") return want(1), pascal_det(u(0));
  if (name == "plambda") return want(1), p_lambda(u(0));
  if (name == "discriminant") return want(0), discriminant();
  throw DomainError("unknown polynomial family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Decompositions

struct WaringTerm {
  Scalar coeff;
  std::vector<Scalar> form;
};

// sum_t coeff_t * (form_t . x)^degree
struct WaringDecomposition {
  std::size_t num_vars = 0;
  unsigned degree = 0;
  std::vector<WaringTerm> terms;
};

struct ChowTerm {
  Scalar coeff;
  std::vector<std::vector<Scalar>> forms;
};

// sum_t coeff_t * prod_i (forms_{t,i} . x)
struct ChowDecomposition {
  std::size_t num_vars = 0;
  std::vector<ChowTerm> terms;
};

// det_n of an n x n matrix of linear forms in the target variables plus one
// padding variable (the last index), claimed to equal l^{n-m} * target.
struct DetExpressionWitness {
  std::size_t n = 0;
  std::size_t num_source_vars = 0;
  std::vector<std::vector<Scalar>> entries;  // n*n row-major, each num_source_vars long
};

inline Polynomial linear_form(std::span<const Scalar> coeffs) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) terms.push_back({Monomial::variable(coeffs.size(), j), coeffs[j]});
  return Polynomial::from_terms(coeffs.size(), std::move(terms));
}

inline Polynomial expand(const WaringDecomposition& w) {
  PolynomialAccumulator acc(w.num_vars);
  for (const auto& t : w.terms) {
    if (t.form.size() != w.num_vars) throw DimensionError("waring term has the wrong number of coefficients");
    acc.add(pow(linear_form(t.form), w.degree), t.coeff);
  }
  return acc.finish();
}

inline Polynomial expand(const ChowDecomposition& c) {
  PolynomialAccumulator acc(c.num_vars);
  for (const auto& t : c.terms) {
    Polynomial prod = Polynomial::constant(c.num_vars, t.coeff);
    for (const auto& f : t.forms) {
      if (f.size() != c.num_vars) throw DimensionError("chow factor has the wrong number of coefficients");
      prod = mul(prod, linear_form(f));
    }
    acc.add(prod);
  }
  return acc.finish();
}

inline bool verify_waring(const WaringDecomposition& w, const Polynomial& target) {
  if (w.num_vars != target.num_vars()) throw DimensionError("verify_waring: variable counts differ");
  return expand(w) == target;
}

inline bool verify_chow(const ChowDecomposition& c, const Polynomial& target) {
  if (c.num_vars != target.num_vars()) throw DimensionError("verify_chow: variable counts differ");
  return expand(c) == target;
}

inline Polynomial expand(const DetExpressionWitness& w) {
  if (w.entries.size() != w.n * w.n) throw DimensionError("det witness needs n*n entries");
  PolyMatrix m(w.n, w.num_source_vars);
  for (std::size_t i = 0; i < w.n * w.n; ++i) {
    if (w.entries[i].size() != w.num_source_vars) throw DimensionError("det witness entry has the wrong length");
    m.set(i / w.n, i % w.n, linear_form(w.entries[i]));
  }
  return determinant(m);
}

inline bool verify_det_expression(const DetExpressionWitness& w, const Polynomial& target) {
  if (w.num_source_vars != target.num_vars() + 1) {
    throw DimensionError("verify_det_expression: witness must use the target's variables plus one padding variable");
  }
  if (!target.is_homogeneous() || target.is_zero()) return false;
  const unsigned m = *target.degree();
  if (w.n < m) return false;
  Polynomial padded = mul(target.extended(w.num_source_vars),
                          pow(Polynomial::variable(w.num_source_vars, target.num_vars()), w.n - m));
  return expand(w) == padded;
}

// perm_n = 2^{-n+1} sum_{eps, eps_1 = 1} prod_i sum_j eps_i eps_j x_{ij}.
// eps_2..eps_n run through {+1,-1} lexicographically (+1 first).
inline ChowDecomposition ryser_decomposition(std::size_t n) {
  detail::require(n >= 1, "ryser: n must be positive");
  ChowDecomposition c;
  c.num_vars = n * n;
  const Scalar coeff(1, Integer(1) << static_cast<unsigned>(n - 1));
  for (std::size_t code = 0; code < (std::size_t{1} << (n - 1)); ++code) {
    std::vector<int> eps(n, 1);
    for (std::size_t i = 1; i < n; ++i)
      if (code & (std::size_t{1} << (n - 1 - i))) eps[i] = -1;
    ChowTerm t{coeff, {}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Scalar> form(n * n, Scalar(0));
      for (std::size_t j = 0; j < n; ++j) form[i * n + j] = eps[i] * eps[j];
      t.forms.push_back(std::move(form));
    }
    c.terms.push_back(std::move(t));
  }
  return c;
}

// x_1...x_n = 1/(2^{n-1} n!) sum_{eps in {+-1}^{n-1}} eps_1...eps_{n-1}
//             (x_1 + eps_1 x_2 + ... + eps_{n-1} x_n)^n.
inline WaringDecomposition fischer_decomposition(std::size_t n) {
  detail::require(n >= 1, "fischer: n must be positive");
  WaringDecomposition w;
  w.num_vars = n;
  w.degree = static_cast<unsigned>(n);
  const Integer denom = (Integer(1) << static_cast<unsigned>(n - 1)) * factorial(n);
  for (std::size_t code = 0; code < (std::size_t{1} << (n - 1)); ++code) {
    std::vector<Scalar> form(n, Scalar(1));
    int sign = 1;
    for (std::size_t i = 1; i < n; ++i)
      if (code & (std::size_t{1} << (n - 1 - i))) {
        form[i] = -1;
        sign = -sign;
      }
    w.terms.push_back({ratio(Integer(sign), denom), std::move(form)});
  }
  return w;
}

// Solves the square system a x = b over the rationals.
inline std::vector<Scalar> solve(Matrix<Scalar> a, std::vector<Scalar> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve: shape mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw DomainError("solve: singular system");
    a.swap_rows(p, c);
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Scalar f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
  return b;
}

// Evaluation points for the Ben-Or construction: 1..m-1 and a last point
// chosen so that the elementary symmetric function e_k of all m points
// vanishes. That makes the (m+1) x m Vandermonde system consistent.
inline std::vector<Scalar> benor_points(std::size_t m, std::size_t k) {
  std::vector<Scalar> e(m + 1, Scalar(0));  // elementary symmetric of 1..m-1
  e[0] = 1;
  for (std::size_t u = 1; u < m; ++u)
    for (std::size_t j = u; j >= 1; --j) e[j] += e[j - 1] * Scalar(static_cast<long>(u));
  std::vector<Scalar> pts;
  for (std::size_t u = 1; u < m; ++u) pts.emplace_back(static_cast<long>(u));
  pts.push_back(-e[k] / e[k - 1]);
  return pts;
}

// l^{m-k} e^k_m as a combination of the m products g_u = prod_i (x_i + u l).
// Variable 0 is l, variable i is x_i.
inline ChowDecomposition benor_decomposition(std::size_t m, std::size_t k) {
  detail::require(m >= 1, "benor: m must be positive");
  detail::require(k >= 1 && k <= m, "benor: k must lie in [1, m]");
  const auto pts = benor_points(m, k);
  // g_u = sum_{j=0}^{m} u^{m-j} l^{m-j} e^j. Match coefficients of j = 1..m.
  Matrix<Scalar> a(m, m);
  std::vector<Scalar> rhs(m, Scalar(0));
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t t = 0; t < m; ++t) a(j - 1, t) = gct::pow(pts[t], static_cast<unsigned long>(m - j));
    rhs[j - 1] = (j == k) ? 1 : 0;
  }
  const auto coeffs = solve(a, rhs);
  ChowDecomposition c;
  c.num_vars = m + 1;
  for (std::size_t t = 0; t < m; ++t) {
    ChowTerm term{coeffs[t], {}};
    for (std::size_t i = 1; i <= m; ++i) {
      std::vector<Scalar> form(m + 1, Scalar(0));
      form[0] = pts[t];
      form[i] = 1;
      term.forms.push_back(std::move(form));
    }
    c.terms.push_back(std::move(term));
  }
  return c;
}

// l^{m-k} e^k_m with l as variable 0.
inline Polynomial padded_elementary(std::size_t m, std::size_t k) {
  Polynomial e = elementary(k, m);
  LinearSubstitution shift(m, m + 1);
  for (std::size_t i = 0; i < m; ++i) shift(i, i + 1) = 1;
  return mul(substitute(e, shift), pow(Polynomial::variable(m + 1, 0), static_cast<unsigned>(m - k)));
}

// Size of the homogeneous depth-three circuit for a sum of r products of n
// linear forms in w variables.
inline long chow_circuit_size(long r, long n, long w) {
  if (r < 1 || n < 1 || w < 0) throw DomainError("chow_circuit_size: need r, n >= 1 and w >= 0");
  return r + n * r * (1 + w);
}

// ---------------------------------------------------------------------------
// Witness files

using Witness = std::variant<WaringDecomposition, ChowDecomposition, DetExpressionWitness>;

namespace detail {

inline nlohmann::json vec_json(const std::vector<Scalar>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Scalar scalar_json(const nlohmann::json& j) {
  return j.is_string() ? parse_scalar(j.get<std::string>()) : Scalar(j.get<long>());
}

inline std::vector<Scalar> vec_from_json(const nlohmann::json& j) {
  std::vector<Scalar> v;
  for (const auto& x : j) v.push_back(scalar_json(x));
  return v;
}

}  // namespace detail

inline nlohmann::json to_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        nlohmann::json j;
        if constexpr (std::is_same_v<T, WaringDecomposition>) {
          j["kind"] = "waring";
          j["num_vars"] = x.num_vars;
          j["degree"] = x.degree;
          j["terms"] = nlohmann::json::array();
          for (const auto& t : x.terms)
            j["terms"].push_back({{"coeff", to_string(t.coeff)}, {"form", detail::vec_json(t.form)}});
        } else if constexpr (std::is_same_v<T, ChowDecomposition>) {
          j["kind"] = "chow";
          j["num_vars"] = x.num_vars;
          j["terms"] = nlohmann::json::array();
          for (const auto& t : x.terms) {
            nlohmann::json forms = nlohmann::json::array();
            for (const auto& f : t.forms) forms.push_back(detail::vec_json(f));
            j["terms"].push_back({{"coeff", to_string(t.coeff)}, {"forms", std::move(forms)}});
          }
        } else {
          j["kind"] = "det";
          j["n"] = x.n;
          j["num_source_vars"] = x.num_source_vars;
          j["entries"] = nlohmann::json::array();
          for (const auto& e : x.entries) j["entries"].push_back(detail::vec_json(e));
        }
        return j;
      },
      w);
}

inline Witness witness_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "waring") {
      WaringDecomposition w;
      w.num_vars = j.at("num_vars").get<std::size_t>();
      w.degree = j.at("degree").get<unsigned>();
      for (const auto& t : j.at("terms"))
        w.terms.push_back({detail::scalar_json(t.at("coeff")), detail::vec_from_json(t.at("form"))});
      return w;
    }
    if (kind == "chow") {
      ChowDecomposition c;
      c.num_vars = j.at("num_vars").get<std::size_t>();
      for (const auto& t : j.at("terms")) {
        ChowTerm term{t.contains("coeff") ? detail::scalar_json(t.at("coeff")) : Scalar(1), {}};
        for (const auto& f : t.at("forms")) term.forms.push_back(detail::vec_from_json(f));
        c.terms.push_back(std::move(term));
      }
      return c;
    }
    if (kind == "det") {
      DetExpressionWitness d;
      d.n = j.at("n").get<std::size_t>();
      d.num_source_vars = j.at("num_source_vars").get<std::size_t>();
      for (const auto& e : j.at("entries")) d.entries.push_back(detail::vec_from_json(e));
      return d;
    }
    throw FormatError("unknown witness kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed witness: ") + e.what());
  }
}

}  // namespace gct::zoo
