#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/scalar.hpp"

namespace gct {

// Exponent vector over a fixed number of ambient variables.
class Monomial {
 public:
  using exponent_type = std::uint16_t;
  using storage = boost::container::small_vector<exponent_type, 16>;

  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  Monomial(std::initializer_list<unsigned> exps) {
    for (auto e : exps) push_back(e);
  }
  template <typename Int>
  explicit Monomial(std::span<const Int> exps) {
    for (auto e : exps) {
      if (e < 0) throw DomainError("negative exponent");
      push_back(static_cast<unsigned>(e));
    }
  }

  static Monomial variable(std::size_t num_vars, std::size_t i, unsigned power = 1) {
    Monomial m(num_vars);
    m.set(i, power);
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  exponent_type operator[](std::size_t i) const { return exps_[i]; }
  std::span<const exponent_type> exponents() const { return {exps_.data(), exps_.size()}; }

  void set(std::size_t i, unsigned e) {
    check_exponent(e);
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<exponent_type>(e);
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  // other / *this; requires divides(other).
  Monomial cofactor_in(const Monomial& other) const {
    Monomial q(other);
    for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= exps_[i];
    q.degree_ -= degree_;
    return q;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial c(a);
    for (std::size_t i = 0; i < b.exps_.size(); ++i) {
      c.check_exponent(static_cast<unsigned>(c.exps_[i]) + b.exps_[i]);
      c.exps_[i] = static_cast<exponent_type>(c.exps_[i] + b.exps_[i]);
    }
    c.degree_ += b.degree_;
    return c;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ exps_.size();
    for (auto e : exps_) h = (h ^ e) * 0x100000001b3ull;
    return h;
  }

 private:
  void push_back(unsigned e) {
    check_exponent(e);
    exps_.push_back(static_cast<exponent_type>(e));
    degree_ += e;
  }
  static void check_exponent(unsigned e) {
    if (e > std::numeric_limits<exponent_type>::max()) throw CapacityError("exponent overflow");
  }

  storage exps_;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Graded reverse lexicographic comparison: positive when a > b.
inline int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

// All monomials of degree d in num_vars variables, largest first in grevlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t num_vars, unsigned d) {
  std::vector<Monomial> out;
  if (num_vars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  Monomial cur(num_vars);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == num_vars) {
      cur.set(i, left);
      out.push_back(cur);
      cur.set(i, 0);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur.set(i, e);
      rec(i + 1, left - e);
    }
    cur.set(i, 0);
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

struct Term {
  Monomial monomial;
  Scalar coeff;
};

// Sparse multivariate polynomial with exact rational coefficients. Terms are
// kept sorted by decreasing grevlex order with no zero coefficients, so equal
// polynomials have identical representations.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Scalar& c) {
    Polynomial p(num_vars);
    if (c != 0) p.terms_.push_back({Monomial(num_vars), c});
    return p;
  }
  static Polynomial variable(std::size_t num_vars, std::size_t i, const Scalar& c = 1) {
    if (i >= num_vars) throw DimensionError("variable index out of range");
    return monomial(Monomial::variable(num_vars, i), c);
  }
  static Polynomial monomial(const Monomial& m, const Scalar& c = 1) {
    Polynomial p(m.size());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  // Collects like terms, drops zeros and sorts.
  static Polynomial from_terms(std::size_t num_vars, std::vector<Term> terms);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Largest total degree of a term; nullopt for the zero polynomial.
  std::optional<unsigned> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().monomial.degree();  // grevlex is graded
  }
  bool is_homogeneous() const {
    return terms_.empty() || terms_.front().monomial.degree() == terms_.back().monomial.degree();
  }
  const Term& leading_term() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    return terms_.front();
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
      return grevlex_compare(t.monomial, key) > 0;
    });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return Scalar(0);
  }

  Scalar evaluate(std::span<const Scalar> point) const {
    if (point.size() != num_vars_) throw DimensionError("evaluation point has the wrong length");
    Scalar total = 0;
    for (const auto& t : terms_) {
      Scalar v = t.coeff;
      for (std::size_t i = 0; i < num_vars_ && v != 0; ++i)
        if (t.monomial[i]) v *= gct::pow(point[i], t.monomial[i]);
      total += v;
    }
    return total;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= num_vars_) throw DimensionError("derivative variable out of range");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      unsigned e = t.monomial[var];
      if (e == 0) continue;
      Monomial m = t.monomial;
      m.set(var, e - 1);
      out.push_back({std::move(m), t.coeff * e});
    }
    // Differentiation can merge terms only if distinct monomials collide,
    // which cannot happen; order may change, so sort.
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return grevlex_compare(a.monomial, b.monomial) > 0; });
    Polynomial p(num_vars_);
    p.terms_ = std::move(out);
    return p;
  }

  // Same polynomial viewed in a larger ambient space; new variables appended.
  Polynomial extended(std::size_t num_vars) const {
    if (num_vars < num_vars_) throw DimensionError("cannot shrink the variable space");
    Polynomial p(num_vars);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(num_vars);
      for (std::size_t i = 0; i < num_vars_; ++i) m.set(i, t.monomial[i]);
      p.terms_.push_back({std::move(m), t.coeff});
    }
    return p;
  }

  Polynomial& operator*=(const Scalar& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
  }
  Polynomial operator-() const {
    Polynomial p(*this);
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars_ != b.num_vars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }

 private:
  friend class PolynomialAccumulator;
  friend Polynomial add(const Polynomial&, const Polynomial&, const Scalar&);

  std::size_t num_vars_ = 0;
  std::vector<Term> terms_;
};

// Hash-based sum of many terms, finalized into a canonical Polynomial.
class PolynomialAccumulator {
 public:
  explicit PolynomialAccumulator(std::size_t num_vars, std::size_t reserve = 0) : num_vars_(num_vars) {
    if (reserve) acc_.reserve(reserve);
  }
  void add(const Monomial& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) it->second += c;
  }
  void add(const Polynomial& p, const Scalar& scale = 1) {
    if (p.num_vars() != num_vars_) throw DimensionError("accumulator: mismatched variable counts");
    for (const auto& t : p.terms()) add(t.monomial, t.coeff * scale);
  }
  Polynomial finish() {
    Polynomial p(num_vars_);
    p.terms_.reserve(acc_.size());
    for (auto& [m, c] : acc_)
      if (c != 0) p.terms_.push_back({m, std::move(c)});
    acc_.clear();
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return grevlex_compare(a.monomial, b.monomial) > 0; });
    return p;
  }

 private:
  std::size_t num_vars_;
  std::unordered_map<Monomial, Scalar, MonomialHash> acc_;
};

inline Polynomial Polynomial::from_terms(std::size_t num_vars, std::vector<Term> terms) {
  PolynomialAccumulator acc(num_vars, terms.size());
  for (auto& t : terms) {
    if (t.monomial.size() != num_vars) throw DimensionError("term has the wrong number of exponents");
    acc.add(t.monomial, t.coeff);
  }
  return acc.finish();
}

inline void check_same_space(const Polynomial& p, const Polynomial& q, const char* op) {
  if (p.num_vars() != q.num_vars()) {
    throw DimensionError(std::string(op) + ": polynomials live in " + std::to_string(p.num_vars()) + " and " +
                         std::to_string(q.num_vars()) + " variables");
  }
}

// p + scale * q by merging the sorted term lists.
inline Polynomial add(const Polynomial& p, const Polynomial& q, const Scalar& scale) {
  check_same_space(p, q, "add");
  Polynomial r(p.num_vars());
  if (scale == 0) return p;
  auto& out = r.terms_;
  out.reserve(p.size() + q.size());
  auto i = p.terms().begin(), ie = p.terms().end();
  auto j = q.terms().begin(), je = q.terms().end();
  while (i != ie || j != je) {
    int c = (i == ie) ? -1 : (j == je) ? 1 : grevlex_compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back({j->monomial, j->coeff * scale});
      ++j;
    } else {
      Scalar s = i->coeff + j->coeff * scale;
      if (s != 0) out.push_back({i->monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return add(p, q, Scalar(1)); }
inline Polynomial sub(const Polynomial& p, const Polynomial& q) { return add(p, q, Scalar(-1)); }

inline Polynomial mul(const Polynomial& p, const Polynomial& q) {
  check_same_space(p, q, "mul");
  if (p.is_zero() || q.is_zero()) return Polynomial(p.num_vars());
  PolynomialAccumulator acc(p.num_vars(), std::min<std::size_t>(p.size() * q.size(), 1u << 22));
  for (const auto& a : p.terms())
    for (const auto& b : q.terms()) acc.add(a.monomial * b.monomial, a.coeff * b.coeff);
  return acc.finish();
}

inline Polynomial scale(const Polynomial& p, const Scalar& c) {
  Polynomial r(p);
  r *= c;
  return r;
}

inline Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result = Polynomial::constant(p.num_vars(), 1);
  Polynomial base = p;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(const Scalar& c, const Polynomial& p) { return scale(p, c); }

// Each source variable x_i is replaced by the linear form sum_j m(i, j) y_j
// in the target variables.
class LinearSubstitution {
 public:
  LinearSubstitution(std::size_t source_vars, std::size_t target_vars)
      : matrix_(source_vars, target_vars, Scalar(0)) {}
  explicit LinearSubstitution(Matrix<Scalar> m) : matrix_(std::move(m)) {}

  static LinearSubstitution identity(std::size_t n) { return LinearSubstitution(Matrix<Scalar>::identity(n)); }

  std::size_t source_vars() const { return matrix_.rows(); }
  std::size_t target_vars() const { return matrix_.cols(); }
  const Matrix<Scalar>& matrix() const { return matrix_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return matrix_(i, j); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

  Polynomial form(std::size_t i) const {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < target_vars(); ++j)
      if (matrix_(i, j) != 0) terms.push_back({Monomial::variable(target_vars(), j), matrix_(i, j)});
    return Polynomial::from_terms(target_vars(), std::move(terms));
  }

  // Substituting by *this and then by h equals substituting by then(h).
  LinearSubstitution then(const LinearSubstitution& h) const {
    if (target_vars() != h.source_vars()) throw DimensionError("cannot compose substitutions");
    return LinearSubstitution(matrix_ * h.matrix_);
  }

 private:
  Matrix<Scalar> matrix_;
};

inline Polynomial substitute(const Polynomial& p, const LinearSubstitution& s) {
  if (p.num_vars() != s.source_vars()) {
    throw DimensionError("substitute: polynomial has " + std::to_string(p.num_vars()) +
                         " variables, substitution expects " + std::to_string(s.source_vars()));
  }
  const std::size_t nv = s.target_vars();
  // powers[i][e] = (form_i)^e, filled lazily.
  std::vector<std::vector<Polynomial>> powers(p.num_vars());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& pw = powers[i];
    if (pw.empty()) {
      pw.push_back(Polynomial::constant(nv, 1));
      pw.push_back(s.form(i));
    }
    while (pw.size() <= e) pw.push_back(mul(pw.back(), pw[1]));
    return pw[e];
  };
  PolynomialAccumulator acc(nv);
  for (const auto& t : p.terms()) {
    Polynomial prod = Polynomial::constant(nv, t.coeff);
    for (std::size_t i = 0; i < p.num_vars() && !prod.is_zero(); ++i)
      if (t.monomial[i]) prod = mul(prod, power(i, t.monomial[i]));
    acc.add(prod);
  }
  return acc.finish();
}

// prod_i t_i! / (t_i - m_i)!: the scalar produced by d^m applied to x^t.
inline Integer falling_factor(const Monomial& m, const Monomial& t) {
  Integer f = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (unsigned k = 0; k < m[i]; ++k) f *= static_cast<unsigned long>(t[i] - k);
  return f;
}

// Applies op as a constant-coefficient differential operator (each variable
// read as the plain partial derivative in that variable) to target.
inline Polynomial apply_diff(const Polynomial& op, const Polynomial& target) {
  if (op.num_vars() != target.num_vars()) {
    throw DimensionError("apply_diff: operator has " + std::to_string(op.num_vars()) + " variables, target has " +
                         std::to_string(target.num_vars()));
  }
  PolynomialAccumulator acc(target.num_vars());
  for (const auto& o : op.terms())
    for (const auto& t : target.terms()) {
      if (!o.monomial.divides(t.monomial)) continue;
      acc.add(o.monomial.cofactor_in(t.monomial), o.coeff * t.coeff * falling_factor(o.monomial, t.monomial));
    }
  return acc.finish();
}

// Full pairing of equal-degree op and target; the constant term of
// apply_diff(op, target) computed without materializing other terms.
inline Scalar pairing(const Polynomial& op, const Polynomial& target) {
  check_same_space(op, target, "pairing");
  Scalar total = 0;
  auto i = op.terms().begin(), ie = op.terms().end();
  auto j = target.terms().begin(), je = target.terms().end();
  while (i != ie && j != je) {
    int c = grevlex_compare(i->monomial, j->monomial);
    if (c > 0) {
      ++i;
    } else if (c < 0) {
      ++j;
    } else {
      Integer f = 1;
      for (auto e : i->monomial.exponents()) f *= factorial(e);
      total += i->coeff * j->coeff * f;
      ++i;
      ++j;
    }
  }
  return total;
}

}  // namespace gct
