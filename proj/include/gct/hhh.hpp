#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/parallel.hpp"
#include "gct/polynomial.hpp"
#include "gct/reptheory.hpp"
#include "gct/scalar.hpp"

namespace gct {

struct HhhOptions {
  std::size_t max_dim = 200000;    // largest (weight) space attempted
  std::size_t exact_limit = 250;   // above this, ranks are taken modulo kHhhPrime
  std::size_t max_dense = 400000000;  // entries of a dense modular matrix
  unsigned threads = 1;
};

inline constexpr std::uint32_t kHhhPrime = 2147483629u;

// A basis element of S^d(S^n C^v): sorted indices into the degree-n monomials.
using MonomialMultiset = std::vector<std::uint32_t>;

// Matrix of h_{d,n}: S^d(S^n C^v) -> S^n(S^d C^v), optionally on one weight space.
// The image of domain[j] is sum over (i, c) in columns[j] of (c / scale[j]) codomain[i].
struct PlethysmMap {
  unsigned d = 0, n = 0, v = 0;
  std::optional<std::vector<unsigned>> weight;
  std::vector<Monomial> inner_domain;    // degree n in v variables
  std::vector<Monomial> inner_codomain;  // degree d in v variables
  std::vector<MonomialMultiset> domain;
  std::vector<MonomialMultiset> codomain;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> columns;
  std::vector<std::uint64_t> scale;

  Matrix<Scalar> matrix() const {
    Matrix<Scalar> m(codomain.size(), domain.size(), Scalar(0));
    for (std::size_t j = 0; j < domain.size(); ++j)
      for (const auto& [i, c] : columns[j]) m(i, j) = ratio(Integer(static_cast<unsigned long>(c)), Integer(static_cast<unsigned long>(scale[j])));
    return m;
  }
};

namespace detail {

inline std::string pack(const std::vector<std::uint32_t>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(std::uint32_t));
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("hhh: count overflow");
  return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("hhh: count overflow");
  return r;
}

// Multisets of `size` entries of `monos` whose exponents sum to `weight` (any sum if empty).
inline std::vector<MonomialMultiset> multisets(const std::vector<Monomial>& monos, unsigned size,
                                               const std::vector<unsigned>& weight, std::size_t cap) {
  std::vector<MonomialMultiset> out;
  MonomialMultiset cur;
  std::vector<long> left(weight.begin(), weight.end());
  const bool restricted = !weight.empty();
  auto rec = [&](auto&& self, std::uint32_t from, unsigned k) -> void {
    if (k == 0) {
      if (restricted && std::any_of(left.begin(), left.end(), [](long x) { return x != 0; })) return;
      if (out.size() == cap) throw CapacityError("hhh: space larger than " + std::to_string(cap));
      out.push_back(cur);
      return;
    }
    for (std::uint32_t i = from; i < monos.size(); ++i) {
      const auto& m = monos[i];
      if (restricted) {
        bool fits = true;
        for (std::size_t t = 0; t < left.size(); ++t) fits = fits && m[t] <= left[t];
        if (!fits) continue;
        for (std::size_t t = 0; t < left.size(); ++t) left[t] -= m[t];
      }
      cur.push_back(i);
      self(self, i, k - 1);
      cur.pop_back();
      if (restricted)
        for (std::size_t t = 0; t < left.size(); ++t) left[t] += m[t];
    }
  };
  rec(rec, 0, size);
  return out;
}

// Distinct words (ordered factorizations) of a monomial, flattened.
inline std::vector<std::uint8_t> words_of(const Monomial& m, std::size_t& count) {
  std::vector<std::uint8_t> letters;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (unsigned e = 0; e < m[i]; ++e) letters.push_back(static_cast<std::uint8_t>(i));
  std::vector<std::uint8_t> out;
  count = 0;
  do {
    out.insert(out.end(), letters.begin(), letters.end());
    ++count;
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

inline std::size_t orbit_size(const std::vector<unsigned>& w) {
  std::map<unsigned, unsigned> mult;
  for (auto x : w) ++mult[x];
  Integer r = factorial(w.size());
  for (const auto& [x, c] : mult) r /= factorial(c);
  return r.get_ui();
}

inline std::vector<unsigned> padded(const Partition& p, unsigned v) {
  std::vector<unsigned> w(p.begin(), p.end());
  w.resize(v, 0);
  return w;
}

}  // namespace detail

// Builds h_{d,n} on C^v, or its restriction to one weight space. Each domain
// multiset {m_1..m_d} maps to the average over ordered factorizations of every
// m_i of the product of the n column monomials, so that
//   h(l_1^n ... l_d^n) = (l_1 ... l_d)^n.
inline PlethysmMap build_hhh(unsigned d, unsigned n, unsigned v, std::optional<std::vector<unsigned>> weight = {},
                             const HhhOptions& opt = {}) {
  if (d == 0 || n == 0 || v == 0) throw DomainError("build_hhh: need d, n, v >= 1");
  if (n > 64) throw CapacityError("build_hhh: n > 64");
  if (weight) {
    if (weight->size() != v) throw DimensionError("build_hhh: weight must have v entries");
    unsigned long s = 0;
    for (auto x : *weight) s += x;
    if (s != static_cast<unsigned long>(d) * n) throw DomainError("build_hhh: weight entries must sum to d n");
  }
  // Column partial products are digits base d+1, one per variable.
  long double span = 1;
  for (unsigned i = 0; i < v; ++i) span *= d + 1;
  if (span > 1.8e19L) throw CapacityError("build_hhh: too many variables for packed columns");
  std::vector<std::uint64_t> place(v);
  for (unsigned i = 0; i < v; ++i) place[i] = i ? place[i - 1] * (d + 1) : 1;

  PlethysmMap h;
  h.d = d;
  h.n = n;
  h.v = v;
  h.weight = weight;
  h.inner_domain = monomials_of_degree(v, n);
  h.inner_codomain = monomials_of_degree(v, d);
  const std::vector<unsigned> w = weight ? *weight : std::vector<unsigned>{};
  h.domain = detail::multisets(h.inner_domain, d, w, opt.max_dim);
  h.codomain = detail::multisets(h.inner_codomain, n, w, opt.max_dim);

  std::unordered_map<std::uint64_t, std::uint32_t> code_to_z;
  for (std::uint32_t z = 0; z < h.inner_codomain.size(); ++z) {
    std::uint64_t code = 0;
    for (unsigned i = 0; i < v; ++i) code += h.inner_codomain[z][i] * place[i];
    code_to_z.emplace(code, z);
  }
  std::unordered_map<std::string, std::uint32_t> row_of;
  for (std::uint32_t i = 0; i < h.codomain.size(); ++i) row_of.emplace(detail::pack(h.codomain[i]), i);

  std::vector<std::vector<std::uint8_t>> words(h.inner_domain.size());
  std::vector<std::size_t> word_count(h.inner_domain.size());
  std::vector<bool> have(h.inner_domain.size(), false);
  for (const auto& mset : h.domain)
    for (auto y : mset)
      if (!have[y]) {
        words[y] = detail::words_of(h.inner_domain[y], word_count[y]);
        have[y] = true;
      }

  h.columns.resize(h.domain.size());
  h.scale.resize(h.domain.size());
  parallel_for(h.domain.size(), opt.threads, [&](std::size_t j) {
    const auto& mset = h.domain[j];
    using State = std::vector<std::uint64_t>;
    auto key_of = [&](const State& s) { return std::string(reinterpret_cast<const char*>(s.data()), s.size() * 8); };
    std::unordered_map<std::string, std::pair<State, std::uint64_t>> cur, next;
    State start(n, 0);
    cur.emplace(key_of(start), std::make_pair(start, std::uint64_t{1}));
    std::uint64_t scale = 1;
    State s(n);
    for (auto y : mset) {
      scale = detail::checked_mul(scale, word_count[y]);
      next.clear();
      const auto& ws = words[y];
      for (const auto& [k, entry] : cur) {
        const auto& [state, count] = entry;
        for (std::size_t off = 0; off < ws.size(); off += n) {
          for (unsigned c = 0; c < n; ++c) s[c] = state[c] + place[ws[off + c]];
          std::sort(s.begin(), s.end());
          auto [it, fresh] = next.try_emplace(key_of(s), s, 0);
          it->second.second = detail::checked_add(it->second.second, count);
        }
      }
      std::swap(cur, next);
    }
    std::vector<std::pair<std::uint32_t, std::uint64_t>> col;
    std::vector<std::uint32_t> zs(n);
    for (const auto& [k, entry] : cur) {
      for (unsigned c = 0; c < n; ++c) zs[c] = code_to_z.at(entry.first[c]);
      std::sort(zs.begin(), zs.end());
      auto it = row_of.find(detail::pack(zs));
      if (it == row_of.end()) throw Error("build_hhh: image outside the codomain basis");
      col.emplace_back(it->second, entry.second);
    }
    std::sort(col.begin(), col.end());
    h.columns[j] = std::move(col);
    h.scale[j] = scale;
  });
  return h;
}

// Applies h to an element of S^d(S^n C^v) written as a polynomial in one
// variable per degree-n monomial; the result uses one variable per degree-d monomial.
inline Polynomial apply(const PlethysmMap& h, const Polynomial& x) {
  if (x.num_vars() != h.inner_domain.size()) throw DimensionError("apply: wrong number of variables");
  std::unordered_map<std::string, std::size_t> col_of;
  for (std::size_t j = 0; j < h.domain.size(); ++j) col_of.emplace(detail::pack(h.domain[j]), j);
  PolynomialAccumulator acc(h.inner_codomain.size());
  for (const auto& t : x.terms()) {
    MonomialMultiset key;
    for (std::size_t y = 0; y < t.monomial.size(); ++y)
      for (unsigned e = 0; e < t.monomial[y]; ++e) key.push_back(static_cast<std::uint32_t>(y));
    auto it = col_of.find(detail::pack(key));
    if (it == col_of.end()) throw DomainError("apply: term outside the domain of the map");
    const std::size_t j = it->second;
    for (const auto& [i, c] : h.columns[j]) {
      Monomial out(h.inner_codomain.size());
      for (auto z : h.codomain[i]) out.set(z, out[z] + 1u);
      acc.add(out, t.coeff * ratio(Integer(static_cast<unsigned long>(c)), Integer(static_cast<unsigned long>(h.scale[j]))));
    }
  }
  return acc.finish();
}

inline RankCertificate hhh_rank(const PlethysmMap& h, const HhhOptions& opt = {}) {
  const std::size_t rows = h.domain.size(), cols = h.codomain.size();
  // Rows are images of the rescaled domain basis, so entries are integer counts.
  if (std::min(rows, cols) <= opt.exact_limit) {
    Matrix<Integer> a(rows, cols, Integer(0));
    for (std::size_t j = 0; j < rows; ++j)
      for (const auto& [i, c] : h.columns[j]) a(j, i) = Integer(static_cast<unsigned long>(c));
    return exact_rank(std::move(a));
  }
  if (static_cast<long double>(rows) * cols > opt.max_dense)
    throw CapacityError("hhh_rank: " + std::to_string(rows) + " x " + std::to_string(cols) + " is too large");
  auto start = std::chrono::steady_clock::now();
  std::vector<std::uint32_t> a(rows * cols, 0);
  for (std::size_t j = 0; j < rows; ++j)
    for (const auto& [i, c] : h.columns[j]) a[j * cols + i] = static_cast<std::uint32_t>(c % kHhhPrime);
  RankCertificate cert;
  cert.rows = rows;
  cert.cols = cols;
  cert.rank = modular_rank(a, rows, cols, kHhhPrime);
  cert.method = "modular:" + std::to_string(kHhhPrime);
  cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

// Rank of h_{d,n} on all of S^d(S^n C^v), assembled from the dominant weight
// spaces; permuting variables carries one weight space onto another.
inline RankCertificate hhh_rank(unsigned d, unsigned n, unsigned v, const HhhOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  auto weights = partitions(d * n, v);
  std::vector<RankCertificate> parts(weights.size());
  HhhOptions inner = opt;
  inner.threads = 1;
  parallel_for(weights.size(), opt.threads, [&](std::size_t i) {
    parts[i] = hhh_rank(build_hhh(d, n, v, detail::padded(weights[i], v), inner), inner);
  });
  RankCertificate cert;
  cert.method = "bareiss";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::size_t k = detail::orbit_size(detail::padded(weights[i], v));
    cert.rank += k * parts[i].rank;
    cert.rows += k * parts[i].rows;
    cert.cols += k * parts[i].cols;
    if (parts[i].method != "bareiss") cert.method = parts[i].method;
  }
  cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

struct KernelCharacter {
  unsigned d = 0, n = 0, v = 0;
  std::map<Partition, Integer> multiplicities;          // nonzero a_pi that were resolved
  std::map<Partition, std::size_t> weight_kernel_dims;  // computed dominant weights
  std::vector<Partition> skipped;                       // weights beyond capacity
  std::vector<Partition> unresolved;                    // a_pi not determined
  std::string method = "bareiss";
  bool complete() const { return skipped.empty(); }
};

// Decomposes ker h_{d,n} on C^v: K_lambda = dim ker on weight lambda equals
// sum_pi a_pi Kostka(pi, lambda), solved from the top of the dominance order.
// With `only_above`, weights not dominating one of those partitions are left out.
inline KernelCharacter kernel_character(unsigned d, unsigned n, unsigned v, const HhhOptions& opt = {},
                                        const std::vector<Partition>& only_above = {}) {
  KernelCharacter kc;
  kc.d = d;
  kc.n = n;
  kc.v = v;
  auto all = partitions(d * n, v);  // decreasing lex refines dominance
  WeightMultisetCounter counter(d, n);
  auto over_cap = [&](const Partition& p) { return counter(p) > static_cast<unsigned long>(opt.max_dim); };
  std::vector<Partition> weights;
  for (const auto& p : all) {
    bool wanted = only_above.empty();
    for (const auto& t : only_above) wanted = wanted || dominates(p, t);
    if (!wanted) continue;
    if (over_cap(p)) kc.skipped.push_back(p);
    else weights.push_back(p);
  }
  // A target is only worth computing if nothing above it is over capacity.
  if (!only_above.empty()) {
    std::vector<Partition> reachable;
    for (const auto& t : only_above) {
      bool ok = true;
      for (const auto& s : kc.skipped) ok = ok && !dominates(s, t);
      if (ok) reachable.push_back(t);
      else kc.unresolved.push_back(t);
    }
    std::erase_if(weights, [&](const Partition& p) {
      return std::none_of(reachable.begin(), reachable.end(), [&](const Partition& t) { return dominates(p, t); });
    });
  }
  std::vector<std::optional<std::size_t>> kernel(weights.size());
  std::vector<std::string> methods(weights.size());
  HhhOptions inner = opt;
  inner.threads = 1;
  parallel_for(weights.size(), opt.threads, [&](std::size_t i) {
    try {
      auto h = build_hhh(d, n, v, detail::padded(weights[i], v), inner);
      auto r = hhh_rank(h, inner);
      kernel[i] = h.domain.size() - r.rank;
      methods[i] = r.method;
    } catch (const CapacityError&) {
    }
  });
  std::map<Partition, std::optional<Integer>> a;
  for (const auto& s : kc.skipped) a[s] = std::nullopt;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& lambda = weights[i];
    if (!kernel[i]) {
      kc.skipped.push_back(lambda);
      a[lambda] = std::nullopt;
      continue;
    }
    kc.weight_kernel_dims[lambda] = *kernel[i];
    if (methods[i] != "bareiss") kc.method = methods[i];
    Integer rest = static_cast<unsigned long>(*kernel[i]);
    bool known = true;
    for (const auto& [mu, am] : a) {
      if (mu == lambda || !dominates(mu, lambda)) continue;
      if (!am) {
        known = false;
        break;
      }
      if (*am != 0) rest -= *am * kostka(mu, lambda);
    }
    if (!known) {
      a[lambda] = std::nullopt;
      continue;
    }
    if (rest < 0) throw Error("kernel_character: negative multiplicity at " + to_string(lambda));
    a[lambda] = rest;
    if (rest != 0) kc.multiplicities[lambda] = rest;
  }
  if (only_above.empty())
    for (const auto& p : all)
      if (!a.at(p)) kc.unresolved.push_back(p);
  return kc;
}

// Values y_m = coeff_m(l_1...l_n) / #words(m) of the degree-n coordinates at l_1...l_n.
inline std::vector<Scalar> chow_point_coordinates(const PlethysmMap& h, const std::vector<std::vector<Scalar>>& forms) {
  if (forms.size() != h.n) throw DimensionError("chow point needs n linear forms");
  Polynomial q = Polynomial::constant(h.v, 1);
  for (const auto& f : forms) {
    if (f.size() != h.v) throw DimensionError("linear form of the wrong length");
    PolynomialAccumulator acc(h.v);
    for (std::size_t i = 0; i < h.v; ++i) acc.add(Monomial::variable(h.v, i), f[i]);
    q = mul(q, acc.finish());
  }
  std::vector<Scalar> y(h.inner_domain.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& m = h.inner_domain[i];
    std::vector<unsigned> parts(m.exponents().begin(), m.exponents().end());
    y[i] = q.coefficient(m) / Scalar(multinomial(std::span<const unsigned>(parts)));
  }
  return y;
}

// A domain vector read as a degree-d polynomial on S^n W*, evaluated at given coordinates.
inline Scalar evaluate_domain_vector(const PlethysmMap& h, const std::vector<Scalar>& vec, const std::vector<Scalar>& y) {
  if (vec.size() != h.domain.size()) throw DimensionError("domain vector of the wrong length");
  Scalar total = 0;
  for (std::size_t j = 0; j < vec.size(); ++j) {
    if (vec[j] == 0) continue;
    Scalar t = vec[j];
    for (auto m : h.domain[j]) t *= y[m];
    total += t;
  }
  return total;
}

// Kernel of h on one weight space, as vectors over the domain basis.
inline std::vector<std::vector<Scalar>> hhh_kernel(const PlethysmMap& h) { return nullspace(h.matrix()); }

namespace detail {

inline std::vector<std::vector<Scalar>> random_forms(std::mt19937_64& rng, unsigned count, unsigned v) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<std::vector<Scalar>> out(count, std::vector<Scalar>(v));
  for (auto& f : out)
    for (auto& c : f) c = ratio(Integer(num(rng)), Integer(den(rng)));
  return out;
}

}  // namespace detail

// Checks that every kernel vector of every dominant weight space vanishes at
// `trials` random points l_1...l_n of the Chow variety. Kernels of the other
// weight spaces are images of these under permutations of the variables.
inline bool kernel_vanishes_on_chow(unsigned d, unsigned n, unsigned v, unsigned trials, std::uint64_t seed = 1,
                                    const HhhOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  for (const auto& lambda : partitions(d * n, v)) {
    auto h = build_hhh(d, n, v, detail::padded(lambda, v), opt);
    auto kernel = hhh_kernel(h);
    if (kernel.empty()) continue;
    for (unsigned t = 0; t < trials; ++t) {
      auto y = chow_point_coordinates(h, detail::random_forms(rng, n, v));
      for (const auto& vec : kernel)
        if (evaluate_domain_vector(h, vec, y) != 0) return false;
    }
  }
  return true;
}

// (n-1)(w-1)((n-1) floor(binom(n+w-1, w-1) / w) - n)
inline Integer brion_bound(unsigned n, unsigned w) {
  if (n == 0 || w == 0) throw DomainError("brion_bound: need n, w >= 1");
  Integer b = binomial(n + w - 1, w - 1) / w;
  return Integer(n - 1) * Integer(w - 1) * (Integer(n - 1) * b - Integer(n));
}

}  // namespace gct
