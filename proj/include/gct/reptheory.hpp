#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gct/error.hpp"
#include "gct/parallel.hpp"
#include "gct/scalar.hpp"

namespace gct {

// Weakly decreasing positive parts.
using Partition = std::vector<unsigned>;

inline unsigned size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0u); }

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) return false;
    if (i && p[i] > p[i - 1]) return false;
  }
  return true;
}

inline void check_partition(const Partition& p) {
  if (!is_partition(p)) throw DomainError("not a partition (parts must be positive and weakly decreasing)");
}

// "9,9,2" or "9^2,2^6"; the empty string and "0" give the empty partition.
inline Partition parse_partition(std::string_view text) {
  Partition p;
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '(' || c == ')'; }), s.end());
  if (s.empty() || s == "0") return p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t caret = item.find('^');
    try {
      std::size_t used = 0;
      unsigned long part = std::stoul(item.substr(0, caret), &used);
      if (used != (caret == std::string::npos ? item.size() : caret)) throw FormatError("");
      unsigned long reps = 1;
      if (caret != std::string::npos) {
        reps = std::stoul(item.substr(caret + 1), &used);
        if (used != item.size() - caret - 1) throw FormatError("");
      }
      if (part > 10000 || reps > 10000) throw FormatError("");
      for (unsigned long r = 0; r < reps; ++r) p.push_back(static_cast<unsigned>(part));
    } catch (const std::exception&) {
      throw FormatError("malformed partition '" + std::string(text) + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (!is_partition(p)) throw FormatError("'" + std::string(text) + "' is not weakly decreasing");
  return p;
}

inline std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

// All partitions of d with at most max_len parts, each at most max_part, in
// decreasing lexicographic order.
inline std::vector<Partition> partitions(unsigned d, unsigned max_len = ~0u, unsigned max_part = ~0u) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, unsigned left, unsigned cap) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (cur.size() == max_len) return;
    for (unsigned part = std::min(left, cap); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, d, std::min(d, max_part));
  return out;
}

inline bool dominates(const Partition& a, const Partition& b) {
  unsigned sa = 0, sb = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa < sb) return false;
  }
  return sa == sb;
}

inline Partition conjugate(const Partition& p) {
  Partition c;
  for (unsigned j = 0; !p.empty() && j < p[0]; ++j) {
    unsigned len = 0;
    while (len < p.size() && p[len] > j) ++len;
    c.push_back(len);
  }
  return c;
}

// Order of the centralizer of a permutation of cycle type rho.
inline Integer centralizer_size(const Partition& rho) {
  Integer z = 1;
  std::map<unsigned, unsigned long> mult;
  for (auto r : rho) ++mult[r];
  for (auto [r, m] : mult) z *= pow(Integer(r), m) * factorial(m);
  return z;
}

inline Integer class_size(const Partition& rho) { return factorial(size(rho)) / centralizer_size(rho); }

inline int cycle_sign(const Partition& rho) {
  unsigned even = 0;
  for (auto r : rho) even += (r % 2 == 0);
  return even % 2 ? -1 : 1;
}

// Cycle type of sigma^2: an odd cycle stays, a 2m-cycle splits in two m-cycles.
inline Partition square_cycle_type(const Partition& rho) {
  Partition out;
  for (auto r : rho) {
    if (r % 2) {
      out.push_back(r);
    } else {
      out.push_back(r / 2);
      out.push_back(r / 2);
    }
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline Integer hook_length_dimension(const Partition& p) {
  check_partition(p);
  Partition c = conjugate(p);
  Integer hooks = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (unsigned j = 0; j < p[i]; ++j) hooks *= (p[i] - j) + (c[j] - i) - 1;
  return factorial(size(p)) / hooks;
}

// dim S_pi C^k by the hook-content formula.
inline Integer gl_dimension(const Partition& p, unsigned k) {
  check_partition(p);
  if (p.size() > k) return 0;
  Partition c = conjugate(p);
  Scalar dim = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (unsigned j = 0; j < p[i]; ++j) {
      long content = static_cast<long>(j) - static_cast<long>(i);
      long hook = static_cast<long>((p[i] - j) + (c[j] - i) - 1);
      dim *= ratio(Integer(static_cast<long>(k) + content), Integer(hook));
    }
  return dim.get_num();
}

namespace detail {

inline std::string cache_key(const Partition& a, const Partition& b) {
  std::string k;
  k.reserve(2 * (a.size() + b.size()) + 2);
  for (auto x : a) k.push_back(static_cast<char>(x & 0xff)), k.push_back(static_cast<char>(x >> 8));
  k.push_back('\xff');
  k.push_back('\xff');
  for (auto x : b) k.push_back(static_cast<char>(x & 0xff)), k.push_back(static_cast<char>(x >> 8));
  return k;
}

// Memo table guarded by a reader/writer lock.
class IntegerCache {
 public:
  std::optional<Integer> find(const std::string& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void store(std::string key, const Integer& value) {
    std::unique_lock lock(mutex_);
    table_.emplace(std::move(key), value);
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Integer> table_;
};

inline IntegerCache& character_cache() {
  static IntegerCache cache;
  return cache;
}

inline IntegerCache& kostka_cache() {
  static IntegerCache cache;
  return cache;
}

// Murnaghan-Nakayama on beta-sets; rho_rest is consumed from the front.
inline Integer mn_character(const Partition& lambda, const Partition& rho_rest) {
  if (rho_rest.empty()) return lambda.empty() ? Integer(1) : Integer(0);
  std::string key = cache_key(lambda, rho_rest);
  if (auto hit = character_cache().find(key)) return *hit;

  const unsigned r = rho_rest.front();
  Partition tail(rho_rest.begin() + 1, rho_rest.end());
  const std::size_t len = lambda.size();
  std::vector<int> beta(len);
  for (std::size_t i = 0; i < len; ++i) beta[i] = static_cast<int>(lambda[i] + (len - 1 - i));
  Integer total = 0;
  for (std::size_t i = 0; i < len; ++i) {
    int target = beta[i] - static_cast<int>(r);
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int b : beta) between += (b > target && b < beta[i]);
    std::vector<int> nb = beta;
    nb[i] = target;
    std::sort(nb.rbegin(), nb.rend());
    Partition mu;
    for (std::size_t t = 0; t < len; ++t) {
      int part = nb[t] - static_cast<int>(len - 1 - t);
      if (part > 0) mu.push_back(static_cast<unsigned>(part));
    }
    Integer sub = mn_character(mu, tail);
    if (between % 2) total -= sub;
    else total += sub;
  }
  character_cache().store(std::move(key), total);
  return total;
}

}  // namespace detail

// chi_lambda evaluated on the class of cycle type rho.
inline Integer character(const Partition& lambda, Partition rho) {
  check_partition(lambda);
  std::sort(rho.rbegin(), rho.rend());
  while (!rho.empty() && rho.back() == 0) rho.pop_back();
  if (size(lambda) != size(rho)) throw DimensionError("character: |lambda| != |rho|");
  return detail::mn_character(lambda, rho);
}

using ClassFunction = std::map<Partition, Integer>;

inline ClassFunction character(const Partition& lambda) {
  ClassFunction f;
  for (const auto& rho : partitions(size(lambda))) f.emplace(rho, character(lambda, rho));
  return f;
}

// Number of semistandard tableaux of shape lambda and content mu (any order).
inline Integer kostka(const Partition& lambda, Partition mu) {
  check_partition(lambda);
  mu.erase(std::remove(mu.begin(), mu.end(), 0u), mu.end());
  std::sort(mu.rbegin(), mu.rend());
  if (size(lambda) != size(mu)) return 0;
  if (mu.empty()) return 1;
  if (!dominates(lambda, mu)) return 0;
  std::string key = detail::cache_key(lambda, mu);
  if (auto hit = detail::kostka_cache().find(key)) return *hit;
  // Remove a horizontal strip of size mu.back() holding the largest entry.
  const unsigned strip = mu.back();
  Partition rest(mu.begin(), mu.end() - 1);
  Integer total = 0;
  Partition nu(lambda.size());
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == lambda.size()) {
      if (left) return;
      Partition shape;
      for (auto x : nu)
        if (x) shape.push_back(x);
      total += kostka(shape, rest);
      return;
    }
    unsigned lo = i + 1 < lambda.size() ? lambda[i + 1] : 0;
    for (unsigned v = lambda[i]; v + 1 > lo && lambda[i] - v <= left; --v) {
      nu[i] = v;
      self(self, i + 1, left - (lambda[i] - v));
      if (v == 0) break;
    }
  };
  rec(rec, 0, strip);
  detail::kostka_cache().store(std::move(key), total);
  return total;
}

namespace detail {

inline void check_same_size(const std::vector<const Partition*>& ps, const char* op) {
  for (auto* p : ps) check_partition(*p);
  for (auto* p : ps)
    if (size(*p) != size(*ps.front())) throw DimensionError(std::string(op) + ": partitions of different sizes");
}

// sum over classes rho of f(rho) / z_rho, f integer valued; exact.
template <typename F>
Scalar class_average(unsigned d, unsigned threads, F&& f) {
  auto classes = partitions(d);
  std::vector<Scalar> parts(classes.size());
  parallel_for(classes.size(), threads, [&](std::size_t i) {
    parts[i] = Scalar(f(classes[i])) / Scalar(centralizer_size(classes[i]));
  });
  Scalar total = 0;
  for (const auto& p : parts) total += p;
  return total;
}

inline Integer as_integer(const Scalar& q, const char* what) {
  if (q.get_den() != 1) throw Error(std::string(what) + " is not an integer: " + q.get_str());
  return q.get_num();
}

}  // namespace detail

inline Integer kronecker(const Partition& pi, const Partition& mu, const Partition& nu, unsigned threads = 1) {
  detail::check_same_size({&pi, &mu, &nu}, "kronecker");
  Scalar s = detail::class_average(size(pi), threads, [&](const Partition& rho) -> Integer {
    return character(pi, rho) * character(mu, rho) * character(nu, rho);
  });
  return detail::as_integer(s, "kronecker coefficient");
}

// dim Hom([pi], S^2[mu]).
inline Integer symmetric_kronecker(const Partition& pi, const Partition& mu, unsigned threads = 1) {
  detail::check_same_size({&pi, &mu}, "symmetric_kronecker");
  Scalar s = detail::class_average(size(pi), threads, [&](const Partition& rho) -> Integer {
    Integer cm = character(mu, rho);
    return character(pi, rho) * (cm * cm + character(mu, square_cycle_type(rho)));
  });
  return detail::as_integer(s / 2, "symmetric kronecker coefficient");
}

// c^lambda_{mu nu} = <chi_lambda, Ind(chi_mu x chi_nu)>.
inline Integer littlewood_richardson(const Partition& lambda, const Partition& mu, const Partition& nu) {
  check_partition(lambda);
  check_partition(mu);
  check_partition(nu);
  if (size(lambda) != size(mu) + size(nu)) throw DimensionError("littlewood_richardson: |lambda| != |mu| + |nu|");
  Scalar total = 0;
  for (const auto& r1 : partitions(size(mu))) {
    Integer c1 = character(mu, r1);
    if (c1 == 0) continue;
    for (const auto& r2 : partitions(size(nu))) {
      Integer c2 = character(nu, r2);
      if (c2 == 0) continue;
      Partition joined = r1;
      joined.insert(joined.end(), r2.begin(), r2.end());
      total += Scalar(c1 * c2 * character(lambda, joined)) / Scalar(centralizer_size(r1) * centralizer_size(r2));
    }
  }
  return detail::as_integer(total, "Littlewood-Richardson coefficient");
}

// ---------------------------------------------------------------------------
// Plethysm

// Counts multisets of d monomials of degree n whose exponent vectors sum to a
// given weight, i.e. the dimension of a weight space of S^d(S^n C^k). Matrices
// with rows sorted lexicographically are built one column at a time; rows that
// still agree on every processed column form a block, and only the multiset
// of (residual degree, block size) pairs matters for what follows.
class WeightMultisetCounter {
 public:
  WeightMultisetCounter(unsigned d, unsigned n) : d_(d), n_(n) {
    if (d > 255 || n > 255) throw CapacityError("weight counting supports d, n <= 255");
  }

  Integer operator()(std::vector<unsigned> alpha) {
    alpha.erase(std::remove(alpha.begin(), alpha.end(), 0u), alpha.end());
    std::sort(alpha.rbegin(), alpha.rend());
    if (std::accumulate(alpha.begin(), alpha.end(), 0ul) != static_cast<unsigned long>(d_) * n_) return 0;
    if (d_ == 0) return 1;
    State start{{static_cast<std::uint8_t>(n_), static_cast<std::uint8_t>(d_)}};
    if (n_ == 0) start.clear();
    return count(alpha, 0, start);
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  using Block = std::pair<std::uint8_t, std::uint8_t>;  // (residual degree, rows)
  using State = std::vector<Block>;

  Integer count(const std::vector<unsigned>& alpha, std::size_t j, const State& state) {
    if (state.empty()) {
      for (std::size_t t = j; t < alpha.size(); ++t)
        if (alpha[t]) return 0;
      return 1;
    }
    if (j + 1 == alpha.size()) {
      unsigned long left = 0;
      for (auto [r, s] : state) left += static_cast<unsigned long>(r) * s;
      return left == alpha[j] ? 1 : 0;
    }
    if (j == alpha.size()) return 0;
    std::string key(reinterpret_cast<const char*>(state.data()), state.size() * sizeof(Block));
    for (std::size_t t = j; t < alpha.size(); ++t) key.push_back(static_cast<char>(alpha[t])), key.push_back(static_cast<char>(alpha[t] >> 8));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Integer total = 0;
    State next;
    auto rec = [&](auto&& self, std::size_t b, unsigned budget) -> void {
      if (b == state.size()) {
        if (budget) return;
        State sorted = next;
        std::sort(sorted.begin(), sorted.end());
        total += count(alpha, j + 1, sorted);
        return;
      }
      const auto [r, s] = state[b];
      // counts[e] rows of this block take the value e in column j.
      auto split = [&](auto&& inner, unsigned e, unsigned rows_left, unsigned used) -> void {
        if (e == 0) {
          if (rows_left && r > 0) next.push_back({r, static_cast<std::uint8_t>(rows_left)});
          self(self, b + 1, budget - used);
          if (rows_left && r > 0) next.pop_back();
          return;
        }
        for (unsigned c = 0; c <= rows_left && used + c * e <= budget; ++c) {
          if (c && r > e) next.push_back({static_cast<std::uint8_t>(r - e), static_cast<std::uint8_t>(c)});
          inner(inner, e - 1, rows_left - c, used + c * e);
          if (c && r > e) next.pop_back();
        }
      };
      split(split, r, s, 0);
    };
    rec(rec, 0, alpha[j]);
    memo_.emplace(std::move(key), total);
    return total;
  }

  unsigned d_, n_;
  std::unordered_map<std::string, Integer> memo_;
};

// Multiplicity of S_pi in S^d(S^n C^k), k >= l(pi), by weight counting and
// inversion of the unitriangular Kostka matrix, done through the alternant
//   mult(pi) = sum_{sigma in S_k} sgn(sigma) w(pi + delta - sigma(delta)).
inline Integer plethysm_mult(const Partition& pi, unsigned d, unsigned n) {
  check_partition(pi);
  if (size(pi) != d * n) throw DimensionError("plethysm_mult: |pi| != d n");
  const std::size_t k = pi.size();
  if (k == 0) return 1;
  if (k > 12) throw CapacityError("plethysm_mult: more than 12 parts");
  WeightMultisetCounter w(d, n);
  std::map<std::vector<unsigned>, Integer> seen;
  std::vector<unsigned> alpha(k);
  std::vector<bool> used(k, false);
  Integer total = 0;
  // Assign sigma(i) row by row, skipping choices that make alpha_i negative.
  // The parity of sigma is accumulated from the unused values below each pick.
  auto rec = [&](auto&& self, std::size_t i, unsigned parity) -> void {
    if (i == k) {
      std::vector<unsigned> key = alpha;
      std::sort(key.rbegin(), key.rend());
      auto it = seen.find(key);
      if (it == seen.end()) it = seen.emplace(key, w(key)).first;
      if (parity % 2) total -= it->second;
      else total += it->second;
      return;
    }
    unsigned smaller = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      long a = static_cast<long>(pi[i]) + static_cast<long>(k - 1 - i) - static_cast<long>(k - 1 - j);
      if (a >= 0) {
        used[j] = true;
        alpha[i] = static_cast<unsigned>(a);
        self(self, i + 1, parity + smaller);
        used[j] = false;
      }
      ++smaller;
    }
  };
  rec(rec, 0, 0);
  if (total < 0) throw Error("plethysm_mult: negative multiplicity, internal error");
  return total;
}

namespace detail {

using PowerSumExpansion = std::map<Partition, Scalar>;

inline PowerSumExpansion multiply(const PowerSumExpansion& a, const PowerSumExpansion& b) {
  PowerSumExpansion out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      Partition joined = pa;
      joined.insert(joined.end(), pb.begin(), pb.end());
      std::sort(joined.rbegin(), joined.rend());
      out[joined] += ca * cb;
    }
  return out;
}

}  // namespace detail

// h_d[h_n] = sum_{rho |- d} z_rho^{-1} prod_i p_{rho_i}[h_n] with
// p_r[h_n] = sum_{tau |- n} z_tau^{-1} p_{r tau}.
inline std::map<Partition, Scalar> plethysm_power_sum_expansion(unsigned d, unsigned n) {
  std::map<unsigned, detail::PowerSumExpansion> pr;
  auto p_of = [&](unsigned r) -> const detail::PowerSumExpansion& {
    auto it = pr.find(r);
    if (it != pr.end()) return it->second;
    detail::PowerSumExpansion e;
    for (const auto& tau : partitions(n)) {
      Partition scaled = tau;
      for (auto& t : scaled) t *= r;
      e[scaled] += Scalar(1) / Scalar(centralizer_size(tau));
    }
    return pr.emplace(r, std::move(e)).first->second;
  };
  detail::PowerSumExpansion total;
  for (const auto& rho : partitions(d)) {
    detail::PowerSumExpansion term{{Partition{}, Scalar(1) / Scalar(centralizer_size(rho))}};
    for (auto r : rho) term = detail::multiply(term, p_of(r));
    for (auto& [mu, c] : term) total[mu] += c;
  }
  for (auto it = total.begin(); it != total.end();) it = it->second == 0 ? total.erase(it) : std::next(it);
  return total;
}

// Same multiplicity through characters: <s_pi, h_d[h_n]>.
inline Integer plethysm_mult_characters(const Partition& pi, unsigned d, unsigned n, unsigned threads = 1) {
  check_partition(pi);
  if (size(pi) != d * n) throw DimensionError("plethysm_mult: |pi| != d n");
  auto expansion = plethysm_power_sum_expansion(d, n);
  std::vector<std::pair<Partition, Scalar>> terms(expansion.begin(), expansion.end());
  std::vector<Scalar> parts(terms.size());
  parallel_for(terms.size(), threads, [&](std::size_t i) {
    parts[i] = terms[i].second * Scalar(character(pi, terms[i].first));
  });
  Scalar total = 0;
  for (const auto& p : parts) total += p;
  return detail::as_integer(total, "plethysm multiplicity");
}

// ---------------------------------------------------------------------------
// Obstructions

struct ObstructionVerdict {
  Partition pi;
  unsigned d = 0, n = 0;
  Integer mult;  // multiplicity of S_pi in S^d(S^n W)
  Integer kron;  // k_{pi, d^n, d^n}
  Integer sk;    // sk^pi_{d^n d^n}
  bool representation_obstruction = false;  // sk < mult
  bool occurrence_obstruction = false;      // sk = 0 < mult
};

// Compares the multiplicity of S_pi in degree d polynomials on S^n W with its
// multiplicity sk^pi_{d^n d^n} in the coordinate ring of the orbit of det_n.
inline ObstructionVerdict occurrence_obstruction_test(const Partition& pi, unsigned d, unsigned n,
                                                      unsigned threads = 1) {
  check_partition(pi);
  if (size(pi) != d * n) throw DimensionError("occurrence_obstruction_test: |pi| != d n");
  ObstructionVerdict v;
  v.pi = pi;
  v.d = d;
  v.n = n;
  Partition rect(n, d);
  v.mult = plethysm_mult(pi, d, n);
  v.kron = kronecker(pi, rect, rect, threads);
  v.sk = symmetric_kronecker(pi, rect, threads);
  v.representation_obstruction = v.sk < v.mult;
  v.occurrence_obstruction = v.sk == 0 && v.mult > 0;
  return v;
}

// Necessary conditions for S_pi W (|pi| = dn) to be (n, m)-GCT useful:
// l(pi) <= m + 1 and p_1 >= d(n - m).
inline bool gct_useful_filter(const Partition& pi, unsigned d, unsigned n, unsigned m) {
  check_partition(pi);
  if (size(pi) != d * n) throw DimensionError("gct_useful_filter: |pi| != d n");
  if (pi.size() > m + 1) return false;
  long first = pi.empty() ? 0 : static_cast<long>(pi[0]);
  return first >= static_cast<long>(d) * (static_cast<long>(n) - static_cast<long>(m));
}

}  // namespace gct
