#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gct/error.hpp"
#include "gct/parallel.hpp"
#include "gct/polynomial.hpp"
#include "gct/scalar.hpp"
#include "gct/zoo.hpp"

namespace gct {

// n x n array with entries 1..n, every row and column a permutation.
class LatinSquare {
 public:
  static LatinSquare from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw DomainError("latin square: empty");
    LatinSquare l;
    l.n_ = n;
    for (const auto& r : rows) {
      if (r.size() != n) throw DomainError("latin square: not square");
      for (int x : r) {
        if (x < 1 || static_cast<std::size_t>(x) > n) throw DomainError("latin square: entry out of range");
        l.cells_.push_back(static_cast<std::uint8_t>(x));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> row(n + 1, false), col(n + 1, false);
      for (std::size_t j = 0; j < n; ++j) {
        if (row[l(i, j)] || col[l(j, i)]) throw DomainError("latin square: repeated entry");
        row[l(i, j)] = col[l(j, i)] = true;
      }
    }
    return l;
  }

  std::size_t size() const { return n_; }
  unsigned operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i].push_back(static_cast<int>((*this)(i, j)));
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

namespace detail {

inline int parity_sign(const std::vector<unsigned>& perm) {
  unsigned inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
  return inv % 2 ? -1 : 1;
}

}  // namespace detail

inline int column_sign(const LatinSquare& l) {
  int s = 1;
  for (std::size_t j = 0; j < l.size(); ++j) {
    std::vector<unsigned> col;
    for (std::size_t i = 0; i < l.size(); ++i) col.push_back(l(i, j));
    s *= detail::parity_sign(col);
  }
  return s;
}

inline int row_sign(const LatinSquare& l) {
  int s = 1;
  for (std::size_t i = 0; i < l.size(); ++i) {
    std::vector<unsigned> row;
    for (std::size_t j = 0; j < l.size(); ++j) row.push_back(l(i, j));
    s *= detail::parity_sign(row);
  }
  return s;
}

// Product of the signs of all 2n row and column permutations.
inline int sign(const LatinSquare& l) { return row_sign(l) * column_sign(l); }

struct ATCount {
  unsigned n = 0;
  Integer count_plus, count_minus;                // full sign
  Integer column_count_plus, column_count_minus;  // column sign
  Integer total() const { return count_plus + count_minus; }
  Integer difference() const { return count_plus - count_minus; }
  Integer column_difference() const { return column_count_plus - column_count_minus; }
};

struct LatinOptions {
  unsigned cap = 5;
  unsigned threads = 1;
  bool reduce_first_row = true;  // count squares with first row 1..n, then relabel symbols
  std::optional<std::filesystem::path> checkpoint;
};

namespace detail {

struct SignTally {
  std::uint64_t plus = 0, minus = 0, col_plus = 0, col_minus = 0;
};

// Completes rows from `row` on. Row parity and column parity are tracked
// through inversion counts: placing x below entries of a column adds one
// inversion per larger entry already in it.
class LatinSearch {
 public:
  explicit LatinSearch(unsigned n) : n_(n), cell_(n * n, 0), col_used_(n, 0) {}

  void place_row(unsigned i, const std::vector<unsigned>& values) {
    std::uint32_t used = 0;
    for (unsigned j = 0; j < n_; ++j) {
      unsigned x = values[j];
      row_inv_ += __builtin_popcount(used >> x);
      col_inv_ += __builtin_popcount(col_used_[j] >> x);
      used |= 1u << x;
      col_used_[j] |= 1u << x;
      cell_[i * n_ + j] = x;
    }
  }

  void run(unsigned row, SignTally& out) { fill(row, 0, 0, out); }

 private:
  void fill(unsigned i, unsigned j, std::uint32_t row_used, SignTally& out) {
    if (i == n_) {
      bool full = (row_inv_ + col_inv_) % 2 == 0, col = col_inv_ % 2 == 0;
      (full ? out.plus : out.minus) += 1;
      (col ? out.col_plus : out.col_minus) += 1;
      return;
    }
    if (j == n_) {
      fill(i + 1, 0, 0, out);
      return;
    }
    std::uint32_t avail = ~(row_used | col_used_[j]) & ((1u << n_) - 1);
    while (avail) {
      unsigned x = static_cast<unsigned>(__builtin_ctz(avail));
      avail &= avail - 1;
      unsigned dr = __builtin_popcount(row_used >> x), dc = __builtin_popcount(col_used_[j] >> x);
      row_inv_ += dr;
      col_inv_ += dc;
      col_used_[j] |= 1u << x;
      fill(i, j + 1, row_used | (1u << x), out);
      col_used_[j] &= ~(1u << x);
      row_inv_ -= dr;
      col_inv_ -= dc;
    }
  }

  unsigned n_;
  std::vector<unsigned> cell_;
  std::vector<std::uint32_t> col_used_;
  unsigned row_inv_ = 0, col_inv_ = 0;
};

inline std::vector<std::vector<unsigned>> permutations_of(unsigned n) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<unsigned>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline nlohmann::json load_checkpoint(const std::filesystem::path& path, unsigned n, bool reduced) {
  std::ifstream in(path);
  if (!in) return nlohmann::json::object();
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("checkpoint " + path.string() + ": " + e.what());
  }
  if (j.value("n", 0u) != n || j.value("reduced", !reduced) != reduced) return nlohmann::json::object();
  return j.value("done", nlohmann::json::object());
}

inline void save_checkpoint(const std::filesystem::path& path, unsigned n, bool reduced, const nlohmann::json& done) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << nlohmann::json{{"n", n}, {"reduced", reduced}, {"done", done}}.dump();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

// Counts Latin squares of order n by sign, by backtracking row by row with
// candidate values ascending. The work is split by the first two rows; with a
// checkpoint file, finished branches are recorded and skipped on resume.
inline ATCount alon_tarsi_count(unsigned n, const LatinOptions& opt = {}) {
  if (n == 0) throw DomainError("alon_tarsi_count: n must be positive");
  if (n > opt.cap || n > 6) throw CapacityError("alon_tarsi_count: n = " + std::to_string(n) + " exceeds the cap");
  auto perms = detail::permutations_of(n);
  std::vector<std::vector<unsigned>> first_rows;
  if (opt.reduce_first_row) first_rows.push_back(perms.front());
  else first_rows = perms;
  struct Task {
    std::size_t first, second;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < first_rows.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      bool ok = n >= 2;
      for (unsigned j = 0; ok && j < n; ++j) ok = first_rows[a][j] != perms[b][j];
      if (ok || n == 1) tasks.push_back({a, n == 1 ? perms.size() : b});
      if (n == 1) break;
    }

  nlohmann::json done = opt.checkpoint ? detail::load_checkpoint(*opt.checkpoint, n, opt.reduce_first_row)
                                       : nlohmann::json::object();
  std::vector<detail::SignTally> results(tasks.size());
  std::vector<bool> have(tasks.size(), false);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto key = std::to_string(t);
    if (done.contains(key)) {
      auto v = done[key].get<std::vector<std::uint64_t>>();
      results[t] = {v.at(0), v.at(1), v.at(2), v.at(3)};
      have[t] = true;
    }
  }
  std::mutex io;
  parallel_for(tasks.size(), opt.threads, [&](std::size_t t) {
    if (have[t]) return;
    detail::LatinSearch search(n);
    search.place_row(0, first_rows[tasks[t].first]);
    unsigned next = 1;
    if (tasks[t].second < perms.size()) {
      search.place_row(1, perms[tasks[t].second]);
      next = 2;
    }
    detail::SignTally tally;
    search.run(next, tally);
    results[t] = tally;
    if (opt.checkpoint) {
      std::lock_guard<std::mutex> lock(io);
      done[std::to_string(t)] = {tally.plus, tally.minus, tally.col_plus, tally.col_minus};
      detail::save_checkpoint(*opt.checkpoint, n, opt.reduce_first_row, done);
    }
  });

  detail::SignTally sum;
  for (const auto& r : results) {
    sum.plus += r.plus;
    sum.minus += r.minus;
    sum.col_plus += r.col_plus;
    sum.col_minus += r.col_minus;
  }
  ATCount c;
  c.n = n;
  auto big = [](std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); };
  if (!opt.reduce_first_row) {
    c.count_plus = big(sum.plus);
    c.count_minus = big(sum.minus);
    c.column_count_plus = big(sum.col_plus);
    c.column_count_minus = big(sum.col_minus);
    return c;
  }
  // Relabelling symbols by tau multiplies every row and column sign by sgn(tau):
  // the full sign is unchanged and the column sign changes by sgn(tau)^n.
  Integer even = n == 1 ? Integer(1) : factorial(n) / 2, odd = n == 1 ? Integer(0) : factorial(n) / 2;
  c.count_plus = (even + odd) * big(sum.plus);
  c.count_minus = (even + odd) * big(sum.minus);
  if (n % 2 == 0) {
    c.column_count_plus = (even + odd) * big(sum.col_plus);
    c.column_count_minus = (even + odd) * big(sum.col_minus);
  } else {
    c.column_count_plus = even * big(sum.col_plus) + odd * big(sum.col_minus);
    c.column_count_minus = even * big(sum.col_minus) + odd * big(sum.col_plus);
  }
  return c;
}

// <perm_n(y)^n, det_n(x)^n>
inline Scalar pairing_perm_det(unsigned n) {
  if (n == 0) throw DomainError("pairing_perm_det: n must be positive");
  if (n > 3) throw CapacityError("pairing_perm_det: n > 3");
  return pairing(pow(zoo::perm(n), n), pow(zoo::det(n), n));
}

// <prod_{ij} y_ij, det_n(x)^n>
inline Scalar pairing_allvars_det(unsigned n) {
  if (n == 0) throw DomainError("pairing_allvars_det: n must be positive");
  if (n > 4) throw CapacityError("pairing_allvars_det: n > 4");
  Monomial all(n * n);
  for (std::size_t i = 0; i < n * n; ++i) all.set(i, 1);
  return pairing(Polynomial::monomial(all), pow(zoo::det(n), n));
}

}  // namespace gct
