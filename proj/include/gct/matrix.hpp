#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gct/error.hpp"
#include "gct/scalar.hpp"

namespace gct {

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Outcome of a rank computation.
struct RankCertificate {
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string method;  // "bareiss" (exact) or "modular:<p>" (lower bound, exact w.h.p.)
  double seconds = 0.0;
};

namespace detail {

inline std::size_t bit_size(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

}  // namespace detail

// Fraction-free (Bareiss) row echelon reduction in place. Returns the rank and
// the pivot columns. Every intermediate entry is a minor of the input, so all
// divisions are exact.
inline std::size_t bareiss_echelon(Matrix<Integer>& a, std::vector<std::size_t>* pivots = nullptr,
                                   int* sign = nullptr) {
  const std::size_t rows = a.rows(), cols = a.cols();
  Integer prev = 1;
  Integer t1, t2;
  std::size_t r = 0;
  int s = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Partial pivoting: smallest nonzero entry (by bit length) in the column.
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a(i, c) != 0 && (best == rows || detail::bit_size(a(i, c)) < detail::bit_size(a(best, c)))) {
        best = i;
      }
    }
    if (best == rows) continue;
    if (best != r) {
      a.swap_rows(best, r);
      s = -s;
    }
    const Integer& piv = a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      Integer& lead = a(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer& x = a(i, j);
        mpz_mul(t1.get_mpz_t(), piv.get_mpz_t(), x.get_mpz_t());
        mpz_mul(t2.get_mpz_t(), lead.get_mpz_t(), a(r, j).get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        mpz_divexact(x.get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      lead = 0;
    }
    prev = piv;
    if (pivots) pivots->push_back(c);
    ++r;
  }
  if (sign) *sign = s;
  return r;
}

// Each row scaled by the lcm of its denominators.
inline Matrix<Integer> clear_denominators(const Matrix<Scalar>& m, std::vector<Integer>* scales = nullptr) {
  Matrix<Integer> out(m.rows(), m.cols());
  if (scales) scales->assign(m.rows(), Integer(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (const auto& x : m.row(i)) l = lcm(l, Integer(x.get_den()));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& x = m(i, j);
      out(i, j) = x.get_num() * (l / x.get_den());
    }
    if (scales) (*scales)[i] = l;
  }
  return out;
}

inline RankCertificate exact_rank(Matrix<Integer> a) {
  auto start = std::chrono::steady_clock::now();
  RankCertificate cert;
  cert.rows = a.rows();
  cert.cols = a.cols();
  cert.method = "bareiss";
  cert.rank = bareiss_echelon(a);
  cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

inline RankCertificate exact_rank(const Matrix<Scalar>& m) { return exact_rank(clear_denominators(m)); }

inline Scalar determinant(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  if (m.rows() == 0) return Scalar(1);
  std::vector<Integer> scales;
  Matrix<Integer> a = clear_denominators(m, &scales);
  int sign = 1;
  std::size_t r = bareiss_echelon(a, nullptr, &sign);
  if (r < m.rows()) return Scalar(0);
  Scalar det(a(m.rows() - 1, m.cols() - 1) * sign);
  Integer denom = 1;
  for (const auto& s : scales) denom *= s;
  det /= denom;
  return det;
}

// Basis of the right kernel {x : m x = 0}, one vector per free column.
inline std::vector<std::vector<Scalar>> nullspace(Matrix<Scalar> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace detail {

template <typename T, typename MulMod>
std::size_t dense_rank_mod(std::vector<T>& a, std::size_t rows, std::size_t cols, std::uint64_t p,
                           MulMod mulmod) {
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    T* top = &a[r * cols];
    std::uint64_t inv = powmod(top[c], p - 2);
    for (std::size_t j = c; j < cols; ++j) top[j] = static_cast<T>(mulmod(top[j], inv));
    for (std::size_t i = r + 1; i < rows; ++i) {
      T* row = &a[i * cols];
      std::uint64_t f = row[c];
      if (f == 0) continue;
      f = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        if (top[j] == 0) continue;
        std::uint64_t x = row[j] + mulmod(f, top[j]);
        row[j] = static_cast<T>(x >= p ? x - p : x);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace detail

// Rank modulo a prime p < 2^62 of a dense row-major matrix with entries already
// reduced mod p. Destroys the input.
inline std::size_t modular_rank(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols, std::uint64_t p) {
  if (p < (1ull << 32))
    return detail::dense_rank_mod(a, rows, cols, p, [p](std::uint64_t x, std::uint64_t y) { return x * y % p; });
  return detail::dense_rank_mod(a, rows, cols, p, [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  });
}

// Same for p < 2^31 with half the storage.
inline std::size_t modular_rank(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols, std::uint32_t p) {
  if (p >= (1u << 31)) throw DomainError("modular_rank: 32-bit storage needs p < 2^31");
  return detail::dense_rank_mod(a, rows, cols, p, [p](std::uint64_t x, std::uint64_t y) { return x * y % p; });
}

// Rank modulo a prime p < 2^62. Never exceeds the rational rank, and agrees
// with it unless p divides every maximal nonzero minor.
inline std::size_t modular_rank(const Matrix<Integer>& m, std::uint64_t p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  Integer t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_fdiv_r_ui(t.get_mpz_t(), m(i, j).get_mpz_t(), p);
      a[i * cols + j] = t.get_ui();
    }
  return modular_rank(a, rows, cols, p);
}

}  // namespace gct
