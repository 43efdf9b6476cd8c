#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gct/error.hpp"
#include "gct/matrix.hpp"
#include "gct/polynomial.hpp"

namespace gct {

// Square matrix of polynomials over a shared variable space.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t size, std::size_t num_vars)
      : size_(size), num_vars_(num_vars), entries_(size * size, Polynomial(num_vars)) {}

  std::size_t size() const { return size_; }
  std::size_t num_vars() const { return num_vars_; }

  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  void set(std::size_t i, std::size_t j, Polynomial p) {
    if (p.num_vars() != num_vars_) throw DimensionError("PolyMatrix entry in the wrong variable space");
    entries_[i * size_ + j] = std::move(p);
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = i + 1; j < size_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  Matrix<Scalar> evaluate(std::span<const Scalar> point) const {
    Matrix<Scalar> m(size_, size_);
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) m(i, j) = (*this)(i, j).evaluate(point);
    return m;
  }

  PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    if (rows.size() != cols.size()) throw DimensionError("submatrix must be square");
    PolyMatrix m(rows.size(), num_vars_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m.entries_[i * rows.size() + j] = (*this)(rows[i], cols[j]);
    return m;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.size_ == b.size_ && a.num_vars_ == b.num_vars_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t size_ = 0;
  std::size_t num_vars_ = 0;
  std::vector<Polynomial> entries_;
};

// Division-free determinant by Laplace expansion over column subsets:
// D(S) = sum_{j in S} (-1)^{#{s in S : s > j}} M(|S|-1, j) D(S \ {j}).
inline Polynomial determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(m.num_vars(), 1);
  if (n > 24) throw CapacityError("symbolic determinant larger than 24x24");
  std::unordered_map<std::uint32_t, Polynomial> layer{{0u, Polynomial::constant(m.num_vars(), 1)}};
  for (std::size_t row = 0; row < n; ++row) {
    std::unordered_map<std::uint32_t, PolynomialAccumulator> next;
    for (const auto& [mask, minor] : layer) {
      if (minor.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1u << j)) continue;
        const Polynomial& e = m(row, j);
        if (e.is_zero()) continue;
        int greater = std::popcount(mask >> (j + 1));
        std::uint32_t nm = mask | (1u << j);
        auto it = next.try_emplace(nm, m.num_vars()).first;
        it->second.add(mul(e, minor), greater % 2 ? Scalar(-1) : Scalar(1));
      }
    }
    layer.clear();
    for (auto& [mask, acc] : next) layer.emplace(mask, acc.finish());
  }
  auto it = layer.find((n == 32 ? 0u : (1u << n)) - 1u);
  return it == layer.end() ? Polynomial(m.num_vars()) : it->second;
}

}  // namespace gct
