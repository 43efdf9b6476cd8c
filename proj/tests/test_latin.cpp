#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "gct/latin.hpp"
#include "support.hpp"

using namespace gct;

namespace {

LatinSquare random_square(testkit::Rng& rng, int n) {
  std::vector<int> rp(n), cp(n), sp(n);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::iota(sp.begin(), sp.end(), 1);
  std::shuffle(rp.begin(), rp.end(), rng.engine());
  std::shuffle(cp.begin(), cp.end(), rng.engine());
  std::shuffle(sp.begin(), sp.end(), rng.engine());
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = sp[(rp[i] + cp[j]) % n];
  return LatinSquare::from_rows(rows);
}

// Every Latin square of order n, by trying all rows independently.
std::vector<LatinSquare> all_squares(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<LatinSquare> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(perms[pick[i]]);
    try {
      out.push_back(LatinSquare::from_rows(rows));
    } catch (const DomainError&) {
    }
    int i = 0;
    while (i < n && ++pick[i] == perms.size()) pick[i++] = 0;
    if (i == n) break;
  }
  return out;
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

// Coefficient of prod x_ij in det^n: each way of covering the grid by n
// permutation matrices is a Latin square; the sign is that of the symbol permutations.
long latin_expansion(int n) {
  long total = 0;
  for (const auto& l : all_squares(n)) {
    int s = 1;
    for (int k = 1; k <= n; ++k) {
      std::vector<int> sigma(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (static_cast<int>(l(i, j)) == k) sigma[i] = j;
      s *= perm_sign(sigma);
    }
    total += s;
  }
  return total;
}

}  // namespace

TEST(LatinSign, Examples) {
  EXPECT_EQ(sign(LatinSquare::from_rows({{1, 2}, {2, 1}})), 1);
  EXPECT_EQ(sign(LatinSquare::from_rows({{1}})), 1);
  EXPECT_EQ(column_sign(LatinSquare::from_rows({{1, 2}, {2, 1}})), -1);
  EXPECT_THROW(LatinSquare::from_rows({{1, 2}, {1, 2}}), DomainError);
  EXPECT_THROW(LatinSquare::from_rows({{1, 3}, {2, 1}}), DomainError);
  EXPECT_THROW(LatinSquare::from_rows({{1, 2}}), DomainError);
  EXPECT_THROW(LatinSquare::from_rows({}), DomainError);
}

TEST(Property, RowSwapFlipsSignByParityOfN) {
  testkit::Rng rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(rng.integer(2, 7));
    LatinSquare l = random_square(rng, n);
    auto rows = l.rows();
    auto a = static_cast<std::size_t>(rng.integer(0, n - 1)), b = static_cast<std::size_t>(rng.integer(0, n - 1));
    if (a == b) continue;
    std::swap(rows[a], rows[b]);
    EXPECT_EQ(sign(LatinSquare::from_rows(rows)), sign(l) * (n % 2 ? -1 : 1));
  }
}

TEST(AlonTarsi, SmallOrders) {
  auto c2 = alon_tarsi_count(2);
  EXPECT_EQ(c2.count_plus, 2);
  EXPECT_EQ(c2.count_minus, 0);
  auto c3 = alon_tarsi_count(3);
  EXPECT_EQ(c3.total(), 12);
  EXPECT_EQ(c3.difference(), 0);
  auto c4 = alon_tarsi_count(4);
  EXPECT_EQ(c4.total(), 576);
  EXPECT_NE(c4.difference(), 0);
  EXPECT_EQ(alon_tarsi_count(1).total(), 1);
  EXPECT_EQ(alon_tarsi_count(5).total(), 161280);
  EXPECT_THROW(alon_tarsi_count(6), CapacityError);
  EXPECT_THROW(alon_tarsi_count(0), DomainError);
}

TEST(AlonTarsi, MatchesIndependentEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    long plus = 0, minus = 0, cplus = 0, cminus = 0, reduced = 0;
    for (const auto& l : all_squares(n)) {
      (sign(l) > 0 ? plus : minus) += 1;
      (column_sign(l) > 0 ? cplus : cminus) += 1;
      bool first_row = true, first_col = true;
      for (int j = 0; j < n; ++j) {
        first_row = first_row && static_cast<int>(l(0, j)) == j + 1;
        first_col = first_col && static_cast<int>(l(j, 0)) == j + 1;
      }
      reduced += first_row && first_col;
    }
    for (bool reduce : {true, false}) {
      LatinOptions opt;
      opt.reduce_first_row = reduce;
      auto c = alon_tarsi_count(static_cast<unsigned>(n), opt);
      EXPECT_EQ(c.count_plus, plus) << n;
      EXPECT_EQ(c.count_minus, minus) << n;
      EXPECT_EQ(c.column_count_plus, cplus) << n;
      EXPECT_EQ(c.column_count_minus, cminus) << n;
    }
    if (n == 4) {
      EXPECT_EQ(reduced, 4);
      EXPECT_EQ(reduced * 24 * 6, 576);
    }
  }
}

TEST(Property, OddOrdersBalanced) {
  for (unsigned n : {1u, 3u, 5u}) {
    auto c = alon_tarsi_count(n);
    if (n > 1) EXPECT_EQ(c.count_plus, c.count_minus);
  }
  for (unsigned n : {2u, 4u}) {
    auto c = alon_tarsi_count(n);
    EXPECT_EQ(c.difference() != 0, c.column_difference() != 0);
  }
}

TEST(AlonTarsi, ThreadsAndCheckpoint) {
  LatinOptions opt;
  auto base = alon_tarsi_count(5, opt);
  opt.threads = 3;
  auto threaded = alon_tarsi_count(5, opt);
  EXPECT_EQ(threaded.count_plus, base.count_plus);
  EXPECT_EQ(threaded.column_count_minus, base.column_count_minus);

  auto dir = std::filesystem::temp_directory_path() / "gct_latin_test";
  std::filesystem::remove_all(dir);
  opt.threads = 1;
  opt.checkpoint = dir / "at5.json";
  auto first = alon_tarsi_count(5, opt);
  ASSERT_TRUE(std::filesystem::exists(*opt.checkpoint));
  auto resumed = alon_tarsi_count(5, opt);
  EXPECT_EQ(resumed.count_plus, first.count_plus);
  EXPECT_EQ(resumed.count_minus, base.count_minus);
  {
    std::ofstream out(*opt.checkpoint);
    out << "{ not json";
  }
  EXPECT_THROW(alon_tarsi_count(5, opt), FormatError);
  std::filesystem::remove_all(dir);
}

TEST(Pairing, PermDet) {
  EXPECT_EQ(pairing_perm_det(1), 1);
  EXPECT_EQ(pairing_perm_det(2), 4);
  EXPECT_NE(alon_tarsi_count(2).difference(), 0);
  EXPECT_THROW(pairing_perm_det(4), CapacityError);
}

TEST(Pairing, AllVariables) {
  EXPECT_EQ(pairing_allvars_det(1), 1);
  EXPECT_EQ(pairing_allvars_det(2), -2);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(pairing_allvars_det(static_cast<unsigned>(n)), latin_expansion(n)) << n;
  EXPECT_THROW(pairing_allvars_det(5), CapacityError);
}

TEST(Property, PairingTransposeInvariant) {
  for (unsigned n = 1; n <= 3; ++n) {
    LinearSubstitution t(n * n, n * n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) t(i * n + j, j * n + i) = 1;
    Polynomial p = substitute(pow(zoo::perm(n), n), t), d = substitute(pow(zoo::det(n), n), t);
    EXPECT_EQ(pairing(p, d), pairing_perm_det(n));
  }
}
