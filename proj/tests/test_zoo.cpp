#include <gtest/gtest.h>

#include <array>
#include <set>

#include "gct/zoo.hpp"
#include "support.hpp"

using namespace gct;
using namespace gct::zoo;

namespace {

std::vector<Scalar> ones(std::size_t n) { return std::vector<Scalar>(n, Scalar(1)); }

// x_{ii} -> y_i, off-diagonal entries -> 0.
LinearSubstitution diagonal_restriction(std::size_t n) {
  LinearSubstitution s(n * n, n);
  for (std::size_t i = 0; i < n; ++i) s(i * n + i, i) = 1;
  return s;
}

}  // namespace

TEST(Make, Det2) {
  Polynomial expected = Polynomial::from_terms(4, {{Monomial{1, 0, 0, 1}, 1}, {Monomial{0, 1, 1, 0}, -1}});
  EXPECT_EQ(make("det", std::array<long, 1>{2}), expected);
}

TEST(Make, Perm3AllOnes) {
  Polynomial p = make("perm", std::array<long, 1>{3});
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(*p.degree(), 3u);
  EXPECT_EQ(p.evaluate(ones(9)), Scalar(6));
  EXPECT_EQ(det(3).evaluate(ones(9)), Scalar(0));
}

TEST(Make, Discriminant) {
  Polynomial d = make("discriminant", {});
  EXPECT_EQ(d.size(), 5u);
  EXPECT_EQ(d.coefficient(Monomial{2, 0, 0, 2}), Scalar(27));
  EXPECT_EQ(d.coefficient(Monomial{1, 0, 3, 0}), Scalar(4));
  EXPECT_EQ(d.coefficient(Monomial{0, 3, 0, 1}), Scalar(4));
  EXPECT_EQ(d.coefficient(Monomial{0, 2, 2, 0}), Scalar(-1));
  EXPECT_EQ(d.coefficient(Monomial{1, 1, 1, 1}), Scalar(-18));
  // (x - 1)^2 (x - 2): coefficients 1, -4, 5, -2 has a double root.
  std::vector<Scalar> cubic{1, -4, 5, -2};
  EXPECT_EQ(d.evaluate(cubic), Scalar(0));
}

TEST(Make, SmallFamilies) {
  Polynomial e23 = elementary(2, 3);
  EXPECT_EQ(e23, Polynomial::from_terms(3, {{Monomial{1, 1, 0}, 1}, {Monomial{1, 0, 1}, 1}, {Monomial{0, 1, 1}, 1}}));
  EXPECT_EQ(elementary(3, 3), chow(3));
  EXPECT_EQ(fermat(3, 2), Polynomial::from_terms(2, {{Monomial{3, 0}, 1}, {Monomial{0, 3}, 1}}));
  EXPECT_EQ(sum_product(2, 2), Polynomial::from_terms(4, {{Monomial{1, 1, 0, 0}, 1}, {Monomial{0, 0, 1, 1}, 1}}));
  EXPECT_EQ(imm(1, 4), chow(4));
  EXPECT_EQ(sum_product(3, 1), chow(3));
}

TEST(Make, ImmIsTraceOfProduct) {
  testkit::Rng rng(21);
  const std::size_t k = 2, n = 3;
  Polynomial p = imm(k, n);
  for (int trial = 0; trial < 10; ++trial) {
    auto pt = rng.vector(k * k * n);
    Matrix<Scalar> prod = Matrix<Scalar>::identity(k);
    for (std::size_t t = 0; t < n; ++t) {
      Matrix<Scalar> xt(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) xt(a, b) = pt[t * k * k + a * k + b];
      prod = prod * xt;
    }
    EXPECT_EQ(p.evaluate(pt), prod(0, 0) + prod(1, 1));
  }
}

TEST(Make, Errors) {
  EXPECT_THROW(make("plambda", std::array<long, 1>{4}), DomainError);
  EXPECT_THROW(make("nosuch", std::array<long, 1>{2}), DomainError);
  EXPECT_THROW(make("det", std::array<long, 2>{2, 3}), DomainError);
  EXPECT_THROW(make("elementary", std::array<long, 2>{4, 3}), DomainError);
}

TEST(Make, DiagonalRestriction) {
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(substitute(det(n), diagonal_restriction(n)), chow(n));
    EXPECT_EQ(substitute(perm(n), diagonal_restriction(n)), chow(n));
  }
}

TEST(Make, PascalSlice) {
  for (std::size_t m = 1; m <= 3; ++m) {
    LinearSubstitution s(m * m * m * m, m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) s(((i * m + j) * m + j) * m + j, i * m + j) = 1;
    EXPECT_EQ(substitute(pascal_det(m), s), det(m));
  }
  Polynomial p2 = pascal_det(2);
  EXPECT_EQ(p2.coefficient(Monomial::variable(16, 0) * Monomial::variable(16, 15)), Scalar(1));
}

TEST(Make, PLambda) {
  Polynomial p = p_lambda(3);
  EXPECT_EQ(p.num_vars(), 9u);
  EXPECT_TRUE(p.is_homogeneous());
  EXPECT_EQ(*p.degree(), 3u);
  testkit::Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    auto pt = rng.vector(9);
    Matrix<Scalar> m(3, 3), skew(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = pt[i * 3 + j];
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) skew(i, j) = (m(i, j) - m(j, i)) / 2;
    auto ker = nullspace(skew);
    ASSERT_EQ(ker.size(), 1u);
    // w spans ker(M_L) with the normalization w_2 = Pf of the top-left block.
    std::vector<Scalar> w = ker[0];
    Scalar scale = skew(0, 1) / w[2];
    Scalar form = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) form += w[i] * m(i, j) * w[j];
    EXPECT_EQ(p.evaluate(pt), form * scale * scale);
  }
}

TEST(Ryser, Examples) {
  auto r2 = ryser_decomposition(2);
  EXPECT_EQ(r2.terms.size(), 2u);
  EXPECT_EQ(expand(r2), perm(2));
  EXPECT_EQ(ryser_decomposition(3).terms.size(), 4u);
  for (const auto& t : ryser_decomposition(3).terms) EXPECT_EQ(t.forms.size(), 3u);
  auto r1 = ryser_decomposition(1);
  ASSERT_EQ(r1.terms.size(), 1u);
  EXPECT_EQ(expand(r1), Polynomial::variable(1, 0));
}

TEST(Fischer, Examples) {
  auto f2 = fischer_decomposition(2);
  ASSERT_EQ(f2.terms.size(), 2u);
  EXPECT_EQ(f2.terms[0].coeff, Scalar(1, 4));
  EXPECT_EQ(f2.terms[1].coeff, Scalar(-1, 4));
  EXPECT_EQ(expand(f2), chow(2));
  EXPECT_EQ(fischer_decomposition(3).terms.size(), 4u);
  EXPECT_TRUE(verify_waring(fischer_decomposition(4), chow(4)));
  EXPECT_EQ(expand(fischer_decomposition(1)), chow(1));
}

TEST(BenOr, Examples) {
  auto b = benor_decomposition(2, 1);
  EXPECT_EQ(b.terms.size(), 2u);
  Polynomial l_times_sum = Polynomial::from_terms(3, {{Monomial{1, 1, 0}, 1}, {Monomial{1, 0, 1}, 1}});
  EXPECT_EQ(expand(b), l_times_sum);
  for (std::size_t m = 1; m <= 4; ++m) {
    auto c = benor_decomposition(m, m);
    EXPECT_EQ(c.terms.size(), m);
    EXPECT_EQ(expand(c), padded_elementary(m, m));
  }
  EXPECT_TRUE(verify_chow(benor_decomposition(3, 2), padded_elementary(3, 2)));
  EXPECT_THROW(benor_decomposition(3, 0), DomainError);
  EXPECT_THROW(benor_decomposition(3, 4), DomainError);
}

TEST(BenOr, PointsAnnihilateTheTargetEquation) {
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t k = 1; k <= m; ++k) {
      auto pts = benor_points(m, k);
      std::set<Scalar> distinct(pts.begin(), pts.end());
      EXPECT_EQ(distinct.size(), m);
      // e_k of the points vanishes.
      std::vector<Scalar> e(m + 1, Scalar(0));
      e[0] = 1;
      for (const auto& u : pts)
        for (std::size_t j = m; j >= 1; --j) e[j] += e[j - 1] * u;
      EXPECT_EQ(e[k], Scalar(0));
    }
}

TEST(PaddedElementary, MatchesDefinition) {
  Polynomial p = padded_elementary(3, 1);
  Polynomial expected = Polynomial::from_terms(
      4, {{Monomial{2, 1, 0, 0}, 1}, {Monomial{2, 0, 1, 0}, 1}, {Monomial{2, 0, 0, 1}, 1}});
  EXPECT_EQ(p, expected);
}

TEST(Property, DecompositionsVerify) {
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_TRUE(verify_chow(ryser_decomposition(n), perm(n))) << n;
    EXPECT_TRUE(verify_waring(fischer_decomposition(n), chow(n))) << n;
    for (std::size_t k = 1; k <= n; ++k) EXPECT_TRUE(verify_chow(benor_decomposition(n, k), padded_elementary(n, k)));
  }
}

TEST(Verify, DetExpression) {
  DetExpressionWitness w{2, 5, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Scalar> e(5, Scalar(0));
    e[i] = (i == 1) ? -1 : 1;
    w.entries.push_back(e);
  }
  EXPECT_TRUE(verify_det_expression(w, perm(2)));
  EXPECT_FALSE(verify_det_expression(w, det(2)));

  // det [[x11, x12, 0], [x21, x22, 0], [0, 0, l]] = l det_2
  DetExpressionWitness pad{3, 5, std::vector<std::vector<Scalar>>(9, std::vector<Scalar>(5, Scalar(0)))};
  pad.entries[0][0] = 1;
  pad.entries[1][1] = 1;
  pad.entries[3][2] = 1;
  pad.entries[4][3] = 1;
  pad.entries[8][4] = 1;
  EXPECT_TRUE(verify_det_expression(pad, det(2)));
  EXPECT_THROW(verify_det_expression(pad, det(3)), DimensionError);
}

TEST(Verify, EmptyAndMismatched) {
  ChowDecomposition empty{4, {}};
  EXPECT_FALSE(verify_chow(empty, perm(2)));
  EXPECT_TRUE(verify_chow(empty, Polynomial(4)));
  EXPECT_THROW(verify_chow(empty, perm(3)), DimensionError);
  WaringDecomposition bad{2, 2, {{Scalar(1), {Scalar(1)}}}};
  EXPECT_THROW(verify_waring(bad, chow(2)), DimensionError);
}

TEST(CircuitSize, Examples) {
  EXPECT_EQ(chow_circuit_size(1, 2, 2), 7);
  for (long r = 1; r <= 5; ++r) EXPECT_EQ(chow_circuit_size(r, 1, 0), 2 * r);
  EXPECT_EQ(chow_circuit_size(2, 3, 4), 32);
  EXPECT_THROW(chow_circuit_size(0, 1, 1), DomainError);
}

TEST(Witness, JsonRoundTrip) {
  std::vector<Witness> ws = {fischer_decomposition(3), ryser_decomposition(3), benor_decomposition(3, 2)};
  DetExpressionWitness d{1, 2, {{Scalar(1, 3), Scalar(-2)}}};
  ws.push_back(d);
  for (const auto& w : ws) {
    auto j = to_json(w);
    EXPECT_EQ(to_json(witness_from_json(nlohmann::json::parse(j.dump()))), j);
  }
  EXPECT_THROW(witness_from_json(nlohmann::json::parse(R"({"kind":"tensor"})")), FormatError);
  EXPECT_THROW(witness_from_json(nlohmann::json::parse(R"({"kind":"chow"})")), FormatError);
}
