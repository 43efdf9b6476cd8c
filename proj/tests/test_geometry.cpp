#include <gtest/gtest.h>

#include "gct/geometry.hpp"
#include "support.hpp"

using namespace gct;

namespace {

PolyMatrix constant_matrix(const Matrix<Scalar>& m, std::size_t num_vars) {
  PolyMatrix p(m.rows(), num_vars);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p.set(i, j, Polynomial::constant(num_vars, m(i, j)));
  return p;
}

Polynomial random_form(testkit::Rng& rng, std::size_t nv, unsigned degree, int terms) {
  PolynomialAccumulator acc(nv);
  for (int t = 0; t < terms; ++t) {
    Monomial m(nv);
    for (unsigned k = 0; k < degree; ++k) {
      auto i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(nv) - 1));
      m.set(i, m[i] + 1);
    }
    acc.add(m, rng.rational());
  }
  return acc.finish();
}

}  // namespace

TEST(Hessian, Examples) {
  auto h = hessian(Polynomial::monomial(Monomial::variable(3, 0, 2)));
  EXPECT_EQ(h(0, 0), Polynomial::constant(3, 2));
  EXPECT_TRUE(h(1, 1).is_zero());
  EXPECT_TRUE(h(0, 2).is_zero());

  auto hd = hessian(zoo::det(3));
  EXPECT_EQ(hd.size(), 9u);
  // d^2 det / dx_00 dx_11 = x_22, d^2 det / dx_00 dx_12 = -x_21
  EXPECT_EQ(hd(0, 4), Polynomial::variable(9, 8));
  EXPECT_EQ(hd(0, 5), Polynomial::variable(9, 7, -1));
  EXPECT_TRUE(hd(0, 1).is_zero());
  EXPECT_THROW(hessian(Polynomial::variable(3, 0)), DomainError);
}

TEST(Property, HessianSymmetric) {
  testkit::Rng rng(61);
  for (int trial = 0; trial < 20; ++trial)
    EXPECT_TRUE(hessian(random_form(rng, 4, static_cast<unsigned>(rng.integer(2, 4)), 6)).is_symmetric());
}

TEST(CharPoly, Examples) {
  testkit::Rng rng(62);
  auto h = hessian(random_form(rng, 3, 3, 7));
  auto cp = charpoly_coeffs(h, 3);
  EXPECT_EQ(cp[0], Polynomial::constant(3, 1));
  EXPECT_EQ(cp[1], add(add(h(0, 0), h(1, 1)), h(2, 2)));
  EXPECT_EQ(cp[3], determinant(h));

  PolyMatrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i) d.set(i, i, Polynomial::variable(3, i));
  Polynomial expected = Polynomial::from_terms(3, {{Monomial{1, 1, 0}, Scalar(1)}, {Monomial{1, 0, 1}, Scalar(1)},
                                                   {Monomial{0, 1, 1}, Scalar(1)}});
  EXPECT_EQ(charpoly_coeff(d, 2), expected);
  EXPECT_THROW(charpoly_coeffs(d, 4), DomainError);
}

TEST(Property, CharPolyMatchesExpansion) {
  testkit::Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = rng.matrix(4, 4);
    // det(t I - M) as a polynomial in one variable t
    PolyMatrix shifted(4, 1);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Polynomial e = Polynomial::constant(1, -m(i, j));
        if (i == j) e = add(e, Polynomial::variable(1, 0));
        shifted.set(i, j, e);
      }
    Polynomial chi = determinant(shifted);
    auto cp = charpoly_coeffs(constant_matrix(m, 1), 4);
    for (unsigned s = 0; s <= 4; ++s) {
      Scalar c = chi.coefficient(Monomial::variable(1, 0, 4 - s));
      EXPECT_EQ(Polynomial::constant(1, s % 2 ? -c : c), cp[s]) << s;
    }
  }
}

TEST(Property, CharPolyEquivariantUnderSignedPermutations) {
  testkit::Rng rng(64);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t nv = 4;
    Polynomial p = random_form(rng, nv, 3, 8);
    std::vector<std::size_t> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    LinearSubstitution g(nv, nv);
    for (std::size_t i = 0; i < nv; ++i) g(i, perm[i]) = rng.integer(0, 1) ? 1 : -1;
    for (std::size_t s = 1; s <= nv; ++s)
      EXPECT_EQ(charpoly_coeff(hessian(substitute(p, g)), s), substitute(charpoly_coeff(hessian(p), s), g)) << s;
  }
}

TEST(Compound, Examples) {
  testkit::Rng rng(65);
  auto m = rng.matrix(3, 3);
  EXPECT_EQ(compound(m, 1), m);
  auto m2 = rng.matrix(2, 2);
  auto c = compound(m2, 2);
  ASSERT_EQ(c.rows(), 1u);
  EXPECT_EQ(c(0, 0), determinant(m2));

  PolyMatrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i) d.set(i, i, Polynomial::variable(3, i));
  auto cd = compound(d, 2);
  ASSERT_EQ(cd.size(), 3u);
  EXPECT_EQ(cd(0, 0), Polynomial::monomial(Monomial{1, 1, 0}));
  EXPECT_EQ(cd(1, 1), Polynomial::monomial(Monomial{1, 0, 1}));
  EXPECT_EQ(cd(2, 2), Polynomial::monomial(Monomial{0, 1, 1}));
  EXPECT_TRUE(cd(0, 1).is_zero());
  EXPECT_THROW(compound(d, 4), DomainError);
  EXPECT_THROW(compound(d, 0), DomainError);
}

TEST(Property, CompoundIsMultiplicative) {
  testkit::Rng rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = rng.matrix(4, 4), b = rng.matrix(4, 4);
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(compound(a * b, k), compound(a, k) * compound(b, k));
  }
}

TEST(Division, ExactAndInexact) {
  testkit::Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial a = random_form(rng, 3, 2, 4), b = random_form(rng, 3, 3, 5);
    if (a.is_zero() || b.is_zero()) continue;
    auto div = divide(mul(a, b), a);
    EXPECT_TRUE(div.remainder.is_zero());
    EXPECT_EQ(div.quotient, b);
    // p = q d + r always holds
    Polynomial p = add(mul(a, b), random_form(rng, 3, 4, 3));
    auto d2 = divide(p, a);
    EXPECT_EQ(add(mul(d2.quotient, a), d2.remainder), p);
  }
  EXPECT_FALSE(divide(Polynomial::variable(2, 0), Polynomial::variable(2, 1)).remainder.is_zero());
  EXPECT_THROW(divide(Polynomial::variable(2, 0), Polynomial(2)), DomainError);
}

TEST(Sfturbo, DetThree) {
  auto rep = verify_sfturbo(3);
  ASSERT_EQ(rep.checks.size(), 4u);
  EXPECT_EQ(rep.checks[0].name, "cp_1");
  EXPECT_TRUE(rep.checks[0].ok);
  EXPECT_TRUE(rep.checks[1].ok) << rep.checks[1].detail;
  EXPECT_THROW(verify_sfturbo(5), CapacityError);
}

// Top two coefficients at random rational points, from scalar minors only.
TEST(Sfturbo, TopCoefficientsAtPoints) {
  testkit::Rng rng(70);
  PolyMatrix h = hessian(zoo::det(3));
  for (int trial = 0; trial < 5; ++trial) {
    auto a = rng.vector(9);
    Matrix<Scalar> ha = h.evaluate(a), am(3, 3);
    Scalar q = 0;
    for (std::size_t i = 0; i < 9; ++i) {
      am(i / 3, i % 3) = a[i];
      q += a[i] * a[i];
    }
    Scalar det = determinant(am), cp8 = 0;
    for (const auto& idx : subsets(9, 8)) {
      Matrix<Scalar> sub(8, 8);
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) sub(r, c) = ha(idx[r], idx[c]);
      cp8 += determinant(sub);
    }
    EXPECT_EQ(determinant(ha), -2 * det * det * det);
    EXPECT_EQ(cp8, det * det * q);
  }
  auto rep = verify_sfturbo(3);
  EXPECT_EQ(rep.checks[2].detail, "expected 2*det^2*Q, found 1*det^2*Q");
  EXPECT_EQ(rep.checks[3].detail, "expected 2*det^3, found -2*det^3");
  EXPECT_FALSE(rep.ok());
}

TEST(Sfturbo, DetFourLowCoefficients) {
  auto rep = verify_sfturbo(4);
  ASSERT_EQ(rep.checks.size(), 2u);
  EXPECT_TRUE(rep.ok()) << rep.checks[1].detail;
}

TEST(Discriminant, Identity) {
  Polynomial delta = zoo::discriminant();
  EXPECT_TRUE(verify_discriminant_identity());
  EXPECT_TRUE(verify_discriminant_identity(delta));
  Polynomial perturbed = add(delta, Polynomial::monomial(Monomial{2, 0, 0, 2}));
  EXPECT_FALSE(verify_discriminant_identity(perturbed));
  // det H scales by t^4, delta^2 by t^2
  for (long t : {2L, -3L}) {
    Polynomial scaled = scale(delta, Scalar(t));
    EXPECT_FALSE(verify_discriminant_identity(scaled));
    EXPECT_EQ(determinant(hessian(scaled)), scale(determinant(hessian(delta)), Scalar(t * t * t * t)));
  }
  EXPECT_TRUE(verify_discriminant_identity(scale(delta, Scalar(-1))));
}

TEST(Cayley, Cases) {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned s = 0; s <= 2; ++s) EXPECT_TRUE(cayley_check(n, s)) << n << "," << s;
  // n = 2, s = 1 by expansion: det_2(d) applied to det_2^2 is 6 det_2
  Polynomial det = zoo::det(2);
  EXPECT_EQ(apply_diff(det, mul(det, det)), scale(det, Scalar(6)));
  EXPECT_EQ(apply_diff(det, det), Polynomial::constant(4, 2));
  EXPECT_EQ(apply_diff(zoo::det(3), zoo::det(3)), Polynomial::constant(9, 6));
  EXPECT_THROW(cayley_check(4, 0), CapacityError);
  EXPECT_THROW(cayley_check(2, 3), CapacityError);
}

TEST(SylvesterFranke, Cases) {
  EXPECT_TRUE(verify_sylvester_franke(3, 2, 1));
  EXPECT_TRUE(verify_sylvester_franke(3, 2, 2));
  for (unsigned v = 1; v <= 3; ++v) EXPECT_TRUE(verify_sylvester_franke(v, v, 1)) << v;
  // cp_2 of the second compound of a 3 x 3 matrix is det * trace
  auto div = sylvester_franke_division(3, 2, 1);
  Polynomial trace = add(add(Polynomial::variable(9, 0), Polynomial::variable(9, 4)), Polynomial::variable(9, 8));
  EXPECT_EQ(div.quotient, trace);
  EXPECT_TRUE(verify_sylvester_franke(4, 2, 1));
  EXPECT_THROW(verify_sylvester_franke(3, 2, 3), DomainError);
  EXPECT_THROW(verify_sylvester_franke(5, 2, 1), CapacityError);
}

TEST(DualDimension, Examples) {
  std::vector<Scalar> diag(9, Scalar(0));
  diag[0] = diag[4] = 1;
  EXPECT_EQ(dual_dimension_at(zoo::det(3), diag), 4);
  EXPECT_EQ(dual_dimension_at(zoo::perm(3), perm_special_point(3)), 7);
  Polynomial q = Polynomial::monomial(Monomial{1, 1});
  std::vector<Scalar> w{Scalar(1), Scalar(0)};
  EXPECT_EQ(dual_dimension_at(q, w), 0);
  std::vector<Scalar> off{Scalar(1), Scalar(1)};
  EXPECT_THROW(dual_dimension_at(q, off), DomainError);
  std::vector<Scalar> origin{Scalar(0), Scalar(0)};
  EXPECT_THROW(dual_dimension_at(q, origin), DomainError);
}

TEST(Property, DualDimensionConstantOnRankDeficientMatrices) {
  std::mt19937_64 rng(68);
  for (int trial = 0; trial < 10; ++trial) EXPECT_EQ(dual_dimension_at(zoo::det(3), random_matrix_of_rank(3, 2, rng)), 4);
}

TEST(Stabilizer, Examples) {
  EXPECT_EQ(stabilizer_lie_dim(zoo::det(3)), 16u);
  EXPECT_EQ(stabilizer_lie_dim(zoo::perm(3)), 4u);
  EXPECT_EQ(stabilizer_lie_dim(zoo::chow(3)), 2u);
  for (unsigned d = 3; d <= 4; ++d)
    for (std::size_t n = 2; n <= 4; ++n) EXPECT_EQ(stabilizer_lie_dim(zoo::fermat(d, n)), 0u) << d << "," << n;
}

// Coefficient of s^{n-1} in det(M_S + s M_L): the limit of the degenerating curve.
Polynomial boundary_limit(std::size_t n) {
  const std::size_t nv = n * n;
  PolyMatrix m(n, nv + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial xij = Polynomial::variable(nv + 1, i * n + j, Scalar(1, 2));
      Polynomial xji = Polynomial::variable(nv + 1, j * n + i, Scalar(1, 2));
      m.set(i, j, add(add(xij, xji), mul(Polynomial::variable(nv + 1, nv), sub(xij, xji))));
    }
  Polynomial d = determinant(m);
  PolynomialAccumulator acc(nv);
  for (const auto& t : d.terms()) {
    if (t.monomial[nv] != n - 1) continue;
    Monomial r(nv);
    for (std::size_t i = 0; i < nv; ++i) r.set(i, t.monomial[i]);
    acc.add(r, t.coeff);
  }
  return acc.finish();
}

TEST(Stabilizer, BoundaryPolynomial) {
  Polynomial pl = zoo::p_lambda(3);
  EXPECT_EQ(pl, boundary_limit(3));
  // The orbit of P_Lambda is a divisor in the boundary of the orbit of det_3,
  // so its stabilizer is one dimension larger: 17.
  EXPECT_EQ(stabilizer_lie_dim(pl), stabilizer_lie_dim(zoo::det(3)) + 1);
  EXPECT_EQ(stabilizer_lie_dim(pl), 17u);
}

TEST(Property, StabilizerInvariantUnderChangeOfBasis) {
  testkit::Rng rng(69);
  for (const auto& p : {zoo::chow(3), zoo::det(2), zoo::fermat(3, 3)}) {
    auto g = rng.invertible(p.num_vars());
    EXPECT_EQ(stabilizer_lie_dim(substitute(p, LinearSubstitution(g))), stabilizer_lie_dim(p));
  }
}
