#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gentwistor/exalg/linalg.hpp"

using namespace gentwistor::exalg;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, bool irrational = false) {
  std::uniform_int_distribution<long> d(-4, 4);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = irrational ? Scalar(mpq_class(d(rng), 3), mpq_class(d(rng))) : Scalar(d(rng));
  return m;
}

// Leibniz expansion, only for small matrices
Scalar leibniz(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Scalar total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Scalar term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(Scalar, Sqrt2Squares) {
  EXPECT_EQ(Scalar::sqrt2() * Scalar::sqrt2(), Scalar(2));
  EXPECT_FALSE(Scalar::sqrt2().is_rational());
}

TEST(Scalar, InverseAndNorm) {
  for (auto s : {Scalar::frac(3, 7, 1, 2), Scalar::frac(-1, 1, 5, 3), Scalar(mpq_class(0), mpq_class(-2))}) {
    EXPECT_EQ(s * s.inverse(), Scalar(1));
    EXPECT_EQ(s * s.conjugate(), Scalar(s.norm()));
  }
  EXPECT_THROW(Scalar().inverse(), DivisionByZero);
  EXPECT_FALSE(Scalar().try_inverse());
}

TEST(Scalar, CanonicalStrings) {
  EXPECT_EQ(Scalar::frac(2, 4).to_string(), "1/2");
  EXPECT_EQ(Scalar(mpq_class(0), mpq_class(-4)).to_string(), "0-4*r2");
  EXPECT_EQ(Scalar::frac(1, 3, 1, 1).to_string(), "1/3+1*r2");
  for (auto s : {Scalar(0), Scalar(-7), Scalar::frac(-5, 6, 7, 9), Scalar::sqrt2()})
    EXPECT_EQ(Scalar::parse(s.to_string()), s) << s.to_string();
  EXPECT_THROW(Scalar::parse("1/0"), std::exception);
  EXPECT_THROW(Scalar::parse("abc"), ParseError);
}

TEST(Scalar, SignOfIrrational) {
  EXPECT_EQ(Scalar::frac(-1, 1, 1, 1).sign(), 1);   // -1 + sqrt2
  EXPECT_EQ(Scalar::frac(3, 2, -1, 1).sign(), 1);   // 1.5 - sqrt2
  EXPECT_EQ(Scalar::frac(7, 5, -1, 1).sign(), -1);  // 1.4 - sqrt2
  EXPECT_DOUBLE_EQ(Scalar::frac(1, 2, 1, 1).to_double(), 0.5 + std::sqrt(2.0));
}

TEST(Linalg, DeterminantMatchesLeibniz) {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(rng, 4, 4, t % 2);
    EXPECT_EQ(determinant(a), leibniz(a));
  }
}

TEST(Linalg, RankNullity) {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(rng, 3, 5);
    if (t % 3 == 0) a = Matrix::from_rows({a.row(0), a.row(1), a.row(0) + a.row(1)});
    auto k = kernel(a);
    EXPECT_EQ(rank(a) + k.size(), a.cols());
    for (const auto& v : k) EXPECT_TRUE(is_zero(a * v));
  }
}

TEST(Linalg, InverseAndSolve) {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto a = random_matrix(rng, 4, 4, true);
    if (determinant(a).is_zero()) continue;
    auto inv = inverse(a);
    ASSERT_TRUE(inv);
    EXPECT_EQ(a * *inv, Matrix::identity(4));
    Vector b{Scalar(1), Scalar(-2), Scalar::sqrt2(), Scalar(0)};
    auto x = solve(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(a * *x, b);
  }
  Matrix singular = Matrix::from_rows({{1, 2}, {2, 4}});
  EXPECT_FALSE(inverse(singular));
  EXPECT_FALSE(solve(singular, Vector{1, 0}));
}

// Jacobi: with all leading minors nonzero, the number of negative eigenvalues is the number of
// sign changes in 1, D1, ..., Dn.
TEST(Linalg, SignatureMatchesLeadingMinors) {
  std::mt19937 rng(5);
  int tested = 0;
  for (int t = 0; t < 40 && tested < 10; ++t) {
    auto r = random_matrix(rng, 5, 5);
    Matrix s = r + r.transpose();
    std::vector<Scalar> minors{Scalar(1)};
    for (std::size_t k = 1; k <= 5; ++k) minors.push_back(determinant(s.block(0, 0, k, k)));
    if (std::any_of(minors.begin(), minors.end(), [](const Scalar& m) { return m.is_zero(); })) continue;
    std::size_t changes = 0;
    for (std::size_t k = 1; k < minors.size(); ++k)
      if (minors[k].sign() != minors[k - 1].sign()) ++changes;
    EXPECT_EQ(signature(s), (Inertia{5 - changes, changes, 0}));
    ++tested;
  }
  EXPECT_GT(tested, 0);
  EXPECT_EQ(signature(Matrix::from_rows({{0, 1}, {1, 0}})), (Inertia{1, 1, 0}));
}

TEST(Linalg, SpanReducerAndIntersection) {
  std::vector<Vector> a{{1, 0, 0}, {0, 1, 0}}, b{{0, 1, 1}, {0, 0, 1}};
  SpanReducer r(3, a);
  EXPECT_TRUE(r.contains({2, -3, 0}));
  EXPECT_FALSE(r.contains({0, 0, 1}));
  auto i = intersection(a, b, 3);
  ASSERT_EQ(i.size(), 1u);
  EXPECT_TRUE(in_span({{0, 1, 0}}, i[0]));
  auto c = coordinates(a, {3, 4, 0});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Vector{3, 4}));
}
