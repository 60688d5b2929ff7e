#include <gtest/gtest.h>

#include <memory>

#include "gentwistor/exalg/linalg.hpp"
#include "gentwistor/flatmodel.hpp"
#include "gentwistor/stabilizers.hpp"

using namespace gentwistor;
using clifford::SoAction;
using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;
using stabilizers::Case;

namespace {

struct Doubled {
  flatmodel::FlatContext ctx;
  std::shared_ptr<const SoAction> so;
  Vector X;
  explicit Doubled(int p, int q) : ctx(p, q) {
    so = std::make_shared<const SoAction>(ctx.doubled_ptr());
    X = pairings::double_spinor(pairings::distinguished_tau(ctx.model()), pairings::distinguished_chi(ctx.model()));
  }
};

// kernel of A -> rho(A) X, built column by column here
std::size_t stabilizer_dim_oracle(const SoAction& so, const Vector& X) {
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < so.bivector_dim(); ++k) cols.push_back(so.basis_spinor_matrix(k) * X);
  return exalg::kernel(Matrix::from_columns(cols, X.size())).size();
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  auto r = exalg::rank_of(both, dim);
  return r == exalg::rank_of(a, dim) && r == exalg::rank_of(b, dim);
}

// dim of {T : T M_i = M_i T}, the commutant, by solving the linear system directly
std::size_t commutant_dim(const std::vector<Matrix>& mats) {
  const std::size_t n = mats.front().rows();
  std::vector<Vector> rows;
  for (const auto& M : mats)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vector row(n * n);
        // (T M - M T)_{ij} = sum_k T_ik M_kj - M_ik T_kj
        for (std::size_t k = 0; k < n; ++k) {
          row[i * n + k] += M(k, j);
          row[k * n + j] -= M(i, k);
        }
        rows.push_back(row);
      }
  return exalg::kernel(Matrix::from_rows(rows, n * n)).size();
}

}  // namespace

TEST(Stabilizer, DimensionsMatchOracle) {
  for (auto [p, q, dim] : {std::tuple{2, 3, 14u}, std::tuple{3, 3, 21u}}) {
    Doubled d(p, q);
    auto s = stabilizers::stabilizer(d.so, d.X);
    EXPECT_EQ(s.dim(), dim);
    EXPECT_EQ(stabilizer_dim_oracle(*d.so, d.X), dim);
    EXPECT_TRUE(stabilizers::annihilates(s, d.X));
    EXPECT_TRUE(stabilizers::is_closed(s));
    for (const auto& a : s.basis) EXPECT_TRUE(exalg::is_zero(d.so->spinor_matrix(a) * d.X));
  }
}

// The null cone is 7-dimensional too, so a null spinor also has a 14-dimensional stabilizer, but it
// preserves the Clifford kernel of the spinor and so acts reducibly on vectors.
TEST(Stabilizer, NullSpinorActsReducibly) {
  Doubled d(2, 3);
  auto chi = pairings::double_spinor(exalg::zero_vector(4), pairings::distinguished_chi(d.ctx.model()));
  ASSERT_TRUE(d.ctx.B()(chi, chi).is_zero());
  auto s = stabilizers::stabilizer(d.so, chi);
  EXPECT_EQ(s.dim(), 14u);
  auto k = pairings::clifford_kernel(d.ctx.doubled(), chi);
  EXPECT_EQ(k.size(), 3u);
  EXPECT_TRUE(stabilizers::is_invariant(stabilizers::rep_matrices(s, stabilizers::Rep::vector), k));
  EXPECT_TRUE(pairings::clifford_kernel(d.ctx.doubled(), d.X).empty());
}

TEST(Stabilizer, OppositeSignSameSpan) {
  for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 3}}) {
    Doubled d(p, q);
    auto neg = std::make_shared<const SoAction>(d.ctx.doubled_ptr(), clifford::SoSign::negated);
    auto a = stabilizers::stabilizer(d.so, d.X), b = stabilizers::stabilizer(neg, d.X);
    EXPECT_TRUE(same_span(a.basis, b.basis, d.so->bivector_dim()));
  }
}

TEST(Stabilizer, GradingDims) {
  Doubled g2(2, 3), so34(3, 3);
  auto s = stabilizers::stabilizer(g2.so, g2.X);
  auto g = stabilizers::frame_grading(s);
  EXPECT_EQ(g.dims(), (std::vector<std::size_t>{2, 1, 2, 4, 2, 1, 2}));
  EXPECT_EQ(g.dims(), stabilizers::listed_dims(Case::g2));
  EXPECT_TRUE(stabilizers::check_bracket_grading(s, g));
  auto t = stabilizers::stabilizer(so34.so, so34.X);
  auto h = stabilizers::frame_grading(t);
  EXPECT_EQ(h.dims(), (std::vector<std::size_t>{3, 3, 9, 3, 3}));
  EXPECT_TRUE(stabilizers::check_bracket_grading(t, h));
}

// [g_i, g_j] in g_{i+j}, checked here through the E-eigenvalue of each bracket
TEST(Stabilizer, BracketGradingByEigenvalue) {
  Doubled d(2, 3);
  auto s = stabilizers::stabilizer(d.so, d.X);
  auto g = stabilizers::frame_grading(s);
  for (const auto& [i, ci] : g.components)
    for (const auto& [j, cj] : g.components)
      for (const auto& a : ci)
        for (const auto& b : cj) {
          auto c = d.so->bracket(a, b);
          if (exalg::is_zero(c)) continue;
          EXPECT_EQ(d.so->bracket(g.E, c), Scalar(i + j) * c);
        }
}

// The listed span elements that are not annihilating X, confirmed by acting on X directly.
TEST(Stabilizer, ListedNonMembers) {
  for (auto [p, q, which, missing] : {std::tuple{2, 3, Case::g2, 4u}, std::tuple{3, 3, Case::so34, 6u}}) {
    Doubled d(p, q);
    auto s = stabilizers::stabilizer(d.so, d.X);
    auto rep = stabilizers::verify_graded_basis(s, which);
    std::size_t non_members = 0;
    for (const auto& e : rep.elements) {
      const bool kills = exalg::is_zero(d.so->spinor_matrix(e.element) * d.X);
      EXPECT_EQ(e.member, kills) << e.text;
      if (!kills) ++non_members;
    }
    EXPECT_EQ(non_members, missing);
    EXPECT_FALSE(rep.all_members());
    EXPECT_THROW(stabilizers::require_members(rep), stabilizers::MembershipError);
    EXPECT_TRUE(rep.shapes_span);
  }
}

TEST(Branching, VectorRepIrreducibleForG2) {
  Doubled d(2, 3);
  auto s = stabilizers::stabilizer(d.so, d.X);
  auto vec = stabilizers::rep_matrices(s, stabilizers::Rep::vector);
  EXPECT_EQ(commutant_dim(vec), 1u);
  std::vector<Vector> all;
  for (std::size_t i = 0; i < 7; ++i) all.push_back(exalg::unit_vector(7, i));
  EXPECT_TRUE(stabilizers::probe_irreducible(vec, all, all));
}

// Delta^{3,4} = RX + X-perp under g2, with v -> v.X an isomorphism onto X-perp
TEST(Branching, SpinSplitsForG2) {
  Doubled d(2, 3);
  auto s = stabilizers::stabilizer(d.so, d.X);
  const auto& B = d.ctx.B();
  std::vector<Vector> images;
  for (std::size_t i = 0; i < 7; ++i)
    images.push_back(clifford::vector_action(d.ctx.doubled(), exalg::unit_vector(7, i), d.X));
  EXPECT_EQ(exalg::rank_of(images, 8), 7u);
  for (const auto& y : images) EXPECT_TRUE(B(y, d.X).is_zero());
  stabilizers::PerpIso iso(d.ctx.doubled(), B, d.X);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(iso.inverse(iso.forward(exalg::unit_vector(7, i))), exalg::unit_vector(7, i));
  auto g = stabilizers::frame_grading(s);
  auto br = stabilizers::branching(s, g, B, d.X, Case::g2);
  EXPECT_TRUE(br.all_hold());
}

// For so(3,4) inside so(4,4) the vector representation is 8-dimensional while X-perp in Delta+ is 7-dimensional.
TEST(Branching, So34VectorRepDimensionMismatch) {
  Doubled d(3, 3);
  auto s = stabilizers::stabilizer(d.so, d.X);
  auto g = stabilizers::frame_grading(s);
  auto br = stabilizers::branching(s, g, d.ctx.B(), d.X, Case::so34);
  const auto plus = d.ctx.doubled().half_spin_basis(1);
  Matrix gram(plus.size(), 1);
  for (std::size_t i = 0; i < plus.size(); ++i) gram(i, 0) = d.ctx.B()(plus[i], d.X);
  EXPECT_EQ(exalg::kernel(gram.transpose()).size(), 7u);
  EXPECT_EQ(d.ctx.doubled().dim(), 8u);
  bool vector_fact_fails = false;
  for (const auto& f : br.facts)
    if (!f.holds) vector_fact_fails = true;
  EXPECT_TRUE(vector_fact_fails);
}
