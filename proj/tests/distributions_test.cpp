#include <gtest/gtest.h>

#include "gentwistor/distributions.hpp"
#include "gentwistor/exalg/linalg.hpp"

using namespace gentwistor;
using namespace gentwistor::distributions;
using exalg::Matrix;
using flatmodel::Poly;

namespace {

// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i
PolyField bracket_oracle(const PolyField& x, const PolyField& y) {
  PolyField out = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Poly c;
    for (std::size_t j = 0; j < x.size(); ++j) c += x.comps[j] * y.comps[i].derivative(j) - y.comps[j] * x.comps[i].derivative(j);
    out.comps[i] = c;
  }
  return out;
}

std::vector<std::size_t> growth_oracle(const std::vector<PolyField>& frame, const Point& x, std::size_t n) {
  std::vector<PolyField> level = frame, all = frame;
  std::vector<std::size_t> ranks;
  auto rank_at = [&](const std::vector<PolyField>& fs) {
    std::vector<exalg::Vector> vs;
    for (const auto& f : fs) vs.push_back(f.evaluate(x));
    return exalg::rank_of(vs, n);
  };
  ranks.push_back(rank_at(all));
  while (ranks.back() < n && ranks.size() < 4) {
    std::vector<PolyField> next;
    for (const auto& a : frame)
      for (const auto& b : level) next.push_back(bracket_oracle(a, b));
    all.insert(all.end(), next.begin(), next.end());
    level = next;
    ranks.push_back(rank_at(all));
  }
  return ranks;
}

}  // namespace

TEST(Distribution, FrameSpansKernel) {
  for (auto [p, q, rank] : {std::tuple{2, 3, 2u}, std::tuple{3, 3, 3u}}) {
    FlatContext ctx(p, q);
    auto chi = flatmodel::standard_generic_twistor(ctx);
    auto d = distribution_from_spinor(ctx, chi);
    EXPECT_EQ(d.rank, rank);
    EXPECT_TRUE(d.generic_at_origin);
    EXPECT_TRUE(frame_annihilates(ctx, d, chi));
    for (const auto& x : sample_points(ctx.n())) {
      if (!d.in_cell(x)) continue;
      auto k = pairings::clifford_kernel(ctx.model(), chi.evaluate(x));
      EXPECT_EQ(k.size(), rank);
      for (const auto& e : d.frame) EXPECT_TRUE(exalg::in_span(k, e.evaluate(x)));
    }
  }
}

TEST(Distribution, BracketMatchesOracle) {
  FlatContext ctx(2, 3);
  auto d = distribution_from_spinor(ctx, flatmodel::standard_generic_twistor(ctx));
  auto b = lie_bracket(d.frame[0], d.frame[1]);
  EXPECT_EQ(b, bracket_oracle(d.frame[0], d.frame[1]));
  EXPECT_EQ(lie_bracket(d.frame[1], d.frame[0]), Scalar(-1) * b);
}

TEST(Distribution, GrowthVectors) {
  for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 3}}) {
    FlatContext ctx(p, q);
    auto d = distribution_from_spinor(ctx, flatmodel::standard_generic_twistor(ctx));
    const auto expected = p == 2 ? std::vector<std::size_t>{2, 3, 5} : std::vector<std::size_t>{3, 6};
    const auto points = sample_points(ctx.n());
    EXPECT_EQ(points.size(), 5u);
    for (const auto& x : points) {
      ASSERT_TRUE(d.in_cell(x));
      EXPECT_EQ(growth_vector(d, x), expected);
      EXPECT_EQ(growth_oracle(d.frame, x, ctx.n()), expected);
    }
  }
}

TEST(Distribution, ConstantSpinorNotGeneric) {
  FlatContext ctx(2, 3);
  auto chi0 = pairings::distinguished_chi(ctx.model());
  auto chi = flatmodel::parallel_twistor(ctx, chi0, exalg::Vector(4));
  auto d = distribution_from_spinor(ctx, chi);
  EXPECT_FALSE(d.generic_at_origin);
  EXPECT_LT(growth_vector(d, sample_points(5)[0]).back(), 5u);
}

// For e's in ker chi, f's in ker tau dual under g: 1/4 e1 e2 f1 f2 chi = -chi, so the two frame
// coefficients multiply to -1. In (3,3) e1e2e3f1f2f3 chi = 8 chi.
TEST(AdaptedFrame, CoefficientProducts) {
  for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 3}}) {
    FlatContext ctx(p, q);
    auto chi = flatmodel::standard_generic_twistor(ctx);
    for (const auto& x : sample_points(ctx.n())) {
      auto fr = adapted_frame(ctx, chi, x);
      const auto& m = ctx.model();
      Matrix prod = Matrix::identity(m.spinor_dim());
      for (const auto& e : fr.e) prod = prod * m.gamma_of(e);
      for (const auto& f : fr.f) prod = prod * m.gamma_of(f);
      if (p == 2) {
        EXPECT_EQ(Scalar::frac(1, 4) * (prod * fr.chi), Scalar(-1) * fr.chi);
        EXPECT_EQ(fr.c_e * fr.c_f, Scalar(-1));
        EXPECT_EQ(fr.c_e, Scalar(1));
        EXPECT_EQ(fr.c_f, Scalar(-1));
      } else {
        EXPECT_EQ(prod * fr.chi, Scalar(8) * fr.chi);
        EXPECT_EQ(fr.c_e * fr.c_f, Scalar(8));
      }
      EXPECT_FALSE(fr.all_hold());
      EXPECT_EQ(fr.failures().size(), 1u);
    }
  }
}

TEST(AdaptedFrame, RelationsExceptTheFLine) {
  FlatContext ctx(2, 3);
  auto chi = flatmodel::standard_generic_twistor(ctx);
  auto fr = adapted_frame(ctx, chi, sample_points(5)[2]);
  const auto& m = ctx.model();
  ASSERT_TRUE(fr.r);
  EXPECT_EQ(m.gamma_of(*fr.r) * fr.chi, fr.chi);
  EXPECT_EQ(m.gamma_of(*fr.r) * fr.tau, fr.tau);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(exalg::is_zero(m.gamma_of(fr.e[i]) * fr.chi));
    EXPECT_TRUE(exalg::is_zero(m.gamma_of(fr.f[i]) * fr.tau));
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(m.signature().h(fr.e[i], fr.f[j]), Scalar(i == j ? 1 : 0));
  }
  EXPECT_EQ(m.gamma_of(fr.f[0]) * fr.chi, Scalar(-1) * (m.gamma_of(fr.e[1]) * fr.tau));
  EXPECT_EQ(m.gamma_of(fr.f[1]) * fr.chi, m.gamma_of(fr.e[0]) * fr.tau);
}

TEST(AdaptedFrame, PairingConstants) {
  FlatContext c23(2, 3), c33(3, 3);
  auto k23 = pairing_constants(c23, adapted_frame(c23, flatmodel::standard_generic_twistor(c23), sample_points(5)[0]));
  ASSERT_TRUE(k23.k_r && k23.k_eta);
  EXPECT_EQ(*k23.k_r, Scalar(-1));
  EXPECT_EQ(*k23.k_eta, Scalar(-2));
  auto k33 = pairing_constants(c33, adapted_frame(c33, flatmodel::standard_generic_twistor(c33), sample_points(6)[0]));
  EXPECT_FALSE(k33.k_r);
  ASSERT_TRUE(k33.k_eta);
  EXPECT_EQ(*k33.k_eta, Scalar(-2));
}

// (1 - x1) chi has the same kernel where it is nonzero, and its frame degenerates on x1 = 1
TEST(Distribution, OutsideCellThrows) {
  FlatContext ctx(2, 3);
  auto chi = flatmodel::standard_generic_twistor(ctx);
  PolyField f = PolyField::zero(flatmodel::FieldKind::scalar, 5, 1);
  f.comps[0] = flatmodel::Poly(Scalar(1)) - flatmodel::Poly::variable(0);
  auto d = distribution_from_spinor(ctx, flatmodel::multiply(f, chi));
  EXPECT_THROW(growth_vector(d, Point(3)), OutsideCell);
  Point x{Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
  ASSERT_FALSE(d.in_cell(x));
  EXPECT_THROW(growth_vector(d, x), OutsideCell);
  EXPECT_NO_THROW(growth_vector(d, Point(5)));
}

// Constants of the bracket relations, pointwise: g([e1,e2], r) and [e1,e2] mod D.
TEST(Brackets, PointwiseOracle) {
  FlatContext ctx(2, 3);
  auto chi = flatmodel::standard_generic_twistor(ctx);
  auto x = sample_points(5)[0];
  auto rep = bracket_relations_report(ctx, chi, x);
  EXPECT_TRUE(rep.e1e2_orthogonal_to_D);
  EXPECT_TRUE(rep.e1e2_multiple_of_r);
  EXPECT_EQ(rep.g_e1e2_r, Scalar(2) * Scalar::sqrt2());
  EXPECT_EQ(rep.e1e2_mod_D, Scalar(-2) * Scalar::sqrt2());
  // g(r,r) = -1 ties the two numbers together
  EXPECT_EQ(rep.g_e1e2_r, -rep.e1e2_mod_D);
  EXPECT_EQ(rep.reference_g_e1e2_r, rep.g_e1e2_r);
  EXPECT_NE(rep.reference_e1e2_mod_D, rep.e1e2_mod_D);
}
