#include <gtest/gtest.h>

#include <memory>

#include "gentwistor/exalg/linalg.hpp"
#include "gentwistor/flatmodel.hpp"
#include "gentwistor/kostant.hpp"

using namespace gentwistor;
using exalg::Matrix;
using exalg::Scalar;
using kostant::GradedLieData;

namespace {

struct Pair {
  GradedLieData small, big;
};

Pair make_pair(int p, int q) {
  flatmodel::FlatContext ctx(p, q);
  auto so = std::make_shared<const clifford::SoAction>(ctx.doubled_ptr());
  auto X = pairings::double_spinor(pairings::distinguished_tau(ctx.model()), pairings::distinguished_chi(ctx.model()));
  auto s = stabilizers::stabilizer(so, X);
  auto g = stabilizers::frame_grading(s);
  return {kostant::graded_data(s, g, "small"), kostant::conformal_data(*so, "big")};
}

const Pair& g2() {
  static const Pair p = make_pair(2, 3);
  return p;
}
const Pair& so34() {
  static const Pair p = make_pair(3, 3);
  return p;
}

// ker d_2 ∩ ker d*_2 from the stacked matrix
std::size_t stacked_harmonic_dim(const GradedLieData& d) {
  Matrix a = kostant::differential(d, 2), b = kostant::codifferential(d, 2);
  Matrix st(a.rows() + b.rows(), a.cols());
  st.set_block(0, 0, a);
  st.set_block(a.rows(), 0, b);
  return exalg::kernel(st).size();
}

}  // namespace

TEST(Kostant, GradedDataIsLieAlgebra) {
  for (const auto* pr : {&g2(), &so34()}) {
    EXPECT_TRUE(kostant::check_jacobi(pr->small));
    EXPECT_TRUE(kostant::check_jacobi(pr->big));
    EXPECT_TRUE(kostant::minus_generated_by_degree_minus_one(pr->small));
  }
  EXPECT_EQ(g2().small.dim(), 14u);
  EXPECT_EQ(so34().big.dim(), 28u);
}

TEST(Kostant, SquaresVanish) {
  for (const auto* d : {&g2().small, &so34().small, &so34().big}) {
    for (std::size_t k = 0; k < 2; ++k)
      EXPECT_TRUE((kostant::differential(*d, k + 1) * kostant::differential(*d, k)).is_zero()) << d->name << k;
    for (std::size_t k = 2; k <= 3; ++k)
      EXPECT_TRUE((kostant::codifferential(*d, k - 1) * kostant::codifferential(*d, k)).is_zero()) << d->name << k;
  }
}

TEST(Kostant, Adjointness) {
  for (const auto* d : {&g2().small, &so34().small}) {
    auto a = kostant::check_adjointness(*d);
    EXPECT_TRUE(a.theta_stable);
    EXPECT_TRUE(a.holds);
    EXPECT_EQ(a.lambda, Scalar(1));
  }
}

TEST(Kostant, HarmonicDimensions) {
  auto h5 = kostant::harmonic_module(g2().small);
  EXPECT_EQ(h5.dimension, 5u);
  EXPECT_EQ(stacked_harmonic_dim(g2().small), 5u);
  EXPECT_EQ(h5.by_homogeneity.at(4), 5u);
  auto h27 = kostant::harmonic_module(so34().small);
  EXPECT_EQ(h27.dimension, 27u);
  EXPECT_EQ(stacked_harmonic_dim(so34().small), 27u);
  EXPECT_EQ(h27.by_homogeneity.at(3), 27u);
  for (const auto* h : {&h5, &h27}) {
    EXPECT_TRUE(h->agree);
    EXPECT_EQ(h->laplacian_kernel, h->dimension);
    EXPECT_TRUE(h->regular);
    EXPECT_TRUE(h->g0_invariant);
  }
}

TEST(Kostant, HarmonicBasisIsClosedAndCoclosed) {
  const auto& d = so34().small;
  auto h = kostant::harmonic_module(d);
  auto D = kostant::differential(d, 2), C = kostant::codifferential(d, 2);
  for (const auto& v : h.basis) {
    EXPECT_TRUE(exalg::is_zero(D * v));
    EXPECT_TRUE(exalg::is_zero(C * v));
  }
}

TEST(Kostant, NormalityBothConstructions) {
  for (const auto* pr : {&g2(), &so34()}) {
    auto h = kostant::harmonic_module(pr->small);
    auto n = kostant::normality_check(pr->small, pr->big, h);
    EXPECT_EQ(n.checked, h.dimension);
    EXPECT_EQ(n.nonzero, 0u);
    EXPECT_TRUE(n.zero_maps_to_zero);
    // direct: big codifferential of I(harmonic) vanishes
    auto I = kostant::inclusion_map(pr->small, pr->big);
    auto C = kostant::codifferential(pr->big, 2);
    for (const auto& v : h.basis) EXPECT_TRUE(exalg::is_zero(C * (I * v)));
  }
}

// A cochain that is not harmonic has nonzero d or d*.
TEST(Kostant, NonHarmonicDetected) {
  const auto& d = g2().small;
  kostant::CochainSpace c2(d, 2);
  auto D = kostant::differential(d, 2), C = kostant::codifferential(d, 2);
  std::size_t nonharmonic = 0;
  for (std::size_t i = 0; i < c2.dim(); ++i) {
    auto e = exalg::unit_vector(c2.dim(), i);
    if (!exalg::is_zero(D * e) || !exalg::is_zero(C * e)) ++nonharmonic;
  }
  EXPECT_GT(nonharmonic, 0u);
}
