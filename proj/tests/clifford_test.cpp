#include <gtest/gtest.h>

#include <memory>

#include "gentwistor/clifford.hpp"
#include "gentwistor/exalg/linalg.hpp"
#include "gentwistor/pairings.hpp"

using namespace gentwistor;
using clifford::CliffordModel;
using clifford::SoAction;
using clifford::SoSign;
using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;

namespace {

const std::vector<std::pair<int, int>> kSupported{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};

std::shared_ptr<const CliffordModel> model(int p, int q) {
  return std::make_shared<const CliffordModel>(clifford::build_clifford(p, q));
}

}  // namespace

TEST(Clifford, AnticommutationAllSignatures) {
  for (auto [p, q] : kSupported) {
    auto m = clifford::build_clifford(p, q);
    const auto& h = m.signature().gram;
    const auto id = Matrix::identity(m.spinor_dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        EXPECT_EQ(m.gamma(i) * m.gamma(j) + m.gamma(j) * m.gamma(i), Scalar(-2) * h(i, j) * id) << p << q << i << j;
    EXPECT_TRUE(clifford::check_anticommutation(m));
  }
}

TEST(Clifford, SpinorDimensions) {
  EXPECT_EQ(clifford::build_clifford(2, 3).spinor_dim(), 4u);
  EXPECT_EQ(clifford::build_clifford(3, 3).spinor_dim(), 8u);
  EXPECT_EQ(clifford::build_clifford(3, 4).spinor_dim(), 8u);
  auto m44 = clifford::build_clifford(4, 4);
  EXPECT_EQ(m44.spinor_dim(), 16u);
  EXPECT_EQ(m44.half_spin_basis(1).size(), 8u);
  EXPECT_EQ(m44.half_spin_basis(-1).size(), 8u);
}

TEST(Clifford, GammaSwapsHalfSpins) {
  for (auto [p, q] : {std::pair{3, 3}, std::pair{4, 4}, std::pair{2, 2}}) {
    auto m = clifford::build_clifford(p, q);
    ASSERT_TRUE(m.has_half_spin());
    for (int sign : {1, -1})
      for (const auto& s : m.half_spin_basis(sign))
        for (std::size_t i = 0; i < m.dim(); ++i) {
          auto img = m.gamma(i) * s;
          if (!exalg::is_zero(img)) EXPECT_EQ(m.chirality_of(img), -sign);
        }
  }
}

TEST(Clifford, Unsupported) {
  EXPECT_THROW(clifford::build_clifford(5, 5), clifford::UnsupportedSignature);
  EXPECT_THROW(clifford::build_clifford(3, 2), clifford::UnsupportedSignature);
  EXPECT_FALSE(clifford::is_supported(2, 4));
}

TEST(Clifford, VectorActionSquares) {
  auto m = clifford::build_clifford(3, 4);
  const auto& sig = m.signature();
  auto v = sig.basis_vector("e+") + sig.basis_vector("e-");
  EXPECT_EQ(sig.h(v, v), Scalar(2));
  for (std::size_t k = 0; k < m.spinor_dim(); ++k) {
    auto s = exalg::unit_vector(m.spinor_dim(), k);
    EXPECT_EQ(clifford::vector_action(m, v, clifford::vector_action(m, v, s)), Scalar(-2) * s);
    EXPECT_TRUE(exalg::is_zero(clifford::vector_action(m, exalg::zero_vector(m.dim()), s)));
  }
  // isotropic vectors square to zero
  for (const char* l : {"e+", "e-", "e1", "f2"}) EXPECT_TRUE((m.gamma(l) * m.gamma(l)).is_zero()) << l;
  EXPECT_THROW(clifford::vector_action(m, Vector(3), Vector(8)), std::exception);
}

TEST(Clifford, RFixesDistinguishedPair) {
  auto m = clifford::build_clifford(2, 3);
  auto chi = pairings::distinguished_chi(m), tau = pairings::distinguished_tau(m);
  EXPECT_EQ(m.gamma("r") * chi, chi);
  EXPECT_EQ(m.gamma("r") * tau, tau);
}

// (3,4) restricted to the inherited directions acts on (tau, chi) as (-xi.tau, xi.chi)
TEST(Clifford, DoublingRestriction) {
  for (auto [p, q] : {std::pair{3, 4}, std::pair{4, 4}}) {
    auto m = clifford::build_clifford(p, q);
    auto base = clifford::build_clifford(p - 1, q - 1);
    const std::size_t s = base.spinor_dim();
    for (std::size_t a = 0; a < base.dim(); ++a) {
      const auto& g = m.gamma(a + 1);
      EXPECT_EQ(g.block(0, 0, s, s), -base.gamma(a));
      EXPECT_EQ(g.block(s, s, s, s), base.gamma(a));
      EXPECT_TRUE(g.block(0, s, s, s).is_zero());
      EXPECT_TRUE(g.block(s, 0, s, s).is_zero());
    }
  }
}

// c fixed from the single triple (e1^f1, e1, s_0), independently of the library's solve
TEST(SoAction, SpinorConstantFromOneTriple) {
  auto m = model(2, 3);
  SoAction so(m);
  const auto& sig = m->signature();
  auto u = sig.basis_vector("e1"), v = sig.basis_vector("f1"), w = sig.basis_vector("e1");
  Matrix comm = exalg::commutator(m->gamma_of(u), m->gamma_of(v));
  Vector Aw = sig.h(u, w) * v - sig.h(v, w) * u;
  // c (comm (w.s) - w.(comm s)) = (Aw).s
  Scalar c;
  bool found = false;
  for (std::size_t k = 0; k < m->spinor_dim() && !found; ++k) {
    auto s = exalg::unit_vector(m->spinor_dim(), k);
    auto lhs = comm * (m->gamma_of(w) * s) - m->gamma_of(w) * (comm * s);
    auto rhs = m->gamma_of(Aw) * s;
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (!lhs[i].is_zero()) {
        c = rhs[i] / lhs[i];
        found = true;
        break;
      }
  }
  ASSERT_TRUE(found);
  EXPECT_EQ(so.spinor_constant(), c);
  EXPECT_EQ(c, Scalar::frac(1, 4));
  EXPECT_TRUE(so.check_derivation());
}

TEST(SoAction, DerivationAndHomomorphismEverywhere) {
  for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{3, 4}, std::pair{4, 4}}) {
    for (auto sign : {SoSign::standard, SoSign::negated}) {
      SoAction so(model(p, q), sign);
      EXPECT_TRUE(so.check_derivation()) << p << q;
      EXPECT_TRUE(so.check_homomorphism()) << p << q;
    }
  }
}

TEST(SoAction, ExplicitDerivationCheck) {
  auto m = model(3, 3);
  SoAction so(m);
  for (std::size_t k = 0; k < so.bivector_dim(); k += 3) {
    auto A = exalg::unit_vector(so.bivector_dim(), k);
    auto VA = so.vector_matrix(A), SA = so.spinor_matrix(A);
    for (std::size_t w = 0; w < m->dim(); ++w) {
      auto ew = exalg::unit_vector(m->dim(), w);
      auto lhs = SA * m->gamma(w) - m->gamma(w) * SA;
      EXPECT_EQ(lhs, m->gamma_of(VA * ew));
    }
  }
}

TEST(SoAction, WedgeConventions) {
  auto m = model(3, 4);
  SoAction so(m), neg(m, SoSign::negated);
  const auto& sig = m->signature();
  EXPECT_TRUE(exalg::is_zero(so.wedge("e1", "e1")));
  EXPECT_TRUE(so.vector_matrix(so.wedge("r", "r")).is_zero());
  auto A = so.wedge("e+", "e-");
  EXPECT_EQ(so.vector_matrix(A) * sig.basis_vector("e+"), Scalar(-1) * sig.basis_vector("e+"));
  EXPECT_EQ(neg.vector_matrix(A) * sig.basis_vector("e+"), sig.basis_vector("e+"));
  // w -> h(u,w)v - h(v,w)u on a generic combination
  auto u = sig.basis_vector("e1") + sig.basis_vector("r"), v = sig.basis_vector("f1") + Scalar(2) * sig.basis_vector("e-");
  auto B = so.wedge(u, v);
  for (std::size_t w = 0; w < m->dim(); ++w) {
    auto ew = exalg::unit_vector(m->dim(), w);
    EXPECT_EQ(so.vector_matrix(B) * ew, sig.h(u, ew) * v - sig.h(v, ew) * u);
  }
  EXPECT_EQ(so.from_vector_matrix(so.vector_matrix(B)), B);
}
