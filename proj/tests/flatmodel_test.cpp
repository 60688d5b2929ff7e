#include <gtest/gtest.h>

#include "gentwistor/exalg/linalg.hpp"
#include "gentwistor/flatmodel.hpp"

using namespace gentwistor;
using namespace gentwistor::flatmodel;
using exalg::Scalar;
using exalg::Vector;

namespace {

const FlatContext& ctx23() {
  static const FlatContext c(2, 3);
  return c;
}
const FlatContext& ctx33() {
  static const FlatContext c(3, 3);
  return c;
}

// conformal Killing operator written out from the definition
PolyField ckf_oracle(const FlatContext& ctx, const PolyField& xi) {
  const std::size_t n = ctx.n();
  std::vector<Poly> low(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) low[a] += ctx.g()(a, b) * xi.comps[b];
  Poly div;
  for (std::size_t a = 0; a < n; ++a) div += xi.comps[a].derivative(a);
  PolyField out = PolyField::zero(FieldKind::bilinear, n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.comps[a * n + b] = low[b].derivative(a) + low[a].derivative(b) - Scalar::frac(2, static_cast<long>(n)) * ctx.g()(a, b) * div;
  return out;
}

// trace-free Hessian from the definition
PolyField aes_oracle(const FlatContext& ctx, const Poly& s) {
  const std::size_t n = ctx.n();
  Poly lap;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) lap += ctx.ginv()(a, b) * s.derivative(a).derivative(b);
  PolyField out = PolyField::zero(FieldKind::bilinear, n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.comps[a * n + b] = s.derivative(a).derivative(b) - Scalar::frac(1, static_cast<long>(n)) * ctx.g()(a, b) * lap;
  return out;
}

}  // namespace

TEST(Poly, Arithmetic) {
  const std::size_t n = 3;
  Poly x = Poly::variable(0), y = Poly::variable(1);
  Poly f = x * x * y + Scalar(3) * y - Scalar::sqrt2();
  EXPECT_EQ(f.degree(), 3);
  EXPECT_EQ(f.derivative(0), Scalar(2) * x * y);
  EXPECT_EQ(f.evaluate({Scalar(2), Scalar(-1), Scalar(5)}), Scalar(-4) - Scalar(3) - Scalar::sqrt2());
  EXPECT_EQ(f.homogeneous_part(3), x * x * y);
  EXPECT_EQ(Poly::term(parse_monomial("x0^2*x1", n), Scalar(1)), x * x * y);
  EXPECT_TRUE((f - f).is_zero());
}

TEST(Poly, MonomialText) {
  for (const auto& t : {"1", "x0", "x0^2*x3", "x1*x2*x4^3"}) EXPECT_EQ(monomial_text(parse_monomial(t, 5), 5), t);
  EXPECT_EQ(monomials(3, 2).size(), 6u);
  EXPECT_EQ(total_degree(parse_monomial("x0^2*x3", 5)), 3);
  EXPECT_THROW(parse_monomial("x9", 5), std::exception);
}

TEST(Solver, DimensionsAndStabilization) {
  auto tw = solve_kernel(ctx23(), Equation::twistor);
  EXPECT_EQ(tw.dim(), 2 * ctx23().spinor_dim());
  EXPECT_EQ(tw.cumulative, (std::vector<std::size_t>{4, 8, 8, 8}));
  for (int c : {1, -1}) EXPECT_EQ(solve_kernel(ctx33(), Equation::twistor, 3, c).dim(), 8u);
  for (const auto* c : {&ctx23(), &ctx33()}) {
    const std::size_t n = c->n();
    auto aes = solve_kernel(*c, Equation::aes);
    auto ckf = solve_kernel(*c, Equation::ckf);
    EXPECT_EQ(aes.dim(), n + 2);
    EXPECT_EQ(ckf.dim(), (n + 1) * (n + 2) / 2);
    EXPECT_EQ(aes.cumulative[2], aes.cumulative[3]);
    EXPECT_EQ(ckf.cumulative[2], ckf.cumulative[3]);
  }
}

TEST(Solver, BasesSolveIndependentOperators) {
  for (const auto* c : {&ctx23(), &ctx33()}) {
    for (const auto& xi : solve_kernel(*c, Equation::ckf).basis) {
      EXPECT_TRUE(ckf_oracle(*c, xi).is_zero());
      EXPECT_EQ(ckf_operator(*c, xi), ckf_oracle(*c, xi));
    }
    for (const auto& s : solve_kernel(*c, Equation::aes).basis) EXPECT_TRUE(aes_oracle(*c, s.comps[0]).is_zero());
  }
  // a non-solution is rejected by both
  PolyField xi = PolyField::zero(FieldKind::vector, 5, 5);
  xi.comps[0] = Poly::variable(1) * Poly::variable(1);
  EXPECT_FALSE(ckf_oracle(ctx23(), xi).is_zero());
  EXPECT_FALSE(in_span(solve_kernel(ctx23(), Equation::ckf).basis, xi));
}

TEST(Solver, TwistorGammaTraceVanishes) {
  // for any spinor field the twistor operator is gamma-traceless
  PolyField chi = PolyField::zero(FieldKind::spinor, 5, 4, Weight{kTwistorWeight});
  chi.comps[0] = Poly::variable(0) * Poly::variable(3);
  chi.comps[2] = Poly::variable(4) + Scalar(2);
  EXPECT_TRUE(gamma_trace(ctx23(), twistor_operator(ctx23(), chi)).is_zero());
  EXPECT_FALSE(twistor_operator(ctx23(), chi).is_zero());
}

TEST(Solver, DiracOfPositionTimesConstant) {
  for (const auto* c : {&ctx23(), &ctx33()}) {
    auto tau0 = pairings::distinguished_tau(c->model());
    auto f = clifford_multiply(*c, position_vector(*c), PolyField::constant(FieldKind::spinor, c->n(), tau0));
    auto d = dirac(*c, f);
    ASSERT_TRUE(d.is_constant());
    EXPECT_EQ(d.constant_value(), Scalar(-static_cast<long>(c->n())) * tau0);
  }
}

TEST(Splitting, EverySolutionParallel) {
  for (const auto* c : {&ctx23(), &ctx33()}) {
    for (const auto& chi : solve_kernel(*c, Equation::twistor).basis) EXPECT_TRUE(is_parallel(*c, l0_s(*c, chi)));
    for (const auto& s : solve_kernel(*c, Equation::aes).basis) EXPECT_TRUE(is_parallel(*c, l0_t(*c, s)));
    auto ckf = solve_kernel(*c, Equation::ckf).basis;
    auto e = solve_adjoint_embedding(*c, ckf);
    EXPECT_EQ(e.solution_dimension, 1u);
    EXPECT_EQ(std::vector<Scalar>({e.alpha, e.beta, e.gamma, e.delta}),
              std::vector<Scalar>({Scalar(1), Scalar(-1), Scalar(1), Scalar(-1)}));
    for (const auto& xi : ckf) EXPECT_TRUE(adjoint_is_parallel(*c, l0_a(*c, xi), e));
  }
}

// With gamma_c chi in the lower slot the spin tractor of a twistor spinor is not parallel.
TEST(Splitting, AlternativeSpinConnectionFails) {
  const auto& c = ctx23();
  auto chi = standard_generic_twistor(c);
  auto t = l0_s(c, chi);
  ASSERT_TRUE(is_parallel(c, t));
  const auto& lower = t.slots[1];
  bool nonzero = false;
  for (std::size_t a = 0; a < c.n(); ++a) {
    auto alt = lower.derivative(a) + (Scalar(1) / Scalar::sqrt2()) * apply(c.gamma_lower(a), lower);
    if (!alt.is_zero()) nonzero = true;
  }
  EXPECT_TRUE(nonzero);
}

TEST(Splitting, NonSolutionNotParallel) {
  PolyField s = PolyField::zero(FieldKind::scalar, 5, 1, Weight{kScaleWeight});
  s.comps[0] = Poly::variable(0) * Poly::variable(0);
  EXPECT_FALSE(is_parallel(ctx23(), l0_t(ctx23(), s)));
}

TEST(Splitting, SlotWeights) {
  const auto& c = ctx33();
  auto chi = standard_generic_twistor(c);
  EXPECT_EQ(slot_labels(l0_s(c, chi)), slot_weights(TractorKind::spin));
  auto s = solve_kernel(c, Equation::aes).basis[0];
  EXPECT_EQ(slot_labels(l0_t(c, s)), slot_weights(TractorKind::standard));
  auto xi = solve_kernel(c, Equation::ckf).basis[0];
  EXPECT_EQ(slot_labels(l0_a(c, xi)), slot_weights(TractorKind::adjoint));
  EXPECT_EQ(slot_weights(TractorKind::spin), (std::vector<Weight>{Weight{-1}, Weight{1}}));
  EXPECT_EQ(pi0(l0_s(c, chi)), chi);
}

TEST(Tractors, CliffordSquare) {
  const auto& c = ctx23();
  auto s = constant_standard_tractor(c, Scalar(2), Vector{1, 0, Scalar(-1), 0, 3}, Scalar::frac(1, 2));
  auto x = spin_tractor(PolyField::constant(FieldKind::spinor, 5, Vector{1, 2, 0, -1}),
                        PolyField::constant(FieldKind::spinor, 5, Vector{0, 1, 1, Scalar::sqrt2()}));
  auto hss = tractor_metric(c, s, s);
  ASSERT_TRUE(hss.is_constant());
  auto ssx = tractor_clifford(c, s, tractor_clifford(c, s, x));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(ssx.slots[i], (-hss.constant_term()) * x.slots[i]);
}

TEST(Twistors, GenericAndNullSeeds) {
  const auto& c = ctx23();
  auto chi = standard_generic_twistor(c);
  EXPECT_TRUE(twistor_operator(c, chi).is_zero());
  EXPECT_TRUE(pair(c.b(), chi, dirac_companion(c, chi)).is_constant());
  EXPECT_FALSE(pair(c.b(), chi, dirac_companion(c, chi)).is_zero());
  auto chi0 = pairings::distinguished_chi(c.model());
  EXPECT_THROW(generic_twistor(c, chi0, Vector(4)), NullSeed);
  auto constant = parallel_twistor(c, chi0, Vector(4));
  EXPECT_TRUE(constant.is_constant());
  EXPECT_TRUE(pair(c.b(), constant, dirac_companion(c, constant)).is_zero());
}
