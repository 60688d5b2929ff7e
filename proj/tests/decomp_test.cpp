#include <gtest/gtest.h>

#include "gentwistor/decomp.hpp"
#include "gentwistor/exalg/linalg.hpp"

using namespace gentwistor;
using namespace gentwistor::decomp;
using exalg::Matrix;
using flatmodel::Equation;
using flatmodel::FieldKind;

namespace {

struct Setup {
  FlatContext ctx;
  PolyField chi;
  std::vector<PolyField> aes, ckf, tw, negative;
  explicit Setup(int p, int q) : ctx(p, q) {
    chi = flatmodel::standard_generic_twistor(ctx);
    aes = flatmodel::solve_kernel(ctx, Equation::aes).basis;
    ckf = flatmodel::solve_kernel(ctx, Equation::ckf).basis;
    if (p == q) {
      tw = flatmodel::solve_kernel(ctx, Equation::twistor, 3, 1).basis;
      negative = flatmodel::solve_kernel(ctx, Equation::twistor, 3, -1).basis;
    } else {
      tw = flatmodel::solve_kernel(ctx, Equation::twistor).basis;
    }
  }
};

const Setup& s23() {
  static const Setup s(2, 3);
  return s;
}
const Setup& s33() {
  static const Setup s(3, 3);
  return s;
}

PolyField combination(const std::vector<PolyField>& basis) {
  PolyField out = basis[0];
  for (std::size_t i = 1; i < basis.size(); ++i) out += Scalar(static_cast<long>(i * i) - 3) * basis[i];
  return out;
}

// dim {v : i_v phi = 0} at x, from the form components
std::size_t kernel_oracle(const PolyField& form, std::size_t k, std::size_t n, const Point& x) {
  std::vector<Vector> rows;
  for (const auto& rest : flatmodel::form_indices(n, k - 1)) {
    Vector row(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> idx{a};
      idx.insert(idx.end(), rest.begin(), rest.end());
      row[a] = form_value(form, idx, x);
    }
    rows.push_back(row);
  }
  return n - exalg::rank(Matrix::from_rows(rows, n));
}

}  // namespace

TEST(TwPerp, SevenDimensional) {
  for (const auto* s : {&s23(), &s33()}) {
    auto perp = tw_perp(s->ctx, s->chi, s->tw);
    EXPECT_EQ(perp.twistor_dim, 8u);
    EXPECT_EQ(perp.basis.size(), 7u);
    for (const auto& eta : perp.basis) {
      EXPECT_TRUE(flatmodel::twistor_operator(s->ctx, eta).is_zero());
      auto direct = flatmodel::pair(s->ctx.b(), eta, flatmodel::dirac(s->ctx, s->chi)) +
                    flatmodel::pair(s->ctx.b(), s->chi, flatmodel::dirac(s->ctx, eta));
      EXPECT_TRUE(direct.is_zero());
    }
    // chi itself is a twistor with nonzero defect
    EXPECT_FALSE(perp_defect(s->ctx, s->chi, s->chi).is_zero());
  }
}

TEST(TwoFormAction, UnitForm) {
  const auto& ctx = s23().ctx;
  PolyField w = PolyField::zero(FieldKind::form, 5, 10);
  w.form_degree = 2;
  w.comps[0] = Poly(Scalar(1));  // (0,1)
  PolyField spinor = PolyField::constant(FieldKind::spinor, 5, Vector{1, 2, 3, 4});
  auto out = two_form_action(ctx, w, spinor);
  Matrix half = Scalar::frac(1, 2) * (ctx.gamma_upper(0) * ctx.gamma_upper(1) - ctx.gamma_upper(1) * ctx.gamma_upper(0));
  EXPECT_EQ(out.constant_value(), half * Vector({1, 2, 3, 4}));
}

TEST(Constants, ResolvedValues) {
  auto r23 = resolve_constants(s23().ctx, s23().chi, s23().aes, s23().ckf);
  ASSERT_TRUE(r23.solved());
  // hand computation of the aes -> twistor coefficient gives -2/n
  EXPECT_EQ(r23.resolved.aes_twistor, Scalar::frac(-2, 5));
  EXPECT_EQ(r23.resolved.ckf_dirac, Scalar::frac(2, 5));
  EXPECT_FALSE(r23.printed_aes_lands);
  EXPECT_FALSE(r23.printed_ckf_lands);
  EXPECT_TRUE(r23.printed_after_convention_change());
  auto r33 = resolve_constants(s33().ctx, s33().chi, s33().aes, s33().ckf);
  ASSERT_TRUE(r33.solved());
  EXPECT_EQ(r33.resolved.aes_twistor, Scalar::frac(-2, 6));
  EXPECT_EQ(r33.resolved.ckf_dirac, Scalar::frac(1, 3));
  EXPECT_EQ(r33.resolved.ckf_divergence, Scalar::frac(1, 6));
  EXPECT_EQ(r33.delta_factor(), Scalar(1));
  EXPECT_TRUE(r33.printed_after_convention_change());
}

TEST(Constants, SolveAffine) {
  PolyField a = PolyField::constant(FieldKind::scalar, 1, Vector{3});
  PolyField m = PolyField::constant(FieldKind::scalar, 1, Vector{2});
  auto t = solve_affine({a}, {{m}});
  ASSERT_TRUE(t);
  EXPECT_EQ((*t)[0], Scalar::frac(-3, 2));
  PolyField zero = PolyField::constant(FieldKind::scalar, 1, Vector{0});
  EXPECT_FALSE(solve_affine({a}, {{zero}}));
}

TEST(Roundtrip, Signature23) {
  const auto& s = s23();
  auto K = resolve_constants(s.ctx, s.chi, s.aes, s.ckf).resolved;
  auto perp = tw_perp(s.ctx, s.chi, s.tw).basis;
  FieldMap to_tw = [&](const PolyField& x) { return aes_to_twistor23(s.ctx, x, s.chi, K); };
  FieldMap to_aes = [&](const PolyField& e) { return twistor_to_aes23(s.ctx, e, s.chi); };
  auto rt = roundtrip(s.aes, to_tw, to_aes);
  ASSERT_TRUE(rt.nonzero());
  EXPECT_EQ(*rt.constant, -Scalar::sqrt2());
  EXPECT_EQ(roundtrip(perp, to_aes, to_tw).constant, -Scalar::sqrt2());
  auto sigma = combination(s.aes);
  EXPECT_EQ(to_aes(to_tw(sigma)), (-Scalar::sqrt2()) * sigma);
  EXPECT_TRUE(lands_in(s.aes, to_tw, perp));

  Decomposer d{s.ctx, s.chi, K};
  EXPECT_EQ(roundtrip(s.aes, d.back(), d.forward()).constant, Scalar(6));
  EXPECT_TRUE(lands_in(s.ckf, d.forward(), s.aes));
  EXPECT_TRUE(lands_in(s.aes, d.back(), s.ckf));
}

TEST(Roundtrip, Signature33) {
  const auto& s = s33();
  auto K = resolve_constants(s.ctx, s.chi, s.aes, s.ckf).resolved;
  auto perp = tw_perp(s.ctx, s.chi, s.tw).basis;
  Decomposer d{s.ctx, s.chi, K};
  auto rt = roundtrip(perp, d.back(), d.forward());
  EXPECT_EQ(rt.constant, Scalar(-4) * Scalar::sqrt2());
  auto eta = combination(perp);
  EXPECT_EQ(d.forward()(d.back()(eta)), (Scalar(-4) * Scalar::sqrt2()) * eta);
  FieldMap to_neg = [&](const PolyField& x) { return aes_to_negative_twistor33(s.ctx, x, s.chi, K); };
  FieldMap from_neg = [&](const PolyField& e) { return negative_twistor_to_aes33(s.ctx, e, s.chi); };
  EXPECT_TRUE(lands_in(s.aes, to_neg, s.negative));
  EXPECT_EQ(roundtrip(s.aes, to_neg, from_neg).constant, -Scalar::sqrt2());
  EXPECT_EQ(roundtrip(s.negative, from_neg, to_neg).constant, -Scalar::sqrt2());
}

// the printed coefficients do not make the aes map land in the twistor space
TEST(Roundtrip, PrintedCoefficientsMissTarget) {
  const auto& s = s23();
  auto P = printed_constants(s.ctx);
  FieldMap to_tw = [&](const PolyField& x) { return aes_to_twistor23(s.ctx, x, s.chi, P); };
  EXPECT_FALSE(lands_in(s.aes, to_tw, s.tw));
}

TEST(Split, DirectSums) {
  for (const auto* s : {&s23(), &s33()}) {
    auto K = resolve_constants(s->ctx, s->chi, s->aes, s->ckf).resolved;
    Decomposer d{s->ctx, s->chi, K};
    const bool two = s->ctx.p() == 2;
    auto complement = two ? s->aes : tw_perp(s->ctx, s->chi, s->tw).basis;
    auto dec = decompose_ckf_space(d, s->ckf, complement);
    EXPECT_EQ(dec.aut_rank, two ? 14u : 21u);
    EXPECT_EQ(dec.complement_rank, 7u);
    EXPECT_TRUE(dec.direct());
    EXPECT_TRUE(dec.aut_preserves_distribution);
    EXPECT_TRUE(dec.forward_kills_aut);
    EXPECT_EQ(dec.automorphism_dim, dec.aut_rank);
    EXPECT_TRUE(dec.automorphisms_fixed);

    auto xi = combination(s->ckf);
    auto sp = d.split(xi, dec.c);
    EXPECT_EQ(sp.aut + (Scalar(1) / dec.c) * d.back()(sp.complement), xi);
    auto dist = distributions::distribution_from_spinor(s->ctx, s->chi);
    for (const auto& x : distributions::sample_points(s->ctx.n())) EXPECT_TRUE(distributions::preserves(dist, sp.aut, x));
  }
}

TEST(NckForms, DecomposableWithKernelD) {
  for (const auto* s : {&s23(), &s33()}) {
    auto f = nck_form(s->ctx, s->chi);
    EXPECT_EQ(f.k, s->ctx.p() == 2 ? 2u : 3u);
    auto dist = distributions::distribution_from_spinor(s->ctx, s->chi);
    for (const auto& x : distributions::sample_points(s->ctx.n())) {
      auto rep = nck_point_report(s->ctx, f, dist, x);
      EXPECT_TRUE(rep.nonzero);
      EXPECT_TRUE(rep.decomposable);
      EXPECT_EQ(rep.kernel_dim, 3u);
      // a nonzero k-form is decomposable iff its insertion kernel has dimension n - k
      EXPECT_EQ(kernel_oracle(f.form, f.k, s->ctx.n(), x), s->ctx.n() - f.k);
      if (s->ctx.p() == 3) EXPECT_TRUE(rep.kernel_equals_D);
      if (s->ctx.p() == 3) {
        auto k = insertion_kernel(f.form, x);
        for (const auto& e : dist.frame) EXPECT_TRUE(exalg::in_span(k, e.evaluate(x)));
      }
    }
  }
}

TEST(NckForms, PluckerDetectsIndecomposable) {
  // e0^e1 + e2^e3 in five variables
  PolyField w = PolyField::zero(FieldKind::form, 5, 10);
  w.form_degree = 2;
  auto idx = flatmodel::form_indices(5, 2);
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] == std::vector<std::size_t>{0, 1} || idx[i] == std::vector<std::size_t>{2, 3}) w.comps[i] = Poly(Scalar(1));
  Point x(5);
  EXPECT_FALSE(plucker_holds(w, x));
  EXPECT_EQ(kernel_oracle(w, 2, 5, x), 1u);
  EXPECT_EQ(insertion_kernel(w, x).size(), 1u);
  EXPECT_EQ(form_value(w, {1, 0}, x), Scalar(-1));
  EXPECT_EQ(form_value(w, {1, 1}, x), Scalar(0));
}
