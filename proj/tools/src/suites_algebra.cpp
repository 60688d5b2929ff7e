#include <memory>

#include "gentwistor/exalg/linalg.hpp"
#include "gentwistor/flatmodel.hpp"
#include "gentwistor/kostant.hpp"
#include "gentwistor/stabilizers.hpp"
#include "suite_util.hpp"

namespace gentwistor::tools::suites {

using detail::golden;
using detail::has_family;
using detail::join;
using detail::sizes;
using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;

namespace {

struct SigCase {
  int p, q;
  std::size_t spinor_dim;
  Family family;
};

const std::vector<SigCase>& sig_cases() {
  static const std::vector<SigCase> cases = {
      {2, 3, 4, {2, 3}}, {3, 3, 8, {3, 3}}, {3, 4, 8, {2, 3}}, {4, 4, 16, {3, 3}}};
  return cases;
}

// X = (tau; chi) from the distinguished pair of the base model
struct DoubledCase {
  std::shared_ptr<const clifford::SoAction> so;
  Vector X;
  pairings::Pairing B;
  stabilizers::Case which;
};

DoubledCase doubled_case(const flatmodel::FlatContext& ctx) {
  DoubledCase d;
  d.so = std::make_shared<const clifford::SoAction>(ctx.doubled_ptr());
  d.X = pairings::double_spinor(pairings::distinguished_tau(ctx.model()), pairings::distinguished_chi(ctx.model()));
  d.B = ctx.B();
  d.which = ctx.p() == 2 ? stabilizers::Case::g2 : stabilizers::Case::so34;
  return d;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
  std::vector<Vector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto r = exalg::rank_of(both, dim);
  return r == exalg::rank_of(a, dim) && r == exalg::rank_of(b, dim);
}

}  // namespace

Report clifford(const SuiteOptions& opt) {
  Report r("verify clifford");
  for (const auto& sc : sig_cases()) {
    if (!has_family(opt, sc.family.first, sc.family.second)) continue;
    const auto sig = label(sc.p, sc.q);
    auto m = std::make_shared<const clifford::CliffordModel>(clifford::build_clifford(sc.p, sc.q));
    r.add(verdict("clifford." + sig + ".anticommutation", clifford::check_anticommutation(*m),
                  "gamma_i gamma_j + gamma_j gamma_i = -2 h_ij")).feeds(1);
    r.add(verdict("clifford." + sig + ".spinor-dimension", m->spinor_dim() == sc.spinor_dim,
                  "expected " + std::to_string(sc.spinor_dim)))
        .feeds(1)
        .value("spinor_dim", m->spinor_dim());
    if (m->has_half_spin()) {
      const auto plus = m->half_spin_indices(1).size(), minus = m->half_spin_indices(-1).size();
      r.add(verdict("clifford." + sig + ".half-spin-split", plus == minus && plus * 2 == m->spinor_dim(),
                    std::to_string(plus) + "+" + std::to_string(minus)))
          .feeds(1);
    }
    clifford::SoAction so(m);
    r.add(golden(opt, "clifford." + sig + ".spinor-constant", "clifford." + sig + ".spinor_constant", so.spinor_constant()));
    r.add(verdict("clifford." + sig + ".derivation", so.check_derivation(), "rho(A)(w.s) = A(w).s + w.rho(A)s"));
    r.add(verdict("clifford." + sig + ".homomorphism", so.check_homomorphism(), "spinor matrices of brackets"));
    if (sc.p + sc.q >= 7) {
      const auto& base = *m->ancestor();
      bool blocks = true;
      const std::size_t d = base.spinor_dim();
      for (std::size_t i = 0; i < base.dim(); ++i) {
        Matrix expect(2 * d, 2 * d);
        expect.set_block(0, 0, -base.gamma(i));
        expect.set_block(d, d, base.gamma(i));
        if (m->gamma(i + 1) != expect) blocks = false;
      }
      r.add(verdict("clifford." + sig + ".doubling-restriction", blocks, "inherited vectors act as diag(-xi, xi)"));
    }
  }
  return r;
}

Report pairings(const SuiteOptions& opt) {
  Report r("verify pairings");
  for (const auto& fam : opt.families) {
    const auto sig = label(fam);
    flatmodel::FlatContext ctx(fam.first, fam.second);
    const auto& m = ctx.model();
    const auto dim = pairings::invariant_pairing_dimension(m);
    r.add(verdict("pairings." + sig + ".solution-dimension", dim == 1, "invariant pairing system"))
        .feeds(2)
        .value("dimension", dim);
    if (m.has_half_spin())
      r.add(info("pairings." + sig + ".duality-block-dimension", "unknowns on the half-spin block only"))
          .value("dimension", pairings::duality_block_dimension(m));
    const auto& b = ctx.b();
    const bool symmetry_ok = b.gram.is_antisymmetric();
    r.add(verdict("pairings." + sig + ".symmetry", symmetry_ok, "skew Gram matrix, " + pairings::to_string(b.symmetry)));
    r.add(verdict("pairings." + sig + ".defining-identity", pairings::check_defining_identity(m, b)));
    r.add(verdict("pairings." + sig + ".so-invariance",
                  pairings::check_so_invariance(clifford::SoAction(ctx.model_ptr()), b)));

    const auto& B = ctx.B();
    const auto dsig = fam == Family{2, 3} ? label(3, 4) : label(4, 4);
    const auto& dm = ctx.doubled();
    r.add(verdict("pairings." + dsig + ".clifford-compatibility", pairings::check_clifford_compatibility(dm, B, B.clifford_sign)))
        .value("clifford_sign", B.clifford_sign);
    Matrix gram = B.gram;
    std::string where = "full spinor space";
    if (dm.has_half_spin()) {
      auto basis = dm.half_spin_basis(1);
      Matrix c = Matrix::from_columns(basis, dm.spinor_dim());
      gram = c.transpose() * B.gram * c;
      where = "positive half-spin space";
      auto full = exalg::signature(B.gram);
      r.add(info("pairings." + dsig + ".signature-full"))
          .value("positive", full.positive)
          .value("negative", full.negative)
          .value("zero", full.zero);
    }
    auto in = exalg::signature(gram);
    r.add(verdict("pairings." + dsig + ".signature", in.positive == 4 && in.negative == 4 && in.zero == 0,
                  where + ": (" + std::to_string(in.positive) + "," + std::to_string(in.negative) + ")"))
        .feeds(3)
        .value("positive", in.positive)
        .value("negative", in.negative)
        .value("zero", in.zero);
    auto dc = doubled_case(ctx);
    r.add(golden(opt, "pairings." + dsig + ".norm-of-X", "pairings." + dsig + ".B_XX", B(dc.X, dc.X)));
  }
  return r;
}

Report stabilizers(const SuiteOptions& opt) {
  Report r("verify stabilizers");
  for (const auto& fam : opt.families) {
    flatmodel::FlatContext ctx(fam.first, fam.second);
    auto dc = doubled_case(ctx);
    const auto sig = fam == Family{2, 3} ? label(3, 4) : label(4, 4);
    const std::string pre = "stabilizers." + sig + ".";
    const std::size_t expected = fam == Family{2, 3} ? 14 : 21;

    auto s = stabilizers::stabilizer(dc.so, dc.X);
    r.add(verdict(pre + "dimension", s.dim() == expected, "expected " + std::to_string(expected)))
        .feeds(4)
        .value("dimension", s.dim());
    auto rep = stabilizers::verify_graded_basis(s, dc.which);
    const auto listed = stabilizers::listed_dims(dc.which);
    r.add(verdict(pre + "grading-dimensions", rep.dims == listed, join(rep.dims) + " vs listed " + join(listed)))
        .feeds(4)
        .value("computed", sizes(rep.dims))
        .value("listed", sizes(listed), Provenance::reference);
    r.add(verdict(pre + "grading-spectrum", rep.eigenvalues_ok, "ad(E) eigenvalues"))
        .feeds(4)
        .value("E", s.so->format(rep.grading.E));
    r.add(verdict(pre + "closure", rep.closure, "[s, s] in s")).feeds(4);
    r.add(verdict(pre + "bracket-grading", rep.bracket_grading, "[g_i, g_j] in g_(i+j)")).feeds(4);
    {
      auto& c = r.add(verdict(pre + "listed-elements-members", rep.all_members(),
                              rep.all_members() ? "" : "not in the stabilizer: " + rep.missing()));
      c.feeds(4);
      json bad = json::array();
      for (const auto& e : rep.elements)
        if (!e.member) bad.push_back({{"listed", e.text}, {"degree", e.degree}, {"stabilizer element", e.computed}});
      c.value("non_members", bad);
      c.value("listed_count", rep.elements.size());
    }
    r.add(verdict(pre + "listed-shapes-span", rep.shapes_span, "listed shapes span each graded component"));

    // the opposite vector-action sign gives the same subalgebra
    auto neg = std::make_shared<const clifford::SoAction>(ctx.doubled_ptr(), clifford::SoSign::negated);
    auto sn = stabilizers::stabilizer(neg, dc.X);
    r.add(verdict(pre + "sign-convention-independence", same_span(s.basis, sn.basis, dc.so->bivector_dim()),
                  "stabilizer spans under both vector-action signs"));

    auto br = stabilizers::branching(s, rep.grading, dc.B, dc.X, dc.which);
    for (const auto& f : br.facts) r.add(verdict(pre + "branching." + f.name, f.holds, f.detail)).feeds(5);
  }
  return r;
}

Report kostant(const SuiteOptions& opt) {
  Report r("verify kostant");
  for (const auto& fam : opt.families) {
    flatmodel::FlatContext ctx(fam.first, fam.second);
    auto dc = doubled_case(ctx);
    auto s = stabilizers::stabilizer(dc.so, dc.X);
    auto grading = stabilizers::frame_grading(s);
    const bool g2 = fam == Family{2, 3};
    auto small = kostant::graded_data(s, grading, g2 ? "g2" : "so(3,4)");
    auto big = kostant::conformal_data(*dc.so, g2 ? "so(3,4)" : "so(4,4)");
    const std::string pre = "kostant." + small.name + "-in-" + big.name + ".";

    for (const auto* d : {&small, &big}) {
      const std::string name = pre + d->name + (d == &small ? ".small" : ".big");
      bool dd = true, cc = true;
      for (std::size_t k = 0; k + 2 <= 3; ++k)
        if (!(kostant::differential(*d, k + 1) * kostant::differential(*d, k)).is_zero()) dd = false;
      for (std::size_t k = 2; k <= 3; ++k)
        if (!(kostant::codifferential(*d, k - 1) * kostant::codifferential(*d, k)).is_zero()) cc = false;
      r.add(verdict(name + ".differential-squared", dd, "d o d on C^0 and C^1")).feeds(6);
      r.add(verdict(name + ".codifferential-squared", cc, "d* o d* on C^2 and C^3")).feeds(6);
      auto adj = kostant::check_adjointness(*d);
      r.add(verdict(name + ".adjointness", adj.holds && adj.theta_stable, "d^T Q = lambda Q d*"))
          .scalar("lambda", adj.lambda);
    }
    auto h = kostant::harmonic_module(small);
    const std::size_t expected = g2 ? 5 : 27;
    {
      auto& c = r.add(verdict(pre + "harmonic-dimension", h.dimension == expected, "expected " + std::to_string(expected)));
      c.value("dimension", h.dimension);
      json hom = json::object();
      for (const auto& [k, v] : h.by_homogeneity) hom[std::to_string(k)] = v;
      c.value("by_homogeneity", hom);
      if (!g2) c.feeds(6);
    }
    r.add(verdict(pre + "harmonic-equals-laplacian-kernel", h.agree, "ker d ∩ ker d* = ker(d d* + d* d)"))
        .feeds(6)
        .value("laplacian_kernel", h.laplacian_kernel);
    r.add(verdict(pre + "harmonic-regular", h.regular, "homogeneity >= 1"));
    r.add(verdict(pre + "harmonic-g0-invariant", h.g0_invariant));
    auto n = kostant::normality_check(small, big, h);
    r.add(verdict(pre + "normality", n.checked == h.dimension && n.nonzero == 0,
                  "big codifferential of the included harmonic elements"))
        .feeds(6)
        .value("checked", n.checked)
        .value("nonzero", n.nonzero);
    r.add(info(pre + "normality.pplus-blocks", "grading blocks of the big p+ under the small grading element"))
        .value("blocks", sizes(n.pplus_blocks))
        .value("tensor_blocks", sizes(n.pplus_tensor_blocks));
  }
  return r;
}

}  // namespace gentwistor::tools::suites
