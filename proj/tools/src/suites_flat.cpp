#include "gentwistor/distributions.hpp"
#include "suite_util.hpp"

namespace gentwistor::tools::suites {

using detail::golden;
using detail::join;
using detail::sizes;
using exalg::Scalar;
using exalg::Vector;
using flatmodel::Equation;
using flatmodel::FlatContext;
using flatmodel::KernelBasis;
using flatmodel::PolyField;

namespace {

struct Expected {
  std::size_t twistor, aes, ckf;
};

Expected expected_dims(Family f) { return f == Family{2, 3} ? Expected{8, 7, 21} : Expected{8, 8, 28}; }

void add_solver_checks(Report& r, const std::string& pre, const KernelBasis& k, std::size_t expected) {
  r.add(verdict(pre + "dimension", k.dim() == expected, "expected " + std::to_string(expected)))
      .feeds(7)
      .value("dimension", k.dim());
  const auto& cum = k.cumulative;
  r.add(verdict(pre + "stabilizes", cum.size() >= 4 && cum[2] == cum[3], "solutions of degree <= 2 and <= 3"))
      .feeds(7)
      .value("cumulative", sizes(cum));
}

bool all_parallel(const FlatContext& ctx, const std::vector<PolyField>& basis,
                  flatmodel::TractorSection (*split)(const FlatContext&, const PolyField&)) {
  for (const auto& f : basis)
    if (!flatmodel::is_parallel(ctx, split(ctx, f))) return false;
  return true;
}

bool labels_match(const flatmodel::TractorSection& t) { return flatmodel::slot_labels(t) == flatmodel::slot_weights(t.kind); }

}  // namespace

Report flat(const SuiteOptions& opt) {
  Report r("verify flat");
  for (const auto& fam : opt.families) {
    FlatContext ctx(fam.first, fam.second);
    const auto sig = label(fam);
    const std::string pre = "flat." + sig + ".";
    const auto ex = expected_dims(fam);

    std::vector<KernelBasis> twistors;
    if (fam == Family{2, 3}) {
      twistors.push_back(flatmodel::solve_kernel(ctx, Equation::twistor));
      add_solver_checks(r, pre + "twistor.", twistors.back(), ex.twistor);
    } else {
      for (int chir : {1, -1}) {
        twistors.push_back(flatmodel::solve_kernel(ctx, Equation::twistor, 3, chir));
        add_solver_checks(r, pre + (chir > 0 ? "positive-twistor." : "negative-twistor."), twistors.back(), ex.twistor);
      }
      auto full = flatmodel::solve_kernel(ctx, Equation::twistor);
      r.add(verdict(pre + "twistor.halves-sum", full.dim() == twistors[0].dim() + twistors[1].dim(),
                    "full twistor space is the sum of the two chiral ones"))
          .value("dimension", full.dim());
    }
    auto aes = flatmodel::solve_kernel(ctx, Equation::aes);
    add_solver_checks(r, pre + "aes.", aes, ex.aes);
    auto ckf = flatmodel::solve_kernel(ctx, Equation::ckf);
    add_solver_checks(r, pre + "ckf.", ckf, ex.ckf);

    bool spin_parallel = true, spin_labels = true;
    for (const auto& k : twistors) {
      if (!all_parallel(ctx, k.basis, flatmodel::l0_s)) spin_parallel = false;
      for (const auto& f : k.basis)
        if (!labels_match(flatmodel::l0_s(ctx, f))) spin_labels = false;
    }
    r.add(verdict(pre + "splitting.spin-parallel", spin_parallel, "every twistor solution")).feeds(7);
    r.add(verdict(pre + "splitting.standard-parallel", all_parallel(ctx, aes.basis, flatmodel::l0_t), "every aes solution"))
        .feeds(7);
    auto emb = flatmodel::solve_adjoint_embedding(ctx, ckf.basis);
    bool adj = true, adj_labels = true, std_labels = true;
    for (const auto& xi : ckf.basis) {
      auto t = flatmodel::l0_a(ctx, xi);
      if (!flatmodel::adjoint_is_parallel(ctx, t, emb)) adj = false;
      if (!labels_match(t)) adj_labels = false;
    }
    for (const auto& s : aes.basis)
      if (!labels_match(flatmodel::l0_t(ctx, s))) std_labels = false;
    r.add(verdict(pre + "splitting.adjoint-parallel", adj && emb.solution_dimension == 1, "every ckf solution"))
        .feeds(7)
        .value("embedding_solutions", emb.solution_dimension);
    for (auto [name, v] : {std::pair{"alpha", emb.alpha}, {"beta", emb.beta}, {"gamma", emb.gamma}, {"delta", emb.delta}})
      r.add(golden(opt, pre + "adjoint-embedding." + name, "flat." + sig + ".adjoint_embedding." + name, v));
    r.add(verdict(pre + "weights.slot-labels", spin_labels && std_labels && adj_labels,
                  "splitting outputs carry the tractor slot labels"));

    // Dslash(x.tau0) = k tau0
    const auto tau0 = pairings::distinguished_tau(ctx.model());
    auto xt = flatmodel::clifford_multiply(ctx, flatmodel::position_vector(ctx),
                                           PolyField::constant(flatmodel::FieldKind::spinor, ctx.n(), tau0));
    auto d = flatmodel::dirac(ctx, xt);
    std::optional<Scalar> ratio;
    bool proportional = d.is_constant();
    if (proportional) {
      auto v = d.constant_value();
      ratio = v.back() / tau0.back();
      proportional = v == (*ratio) * tau0;
    }
    r.add(verdict(pre + "dirac-of-linear-spinor", proportional, "Dslash(x.tau0) is a multiple of tau0"));
    if (ratio) r.add(golden(opt, pre + "dirac-of-linear-spinor.constant", "flat." + sig + ".dirac_x_tau", *ratio));
  }
  return r;
}

Report distribution(const SuiteOptions& opt) {
  Report r("verify distribution");
  for (const auto& fam : opt.families) {
    FlatContext ctx(fam.first, fam.second);
    const auto sig = label(fam);
    const std::string pre = "distribution." + sig + ".";
    const bool s23 = fam == Family{2, 3};
    auto chi = flatmodel::standard_generic_twistor(ctx);

    auto twistors = flatmodel::solve_kernel(ctx, Equation::twistor);
    r.add(verdict(pre + "generic-twistor-solves", flatmodel::in_span(twistors.basis, chi), "lies in the solver span"));
    auto pairing = flatmodel::pair(ctx.b(), chi, flatmodel::dirac_companion(ctx, chi));
    r.add(verdict(pre + "companion-pairing-constant", pairing.is_constant() && !pairing.is_zero(),
                  "b(chi, (sqrt2/n) Dslash chi)"))
        .feeds(8)
        .value("pairing", pairing.to_string(ctx.n()));
    if (pairing.is_constant())
      r.add(golden(opt, pre + "companion-pairing", "distribution." + sig + ".companion_pairing", pairing.constant_term()));

    auto dist = distributions::distribution_from_spinor(ctx, chi);
    r.add(verdict(pre + "frame-annihilates", distributions::frame_annihilates(ctx, dist, chi), "gamma(e).chi = 0"))
        .value("rank", dist.rank)
        .value("minor", dist.minor.to_string(ctx.n()));
    const std::vector<std::size_t> growth = s23 ? std::vector<std::size_t>{2, 3, 5} : std::vector<std::size_t>{3, 6};
    const auto points = distributions::sample_points(ctx.n());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::string name = pre + "growth.point-" + std::to_string(i);
      if (!dist.in_cell(points[i])) {
        r.add(verdict(name, false, "sample point outside the frame cell")).feeds(8);
        continue;
      }
      auto g = distributions::growth_vector(dist, points[i]);
      r.add(verdict(name, g == growth, join(g) + " expected " + join(growth)))
          .feeds(8)
          .value("growth", sizes(g))
          .value("point", exalg::to_string(points[i]));
    }

    // relations of the adapted frame at every sample point
    std::map<std::string, std::pair<bool, std::string>> relations;
    std::optional<distributions::AdaptedFrame> origin;
    for (const auto& x : points) {
      if (!dist.in_cell(x)) continue;
      auto fr = distributions::adapted_frame(ctx, chi, x);
      if (!origin) origin = fr;
      for (const auto& c : fr.checks) {
        auto [it, fresh] = relations.try_emplace(c.name, true, c.detail);
        if (!c.holds) {
          if (it->second.first) it->second.second = c.detail + " at " + exalg::to_string(x);
          it->second.first = false;
        }
      }
    }
    for (const auto& [name, v] : relations) r.add(verdict(pre + "adapted-frame." + name, v.first, v.second)).feeds(8);
    if (origin) {
      r.add(golden(opt, pre + "adapted-frame.e-coefficient", "distribution." + sig + ".frame_c_e", origin->c_e));
      r.add(golden(opt, pre + "adapted-frame.f-coefficient", "distribution." + sig + ".frame_c_f", origin->c_f));
      auto pc = distributions::pairing_constants(ctx, *origin);
      if (pc.k_r) {
        r.add(golden(opt, pre + "pairing-constant.r", "distribution." + sig + ".k_r", *pc.k_r))
            .scalar("reference", Scalar(-1), Provenance::reference);
      }
      r.add(verdict(pre + "pairing-constant.proportional", pc.k_eta.has_value(), "b(xi.chi, eta.tau) = k g(xi, eta)"));
      if (pc.k_eta)
        r.add(golden(opt, pre + "pairing-constant.eta", "distribution." + sig + ".k_eta", *pc.k_eta))
            .scalar("reference", Scalar(-2), Provenance::reference);
    }
    if (s23) {
      auto br = distributions::bracket_relations_report(ctx, chi, points[0]);
      r.add(verdict(pre + "brackets.e1e2-orthogonal-to-D", br.e1e2_orthogonal_to_D));
      r.add(verdict(pre + "brackets.e1e2-in-D-plus-r", br.e1e2_multiple_of_r));
      r.add(golden(opt, pre + "brackets.g-e1e2-r", "distribution." + sig + ".g_e1e2_r", br.g_e1e2_r))
          .scalar("reference", br.reference_g_e1e2_r, Provenance::reference);
      r.add(golden(opt, pre + "brackets.e1e2-mod-D", "distribution." + sig + ".e1e2_mod_D", br.e1e2_mod_D))
          .scalar("reference", br.reference_e1e2_mod_D, Provenance::reference);
      auto& c = r.add(info(pre + "brackets.ei-r-mod-D1", "[e_i, r] = sum_j c_ij f_j mod D^1"));
      json computed = json::array(), reference = json::array();
      for (const auto& row : br.ei_r_mod_D1) computed.push_back(exalg::to_string(row));
      for (const auto& row : br.reference_ei_r_mod_D1) reference.push_back(exalg::to_string(row));
      c.value("computed", computed).value("reference", reference, Provenance::reference);
    }

    // constant chi: still annihilated by its frame, growth stays at the rank
    {
      auto chi0 = pairings::distinguished_chi(ctx.model());
      auto flat_chi = flatmodel::parallel_twistor(ctx, chi0, Vector(chi0.size()));
      auto d0 = distributions::distribution_from_spinor(ctx, flat_chi);
      auto g0 = distributions::growth_vector(d0, points[0]);
      r.add(verdict(pre + "constant-spinor.non-generic", !d0.generic_at_origin && g0.back() < ctx.n(),
                    "growth " + join(g0)))
          .value("growth", sizes(g0));
    }
  }
  return r;
}

}  // namespace gentwistor::tools::suites
