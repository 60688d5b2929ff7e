#include "gentwistor/tools/commands.hpp"

#include "gentwistor/decomp.hpp"
#include "gentwistor/stabilizers.hpp"
#include "gentwistor/tools/suites.hpp"

namespace gentwistor::tools {

using exalg::Vector;
using flatmodel::Equation;
using flatmodel::FieldKind;
using flatmodel::FlatContext;
using flatmodel::PolyField;

namespace {

json field_list(int p, int q, const std::vector<PolyField>& fields) {
  json out = json::array();
  for (const auto& f : fields) out.push_back(field_to_json(p, q, f));
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

}  // namespace

Report stabilizer_command(const FieldDocument& doc) {
  require(doc.field.kind == FieldKind::spinor, "--spinor: expected kind \"spinor\"");
  require(doc.field.is_constant(), "--spinor: the stabilizer needs a constant spinor");
  const auto fam = parse_family(label(doc.p, doc.q));
  FlatContext ctx(fam.first, fam.second);
  const bool doubled = doc.p != fam.first;
  auto model = doubled ? ctx.doubled_ptr() : ctx.model_ptr();
  const Vector X = doc.field.constant_value();
  require(X.size() == model->spinor_dim(), "--spinor: wrong number of components");

  Report r("stabilizer");
  r.config()["signature"] = label(doc.p, doc.q);
  auto so = std::make_shared<const clifford::SoAction>(model);
  auto s = stabilizers::stabilizer(so, X);
  r.add(info("stabilizer.dimension")).value("dimension", s.dim()).value("so_dimension", so->bivector_dim());
  r.add(verdict("stabilizer.closed", stabilizers::is_closed(s), "bracket closure"));
  r.add(verdict("stabilizer.annihilates", stabilizers::annihilates(s, X)));
  json basis = json::array();
  for (const auto& a : s.basis) basis.push_back(so->format(a));
  r.add(info("stabilizer.basis")).value("elements", basis);
  if (doubled) {
    const auto BXX = ctx.B()(X, X);
    r.add(info("stabilizer.norm", "B(X,X)")).scalar("value", BXX);
    if (!BXX.is_zero()) {
      try {
        auto g = stabilizers::frame_grading(s);
        r.add(info("stabilizer.grading")).value("dims", g.dims()).value("E", so->format(g.E));
      } catch (const stabilizers::GradingError& e) {
        r.add(info("stabilizer.grading", e.what()));
      }
    }
  }
  return r;
}

Report solve_command(int p, int q, const std::string& equation, int max_degree, int chirality) {
  Equation eq;
  try {
    eq = flatmodel::parse_equation(equation);
  } catch (const std::exception&) {
    throw InputError("unknown equation '" + equation + "'; use twistor, aes or ckf");
  }
  require(p + q == 5 || p + q == 6, "--signature: solve works over 2,3 or 3,3");
  require(clifford::is_supported(p, q), "unsupported signature " + label(p, q));
  require(max_degree >= 0 && max_degree <= 4, "--max-degree must be between 0 and 4");
  require(chirality == 0 || (eq == Equation::twistor && p == q && (chirality == 1 || chirality == -1)),
          "--chirality applies to twistor spinors in signature 3,3 and must be 1 or -1");
  FlatContext ctx(p, q);
  auto k = flatmodel::solve_kernel(ctx, eq, max_degree, chirality);

  Report r("solve");
  r.config()["signature"] = label(p, q);
  r.config()["equation"] = flatmodel::to_string(eq);
  r.config()["max_degree"] = max_degree;
  r.config()["chirality"] = chirality;
  r.add(info("solve.dimension")).value("dimension", k.dim()).value("cumulative", k.cumulative);
  bool all_solve = true;
  for (const auto& f : k.basis)
    if (!flatmodel::apply_equation(ctx, eq, f).is_zero()) all_solve = false;
  r.add(verdict("solve.basis-solves", all_solve, "every basis field is annihilated exactly"));
  r.add(info("solve.basis")).value("fields", field_list(p, q, k.basis));
  return r;
}

Report decompose_ckf_command(const FieldDocument& ckf, const FieldDocument& spinor) {
  require(ckf.field.kind == FieldKind::vector, "--ckf: expected kind \"vector\"");
  require(spinor.field.kind == FieldKind::spinor, "--spinor: expected kind \"spinor\"");
  require(ckf.p == spinor.p && ckf.q == spinor.q, "--ckf and --spinor have different signatures");
  require((ckf.p == 2 && ckf.q == 3) || (ckf.p == 3 && ckf.q == 3), "decompose-ckf works over 2,3 or 3,3");
  const int p = ckf.p, q = ckf.q;
  FlatContext ctx(p, q);
  const auto& xi = ckf.field;
  const auto& chi = spinor.field;
  require(flatmodel::ckf_operator(ctx, xi).is_zero(), "--ckf is not a conformal Killing field");
  require(flatmodel::twistor_operator(ctx, chi).is_zero(), "--spinor is not a twistor spinor");
  const auto origin = std::vector<exalg::Scalar>(ctx.n());
  require(!flatmodel::pair(ctx.b(), chi, flatmodel::dirac(ctx, chi)).evaluate(origin).is_zero(),
          "--spinor is not generic at the origin");

  auto aes = flatmodel::solve_kernel(ctx, Equation::aes).basis;
  auto ckfs = flatmodel::solve_kernel(ctx, Equation::ckf).basis;
  auto res = decomp::resolve_constants(ctx, chi, aes, ckfs);
  Report r("decompose-ckf");
  r.config()["signature"] = label(p, q);
  r.add(verdict("decompose.constants-solved", res.solved()))
      .scalar("aes_twistor", res.resolved.aes_twistor)
      .scalar("ckf_dirac", res.resolved.ckf_dirac)
      .scalar("ckf_divergence", res.resolved.ckf_divergence);
  if (!res.solved()) return r;

  decomp::Decomposer d{ctx, chi, res.resolved};
  std::vector<PolyField> complement_space;
  if (p == 2) {
    complement_space = aes;
  } else {
    auto plus = flatmodel::solve_kernel(ctx, Equation::twistor, 3, 1).basis;
    auto minus = flatmodel::solve_kernel(ctx, Equation::twistor, 3, -1).basis;
    require(flatmodel::in_span(plus, chi) || flatmodel::in_span(minus, chi), "--spinor has mixed chirality");
    complement_space = decomp::tw_perp(ctx, chi, flatmodel::in_span(plus, chi) ? plus : minus).basis;
  }
  auto rt = decomp::roundtrip(complement_space, d.back(), d.forward());
  r.add(verdict("decompose.roundtrip", rt.nonzero(), "forward(back(s)) = c s"));
  if (!rt.nonzero()) return r;
  r.add(info("decompose.roundtrip-constant")).scalar("c", *rt.constant);

  auto split = d.split(xi, *rt.constant);
  auto dist = distributions::distribution_from_spinor(ctx, chi);
  bool preserves = true;
  for (const auto& x : distributions::sample_points(ctx.n()))
    if (dist.in_cell(x) && !distributions::preserves(dist, split.aut, x)) preserves = false;
  const auto back_part = (exalg::Scalar(1) / *rt.constant) * d.back()(split.complement);
  r.add(verdict("decompose.sum", split.aut + back_part == xi, "xi = xi_aut + back(complement) / c"));
  r.add(verdict("decompose.aut-is-ckf", flatmodel::ckf_operator(ctx, split.aut).is_zero()));
  r.add(verdict("decompose.aut-preserves-D", preserves, "at the in-cell sample points"));
  r.add(verdict("decompose.forward-kills-aut", d.forward()(split.aut).is_zero()));
  r.add(verdict("decompose.complement-lands", flatmodel::in_span(complement_space, split.complement),
                p == 2 ? "almost Einstein scale" : "twistor spinor in Tw-perp"));
  r.add(info("decompose.parts"))
      .value("automorphism", field_to_json(p, q, split.aut))
      .value("complement", field_to_json(p, q, split.complement));
  return r;
}

}  // namespace gentwistor::tools
