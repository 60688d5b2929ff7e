#include "gentwistor/distributions.hpp"

#include <functional>

#include "gentwistor/exalg/linalg.hpp"

namespace gentwistor::distributions {

using flatmodel::FieldKind;

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

Poly poly_det(const PolyMatrix& m) {
  const std::size_t k = m.size();
  if (k == 0) return Poly(Scalar(1));
  if (k == 1) return m[0][0];
  Poly out;
  for (std::size_t j = 0; j < k; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    Poly t = m[0][j] * poly_det(minor);
    if (j % 2 == 0) out += t; else out -= t;
  }
  return out;
}

// adj[p][k] = cofactor C_{k p}
PolyMatrix poly_adjugate(const PolyMatrix& m) {
  const std::size_t k = m.size();
  PolyMatrix adj(k, std::vector<Poly>(k));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      PolyMatrix minor;
      for (std::size_t i = 0; i < k; ++i) {
        if (i == r) continue;
        std::vector<Poly> row;
        for (std::size_t j = 0; j < k; ++j)
          if (j != c) row.push_back(m[i][j]);
        minor.push_back(std::move(row));
      }
      Poly cof = poly_det(minor);
      if ((r + c) % 2 == 1) cof = -cof;
      adj[c][r] = cof;
    }
  return adj;
}

Vector clifford(const FlatContext& ctx, const Vector& v, const Vector& s) { return ctx.model().gamma_of(v) * s; }

Scalar g_of(const FlatContext& ctx, const Vector& v, const Vector& w) { return exalg::bilinear(ctx.g(), v, w); }

// c with a = c b, if any
std::optional<Scalar> ratio(const Vector& a, const Vector& b) {
  std::optional<Scalar> c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].is_zero()) {
      if (!a[i].is_zero()) return std::nullopt;
      continue;
    }
    Scalar t = a[i] / b[i];
    if (c && *c != t) return std::nullopt;
    c = t;
  }
  if (!c) return exalg::is_zero(a) ? std::optional<Scalar>(Scalar()) : std::nullopt;
  return c;
}

std::vector<Vector> evaluate_all(const std::vector<PolyField>& fs, const Point& x) {
  std::vector<Vector> out;
  for (const auto& f : fs) out.push_back(f.evaluate(x));
  return out;
}

void require_cell(const DistributionField& d, const Point& x) {
  if (x.size() != static_cast<std::size_t>(d.p + d.q)) throw OutsideCell("sample point has the wrong dimension");
  if (!d.in_cell(x)) throw OutsideCell("point lies on the degeneracy locus of the frame");
}

std::string join(const Vector& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s.to_string();
  return "(" + out + ")";
}

}  // namespace

DistributionField distribution_from_spinor(const FlatContext& ctx, const PolyField& chi) {
  if (chi.kind != FieldKind::spinor || chi.size() != ctx.spinor_dim()) throw FrameError("expected a spinor field");
  const std::size_t n = ctx.n(), d = ctx.spinor_dim();
  Point origin(n);
  Vector chi0 = chi.evaluate(origin);
  if (exalg::is_zero(chi0)) throw FrameError("spinor vanishes at the origin");

  std::vector<PolyField> cols;
  Matrix m0(d, n);
  for (std::size_t a = 0; a < n; ++a) {
    cols.push_back(flatmodel::apply(ctx.gamma_lower(a), chi));
    Vector v = ctx.gamma_lower(a) * chi0;
    for (std::size_t i = 0; i < d; ++i) m0(i, a) = v[i];
  }
  auto ech = exalg::rref(m0);
  const auto& pcols = ech.pivots;
  const std::size_t r = pcols.size();
  Matrix sub(d, r);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < r; ++k) sub(i, k) = m0(i, pcols[k]);
  auto prows = exalg::rref(sub.transpose()).pivots;

  PolyMatrix mrp(r, std::vector<Poly>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) mrp[i][k] = cols[pcols[k]].comps[prows[i]];
  DistributionField out;
  out.p = ctx.p();
  out.q = ctx.q();
  out.minor = poly_det(mrp);
  auto adj = poly_adjugate(mrp);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pcols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    auto v = PolyField::zero(FieldKind::vector, n, n);
    v.comps[f] = out.minor;
    for (std::size_t k = 0; k < r; ++k) {
      Poly s;
      for (std::size_t i = 0; i < r; ++i) s += adj[k][i] * cols[f].comps[prows[i]];
      v.comps[pcols[k]] = -s;
    }
    out.frame.push_back(std::move(v));
  }
  out.rank = out.frame.size();
  Vector tau0 = flatmodel::dirac_companion(ctx, chi).evaluate(origin);
  out.generic_at_origin = !ctx.b()(chi0, tau0).is_zero();
  return out;
}

bool frame_annihilates(const FlatContext& ctx, const DistributionField& d, const PolyField& chi) {
  for (const auto& v : d.frame)
    if (!flatmodel::clifford_multiply(ctx, v, chi).is_zero()) return false;
  return true;
}

PolyField lie_bracket(const PolyField& x, const PolyField& y) {
  if (x.kind != FieldKind::vector || y.kind != FieldKind::vector) throw exalg::MathError("lie_bracket needs vector fields");
  auto out = PolyField::zero(FieldKind::vector, x.nvars, x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!x.comps[j].is_zero()) out.comps[i] += x.comps[j] * y.comps[i].derivative(j);
      if (!y.comps[j].is_zero()) out.comps[i] -= y.comps[j] * x.comps[i].derivative(j);
    }
  return out;
}

std::vector<std::size_t> growth_vector(const DistributionField& d, const Point& x) {
  require_cell(d, x);
  const std::size_t n = x.size();
  std::vector<PolyField> level = d.frame;
  std::vector<std::size_t> out{exalg::rank_of(evaluate_all(level, x), n)};
  std::vector<PolyField> fresh;
  for (std::size_t i = 0; i < d.frame.size(); ++i)
    for (std::size_t j = i + 1; j < d.frame.size(); ++j) fresh.push_back(lie_bracket(d.frame[i], d.frame[j]));
  for (int step = 0; step < 2 && out.back() < n; ++step) {
    for (const auto& f : fresh) level.push_back(f);
    out.push_back(exalg::rank_of(evaluate_all(level, x), n));
    if (step == 0) {
      std::vector<PolyField> next;
      for (const auto& e : d.frame)
        for (const auto& b : fresh) next.push_back(lie_bracket(e, b));
      fresh = std::move(next);
    }
  }
  return out;
}

std::vector<Point> sample_points(std::size_t n) {
  const std::vector<std::vector<long>> raw = {{1, -1, 1, -1, 1, -1}, {2, 1, 0, -1, 1, 1}};
  std::vector<Point> out(3, Point(n));
  out[1][0] = Scalar(1);
  out[2][n - 1] = Scalar(1);
  for (const auto& r : raw) out.emplace_back(r.begin(), r.begin() + static_cast<long>(n));
  return out;
}

bool preserves(const DistributionField& d, const PolyField& xi, const Point& x) {
  require_cell(d, x);
  auto span = evaluate_all(d.frame, x);
  for (const auto& e : d.frame)
    if (!exalg::in_span(span, lie_bracket(xi, e).evaluate(x))) return false;
  return true;
}

bool AdaptedFrame::all_hold() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

std::vector<std::string> AdaptedFrame::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.holds) out.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  return out;
}

AdaptedFrame adapted_frame(const FlatContext& ctx, const PolyField& chi, const Point& x) {
  const std::size_t n = ctx.n(), d = ctx.spinor_dim();
  const bool odd = ctx.p() == 2;
  AdaptedFrame fr;
  fr.x = x;
  fr.chi = chi.evaluate(x);
  fr.tau = flatmodel::dirac_companion(ctx, chi).evaluate(x);
  if (ctx.b()(fr.chi, fr.tau).is_zero()) throw FrameError("spinor is not generic at this point");

  auto kernel_of = [&](const Vector& s) {
    Matrix m(d, n);
    for (std::size_t a = 0; a < n; ++a) {
      Vector v = ctx.gamma_lower(a) * s;
      for (std::size_t i = 0; i < d; ++i) m(i, a) = v[i];
    }
    return exalg::kernel(m);
  };
  fr.e = kernel_of(fr.chi);
  auto ft = kernel_of(fr.tau);
  const std::size_t k = odd ? 2 : 3;
  if (fr.e.size() != k || ft.size() != k) throw FrameError("Clifford kernels have unexpected dimension");
  Matrix gm(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gm(i, j) = g_of(ctx, fr.e[i], ft[j]);
  auto ginv = exalg::inverse(gm);
  if (!ginv) throw FrameError("Clifford kernels are not transversal");
  for (std::size_t j = 0; j < k; ++j) {
    Vector f(n);
    for (std::size_t l = 0; l < k; ++l) f = f + (*ginv)(l, j) * ft[l];
    fr.f.push_back(f);
  }

  auto product = [&](const std::vector<Vector>& vs, const Vector& s) {
    Vector out = s;
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) out = clifford(ctx, *it, out);
    return out;
  };
  const Scalar half = odd ? Scalar(mpq_class(1, 2)) : Scalar(1);
  auto ce = ratio(half * product(fr.e, fr.tau), fr.chi);
  if (!ce || ce->is_zero()) throw FrameError("e-product of tau is not a multiple of chi");
  fr.e[0] = ce->inverse() * fr.e[0];
  fr.f[0] = *ce * fr.f[0];
  fr.c_e = *ratio(half * product(fr.e, fr.tau), fr.chi);
  auto cf = ratio(half * product(fr.f, fr.chi), fr.tau);
  fr.c_f = cf ? *cf : Scalar();

  auto check = [&](std::string name, bool holds, std::string detail = "") {
    fr.checks.push_back({std::move(name), holds, std::move(detail)});
  };
  bool ke = true, kt = true;
  for (const auto& e : fr.e) ke = ke && exalg::is_zero(clifford(ctx, e, fr.chi));
  for (const auto& f : fr.f) kt = kt && exalg::is_zero(clifford(ctx, f, fr.tau));
  check("ker gamma chi = span(e)", ke && exalg::rank_of(fr.e, n) == k);
  check("ker gamma tau = span(f)", kt && exalg::rank_of(fr.f, n) == k);
  bool dual = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) dual = dual && g_of(ctx, fr.e[i], fr.f[j]) == Scalar(i == j ? 1 : 0);
  check("g(e_i, f_j) = delta_ij", dual);

  if (odd) {
    std::vector<Vector> ef = fr.e;
    ef.insert(ef.end(), fr.f.begin(), fr.f.end());
    auto line = exalg::orthogonal_complement(ctx.g(), ef);
    if (line.size() != 1) throw FrameError("orthogonal complement of the kernels is not a line");
    auto mu = ratio(clifford(ctx, line[0], fr.chi), fr.chi);
    if (!mu || mu->is_zero()) throw FrameError("r does not act on chi by a scalar");
    Vector r = mu->inverse() * line[0];
    fr.r = r;
    bool orth = true;
    for (const auto& v : ef) orth = orth && g_of(ctx, r, v).is_zero();
    check("r orthogonal to both kernels", orth);
    check("g(r, r) = -1", g_of(ctx, r, r) == Scalar(-1), "g(r, r) = " + g_of(ctx, r, r).to_string());
    check("1/2 e1.e2.tau = chi", fr.c_e == Scalar(1), "coefficient " + fr.c_e.to_string());
    check("1/2 f1.f2.chi = tau", cf && fr.c_f == Scalar(1),
          cf ? "coefficient " + fr.c_f.to_string() : "not a multiple of tau");
    check("r.chi = chi", clifford(ctx, r, fr.chi) == fr.chi);
    check("r.tau = tau", clifford(ctx, r, fr.tau) == fr.tau, join(clifford(ctx, r, fr.tau)));
    check("f1.chi = -e2.tau", clifford(ctx, fr.f[0], fr.chi) == Scalar(-1) * clifford(ctx, fr.e[1], fr.tau));
    check("f2.chi = e1.tau", clifford(ctx, fr.f[1], fr.chi) == clifford(ctx, fr.e[0], fr.tau));
  } else {
    check("e1.e2.e3.tau = chi", fr.c_e == Scalar(1), "coefficient " + fr.c_e.to_string());
    check("f1.f2.f3.chi = tau", cf && fr.c_f == Scalar(1),
          cf ? "coefficient " + fr.c_f.to_string() : "not a multiple of tau");
  }
  return fr;
}

PairingConstants pairing_constants(const FlatContext& ctx, const AdaptedFrame& fr) {
  std::vector<Vector> all = fr.e;
  all.insert(all.end(), fr.f.begin(), fr.f.end());
  if (fr.r) all.push_back(*fr.r);
  PairingConstants out;
  // k with lhs = k rhs across all probes
  auto fit = [](const std::vector<std::pair<Scalar, Scalar>>& probes) -> std::optional<Scalar> {
    std::optional<Scalar> k;
    for (const auto& [lhs, rhs] : probes) {
      if (rhs.is_zero()) {
        if (!lhs.is_zero()) return std::nullopt;
        continue;
      }
      Scalar t = lhs / rhs;
      if (k && *k != t) return std::nullopt;
      k = t;
    }
    return k;
  };
  if (fr.r) {
    std::vector<std::pair<Scalar, Scalar>> probes;
    for (const auto& xi : all) probes.emplace_back(ctx.b()(clifford(ctx, xi, fr.chi), fr.tau), g_of(ctx, xi, *fr.r));
    out.k_r = fit(probes);
  }
  std::vector<std::pair<Scalar, Scalar>> probes;
  for (const auto& xi : all)
    for (const auto& eta : fr.e)
      probes.emplace_back(ctx.b()(clifford(ctx, xi, fr.chi), clifford(ctx, eta, fr.tau)), g_of(ctx, xi, eta));
  out.k_eta = fit(probes);
  return out;
}

BracketReport bracket_relations_report(const FlatContext& ctx, const PolyField& chi, const Point& x) {
  if (ctx.p() != 2) throw FrameError("bracket relations are reported for signature (2,3)");
  auto dist = distribution_from_spinor(ctx, chi);
  require_cell(dist, x);
  auto fr = adapted_frame(ctx, chi, x);
  const Vector& r = *fr.r;
  // columns e1 e2 r f1 f2
  std::vector<Vector> basis{fr.e[0], fr.e[1], r, fr.f[0], fr.f[1]};
  auto coords = [&](const Vector& v) { return *exalg::coordinates(basis, v); };

  Vector t1 = dist.frame[0].evaluate(x), t2 = dist.frame[1].evaluate(x);
  Vector c1 = coords(t1), c2 = coords(t2);
  // polynomial frame = A * adapted frame on D
  Matrix a(2, 2);
  a(0, 0) = c1[0];
  a(0, 1) = c1[1];
  a(1, 0) = c2[0];
  a(1, 1) = c2[1];
  Scalar det = exalg::determinant(a);
  Matrix ainv = *exalg::inverse(a);

  auto s = lie_bracket(dist.frame[0], dist.frame[1]);
  Vector sx = s.evaluate(x);
  Vector cs = coords(sx);
  BracketReport out;
  out.e1e2_orthogonal_to_D = g_of(ctx, sx, fr.e[0]).is_zero() && g_of(ctx, sx, fr.e[1]).is_zero();
  out.e1e2_multiple_of_r = cs[3].is_zero() && cs[4].is_zero() && !cs[2].is_zero();
  out.g_e1e2_r = g_of(ctx, sx, r) / det;
  out.e1e2_mod_D = cs[2] / det;

  // [e~_i, s] mod D^1, then s = (k det) r mod D
  std::vector<Vector> tilde;
  for (std::size_t i = 0; i < 2; ++i) {
    Vector ci = coords(lie_bracket(dist.frame[i], s).evaluate(x));
    tilde.push_back({ci[3] / cs[2], ci[4] / cs[2]});
  }
  for (std::size_t j = 0; j < 2; ++j) {
    Vector row(2);
    for (std::size_t i = 0; i < 2; ++i) row = row + ainv(j, i) * tilde[i];
    out.ei_r_mod_D1.push_back(row);
  }
  const Scalar r2 = Scalar::sqrt2();
  out.reference_g_e1e2_r = Scalar(2) * r2;
  out.reference_e1e2_mod_D = -r2;
  out.reference_ei_r_mod_D1 = {{Scalar(0), Scalar(mpq_class(0), mpq_class(1, 2))},
                           {Scalar(mpq_class(0), mpq_class(-1, 2)), Scalar(0)}};
  return out;
}

}  // namespace gentwistor::distributions
