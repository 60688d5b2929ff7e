#include "gentwistor/flatmodel.hpp"

#include <array>
#include <map>
#include <tuple>

#include "gentwistor/exalg/linalg.hpp"

namespace gentwistor::flatmodel {

using exalg::MathError;
using exalg::ParseError;

namespace {

Scalar inv_sqrt2() { return Scalar(mpq_class(0), mpq_class(1, 2)); }

Weight shifted(Weight w, int twice) { return {w.twice + twice}; }

void require_kind(const PolyField& f, FieldKind k, const char* what) {
  if (f.kind != k) throw MathError(std::string(what) + ": expected a " + to_string(k) + " field, got " + to_string(f.kind));
}

}  // namespace

FlatContext::FlatContext(int p, int q) : p_(p), q_(q) {
  if (!((p == 2 && q == 3) || (p == 3 && q == 3)))
    throw clifford::UnsupportedSignature(p, q);
  model_ = std::make_shared<const CliffordModel>(clifford::build_clifford(p, q));
  doubled_ = std::make_shared<const CliffordModel>(clifford::build_clifford(p + 1, q + 1));
  n_ = model_->dim();
  g_ = model_->signature().gram;
  ginv_ = *exalg::inverse(g_);
  b_ = pairings::solve_invariant_pairing(*model_).pairing;
  B_ = pairings::build_B(*doubled_, b_);
  for (std::size_t a = 0; a < n_; ++a) {
    Matrix m(spinor_dim(), spinor_dim());
    for (std::size_t c = 0; c < n_; ++c)
      if (!ginv_(a, c).is_zero()) m += ginv_(a, c) * model_->gamma(c);
    gamma_upper_.push_back(m);
  }
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::scalar: return "scalar";
    case FieldKind::vector: return "vector";
    case FieldKind::covector: return "covector";
    case FieldKind::spinor: return "spinor";
    case FieldKind::covector_spinor: return "covector_spinor";
    case FieldKind::bilinear: return "bilinear";
    case FieldKind::form: return "form";
  }
  return "?";
}

FieldKind parse_field_kind(const std::string& s) {
  for (auto k : {FieldKind::scalar, FieldKind::vector, FieldKind::covector, FieldKind::spinor,
                 FieldKind::covector_spinor, FieldKind::bilinear, FieldKind::form})
    if (to_string(k) == s) return k;
  throw ParseError("unknown field kind '" + s + "'");
}

PolyField PolyField::zero(FieldKind kind, std::size_t nvars, std::size_t ncomps, Weight w) {
  PolyField f;
  f.kind = kind;
  f.nvars = nvars;
  f.weight = w;
  f.comps.assign(ncomps, Poly());
  return f;
}

PolyField PolyField::constant(FieldKind kind, std::size_t nvars, const Vector& v, Weight w) {
  auto f = zero(kind, nvars, v.size(), w);
  for (std::size_t i = 0; i < v.size(); ++i) f.comps[i] = Poly(v[i]);
  return f;
}

int PolyField::degree() const {
  int d = -1;
  for (const auto& c : comps) d = std::max(d, c.degree());
  return d;
}

bool PolyField::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

bool PolyField::is_constant() const {
  for (const auto& c : comps)
    if (!c.is_constant()) return false;
  return true;
}

PolyField PolyField::derivative(std::size_t var) const {
  PolyField out = *this;
  for (auto& c : out.comps) c = c.derivative(var);
  return out;
}

Vector PolyField::evaluate(const std::vector<Scalar>& x) const {
  if (x.size() != nvars) throw MathError("evaluation point has the wrong dimension");
  Vector out;
  for (const auto& c : comps) out.push_back(c.evaluate(x));
  return out;
}

Vector PolyField::constant_value() const {
  if (!is_constant()) throw MathError("field is not constant");
  Vector out;
  for (const auto& c : comps) out.push_back(c.constant_term());
  return out;
}

PolyField& PolyField::operator+=(const PolyField& o) {
  if (o.comps.size() != comps.size() || o.kind != kind) throw MathError("adding fields of different shapes");
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += o.comps[i];
  return *this;
}

PolyField& PolyField::operator-=(const PolyField& o) {
  if (o.comps.size() != comps.size() || o.kind != kind) throw MathError("subtracting fields of different shapes");
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] -= o.comps[i];
  return *this;
}

PolyField& PolyField::operator*=(const Scalar& s) {
  for (auto& c : comps) c *= s;
  return *this;
}

std::vector<std::vector<std::size_t>> form_indices(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

PolyField apply(const Matrix& m, const PolyField& spinor, int shift_twice) {
  if (m.cols() != spinor.size()) throw MathError("matrix does not act on this field");
  auto out = PolyField::zero(spinor.kind, spinor.nvars, m.rows(), shifted(spinor.weight, shift_twice));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !spinor.comps[j].is_zero()) out.comps[i] += spinor.comps[j] * m(i, j);
  return out;
}

PolyField multiply(const PolyField& f, const PolyField& field) {
  require_kind(f, FieldKind::scalar, "multiply");
  PolyField out = field;
  out.weight = f.weight + field.weight;
  for (auto& c : out.comps) c = f.comps[0] * c;
  return out;
}

Poly pair(const Pairing& b, const PolyField& x, const PolyField& y) {
  if (x.size() != b.gram.rows() || y.size() != b.gram.cols()) throw MathError("pairing size mismatch");
  Poly out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.comps[i].is_zero()) continue;
    Poly row;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!b.gram(i, j).is_zero()) row += y.comps[j] * b.gram(i, j);
    if (!row.is_zero()) out += x.comps[i] * row;
  }
  return out;
}

PolyField pair_field(const Pairing& b, const PolyField& x, const PolyField& y) {
  auto out = PolyField::zero(FieldKind::scalar, x.nvars, 1, x.weight + y.weight + b.weight);
  out.comps[0] = pair(b, x, y);
  return out;
}

PolyField raise(const FlatContext& ctx, const PolyField& covector) {
  require_kind(covector, FieldKind::covector, "raise");
  auto out = PolyField::zero(FieldKind::vector, covector.nvars, ctx.n(), shifted(covector.weight, -4));
  for (std::size_t a = 0; a < ctx.n(); ++a)
    for (std::size_t b = 0; b < ctx.n(); ++b)
      if (!ctx.ginv()(a, b).is_zero()) out.comps[a] += covector.comps[b] * ctx.ginv()(a, b);
  return out;
}

PolyField lower(const FlatContext& ctx, const PolyField& vector) {
  require_kind(vector, FieldKind::vector, "lower");
  auto out = PolyField::zero(FieldKind::covector, vector.nvars, ctx.n(), shifted(vector.weight, 4));
  for (std::size_t a = 0; a < ctx.n(); ++a)
    for (std::size_t b = 0; b < ctx.n(); ++b)
      if (!ctx.g()(a, b).is_zero()) out.comps[a] += vector.comps[b] * ctx.g()(a, b);
  return out;
}

PolyField clifford_multiply(const FlatContext& ctx, const PolyField& v, const PolyField& spinor) {
  if (v.kind == FieldKind::covector) return clifford_multiply(ctx, raise(ctx, v), spinor);
  require_kind(v, FieldKind::vector, "clifford_multiply");
  auto out = PolyField::zero(spinor.kind, spinor.nvars, spinor.size(), shifted(v.weight + spinor.weight, 2));
  for (std::size_t a = 0; a < ctx.n(); ++a) {
    if (v.comps[a].is_zero()) continue;
    auto g = apply(ctx.gamma_lower(a), spinor);
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!g.comps[k].is_zero()) out.comps[k] += v.comps[a] * g.comps[k];
  }
  return out;
}

PolyField gradient(const PolyField& scalar) {
  require_kind(scalar, FieldKind::scalar, "gradient");
  auto out = PolyField::zero(FieldKind::covector, scalar.nvars, scalar.nvars, scalar.weight);
  for (std::size_t a = 0; a < scalar.nvars; ++a) out.comps[a] = scalar.comps[0].derivative(a);
  return out;
}

Poly divergence(const PolyField& vector) {
  require_kind(vector, FieldKind::vector, "divergence");
  Poly out;
  for (std::size_t a = 0; a < vector.size(); ++a) out += vector.comps[a].derivative(a);
  return out;
}

Poly laplacian(const FlatContext& ctx, const Poly& f) {
  Poly out;
  for (std::size_t a = 0; a < ctx.n(); ++a)
    for (std::size_t b = 0; b < ctx.n(); ++b)
      if (!ctx.ginv()(a, b).is_zero()) out += f.derivative(a).derivative(b) * ctx.ginv()(a, b);
  return out;
}

PolyField position_vector(const FlatContext& ctx) {
  auto out = PolyField::zero(FieldKind::vector, ctx.n(), ctx.n());
  for (std::size_t a = 0; a < ctx.n(); ++a) out.comps[a] = Poly::variable(a);
  return out;
}

PolyField dirac(const FlatContext& ctx, const PolyField& spinor) {
  require_kind(spinor, FieldKind::spinor, "dirac");
  auto out = PolyField::zero(FieldKind::spinor, spinor.nvars, spinor.size(), shifted(spinor.weight, -2));
  for (std::size_t a = 0; a < ctx.n(); ++a) out += apply(ctx.gamma_upper(a), spinor.derivative(a), -2);
  return out;
}

PolyField dirac_companion(const FlatContext& ctx, const PolyField& spinor) {
  return (Scalar::sqrt2() * Scalar(mpq_class(1, static_cast<long>(ctx.n())))) * dirac(ctx, spinor);
}

PolyField twistor_operator(const FlatContext& ctx, const PolyField& spinor) {
  require_kind(spinor, FieldKind::spinor, "twistor_operator");
  const std::size_t d = spinor.size();
  auto ds = dirac(ctx, spinor);
  const Scalar inv_n(mpq_class(1, static_cast<long>(ctx.n())));
  auto out = PolyField::zero(FieldKind::covector_spinor, spinor.nvars, ctx.n() * d, spinor.weight);
  for (std::size_t a = 0; a < ctx.n(); ++a) {
    auto term = spinor.derivative(a) + inv_n * apply(ctx.gamma_lower(a), ds, 2);
    for (std::size_t k = 0; k < d; ++k) out.comps[a * d + k] = term.comps[k];
  }
  return out;
}

PolyField gamma_trace(const FlatContext& ctx, const PolyField& theta) {
  require_kind(theta, FieldKind::covector_spinor, "gamma_trace");
  const std::size_t d = theta.size() / ctx.n();
  auto out = PolyField::zero(FieldKind::spinor, theta.nvars, d, shifted(theta.weight, -2));
  for (std::size_t a = 0; a < ctx.n(); ++a) {
    auto slice = PolyField::zero(FieldKind::spinor, theta.nvars, d, theta.weight);
    for (std::size_t k = 0; k < d; ++k) slice.comps[k] = theta.comps[a * d + k];
    out += apply(ctx.gamma_upper(a), slice, -2);
  }
  return out;
}

PolyField aes_operator(const FlatContext& ctx, const PolyField& scalar) {
  require_kind(scalar, FieldKind::scalar, "aes_operator");
  const std::size_t n = ctx.n();
  const auto& s = scalar.comps[0];
  auto lap = laplacian(ctx, s) * Scalar(mpq_class(1, static_cast<long>(n)));
  auto out = PolyField::zero(FieldKind::bilinear, scalar.nvars, n * n, scalar.weight);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Poly h = s.derivative(a).derivative(b);
      if (!ctx.g()(a, b).is_zero()) h -= lap * ctx.g()(a, b);
      out.comps[a * n + b] = h;
    }
  return out;
}

PolyField ckf_operator(const FlatContext& ctx, const PolyField& vector) {
  const std::size_t n = ctx.n();
  auto low = lower(ctx, vector);
  auto div = divergence(vector) * Scalar(mpq_class(2, static_cast<long>(n)));
  auto out = PolyField::zero(FieldKind::bilinear, vector.nvars, n * n, low.weight);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Poly k = low.comps[b].derivative(a) + low.comps[a].derivative(b);
      if (!ctx.g()(a, b).is_zero()) k -= div * ctx.g()(a, b);
      out.comps[a * n + b] = k;
    }
  return out;
}

std::string to_string(Equation e) {
  switch (e) {
    case Equation::twistor: return "twistor";
    case Equation::aes: return "aes";
    case Equation::ckf: return "ckf";
  }
  return "?";
}

Equation parse_equation(const std::string& s) {
  for (auto e : {Equation::twistor, Equation::aes, Equation::ckf})
    if (to_string(e) == s) return e;
  throw ParseError("unknown equation '" + s + "'");
}

PolyField apply_equation(const FlatContext& ctx, Equation eq, const PolyField& f) {
  switch (eq) {
    case Equation::twistor: return twistor_operator(ctx, f);
    case Equation::aes: return aes_operator(ctx, f);
    case Equation::ckf: return ckf_operator(ctx, f);
  }
  throw MathError("unknown equation");
}

KernelBasis solve_kernel(const FlatContext& ctx, Equation eq, int max_degree, int chirality) {
  if (max_degree < 2) throw SolverError("max_degree must be at least 2");
  if (chirality != 0 && (eq != Equation::twistor || !ctx.model().has_half_spin()))
    throw SolverError("chirality restriction needs the twistor equation in an even signature");
  const std::size_t n = ctx.n();
  FieldKind kind = FieldKind::spinor;
  std::size_t ncomps = ctx.spinor_dim();
  Weight w{kTwistorWeight};
  if (eq == Equation::aes) {
    kind = FieldKind::scalar;
    ncomps = 1;
    w = {kScaleWeight};
  } else if (eq == Equation::ckf) {
    kind = FieldKind::vector;
    ncomps = n;
    w = {0};
  }
  std::vector<std::size_t> allowed;
  if (chirality != 0) {
    allowed = ctx.model().half_spin_indices(chirality);
  } else {
    for (std::size_t i = 0; i < ncomps; ++i) allowed.push_back(i);
  }

  KernelBasis out;
  out.equation = eq;
  out.p = ctx.p();
  out.q = ctx.q();
  out.max_degree = max_degree;
  out.chirality = chirality;
  for (int k = 0; k <= max_degree; ++k) {
    auto mons = monomials(n, k);
    std::vector<std::pair<std::size_t, Monomial>> unknowns;
    for (auto c : allowed)
      for (auto m : mons) unknowns.emplace_back(c, m);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(unknowns.size());
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      auto f = PolyField::zero(kind, n, ncomps, w);
      f.comps[unknowns[j].first] = Poly::term(unknowns[j].second, 1);
      auto img = apply_equation(ctx, eq, f);
      for (std::size_t o = 0; o < img.size(); ++o)
        for (const auto& [m, c] : img.comps[o].terms()) {
          auto [it, fresh] = rows.try_emplace({o, m}, rows.size());
          cols[j].emplace_back(it->second, c);
        }
    }
    std::vector<PolyField> sols;
    if (rows.empty()) {
      for (const auto& u : unknowns) {
        auto f = PolyField::zero(kind, n, ncomps, w);
        f.comps[u.first] = Poly::term(u.second, 1);
        sols.push_back(f);
      }
    } else {
      Matrix a(rows.size(), unknowns.size());
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : cols[j]) a(r, j) = c;
      for (const auto& v : exalg::kernel(a)) {
        auto f = PolyField::zero(kind, n, ncomps, w);
        for (std::size_t j = 0; j < v.size(); ++j)
          if (!v[j].is_zero()) f.comps[unknowns[j].first].add_term(unknowns[j].second, v[j]);
        sols.push_back(f);
      }
    }
    for (auto& s : sols) out.basis.push_back(std::move(s));
    out.cumulative.push_back(out.basis.size());
  }
  if (out.cumulative[2] != out.cumulative[static_cast<std::size_t>(max_degree)])
    throw SolverError(to_string(eq) + " solution dimension does not stabilize: " + std::to_string(out.cumulative[2]) +
                      " at degree 2, " + std::to_string(out.cumulative.back()) + " at degree " +
                      std::to_string(max_degree));
  return out;
}

namespace {

std::vector<Vector> coefficient_vectors(const std::vector<const PolyField*>& fields) {
  std::map<std::pair<std::size_t, Monomial>, std::size_t> keys;
  for (const auto* f : fields)
    for (std::size_t o = 0; o < f->size(); ++o)
      for (const auto& [m, c] : f->comps[o].terms()) keys.try_emplace({o, m}, keys.size());
  std::vector<Vector> out;
  for (const auto* f : fields) {
    Vector v(keys.size());
    for (std::size_t o = 0; o < f->size(); ++o)
      for (const auto& [m, c] : f->comps[o].terms()) v[keys.at({o, m})] = c;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::optional<Vector> span_coordinates(const std::vector<PolyField>& basis, const PolyField& f) {
  std::vector<const PolyField*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  ptrs.push_back(&f);
  auto vs = coefficient_vectors(ptrs);
  auto target = vs.back();
  vs.pop_back();
  if (target.empty()) return Vector(basis.size());
  if (vs.empty()) return exalg::is_zero(target) ? std::optional<Vector>(Vector{}) : std::nullopt;
  return exalg::coordinates(vs, target);
}

bool in_span(const std::vector<PolyField>& basis, const PolyField& f) { return span_coordinates(basis, f).has_value(); }

std::vector<Vector> coefficient_vectors(const std::vector<PolyField>& fields) {
  std::vector<const PolyField*> ptrs;
  for (const auto& f : fields) ptrs.push_back(&f);
  return coefficient_vectors(ptrs);
}

std::size_t span_rank(const std::vector<PolyField>& fields) {
  std::vector<const PolyField*> ptrs;
  for (const auto& b : fields) ptrs.push_back(&b);
  auto vs = coefficient_vectors(ptrs);
  if (vs.empty() || vs[0].empty()) return 0;
  return exalg::rank_of(vs, vs[0].size());
}

bool TractorSection::is_zero() const {
  for (const auto& s : slots)
    if (!s.is_zero()) return false;
  return true;
}

std::vector<Weight> slot_weights(TractorKind k) {
  switch (k) {
    case TractorKind::standard: return {{-2}, {2}, {2}};
    case TractorKind::spin: return {{-1}, {1}};
    case TractorKind::adjoint: return {{0}, {4}, {0}, {4}};
  }
  return {};
}

std::vector<Weight> slot_labels(const TractorSection& t) {
  std::vector<Weight> out;
  for (const auto& s : t.slots) out.push_back(s.weight);
  return out;
}

TractorSection spin_tractor(const PolyField& tau, const PolyField& chi) {
  return {TractorKind::spin, {tau, chi}};
}

TractorSection l0_s(const FlatContext& ctx, const PolyField& chi) {
  require_kind(chi, FieldKind::spinor, "l0_s");
  return spin_tractor(dirac_companion(ctx, chi), chi);
}

TractorSection l0_t(const FlatContext& ctx, const PolyField& sigma) {
  require_kind(sigma, FieldKind::scalar, "l0_t");
  auto rho = PolyField::zero(FieldKind::scalar, sigma.nvars, 1, shifted(sigma.weight, -4));
  rho.comps[0] = laplacian(ctx, sigma.comps[0]) * Scalar(mpq_class(-1, static_cast<long>(ctx.n())));
  return {TractorKind::standard, {rho, gradient(sigma), sigma}};
}

TractorSection l0_a(const FlatContext& ctx, const PolyField& xi) {
  require_kind(xi, FieldKind::vector, "l0_a");
  const std::size_t n = ctx.n();
  const long ln = static_cast<long>(n);
  auto low = lower(ctx, xi);
  Poly div = divergence(xi);

  auto pairs = form_indices(n, 2);
  auto mu = PolyField::zero(FieldKind::form, xi.nvars, pairs.size(), low.weight);
  mu.form_degree = 2;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = std::tie(pairs[i][0], pairs[i][1]);
    mu.comps[i] = (low.comps[b].derivative(a) - low.comps[a].derivative(b)) * Scalar(mpq_class(1, 2));
  }
  auto nu = PolyField::zero(FieldKind::scalar, xi.nvars, 1, xi.weight);
  nu.comps[0] = div * Scalar(mpq_class(-1, ln));

  auto top = PolyField::zero(FieldKind::covector, xi.nvars, n, xi.weight);
  const Scalar c_lap(mpq_class(-1, 2 * ln));
  const Scalar c_div = Scalar(mpq_class(1, 2 * ln)) + Scalar(mpq_class(1, ln * ln));
  for (std::size_t a = 0; a < n; ++a)
    top.comps[a] = laplacian(ctx, low.comps[a]) * c_lap + div.derivative(a) * c_div;
  return {TractorKind::adjoint, {top, mu, nu, low}};
}

PolyField pi0(const TractorSection& t) { return t.slots.back(); }

TractorSection nabla(const FlatContext& ctx, const TractorSection& t, std::size_t c) {
  if (t.kind == TractorKind::spin) {
    const auto& tau = t.slots[0];
    const auto& chi = t.slots[1];
    return spin_tractor(tau.derivative(c), chi.derivative(c) + inv_sqrt2() * apply(ctx.gamma_lower(c), tau, 2));
  }
  if (t.kind == TractorKind::standard) {
    const auto& rho = t.slots[0];
    const auto& phi = t.slots[1];
    const auto& sigma = t.slots[2];
    auto dphi = phi.derivative(c);
    for (std::size_t a = 0; a < ctx.n(); ++a)
      if (!ctx.g()(c, a).is_zero()) dphi.comps[a] += rho.comps[0] * ctx.g()(c, a);
    auto dsigma = sigma.derivative(c);
    dsigma.comps[0] -= phi.comps[c];
    return {TractorKind::standard, {rho.derivative(c), dphi, dsigma}};
  }
  throw MathError("adjoint tractors need an embedding; use adjoint_is_parallel");
}

bool is_parallel(const FlatContext& ctx, const TractorSection& t) {
  for (std::size_t c = 0; c < ctx.n(); ++c)
    if (!nabla(ctx, t, c).is_zero()) return false;
  return true;
}

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix zero_poly_matrix(std::size_t n) { return PolyMatrix(n, std::vector<Poly>(n)); }

void add_wedge(PolyMatrix& m, std::size_t u, std::size_t v, const Poly& c) {
  m[u][v] += c;
  m[v][u] -= c;
}

// parts[0..3]: the four slot families with unit coefficients
std::array<PolyMatrix, 4> adjoint_parts(const FlatContext& ctx, const TractorSection& a) {
  const std::size_t n = ctx.n();
  const std::size_t rho = 0, sigma = n + 1;
  std::array<PolyMatrix, 4> parts;
  for (auto& p : parts) p = zero_poly_matrix(n + 2);
  const auto& top = a.slots[0];
  const auto& mu = a.slots[1];
  const auto& nu = a.slots[2];
  const auto& xi = a.slots[3];
  for (std::size_t i = 0; i < n; ++i) add_wedge(parts[0], 1 + i, sigma, xi.comps[i]);
  auto pairs = form_indices(n, 2);
  for (std::size_t k = 0; k < pairs.size(); ++k) add_wedge(parts[1], 1 + pairs[k][0], 1 + pairs[k][1], mu.comps[k]);
  add_wedge(parts[2], rho, sigma, nu.comps[0]);
  for (std::size_t i = 0; i < n; ++i) add_wedge(parts[3], rho, 1 + i, top.comps[i]);
  return parts;
}

// d_c A + Omega_c A + A Omega_c^T for the flat standard tractor connection
PolyMatrix nabla_matrix(const FlatContext& ctx, const PolyMatrix& m, std::size_t c) {
  const std::size_t n = ctx.n();
  const std::size_t N = n + 2;
  PolyMatrix out = zero_poly_matrix(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i][j] = m[i][j].derivative(c);
  // Omega_c: (1+a, 0) = g_ca, (n+1, 1+c) = -1
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t a = 0; a < n; ++a)
      if (!ctx.g()(c, a).is_zero()) {
        out[1 + a][j] += m[0][j] * ctx.g()(c, a);
        out[j][1 + a] += m[j][0] * ctx.g()(c, a);
      }
    out[n + 1][j] -= m[1 + c][j];
    out[j][n + 1] -= m[j][1 + c];
  }
  return out;
}

}  // namespace

AdjointEmbedding solve_adjoint_embedding(const FlatContext& ctx, const std::vector<PolyField>& ckf) {
  exalg::SpanReducer rows(4);
  for (const auto& xi : ckf) {
    auto parts = adjoint_parts(ctx, l0_a(ctx, xi));
    for (std::size_t c = 0; c < ctx.n() && rows.rank() < 4; ++c) {
      std::array<PolyMatrix, 4> d;
      for (std::size_t k = 0; k < 4; ++k) d[k] = nabla_matrix(ctx, parts[k], c);
      for (std::size_t i = 0; i < ctx.n() + 2; ++i)
        for (std::size_t j = 0; j < ctx.n() + 2; ++j) {
          std::map<Monomial, Vector> eqs;
          for (std::size_t k = 0; k < 4; ++k)
            for (const auto& [m, coef] : d[k][i][j].terms()) {
              auto& v = eqs.try_emplace(m, Vector(4)).first->second;
              v[k] = coef;
            }
          for (const auto& [m, v] : eqs) rows.add(v);
        }
    }
  }
  std::vector<Vector> ker;
  if (rows.rank() == 0) {
    for (std::size_t k = 0; k < 4; ++k) ker.push_back(exalg::unit_vector(4, k));
  } else {
    ker = exalg::kernel(Matrix::from_rows(rows.basis(), 4));
  }
  if (ker.size() != 1 || ker[0][0].is_zero())
    throw SolverError("adjoint slot embedding is not unique up to scale (solution dimension " +
                      std::to_string(ker.size()) + ")");
  Scalar s = ker[0][0].inverse();
  return {Scalar(1), ker[0][1] * s, ker[0][2] * s, ker[0][3] * s, ker.size()};
}

std::vector<std::vector<Poly>> adjoint_matrix(const FlatContext& ctx, const TractorSection& a, const AdjointEmbedding& e) {
  if (a.kind != TractorKind::adjoint) throw MathError("adjoint_matrix needs an adjoint tractor");
  auto parts = adjoint_parts(ctx, a);
  const Scalar coef[4] = {e.alpha, e.beta, e.gamma, e.delta};
  PolyMatrix out = zero_poly_matrix(ctx.n() + 2);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[i][j] += parts[k][i][j] * coef[k];
  return out;
}

bool adjoint_is_parallel(const FlatContext& ctx, const TractorSection& a, const AdjointEmbedding& e) {
  auto m = adjoint_matrix(ctx, a, e);
  for (std::size_t c = 0; c < ctx.n(); ++c) {
    auto d = nabla_matrix(ctx, m, c);
    for (const auto& row : d)
      for (const auto& p : row)
        if (!p.is_zero()) return false;
  }
  return true;
}

TractorSection tractor_clifford(const FlatContext& ctx, const TractorSection& s, const TractorSection& x) {
  if (s.kind != TractorKind::standard || x.kind != TractorKind::spin)
    throw MathError("tractor_clifford needs a standard and a spin tractor");
  const auto& rho = s.slots[0];
  const auto& phi = s.slots[1];
  const auto& sigma = s.slots[2];
  const auto& tau = x.slots[0];
  const auto& chi = x.slots[1];
  const Scalar r2 = Scalar::sqrt2();
  auto top = Scalar(-1) * clifford_multiply(ctx, phi, tau) - r2 * multiply(rho, chi);
  auto bottom = clifford_multiply(ctx, phi, chi) + r2 * multiply(sigma, tau);
  return spin_tractor(top, bottom);
}

Poly tractor_metric(const FlatContext& ctx, const TractorSection& s, const TractorSection& t) {
  if (s.kind != TractorKind::standard || t.kind != TractorKind::standard)
    throw MathError("tractor_metric needs standard tractors");
  Poly out = s.slots[0].comps[0] * t.slots[2].comps[0] + s.slots[2].comps[0] * t.slots[0].comps[0];
  for (std::size_t a = 0; a < ctx.n(); ++a)
    for (std::size_t b = 0; b < ctx.n(); ++b)
      if (!ctx.ginv()(a, b).is_zero()) out += s.slots[1].comps[a] * t.slots[1].comps[b] * ctx.ginv()(a, b);
  return out;
}

TractorSection constant_standard_tractor(const FlatContext& ctx, const Scalar& rho, const Vector& phi, const Scalar& sigma) {
  const std::size_t n = ctx.n();
  return {TractorKind::standard,
          {PolyField::constant(FieldKind::scalar, n, {rho}, {-2}), PolyField::constant(FieldKind::covector, n, phi, {2}),
           PolyField::constant(FieldKind::scalar, n, {sigma}, {2})}};
}

TractorSection parallel_spin_tractor(const FlatContext& ctx, const Vector& x0) {
  const std::size_t d = ctx.spinor_dim();
  if (x0.size() != 2 * d) throw MathError("spin tractor has the wrong size");
  Vector tau0(x0.begin(), x0.begin() + static_cast<long>(d));
  Vector chi0(x0.begin() + static_cast<long>(d), x0.end());
  auto tau = PolyField::constant(FieldKind::spinor, ctx.n(), tau0, {-1});
  return spin_tractor(tau, parallel_twistor(ctx, chi0, tau0));
}

PolyField parallel_twistor(const FlatContext& ctx, const Vector& chi0, const Vector& tau0) {
  const std::size_t d = ctx.spinor_dim();
  if (chi0.size() != d || tau0.size() != d) throw MathError("seed spinors have the wrong size");
  auto chi = PolyField::constant(FieldKind::spinor, ctx.n(), chi0, {kTwistorWeight});
  auto tau = PolyField::constant(FieldKind::spinor, ctx.n(), tau0, {-1});
  auto x_tau = clifford_multiply(ctx, position_vector(ctx), tau);
  for (std::size_t k = 0; k < d; ++k) chi.comps[k] -= x_tau.comps[k] * inv_sqrt2();
  return chi;
}

PolyField generic_twistor(const FlatContext& ctx, const Vector& chi0, const Vector& tau0) {
  auto x = pairings::double_spinor(tau0, chi0);
  if (ctx.B()(x, x).is_zero()) throw NullSeed("seed (chi0, tau0) is null: B(X, X) = 0");
  return parallel_twistor(ctx, chi0, tau0);
}

PolyField standard_generic_twistor(const FlatContext& ctx) {
  return generic_twistor(ctx, pairings::distinguished_chi(ctx.model()), pairings::distinguished_tau(ctx.model()));
}

}  // namespace gentwistor::flatmodel
