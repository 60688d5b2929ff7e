#include "gentwistor/decomp.hpp"

#include <algorithm>
#include <map>

#include "gentwistor/exalg/linalg.hpp"

namespace gentwistor::decomp {

using exalg::Matrix;
using exalg::MathError;
using flatmodel::FieldKind;

namespace {

Scalar frac(long a, long b) { return Scalar(mpq_class(a, b)); }

void require_signature(const FlatContext& ctx, int p, int q, const char* what) {
  if (ctx.p() != p || ctx.q() != q)
    throw MathError(std::string(what) + " is defined in signature (" + std::to_string(p) + "," + std::to_string(q) + ")");
}

PolyField scalar_field(std::size_t nvars, Poly f, flatmodel::Weight w = {}) {
  auto out = PolyField::zero(FieldKind::scalar, nvars, 1, w);
  out.comps[0] = std::move(f);
  return out;
}

// b(gamma_a x, y) for each a, as a covector field
PolyField gamma_pairing(const FlatContext& ctx, const PolyField& x, const PolyField& y) {
  auto out = PolyField::zero(FieldKind::covector, x.nvars, ctx.n(), x.weight + y.weight + ctx.b().weight);
  out.weight.twice += 2;
  for (std::size_t a = 0; a < ctx.n(); ++a) out.comps[a] = flatmodel::pair(ctx.b(), flatmodel::apply(ctx.gamma_lower(a), x), y);
  return out;
}

// sign of the permutation sorting idx, 0 on a repeated index
int sort_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      } else if (idx[j] == idx[j + 1]) {
        return 0;
      }
  for (std::size_t j = 0; j + 1 < idx.size(); ++j)
    if (idx[j] == idx[j + 1]) return 0;
  return sign;
}

// an alternating form evaluated at a point, addressable on any index tuple
class FormAt {
 public:
  FormAt(const PolyField& form, const Point& x) : values_(form.evaluate(x)) {
    if (form.kind != FieldKind::form) throw MathError("not a form field");
    auto tuples = flatmodel::form_indices(form.nvars, form.form_degree);
    for (std::size_t i = 0; i < tuples.size(); ++i) position_[tuples[i]] = i;
  }
  Scalar operator()(std::vector<std::size_t> idx) const {
    int s = sort_sign(idx);
    if (s == 0) return Scalar(0);
    const Scalar& v = values_[position_.at(idx)];
    return s > 0 ? v : -v;
  }

 private:
  Vector values_;
  std::map<std::vector<std::size_t>, std::size_t> position_;
};

std::vector<Vector> evaluate_all(const std::vector<PolyField>& fields, const Point& x) {
  std::vector<Vector> out;
  for (const auto& f : fields) out.push_back(f.evaluate(x));
  return out;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
  std::vector<Vector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto r = exalg::rank_of(both, dim);
  return r == exalg::rank_of(a, dim) && r == exalg::rank_of(b, dim);
}

// combinations sum c_i fields[i] for c in the kernel of the linear map whose images are `images`
std::vector<PolyField> kernel_combinations(const std::vector<PolyField>& fields, const std::vector<PolyField>& images) {
  auto vs = flatmodel::coefficient_vectors(images);
  std::vector<Vector> coeffs;
  if (vs.empty() || vs[0].empty()) {
    for (std::size_t i = 0; i < fields.size(); ++i) coeffs.push_back(exalg::unit_vector(fields.size(), i));
  } else {
    coeffs = exalg::kernel(Matrix::from_columns(vs, vs[0].size()));
  }
  std::vector<PolyField> out;
  for (const auto& c : coeffs) {
    PolyField f = PolyField::zero(fields[0].kind, fields[0].nvars, fields[0].size(), fields[0].weight);
    f.form_degree = fields[0].form_degree;
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (!c[i].is_zero()) f += c[i] * fields[i];
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

PolyField skew_derivative(const FlatContext& ctx, const PolyField& xi) {
  auto low = flatmodel::lower(ctx, xi);
  auto out = PolyField::zero(FieldKind::form, xi.nvars, 0, low.weight);
  out.form_degree = 2;
  for (const auto& ab : flatmodel::form_indices(ctx.n(), 2)) {
    Poly w = low.comps[ab[1]].derivative(ab[0]) - low.comps[ab[0]].derivative(ab[1]);
    out.comps.push_back(w * frac(1, 2));
  }
  return out;
}

PolyField two_form_action(const FlatContext& ctx, const PolyField& form, const PolyField& spinor) {
  if (form.kind != FieldKind::form || form.form_degree != 2) throw MathError("two_form_action needs a 2-form");
  auto out = PolyField::zero(spinor.kind, spinor.nvars, spinor.size(), form.weight + spinor.weight);
  out.weight.twice -= 4;
  const auto pairs = flatmodel::form_indices(ctx.n(), 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (form.comps[i].is_zero()) continue;
    const auto a = pairs[i][0], b = pairs[i][1];
    Matrix m = (ctx.gamma_upper(a) * ctx.gamma_upper(b) - ctx.gamma_upper(b) * ctx.gamma_upper(a)) * frac(1, 2);
    auto ms = flatmodel::apply(m, spinor);
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!ms.comps[k].is_zero()) out.comps[k] += form.comps[i] * ms.comps[k];
  }
  return out;
}

Poly perp_defect(const FlatContext& ctx, const PolyField& eta, const PolyField& chi) {
  return flatmodel::pair(ctx.b(), eta, flatmodel::dirac(ctx, chi)) + flatmodel::pair(ctx.b(), chi, flatmodel::dirac(ctx, eta));
}

TwPerpSpace tw_perp(const FlatContext& ctx, const PolyField& chi, const std::vector<PolyField>& twistors) {
  TwPerpSpace out;
  out.chi = chi;
  out.twistor_dim = twistors.size();
  if (twistors.empty()) return out;
  std::vector<PolyField> defects;
  for (const auto& eta : twistors) defects.push_back(scalar_field(ctx.n(), perp_defect(ctx, eta, chi)));
  out.basis = kernel_combinations(twistors, defects);
  return out;
}

MapConstants printed_constants(const FlatContext& ctx) {
  if (ctx.p() == 2 && ctx.q() == 3) return {frac(2, 5), frac(-4, 5), Scalar(0)};
  return {frac(1, 3), frac(-2, 3), Scalar(0)};
}

namespace {

PolyField dirac_term(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi) {
  return flatmodel::multiply(sigma, flatmodel::dirac(ctx, chi));
}

PolyField gradient_term(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi) {
  return flatmodel::clifford_multiply(ctx, flatmodel::gradient(sigma), chi);
}

PolyField xi_dirac_term(const FlatContext& ctx, const PolyField& xi, const PolyField& chi) {
  return flatmodel::clifford_multiply(ctx, xi, flatmodel::dirac(ctx, chi));
}

PolyField rotation_term(const FlatContext& ctx, const PolyField& xi, const PolyField& chi) {
  return two_form_action(ctx, skew_derivative(ctx, xi), chi);
}

PolyField divergence_term(const FlatContext& ctx, const PolyField& xi, const PolyField& chi) {
  return flatmodel::multiply(scalar_field(ctx.n(), flatmodel::divergence(xi)), chi);
}

}  // namespace

PolyField aes_to_twistor23(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi, const MapConstants& k) {
  require_signature(ctx, 2, 3, "aes_to_twistor23");
  return k.aes_twistor * dirac_term(ctx, sigma, chi) + gradient_term(ctx, sigma, chi);
}

PolyField twistor_to_aes23(const FlatContext& ctx, const PolyField& eta, const PolyField& chi) {
  require_signature(ctx, 2, 3, "twistor_to_aes23");
  return flatmodel::pair_field(ctx.b(), chi, eta);
}

PolyField ckf_to_aes23(const FlatContext& ctx, const PolyField& xi, const PolyField& chi, const MapConstants& k) {
  require_signature(ctx, 2, 3, "ckf_to_aes23");
  return flatmodel::pair_field(ctx.b(), chi, k.ckf_dirac * xi_dirac_term(ctx, xi, chi) + rotation_term(ctx, xi, chi));
}

PolyField aes_to_ckf23(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi, const MapConstants& k) {
  return flatmodel::raise(ctx, gamma_pairing(ctx, chi, aes_to_twistor23(ctx, sigma, chi, k)));
}

PolyField aes_to_negative_twistor33(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi,
                                    const MapConstants& k) {
  require_signature(ctx, 3, 3, "aes_to_negative_twistor33");
  return k.aes_twistor * dirac_term(ctx, sigma, chi) + gradient_term(ctx, sigma, chi);
}

PolyField negative_twistor_to_aes33(const FlatContext& ctx, const PolyField& eta, const PolyField& chi) {
  require_signature(ctx, 3, 3, "negative_twistor_to_aes33");
  return flatmodel::pair_field(ctx.b(), chi, eta);
}

PolyField ckf_to_twistor33(const FlatContext& ctx, const PolyField& xi, const PolyField& chi, const MapConstants& k) {
  require_signature(ctx, 3, 3, "ckf_to_twistor33");
  auto out = k.ckf_dirac * xi_dirac_term(ctx, xi, chi) + rotation_term(ctx, xi, chi);
  if (!k.ckf_divergence.is_zero()) out += k.ckf_divergence * divergence_term(ctx, xi, chi);
  return out;
}

PolyField twistor_to_ckf33(const FlatContext& ctx, const PolyField& eta, const PolyField& chi) {
  require_signature(ctx, 3, 3, "twistor_to_ckf33");
  // b(chi, gamma_a eta) = b(gamma_a chi, eta), Clifford sign +1
  return flatmodel::raise(ctx, Scalar(ctx.b().clifford_sign) * gamma_pairing(ctx, chi, eta));
}

std::optional<Vector> solve_affine(const std::vector<PolyField>& fixed, const std::vector<std::vector<PolyField>>& moving) {
  const std::size_t m = fixed.size(), J = moving.size();
  std::vector<PolyField> all = fixed;
  for (const auto& mv : moving) all.insert(all.end(), mv.begin(), mv.end());
  auto vs = flatmodel::coefficient_vectors(all);
  const std::size_t K = vs.empty() ? 0 : vs[0].size();
  Matrix a(m * K, J);
  Vector rhs(m * K);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      rhs[i * K + k] = -vs[i][k];
      for (std::size_t j = 0; j < J; ++j) a(i * K + k, j) = vs[m * (j + 1) + i][k];
    }
  if (exalg::rank(a) != J) return std::nullopt;
  return exalg::solve(a, rhs);
}

namespace {

std::vector<PolyField> images(const std::vector<PolyField>& src, const FieldMap& f) {
  std::vector<PolyField> out;
  for (const auto& s : src) out.push_back(f(s));
  return out;
}

bool all_zero(const std::vector<PolyField>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](const PolyField& f) { return f.is_zero(); });
}

}  // namespace

ConstantResolution resolve_constants(const FlatContext& ctx, const PolyField& chi, const std::vector<PolyField>& aes,
                                     const std::vector<PolyField>& ckf) {
  ConstantResolution out;
  out.printed = printed_constants(ctx);
  out.resolved = out.printed;
  const bool s23 = ctx.p() == 2 && ctx.q() == 3;
  if (!s23) require_signature(ctx, 3, 3, "resolve_constants");
  auto theta = [&](const PolyField& f) { return flatmodel::twistor_operator(ctx, f); };
  auto aes_op = [&](const PolyField& f) { return flatmodel::aes_operator(ctx, f); };

  // aes -> twistor: Theta(k sigma Dslash chi + D sigma . chi) = 0
  auto fixed = images(aes, [&](const PolyField& s) { return theta(gradient_term(ctx, s, chi)); });
  auto moving = images(aes, [&](const PolyField& s) { return theta(dirac_term(ctx, s, chi)); });
  if (auto t = solve_affine(fixed, {moving})) {
    out.aes_unique = true;
    out.resolved.aes_twistor = (*t)[0];
  }
  {
    std::vector<PolyField> r;
    for (std::size_t i = 0; i < aes.size(); ++i) r.push_back(fixed[i] + out.printed.aes_twistor * moving[i]);
    out.printed_aes_lands = all_zero(r);
  }

  // ckf forward: target operator applied to k xi.Dslash chi + rotation (+ k' div chi)
  FieldMap target = s23 ? FieldMap([&](const PolyField& eta) { return aes_op(flatmodel::pair_field(ctx.b(), chi, eta)); })
                        : FieldMap(theta);
  auto cf = images(ckf, [&](const PolyField& xi) { return target(rotation_term(ctx, xi, chi)); });
  auto cd = images(ckf, [&](const PolyField& xi) { return target(xi_dirac_term(ctx, xi, chi)); });
  std::vector<std::vector<PolyField>> cm{cd};
  std::vector<PolyField> cv;
  if (!s23) {
    cv = images(ckf, [&](const PolyField& xi) { return target(divergence_term(ctx, xi, chi)); });
    cm.push_back(cv);
  }
  if (auto t = solve_affine(cf, cm)) {
    out.ckf_unique = true;
    out.resolved.ckf_dirac = (*t)[0];
    if (!s23) out.resolved.ckf_divergence = (*t)[1];
  }
  std::vector<PolyField> printed_fixed;
  for (std::size_t i = 0; i < ckf.size(); ++i) printed_fixed.push_back(cf[i] + out.printed.ckf_dirac * cd[i]);
  if (s23) {
    out.printed_ckf_lands = all_zero(printed_fixed);
  } else if (auto t = solve_affine(printed_fixed, {cv})) {
    out.printed_ckf_lands = true;
    out.printed_divergence = (*t)[0];
  }
  return out;
}

Roundtrip roundtrip(const std::vector<PolyField>& source, const FieldMap& forth, const FieldMap& back) {
  Roundtrip out;
  std::optional<Scalar> c;
  bool common = true;
  for (const auto& s : source) {
    auto t = back(forth(s));
    ++out.checked;
    if (t.size() != s.size()) {
      common = false;
      continue;
    }
    std::optional<Scalar> ratio;
    for (std::size_t k = 0; k < s.size() && !ratio; ++k)
      for (const auto& [m, v] : s.comps[k].terms()) {
        ratio = t.comps[k].coefficient(m) / v;
        break;
      }
    if (!ratio) continue;  // zero source element
    for (std::size_t k = 0; k < s.size(); ++k)
      if (t.comps[k] != s.comps[k] * *ratio) common = false;
    if (c && *c != *ratio) common = false;
    c = ratio;
  }
  if (common) out.constant = c;
  return out;
}

bool lands_in(const std::vector<PolyField>& source, const FieldMap& map, const std::vector<PolyField>& target) {
  for (const auto& s : source)
    if (!flatmodel::in_span(target, map(s))) return false;
  return true;
}

FieldMap Decomposer::forward() const {
  const FlatContext& c = ctx;
  PolyField x = chi;
  MapConstants k = constants;
  if (c.p() == 2 && c.q() == 3) return [&c, x, k](const PolyField& xi) { return ckf_to_aes23(c, xi, x, k); };
  return [&c, x, k](const PolyField& xi) { return ckf_to_twistor33(c, xi, x, k); };
}

FieldMap Decomposer::back() const {
  const FlatContext& c = ctx;
  PolyField x = chi;
  MapConstants k = constants;
  if (c.p() == 2 && c.q() == 3) return [&c, x, k](const PolyField& s) { return aes_to_ckf23(c, s, x, k); };
  return [&c, x](const PolyField& eta) { return twistor_to_ckf33(c, eta, x); };
}

CkfSplit Decomposer::split(const PolyField& xi, const Scalar& c) const {
  CkfSplit out;
  out.complement = forward()(xi);
  out.aut = xi - c.inverse() * back()(out.complement);
  return out;
}

std::vector<PolyField> automorphisms(const FlatContext& ctx, const distributions::DistributionField& dist,
                                     const std::vector<PolyField>& ckf) {
  // sum_i c_i w.[xi_i, e](x) = 0 for w annihilating D(x)
  std::vector<Vector> rows;
  for (const auto& x : distributions::sample_points(ctx.n())) {
    if (!dist.in_cell(x)) continue;
    auto ann = exalg::kernel(Matrix::from_rows(evaluate_all(dist.frame, x), ctx.n()));
    for (const auto& e : dist.frame) {
      std::vector<Vector> brackets;
      for (const auto& xi : ckf) brackets.push_back(distributions::lie_bracket(xi, e).evaluate(x));
      for (const auto& w : ann) {
        Vector row(ckf.size());
        for (std::size_t i = 0; i < ckf.size(); ++i) row[i] = exalg::dot(w, brackets[i]);
        rows.push_back(std::move(row));
      }
    }
  }
  std::vector<Vector> coeffs;
  if (rows.empty()) {
    for (std::size_t i = 0; i < ckf.size(); ++i) coeffs.push_back(exalg::unit_vector(ckf.size(), i));
  } else {
    coeffs = exalg::kernel(Matrix::from_rows(rows, ckf.size()));
  }
  std::vector<PolyField> out;
  for (const auto& c : coeffs) {
    auto f = PolyField::zero(FieldKind::vector, ctx.n(), ctx.n(), ckf.at(0).weight);
    for (std::size_t i = 0; i < ckf.size(); ++i)
      if (!c[i].is_zero()) f += c[i] * ckf[i];
    out.push_back(std::move(f));
  }
  return out;
}

CkfDecomposition decompose_ckf_space(const Decomposer& d, const std::vector<PolyField>& ckf,
                                     const std::vector<PolyField>& complement_space) {
  CkfDecomposition out;
  out.ckf_dim = ckf.size();
  auto fwd = d.forward();
  auto bck = d.back();
  auto rt = roundtrip(complement_space, bck, fwd);
  if (!rt.nonzero()) throw MathError("forward o back is not a nonzero multiple of the identity");
  out.c = *rt.constant;

  auto dist = distributions::distribution_from_spinor(d.ctx, d.chi);
  const auto points = distributions::sample_points(d.ctx.n());

  std::vector<PolyField> auts, complements, sum;
  out.aut_preserves_distribution = true;
  out.forward_kills_aut = true;
  for (const auto& xi : ckf) {
    auto s = d.split(xi, out.c);
    if (!fwd(s.aut).is_zero()) out.forward_kills_aut = false;
    for (const auto& x : points)
      if (dist.in_cell(x) && !distributions::preserves(dist, s.aut, x)) out.aut_preserves_distribution = false;
    auts.push_back(s.aut);
    complements.push_back(s.complement);
  }
  out.aut_rank = flatmodel::span_rank(auts);
  out.complement_rank = flatmodel::span_rank(complements);
  sum = auts;
  for (const auto& s : complement_space) sum.push_back(bck(s));
  out.sum_rank = flatmodel::span_rank(sum);

  auto aut = automorphisms(d.ctx, dist, ckf);
  out.automorphism_dim = aut.size();
  out.automorphisms_fixed = true;
  for (const auto& xi : aut) {
    auto s = d.split(xi, out.c);
    if (!s.complement.is_zero() || s.aut.comps != xi.comps) out.automorphisms_fixed = false;
  }
  return out;
}

NCKForm nck_form(const FlatContext& ctx, const PolyField& chi) {
  NCKForm out;
  out.k = ctx.p() == 2 && ctx.q() == 3 ? 2 : 3;
  if (!(ctx.p() == 3 && ctx.q() == 3) && out.k == 3) throw MathError("nck_form: unsupported signature");
  out.form = PolyField::zero(FieldKind::form, chi.nvars, 0, chi.weight + chi.weight + ctx.b().weight);
  out.form.weight.twice += 2 * static_cast<int>(out.k);
  out.form.form_degree = out.k;
  for (auto idx : flatmodel::form_indices(ctx.n(), out.k)) {
    const std::size_t d = ctx.spinor_dim();
    Matrix alt(d, d);
    // (1/k!) sum over permutations of sign * gamma_{s1} ... gamma_{sk}
    long count = 0;
    std::sort(idx.begin(), idx.end());
    auto perm = idx;
    do {
      auto tmp = perm;
      const int sign = sort_sign(tmp);
      Matrix prod = Matrix::identity(d);
      for (auto a : perm) prod = prod * ctx.gamma_lower(a);
      if (sign > 0) alt += prod; else alt -= prod;
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    alt *= frac(1, count);
    out.form.comps.push_back(flatmodel::pair(ctx.b(), chi, flatmodel::apply(alt, chi)));
  }
  return out;
}

Scalar form_value(const PolyField& form, const std::vector<std::size_t>& idx, const Point& x) { return FormAt(form, x)(idx); }

bool plucker_holds(const PolyField& form, const Point& x) {
  const std::size_t n = form.nvars, k = form.form_degree;
  FormAt phi(form, x);
  // sum_l (-1)^l phi(A, b_l) phi(B \ b_l) = 0 for all (k-1)-tuples A and (k+1)-tuples B
  for (const auto& A : flatmodel::form_indices(n, k - 1))
    for (const auto& B : flatmodel::form_indices(n, k + 1)) {
      Scalar s;
      for (std::size_t l = 0; l <= k; ++l) {
        auto left = A;
        left.push_back(B[l]);
        std::vector<std::size_t> right;
        for (std::size_t j = 0; j <= k; ++j)
          if (j != l) right.push_back(B[j]);
        Scalar t = phi(left) * phi(right);
        if (l % 2 == 0) s += t; else s -= t;
      }
      if (!s.is_zero()) return false;
    }
  return true;
}

std::vector<Vector> insertion_kernel(const PolyField& form, const Point& x) {
  const std::size_t n = form.nvars, k = form.form_degree;
  FormAt phi(form, x);
  std::vector<Vector> rows;
  for (const auto& I : flatmodel::form_indices(n, k - 1)) {
    Vector row(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> idx{a};
      idx.insert(idx.end(), I.begin(), I.end());
      row[a] = phi(idx);
    }
    rows.push_back(std::move(row));
  }
  return exalg::kernel(Matrix::from_rows(rows, n));
}

NckPointReport nck_point_report(const FlatContext& ctx, const NCKForm& f, const distributions::DistributionField& dist,
                                const Point& x) {
  NckPointReport out;
  out.x = x;
  out.nonzero = !exalg::is_zero(f.form.evaluate(x));
  out.decomposable = out.nonzero && plucker_holds(f.form, x);
  auto K = insertion_kernel(f.form, x);
  out.kernel_dim = K.size();
  const auto D = evaluate_all(dist.frame, x);
  if (f.k == 3) {
    out.kernel_equals_D = same_span(K, D, ctx.n());
  } else if (!K.empty()) {
    Matrix gram(K.size(), K.size());
    for (std::size_t i = 0; i < K.size(); ++i)
      for (std::size_t j = 0; j < K.size(); ++j) gram(i, j) = exalg::bilinear(ctx.g(), K[i], K[j]);
    std::vector<Vector> radical;
    for (const auto& c : exalg::kernel(gram)) {
      Vector v(ctx.n());
      for (std::size_t i = 0; i < K.size(); ++i) v = v + c[i] * K[i];
      radical.push_back(std::move(v));
    }
    out.radical_equals_D = same_span(radical, D, ctx.n());
  }
  return out;
}

}  // namespace gentwistor::decomp
