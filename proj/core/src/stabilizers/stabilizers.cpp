#include "gentwistor/stabilizers.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace gentwistor::stabilizers {

using exalg::MathError;
using exalg::SpanReducer;

bool LieSubalgebra::contains(const Vector& a) const { return exalg::in_span(basis, a); }

LieSubalgebra full_algebra(SoPtr so) {
  LieSubalgebra s{so, {}};
  for (std::size_t k = 0; k < so->bivector_dim(); ++k) s.basis.push_back(exalg::unit_vector(so->bivector_dim(), k));
  return s;
}

LieSubalgebra stabilizer(SoPtr so, const Vector& spinor) {
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < so->bivector_dim(); ++k) cols.push_back(so->basis_spinor_matrix(k) * spinor);
  LieSubalgebra s{so, exalg::kernel(Matrix::from_columns(cols, so->model().spinor_dim()))};
  return s;
}

bool is_closed(const LieSubalgebra& s) {
  SpanReducer span(s.so->bivector_dim(), s.basis);
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j)
      if (!span.contains(s.so->bracket(s.basis[i], s.basis[j]))) return false;
  return true;
}

bool annihilates(const LieSubalgebra& s, const Vector& spinor) {
  for (const auto& a : s.basis)
    if (!exalg::is_zero(s.so->spinor_matrix(a) * spinor)) return false;
  return true;
}

std::vector<std::size_t> GradedDecomposition::dims() const {
  std::vector<std::size_t> d;
  for (const auto& [k, c] : components) d.push_back(c.size());
  return d;
}

std::vector<Vector> GradedDecomposition::positive_part() const {
  std::vector<Vector> out;
  for (const auto& [k, c] : components)
    if (k > 0) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<Vector> GradedDecomposition::negative_part() const {
  std::vector<Vector> out;
  for (const auto& [k, c] : components)
    if (k < 0) out.insert(out.end(), c.begin(), c.end());
  return out;
}

GradedDecomposition grade_by(const LieSubalgebra& s, const Vector& E) {
  const auto& so = *s.so;
  const Matrix m = so.vector_matrix(E);
  const std::size_t n = m.rows();
  GradedDecomposition g;
  g.E = E;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !m(i, j).is_zero()) throw GradingError("grading element is not diagonal on the vector basis");
  for (std::size_t i = 0; i < n; ++i) g.vector_weights.push_back(m(i, i));
  // e_i^e_j has ad(E)-eigenvalue w_i + w_j
  std::vector<std::pair<Scalar, std::vector<Vector>>> by_weight;
  for (std::size_t k = 0; k < so.bivector_dim(); ++k) {
    auto [i, j] = so.pairs()[k];
    Scalar w = g.vector_weights[i] + g.vector_weights[j];
    auto it = std::find_if(by_weight.begin(), by_weight.end(), [&](const auto& p) { return p.first == w; });
    if (it == by_weight.end()) {
      by_weight.push_back({w, {}});
      it = by_weight.end() - 1;
    }
    it->second.push_back(exalg::unit_vector(so.bivector_dim(), k));
  }
  std::size_t total = 0;
  for (const auto& [w, coords] : by_weight) {
    auto comp = exalg::intersection(s.basis, coords, so.bivector_dim());
    if (comp.empty()) continue;
    if (!w.is_rational() || w.rational_part().get_den() != 1)
      throw GradingError("non-integer eigenvalue " + w.to_string() + " of ad(E)");
    g.components[static_cast<int>(w.rational_part().get_num().get_si())] = comp;
    total += comp.size();
  }
  if (total != s.dim()) throw GradingError("ad(E) is not diagonalizable on the subalgebra");
  return g;
}

GradedDecomposition frame_grading(const LieSubalgebra& s) {
  const auto& so = *s.so;
  const auto& labels = so.model().signature().labels;
  Vector cartan(so.bivector_dim());
  for (int i = 1; i <= 3; ++i) {
    std::string e = "e" + std::to_string(i);
    std::string f = "f" + std::to_string(i);
    if (std::find(labels.begin(), labels.end(), e) == labels.end()) continue;
    cartan = cartan + so.wedge(e, f);
  }
  auto line = exalg::intersection(s.basis, {so.wedge("e+", "e-"), cartan}, so.bivector_dim());
  if (line.size() != 1)
    throw GradingError("expected a single grading line, found dimension " + std::to_string(line.size()));
  Vector E0 = line.front();
  const Matrix m = so.vector_matrix(E0);
  std::vector<Scalar> w;
  for (std::size_t i = 0; i < m.rows(); ++i) w.push_back(m(i, i));
  // smallest positive eigenvalue of ad(E0) realized on s
  std::optional<Scalar> mu;
  for (std::size_t k = 0; k < so.bivector_dim(); ++k) {
    auto [i, j] = so.pairs()[k];
    Scalar v = w[i] + w[j];
    if (v.sign() <= 0) continue;
    if (!mu || v < *mu) {
      std::vector<Vector> coords;
      for (std::size_t l = 0; l < so.bivector_dim(); ++l) {
        auto [a, b] = so.pairs()[l];
        if (w[a] + w[b] == v) coords.push_back(exalg::unit_vector(so.bivector_dim(), l));
      }
      if (!exalg::intersection(s.basis, coords, so.bivector_dim()).empty()) mu = v;
    }
  }
  if (!mu) throw GradingError("grading line acts trivially");
  Scalar scale = mu->inverse();
  if (w[so.model().signature().index_of("e+")].sign() < 0) scale = -scale;
  return grade_by(s, scale * E0);
}

bool check_bracket_grading(const LieSubalgebra& s, const GradedDecomposition& g) {
  std::map<int, SpanReducer> spans;
  for (const auto& [k, c] : g.components) spans.emplace(k, SpanReducer(s.so->bivector_dim(), c));
  for (const auto& [i, ci] : g.components)
    for (const auto& [j, cj] : g.components)
      for (const auto& a : ci)
        for (const auto& b : cj) {
          Vector br = s.so->bracket(a, b);
          auto it = spans.find(i + j);
          if (it == spans.end()) {
            if (!exalg::is_zero(br)) return false;
          } else if (!it->second.contains(br)) {
            return false;
          }
        }
  return true;
}

std::string to_string(Case c) { return c == Case::g2 ? "g2" : "so34"; }

namespace {

struct Term {
  Scalar c;
  const char* u;
  const char* v;
};

// coefficient in wedge notation: "r2" for sqrt2, "1/2*r2", or the canonical form in parentheses
std::string coeff_text(const Scalar& c) {
  if (c.is_rational()) return c.to_string();
  if (c.rational_part() == 0) {
    Scalar b = c * Scalar::frac(0, 1, 1, 2);
    return b == Scalar(1) ? "r2" : b.to_string() + "*r2";
  }
  return "(" + c.to_string() + ")";
}

std::string term_text(const Scalar& c, const std::string& u, const std::string& v, bool first) {
  std::string w = u + "^" + v;
  const bool neg = c.sign() < 0 && (c.is_rational() || c.rational_part() == 0);
  const Scalar a = neg ? -c : c;
  std::string body = a == Scalar(1) ? w : coeff_text(a) + "*" + w;
  if (first) return (neg ? "-" : "") + body;
  return (neg ? " - " : " + ") + body;
}

SpanElement element(const SoAction& so, int degree, std::initializer_list<Term> terms) {
  SpanElement e;
  e.degree = degree;
  e.element = Vector(so.bivector_dim());
  for (const auto& t : terms) {
    e.element = e.element + t.c * so.wedge(t.u, t.v);
    e.text += term_text(t.c, t.u, t.v, e.text.empty());
    e.terms.push_back({t.u, t.v});
  }
  return e;
}

}  // namespace

std::vector<SpanElement> listed_span_elements(const SoAction& so, Case c) {
  const Scalar r2 = Scalar::sqrt2();
  const Scalar ir2 = Scalar::frac(0, 1, 1, 2);  // 1/sqrt2
  std::vector<SpanElement> out;
  if (c == Case::g2) {
    // contractions: i_{e1}(f1^f2) = f2, i_{e2}(f1^f2) = -f1, i_{f1}(e1^e2) = e2, i_{f2}(e1^e2) = -e1
    out.push_back(element(so, -3, {{1, "e-", "f1"}}));
    out.push_back(element(so, -3, {{1, "e-", "f2"}}));
    out.push_back(element(so, -2, {{1, "e-", "r"}, {-ir2, "f1", "f2"}}));
    out.push_back(element(so, -1, {{1, "e-", "e1"}, {r2, "r", "f2"}}));
    out.push_back(element(so, -1, {{1, "e-", "e2"}, {-r2, "r", "f1"}}));
    out.push_back(element(so, 0, {{1, "e1", "f2"}}));
    out.push_back(element(so, 0, {{1, "e2", "f1"}}));
    out.push_back(element(so, 0, {{1, "e1", "f1"}, {1, "e+", "e-"}}));
    out.push_back(element(so, 0, {{1, "e2", "f2"}, {1, "e+", "e-"}}));
    out.push_back(element(so, 1, {{1, "e+", "f1"}, {-r2, "r", "e2"}}));
    out.push_back(element(so, 1, {{1, "e+", "f2"}, {r2, "r", "e1"}}));
    out.push_back(element(so, 2, {{1, "e+", "r"}, {ir2, "e1", "e2"}}));
    out.push_back(element(so, 3, {{1, "e+", "e1"}}));
    out.push_back(element(so, 3, {{1, "e+", "e2"}}));
    return out;
  }
  // i_{e1}(f1^f2^f3) = f2^f3, i_{e2} = -f1^f3, i_{e3} = f1^f2; likewise for i_{f_i}(e1^e2^e3)
  for (const char* f : {"f1", "f2", "f3"}) out.push_back(element(so, -2, {{1, "e-", f}}));
  out.push_back(element(so, -1, {{1, "e-", "e1"}, {-r2, "f2", "f3"}}));
  out.push_back(element(so, -1, {{1, "e-", "e2"}, {r2, "f1", "f3"}}));
  out.push_back(element(so, -1, {{1, "e-", "e3"}, {-r2, "f1", "f2"}}));
  const char* es[] = {"e1", "e2", "e3"};
  const char* fs[] = {"f1", "f2", "f3"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) out.push_back(element(so, 0, {{1, es[i], fs[j]}}));
  for (int i = 0; i < 3; ++i) out.push_back(element(so, 0, {{1, es[i], fs[i]}, {1, "e+", "e-"}}));
  out.push_back(element(so, 1, {{1, "e+", "f1"}, {-r2, "e2", "e3"}}));
  out.push_back(element(so, 1, {{1, "e+", "f2"}, {r2, "e1", "e3"}}));
  out.push_back(element(so, 1, {{1, "e+", "f3"}, {-r2, "e1", "e2"}}));
  for (const char* e : {"e1", "e2", "e3"}) out.push_back(element(so, 2, {{1, "e+", e}}));
  return out;
}

std::vector<std::size_t> listed_dims(Case c) {
  if (c == Case::g2) return {2, 1, 2, 4, 2, 1, 2};
  return {3, 3, 9, 3, 3};
}

namespace {

// the member of s spanned by the element's wedge terms with leading coefficient 1, if unique
std::optional<SpanElement> computed_counterpart(const LieSubalgebra& s, const SpanElement& e) {
  const auto& so = *s.so;
  std::vector<Vector> words;
  for (const auto& [u, v] : e.terms) words.push_back(so.wedge(u, v));
  auto line = exalg::intersection(s.basis, words, so.bivector_dim());
  if (line.size() != 1) return std::nullopt;
  auto co = exalg::coordinates(words, line.front());
  if (!co || (*co)[0].is_zero()) return std::nullopt;
  const Scalar lead = (*co)[0].inverse();
  SpanElement out;
  out.degree = e.degree;
  out.member = true;
  out.element = lead * line.front();
  out.terms = e.terms;
  for (std::size_t k = 0; k < words.size(); ++k)
    out.text += term_text(lead * (*co)[k], e.terms[k].first, e.terms[k].second, out.text.empty());
  return out;
}

}  // namespace

std::string GradedBasisReport::missing() const {
  std::string out;
  for (const auto& e : elements)
    if (!e.member) out += (out.empty() ? "" : "; ") + e.text;
  return out;
}

bool GradedBasisReport::all_members() const {
  return std::all_of(elements.begin(), elements.end(), [](const auto& e) { return e.member; });
}

GradedBasisReport verify_graded_basis(const LieSubalgebra& s, Case c) {
  GradedBasisReport r;
  r.which = c;
  r.elements = listed_span_elements(*s.so, c);
  for (auto& e : r.elements) {
    e.member = s.contains(e.element);
    if (!e.member) {
      auto cc = computed_counterpart(s, e);
      if (cc) e.computed = cc->text;
    }
  }
  r.grading = frame_grading(s);
  r.dims = r.grading.dims();
  for (auto& e : r.elements) {
    auto it = r.grading.components.find(e.degree);
    e.in_component = it != r.grading.components.end() && exalg::in_span(it->second, e.element);
  }
  const int depth = c == Case::g2 ? 3 : 2;
  std::set<int> degrees;
  for (const auto& [k, comp] : r.grading.components) degrees.insert(k);
  std::set<int> expected;
  for (int k = -depth; k <= depth; ++k) expected.insert(k);
  r.eigenvalues_ok = degrees == expected;
  r.closure = is_closed(s);
  r.bracket_grading = check_bracket_grading(s, r.grading);
  // listed shapes, with non-members replaced by their computed counterparts, span each component
  r.shapes_span = true;
  for (const auto& [k, comp] : r.grading.components) {
    std::vector<Vector> listed;
    for (const auto& e : r.elements) {
      if (e.degree != k) continue;
      if (e.member) {
        listed.push_back(e.element);
      } else if (auto cc = computed_counterpart(s, e)) {
        listed.push_back(cc->element);
      }
    }
    if (exalg::rank_of(listed, s.so->bivector_dim()) != comp.size() ||
        !std::all_of(listed.begin(), listed.end(), [&](const Vector& v) { return exalg::in_span(comp, v); }))
      r.shapes_span = false;
  }
  return r;
}

void require_members(const GradedBasisReport& r) {
  if (!r.all_members()) throw MembershipError("listed elements not in the stabilizer: " + r.missing());
}

std::vector<Matrix> rep_matrices(const SoAction& so, const std::vector<Vector>& elements, Rep r) {
  std::vector<Matrix> out;
  for (const auto& a : elements) out.push_back(r == Rep::vector ? so.vector_matrix(a) : so.spinor_matrix(a));
  return out;
}

std::vector<Matrix> rep_matrices(const LieSubalgebra& s, Rep r) { return rep_matrices(*s.so, s.basis, r); }

std::vector<Vector> generated_subspace(const std::vector<Matrix>& mats, const Vector& v) {
  SpanReducer span(v.size());
  std::vector<Vector> frontier;
  if (span.add(v)) frontier.push_back(v);
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& w : frontier)
      for (const auto& m : mats) {
        Vector u = m * w;
        if (span.add(u)) next.push_back(std::move(u));
      }
    frontier = std::move(next);
  }
  return span.basis();
}

bool is_invariant(const std::vector<Matrix>& mats, const std::vector<Vector>& subspace) {
  if (subspace.empty()) return true;
  SpanReducer span(subspace.front().size(), subspace);
  for (const auto& m : mats)
    for (const auto& v : subspace)
      if (!span.contains(m * v)) return false;
  return true;
}

bool probe_irreducible(const std::vector<Matrix>& mats, const std::vector<Vector>& subspace,
                       const std::vector<Vector>& probes) {
  for (const auto& p : probes)
    if (generated_subspace(mats, p).size() != subspace.size()) return false;
  return true;
}

std::vector<Vector> joint_kernel(const std::vector<Matrix>& mats, const std::vector<Vector>& subspace) {
  if (subspace.empty()) return {};
  const std::size_t n = subspace.front().size();
  // x = sum c_i b_i with m x = 0 for all m
  std::vector<Vector> rows;
  for (const auto& m : mats) {
    std::vector<Vector> images;
    for (const auto& b : subspace) images.push_back(m * b);
    Matrix img = Matrix::from_columns(images, n);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(img.row(i));
  }
  std::vector<Vector> out;
  for (const auto& c : exalg::kernel(Matrix::from_rows(rows, subspace.size()))) {
    Vector x(n);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) x = x + c[i] * subspace[i];
    out.push_back(x);
  }
  return out;
}

std::vector<Matrix> restrict_action(const std::vector<Matrix>& mats, const std::vector<Vector>& basis) {
  std::vector<Matrix> out;
  const Matrix bm = Matrix::from_columns(basis);
  for (const auto& m : mats) {
    Matrix r(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = exalg::solve(bm, m * basis[j]);
      if (!c) throw MathError("subspace is not invariant");
      for (std::size_t i = 0; i < basis.size(); ++i) r(i, j) = (*c)[i];
    }
    out.push_back(r);
  }
  return out;
}

std::vector<Matrix> equivariant_maps(const std::vector<Matrix>& mats_v, const std::vector<Vector>& v_basis,
                                     const std::vector<Matrix>& mats_w, const std::vector<Vector>& w_basis) {
  auto av = restrict_action(mats_v, v_basis);
  auto aw = restrict_action(mats_w, w_basis);
  const std::size_t dv = v_basis.size(), dw = w_basis.size();
  auto t = [&](std::size_t i, std::size_t j) { return i * dv + j; };
  std::vector<Vector> rows;
  for (std::size_t a = 0; a < av.size(); ++a)
    for (std::size_t i = 0; i < dw; ++i)
      for (std::size_t j = 0; j < dv; ++j) {
        Vector r(dw * dv);
        for (std::size_t k = 0; k < dv; ++k) r[t(i, k)] += av[a](k, j);
        for (std::size_t k = 0; k < dw; ++k) r[t(k, j)] -= aw[a](i, k);
        rows.push_back(std::move(r));
      }
  std::vector<Matrix> out;
  for (const auto& x : exalg::kernel(Matrix::from_rows(rows, dw * dv))) {
    Matrix m(dw, dv);
    for (std::size_t i = 0; i < dw; ++i)
      for (std::size_t j = 0; j < dv; ++j) m(i, j) = x[t(i, j)];
    out.push_back(m);
  }
  return out;
}

bool BranchingReport::all_hold() const {
  return std::all_of(facts.begin(), facts.end(), [](const BranchingFact& f) { return f.holds; });
}

namespace {

std::vector<Vector> standard_basis(std::size_t n) {
  std::vector<Vector> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(exalg::unit_vector(n, i));
  return b;
}

std::string dims_text(std::size_t a, std::size_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

// An isomorphism V ≅ W exists iff dims agree and some equivariant map is invertible; with a
// one-dimensional Hom space the single basis map decides.
BranchingFact iso_fact(std::string name, const std::vector<Matrix>& mv, const std::vector<Vector>& vb,
                       const std::vector<Matrix>& mw, const std::vector<Vector>& wb) {
  BranchingFact f{std::move(name), false, ""};
  auto hom = equivariant_maps(mv, vb, mw, wb);
  f.detail = "dim " + dims_text(vb.size(), wb.size()) + ", equivariant maps " + std::to_string(hom.size());
  if (vb.size() != wb.size()) return f;
  for (const auto& h : hom)
    if (exalg::rank(h) == vb.size()) f.holds = true;
  return f;
}

}  // namespace

BranchingReport branching(const LieSubalgebra& s, const GradedDecomposition& g, const pairings::Pairing& B,
                          const Vector& X, Case c) {
  const auto& so = *s.so;
  const auto& m = so.model();
  BranchingReport r;
  r.which = c;
  auto vec = rep_matrices(s, Rep::vector);
  auto spin = rep_matrices(s, Rep::spin);
  auto vec_plus = rep_matrices(so, g.positive_part(), Rep::vector);
  auto spin_plus = rep_matrices(so, g.positive_part(), Rep::spin);
  const auto& g0 = g.components.at(0);
  auto vec_zero = rep_matrices(so, g0, Rep::vector);
  auto spin_zero = rep_matrices(so, g0, Rep::spin);
  const auto vbasis = standard_basis(m.dim());

  // The positive part's invariants in an irreducible module form an irreducible g0-module; probe
  // closure is applied to both.
  auto irreducible = [&](const std::string& what, const std::vector<Matrix>& mats, const std::vector<Matrix>& plus,
                         const std::vector<Matrix>& zero, const std::vector<Vector>& sub) {
    bool probes = is_invariant(mats, sub) && probe_irreducible(mats, sub, sub);
    auto top = joint_kernel(plus, sub);
    bool top_irr = !top.empty() && probe_irreducible(zero, top, top);
    r.facts.push_back({what + " irreducible (probe closure)", probes, "probes: the basis of the subspace"});
    r.facts.push_back({what + " irreducible (top component)", top_irr,
                       "positive part invariants: dim " + std::to_string(top.size())});
  };

  irreducible("vector rep", vec, vec_plus, vec_zero, vbasis);

  r.facts.push_back({"X spans an invariant line", annihilates(s, X), ""});
  const Scalar bxx = B(X, X);
  r.facts.push_back({"X is non-null", !bxx.is_zero(), "B(X,X) = " + bxx.to_string()});

  // X-perp inside the spinor space carrying X
  std::vector<Vector> carrier = standard_basis(m.spinor_dim());
  if (m.has_half_spin()) carrier = m.half_spin_basis(m.chirality_of(X));
  std::vector<Vector> perp;
  {
    Matrix cm = Matrix::from_columns(carrier);
    // y = C c with (B X)^T C c = 0
    Matrix lhs = Matrix::from_rows({(cm.transpose() * (B.gram * X))});
    for (const auto& k : exalg::kernel(lhs)) perp.push_back(cm * k);
  }
  r.facts.push_back({"X-perp has complementary dimension", perp.size() + 1 == carrier.size(),
                     "dim X-perp = " + std::to_string(perp.size())});
  r.facts.push_back({"X-perp is invariant", is_invariant(spin, perp), ""});
  irreducible("X-perp", spin, spin_plus, spin_zero, perp);

  // v -> v.X
  bool equivariant = true;
  std::vector<Vector> image;
  for (std::size_t k = 0; k < s.dim(); ++k)
    for (const auto& v : vbasis) {
      Vector lhs = spin[k] * (m.gamma_of(v) * X);
      Vector rhs = m.gamma_of(vec[k] * v) * X;
      if (lhs != rhs) equivariant = false;
    }
  for (const auto& v : vbasis) image.push_back(m.gamma_of(v) * X);
  const std::size_t image_rank = exalg::rank_of(image, m.spinor_dim());
  r.facts.push_back({"v -> v.X is equivariant", equivariant, ""});
  r.facts.push_back({"v -> v.X is injective", image_rank == m.dim(), "rank " + std::to_string(image_rank)});

  if (c == Case::g2) {
    bool lands = true;
    for (const auto& y : image)
      if (!exalg::in_span(perp, y)) lands = false;
    r.facts.push_back({"v -> v.X maps onto X-perp", lands && image_rank == perp.size(), ""});
    r.facts.push_back(iso_fact("vector rep isomorphic to X-perp", vec, vbasis, spin, perp));
    return r;
  }

  const int xc = m.chirality_of(X);
  auto minus = m.half_spin_basis(-xc);
  bool onto_minus = image_rank == minus.size();
  for (const auto& y : image)
    if (!exalg::in_span(minus, y)) onto_minus = false;
  r.facts.push_back({"v -> v.X maps onto the opposite half-spin space", onto_minus, ""});
  irreducible("opposite half-spin rep", spin, spin_plus, spin_zero, minus);
  r.facts.push_back(iso_fact("vector rep isomorphic to opposite half-spin rep", vec, vbasis, spin, minus));

  // X-perp is the standard rep of s ≅ so(X-perp, B)
  Matrix bp(perp.size(), perp.size());
  for (std::size_t i = 0; i < perp.size(); ++i)
    for (std::size_t j = 0; j < perp.size(); ++j) bp(i, j) = B(perp[i], perp[j]);
  auto in = exalg::signature(bp);
  auto restricted = restrict_action(spin, perp);
  bool skew = true;
  std::vector<Vector> flat;
  for (const auto& a : restricted) {
    if (!(a.transpose() * bp + bp * a).is_zero()) skew = false;
    Vector v;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
    flat.push_back(v);
  }
  const std::size_t faithful = exalg::rank_of(flat, perp.size() * perp.size());
  const std::size_t n = perp.size();
  bool standard = skew && faithful == n * (n - 1) / 2 && in.zero == 0;
  r.facts.push_back({"X-perp is the standard rep of so(X-perp)", standard,
                     "signature (" + std::to_string(in.positive) + "," + std::to_string(in.negative) +
                         "), image dimension " + std::to_string(faithful)});
  r.facts.push_back(iso_fact("vector rep isomorphic to X-perp", vec, vbasis, spin, perp));
  return r;
}

PerpIso::PerpIso(const clifford::CliffordModel& m, const pairings::Pairing& B, const Vector& X)
    : gammas_(m.gammas()), B_(B.gram), eps_(B.clifford_sign), X_(X) {
  norm_ = B(X, X);
  if (norm_.is_zero()) throw MathError("perp isomorphism needs a non-null spinor");
  auto inv = exalg::inverse(m.signature().gram);
  gram_inv_ = *inv;
}

Vector PerpIso::forward(const Vector& v) const {
  Vector out(X_.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out = out + v[i] * (gammas_[i] * X_);
  return out;
}

Vector PerpIso::inverse(const Vector& y) const {
  // h(v, e_i) = -eps B(e_i.X, y) / B(X,X)
  Vector hv(gammas_.size());
  const Scalar f = Scalar(-eps_) / norm_;
  for (std::size_t i = 0; i < gammas_.size(); ++i) hv[i] = f * exalg::bilinear(B_, gammas_[i] * X_, y);
  return gram_inv_ * hv;
}

}  // namespace gentwistor::stabilizers
