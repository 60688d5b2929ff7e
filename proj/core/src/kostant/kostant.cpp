#include "gentwistor/kostant.hpp"

#include <algorithm>
#include <optional>

namespace gentwistor::kostant {

using exalg::MathError;
using exalg::SpanReducer;

namespace {

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

void finish(GradedLieData& d) {
  const std::size_t n = d.dim();
  if (n == 0) throw MathError("empty algebra");
  std::vector<Vector> flat;
  for (const auto& b : d.basis) flat.push_back(flatten(b));
  auto e = exalg::rref(Matrix::from_rows(flat));
  if (e.pivots.size() != n) throw MathError("basis matrices are linearly dependent");
  d.pivot_entries = e.pivots;
  Matrix sel(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sel(i, j) = flat[j][d.pivot_entries[i]];
  d.pivot_inverse = *exalg::inverse(sel);

  d.structure.assign(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j < i) {
        d.structure[i][j] = Scalar(-1) * d.structure[j][i];
        continue;
      }
      d.structure[i][j] = d.coordinates(exalg::commutator(d.basis[i], d.basis[j]));
    }
  d.trace_form = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) d.trace_form(i, j) = d.trace_form(j, i) = exalg::trace(d.basis[i] * d.basis[j]);

  d.minus.clear();
  d.zero.clear();
  d.plus.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (d.degree[i] < 0) d.minus.push_back(i);
    if (d.degree[i] == 0) d.zero.push_back(i);
    if (d.degree[i] > 0) d.plus.push_back(i);
  }
  if (d.minus.size() != d.plus.size()) throw MathError("g- and p+ differ in dimension");
  const std::size_t m = d.minus.size();
  Matrix k(m, m);  // k(m', p) = B(z_p, Y_m')
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t p = 0; p < m; ++p) k(a, p) = d.trace_form(d.plus[p], d.minus[a]);
  auto kinv = exalg::inverse(k);
  if (!kinv) throw MathError("trace form does not pair p+ with g-");
  d.dual.clear();
  for (std::size_t a = 0; a < m; ++a) {
    Vector z(n);
    for (std::size_t p = 0; p < m; ++p) z[d.plus[p]] = (*kinv)(p, a);
    d.dual.push_back(z);
  }
}

std::vector<std::vector<std::size_t>> subsets_of(std::size_t n, std::size_t k) {
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

std::vector<std::size_t> without(const std::vector<std::size_t>& v, std::size_t i, std::size_t j = SIZE_MAX) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < v.size(); ++t)
    if (t != i && t != j) out.push_back(v[t]);
  return out;
}

int parity(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

std::vector<long> positions_in(const std::vector<std::size_t>& sub, std::size_t n) {
  std::vector<long> pos(n, -1);
  for (std::size_t i = 0; i < sub.size(); ++i) pos[sub[i]] = static_cast<long>(i);
  return pos;
}

}  // namespace

Vector GradedLieData::coordinates(const Matrix& a) const {
  const std::size_t n = dim();
  const std::size_t cols = a.cols();
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = a(pivot_entries[i] / cols, pivot_entries[i] % cols);
  Vector x = pivot_inverse * rhs;
  if (matrix_of(x) != a) throw MathError("matrix is not in the algebra " + name);
  return x;
}

Matrix GradedLieData::matrix_of(const Vector& a) const {
  Matrix m(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) m += a[i] * basis[i];
  return m;
}

Vector GradedLieData::bracket(const Vector& a, const Vector& b) const {
  Vector out(dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      const Scalar ab = a[i] * b[j];
      const Vector& c = structure[i][j];
      for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) out[k].add_product(ab, c[k]);
    }
  }
  return out;
}

GradedLieData graded_data(const stabilizers::LieSubalgebra& s, const stabilizers::GradedDecomposition& g,
                          std::string name) {
  GradedLieData d;
  d.name = std::move(name);
  for (const auto& [deg, comp] : g.components)
    for (const auto& v : comp) {
      d.basis.push_back(s.so->vector_matrix(v));
      d.degree.push_back(deg);
    }
  finish(d);
  d.grading_element = d.coordinates(s.so->vector_matrix(g.E));
  return d;
}

GradedLieData conformal_data(const clifford::SoAction& so, std::string name) {
  const auto& sig = so.model().signature();
  const std::size_t ip = sig.index_of("e+"), im = sig.index_of("e-");
  std::vector<int> w(sig.dim(), 0);
  w[ip] = 1;
  w[im] = -1;
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t k = 0; k < so.bivector_dim(); ++k) {
    auto [i, j] = so.pairs()[k];
    order.push_back({w[i] + w[j], k});
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  GradedLieData d;
  d.name = std::move(name);
  for (auto [deg, k] : order) {
    d.basis.push_back(so.basis_vector_matrix(k));
    d.degree.push_back(deg);
  }
  finish(d);
  Matrix e(sig.dim(), sig.dim());
  e(ip, ip) = 1;
  e(im, im) = -1;
  d.grading_element = d.coordinates(e);
  return d;
}

bool check_jacobi(const GradedLieData& d) {
  const std::size_t n = d.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ei = exalg::unit_vector(n, i), ej = exalg::unit_vector(n, j), ek = exalg::unit_vector(n, k);
        Vector s = d.bracket(ei, d.structure[j][k]) + d.bracket(ej, d.structure[k][i]) + d.bracket(ek, d.structure[i][j]);
        if (!exalg::is_zero(s)) return false;
      }
  return true;
}

bool minus_generated_by_degree_minus_one(const GradedLieData& d) {
  const std::size_t n = d.dim();
  std::vector<Vector> gen;
  for (auto i : d.minus)
    if (d.degree[i] == -1) gen.push_back(exalg::unit_vector(n, i));
  SpanReducer span(n, gen);
  std::vector<Vector> frontier = gen;
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& a : frontier)
      for (const auto& g : gen) {
        Vector b = d.bracket(g, a);
        if (span.add(b)) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return span.rank() == d.minus.size();
}

CochainSpace::CochainSpace(const GradedLieData& d, std::size_t k) : k_(k), n_(d.dim()) {
  subsets_ = subsets_of(d.minus.size(), k);
  for (std::size_t i = 0; i < subsets_.size(); ++i) lookup_[subsets_[i]] = i;
  homogeneity_.resize(dim());
  for (std::size_t s = 0; s < subsets_.size(); ++s) {
    int h = 0;
    for (auto p : subsets_[s]) h -= d.degree[d.minus[p]];
    for (std::size_t a = 0; a < n_; ++a) homogeneity_[index(s, a)] = h + d.degree[a];
  }
}

std::pair<long, int> CochainSpace::locate(std::vector<std::size_t> positions) const {
  int sign = 1;
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (positions[i] == positions[j]) return {-1, 0};
      if (positions[i] > positions[j]) sign = -sign;
    }
  std::sort(positions.begin(), positions.end());
  return {static_cast<long>(lookup_.at(positions)), sign};
}

Matrix differential(const GradedLieData& d, std::size_t k) {
  const CochainSpace src(d, k), dst(d, k + 1);
  const std::size_t n = d.dim();
  const auto pos = positions_in(d.minus, n);
  Matrix out(dst.dim(), src.dim());
  for (std::size_t sj = 0; sj < dst.subsets().size(); ++sj) {
    const auto& J = dst.subsets()[sj];
    // sum_i (-1)^i [Y_i, phi(.. no i ..)]
    for (std::size_t i = 0; i < J.size(); ++i) {
      auto [si, sg] = src.locate(without(J, i));
      const Scalar sign(parity(i) * sg);
      for (std::size_t a = 0; a < n; ++a) {
        const Vector& c = d.structure[d.minus[J[i]]][a];
        for (std::size_t b = 0; b < n; ++b)
          if (!c[b].is_zero()) out(dst.index(sj, b), src.index(static_cast<std::size_t>(si), a)).add_product(sign, c[b]);
      }
    }
    // sum_{i<l} (-1)^(i+l) phi([Y_i, Y_l], ...)
    for (std::size_t i = 0; i < J.size(); ++i)
      for (std::size_t l = i + 1; l < J.size(); ++l) {
        const Vector& br = d.structure[d.minus[J[i]]][d.minus[J[l]]];
        const auto rest = without(J, i, l);
        for (std::size_t t = 0; t < n; ++t) {
          if (br[t].is_zero()) continue;
          if (pos[t] < 0) throw MathError("g- is not closed under the bracket");
          std::vector<std::size_t> p{static_cast<std::size_t>(pos[t])};
          p.insert(p.end(), rest.begin(), rest.end());
          auto [si, sg] = src.locate(p);
          if (si < 0) continue;
          const Scalar c = Scalar(parity(i + l) * sg) * br[t];
          for (std::size_t a = 0; a < n; ++a) out(dst.index(sj, a), src.index(static_cast<std::size_t>(si), a)) += c;
        }
      }
  }
  return out;
}

Matrix codifferential(const GradedLieData& d, std::size_t k) {
  if (k == 0) throw MathError("codifferential starts in degree 1");
  const CochainSpace src(d, k), dst(d, k - 1);
  const std::size_t n = d.dim(), m = d.minus.size();
  // [Z^p, z_a] and [Z^p, Z^q] in the dual basis
  std::vector<std::vector<Vector>> adz(m, std::vector<Vector>(n));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t a = 0; a < n; ++a) adz[p][a] = d.bracket(d.dual[p], exalg::unit_vector(n, a));
  std::vector<std::vector<Vector>> zz(m, std::vector<Vector>(m, Vector(m)));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      Vector br = d.bracket(d.dual[p], d.dual[q]);
      Vector back(n);
      for (std::size_t r = 0; r < m; ++r) {
        Scalar c;
        for (std::size_t a = 0; a < n; ++a)
          if (!br[a].is_zero()) c.add_product(br[a], d.trace_form(a, d.minus[r]));
        zz[p][q][r] = c;
        if (!c.is_zero()) back = back + c * d.dual[r];
      }
      if (back != br) throw MathError("p+ is not closed under the bracket");
    }
  Matrix out(dst.dim(), src.dim());
  for (std::size_t si = 0; si < src.subsets().size(); ++si) {
    const auto& I = src.subsets()[si];
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t col = src.index(si, a);
      for (std::size_t t = 0; t < I.size(); ++t) {
        auto [di, sg] = dst.locate(without(I, t));
        const Scalar sign(parity(t + 1) * sg);
        const Vector& c = adz[I[t]][a];
        for (std::size_t b = 0; b < n; ++b)
          if (!c[b].is_zero()) out(dst.index(static_cast<std::size_t>(di), b), col).add_product(sign, c[b]);
      }
      for (std::size_t t = 0; t < I.size(); ++t)
        for (std::size_t u = t + 1; u < I.size(); ++u) {
          const Vector& c = zz[I[t]][I[u]];
          const auto rest = without(I, t, u);
          for (std::size_t r = 0; r < m; ++r) {
            if (c[r].is_zero()) continue;
            std::vector<std::size_t> p{r};
            p.insert(p.end(), rest.begin(), rest.end());
            auto [di, sg] = dst.locate(p);
            if (di < 0) continue;
            out(dst.index(static_cast<std::size_t>(di), a), col).add_product(Scalar(parity(t + u) * sg), c[r]);
          }
        }
    }
  }
  return out;
}

namespace {

Matrix theta_matrix(const GradedLieData& d) {
  const std::size_t n = d.dim();
  Matrix th(n, n);
  for (std::size_t b = 0; b < n; ++b) {
    Vector c = d.coordinates(Scalar(-1) * d.basis[b].transpose());
    for (std::size_t a = 0; a < n; ++a) th(a, b) = c[a];
  }
  return th;
}

}  // namespace

Matrix theta_pairing(const GradedLieData& d, std::size_t k) {
  const std::size_t n = d.dim(), m = d.minus.size();
  const Matrix th = theta_matrix(d);
  // theta Z^j = sum_l t(l, j) Y_l
  Matrix t(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    Vector z = th * d.dual[j];
    for (std::size_t a = 0; a < n; ++a) {
      if (z[a].is_zero()) continue;
      if (d.degree[a] >= 0) throw MathError("theta does not reverse the grading");
    }
    for (std::size_t l = 0; l < m; ++l) t(l, j) = z[d.minus[l]];
  }
  const Matrix g = d.trace_form * th;
  const CochainSpace c(d, k);
  const std::size_t s = c.subsets().size();
  Matrix minors(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const auto& I = c.subsets()[i];
      const auto& J = c.subsets()[j];
      Matrix sub(k, k);
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) sub(x, y) = t(I[x], J[y]);
      minors(i, j) = k == 0 ? Scalar(1) : exalg::determinant(sub);
    }
  return exalg::kron(minors, g);
}

AdjointReport check_adjointness(const GradedLieData& d) {
  AdjointReport r;
  try {
    theta_matrix(d);
    theta_pairing(d, 1);
    r.theta_stable = true;
  } catch (const MathError&) {
    return r;
  }
  std::optional<Scalar> lambda;
  bool ok = true;
  for (std::size_t k = 0; k <= 2 && ok; ++k) {
    const Matrix lhs = differential(d, k).transpose() * theta_pairing(d, k + 1);
    const Matrix rhs = theta_pairing(d, k) * codifferential(d, k + 1);
    for (std::size_t i = 0; i < lhs.rows() && ok; ++i)
      for (std::size_t j = 0; j < lhs.cols() && ok; ++j) {
        const Scalar& x = lhs(i, j);
        const Scalar& y = rhs(i, j);
        if (y.is_zero()) {
          ok = x.is_zero();
          continue;
        }
        if (!lambda) lambda = x / y;
        ok = x == *lambda * y;
      }
  }
  r.holds = ok && lambda && !lambda->is_zero();
  if (lambda) r.lambda = *lambda;
  return r;
}

Matrix g0_action(const GradedLieData& d, std::size_t zero_index) {
  const CochainSpace c(d, 2);
  const std::size_t n = d.dim();
  const auto pos = positions_in(d.minus, n);
  const std::size_t z = d.zero.at(zero_index);
  Matrix out(c.dim(), c.dim());
  for (std::size_t sj = 0; sj < c.subsets().size(); ++sj) {
    const auto& J = c.subsets()[sj];
    for (std::size_t a = 0; a < n; ++a) {
      const Vector& br = d.structure[z][a];
      for (std::size_t b = 0; b < n; ++b)
        if (!br[b].is_zero()) out(c.index(sj, b), c.index(sj, a)) += br[b];
    }
    for (std::size_t slot = 0; slot < J.size(); ++slot) {
      const Vector& br = d.structure[z][d.minus[J[slot]]];
      for (std::size_t t = 0; t < n; ++t) {
        if (br[t].is_zero()) continue;
        if (pos[t] < 0) throw MathError("g0 does not preserve g-");
        auto p = J;
        p[slot] = static_cast<std::size_t>(pos[t]);
        auto [si, sg] = c.locate(p);
        if (si < 0) continue;
        const Scalar coef = Scalar(-sg) * br[t];
        for (std::size_t a = 0; a < n; ++a) out(c.index(sj, a), c.index(static_cast<std::size_t>(si), a)) += coef;
      }
    }
  }
  return out;
}

namespace {

bool preserves_homogeneity(const Matrix& m, const CochainSpace& src, const CochainSpace& dst) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && dst.homogeneity(i) != src.homogeneity(j)) return false;
  return true;
}

// kernel of the stacked maps, block by block in homogeneity
std::vector<Vector> graded_kernel(const std::vector<Matrix>& maps, const CochainSpace& src) {
  std::map<int, std::vector<std::size_t>> cols;
  for (std::size_t j = 0; j < src.dim(); ++j) cols[src.homogeneity(j)].push_back(j);
  std::vector<Vector> out;
  for (const auto& [h, js] : cols) {
    std::vector<Vector> rows;
    for (const auto& m : maps)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Vector r(js.size());
        bool any = false;
        for (std::size_t t = 0; t < js.size(); ++t)
          if (!m(i, js[t]).is_zero()) {
            r[t] = m(i, js[t]);
            any = true;
          }
        if (any) rows.push_back(std::move(r));
      }
    std::vector<Vector> ker;
    if (rows.empty()) {
      for (std::size_t t = 0; t < js.size(); ++t) ker.push_back(exalg::unit_vector(js.size(), t));
    } else {
      ker = exalg::kernel(Matrix::from_rows(rows, js.size()));
    }
    for (const auto& k : ker) {
      Vector v(src.dim());
      for (std::size_t t = 0; t < js.size(); ++t) v[js[t]] = k[t];
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

HarmonicReport harmonic_module(const GradedLieData& d) {
  HarmonicReport r;
  const CochainSpace c1(d, 1), c2(d, 2), c3(d, 3);
  const Matrix d2 = differential(d, 2);
  const Matrix s2 = codifferential(d, 2);
  r.homogeneity_preserved = preserves_homogeneity(d2, c2, c3) && preserves_homogeneity(s2, c2, c1);
  r.basis = graded_kernel({d2, s2}, c2);
  r.dimension = r.basis.size();
  for (const auto& v : r.basis)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) {
        ++r.by_homogeneity[c2.homogeneity(i)];
        break;
      }
  r.regular = std::all_of(r.by_homogeneity.begin(), r.by_homogeneity.end(), [](const auto& p) { return p.first >= 1; });

  const Matrix lap = differential(d, 1) * s2 + codifferential(d, 3) * d2;
  const auto lker = graded_kernel({lap}, c2);
  r.laplacian_kernel = lker.size();
  SpanReducer hspan(c2.dim(), r.basis);
  r.agree = lker.size() == r.basis.size() &&
            std::all_of(lker.begin(), lker.end(), [&](const Vector& v) { return hspan.contains(v); });

  r.g0_invariant = true;
  for (std::size_t z = 0; z < d.zero.size() && r.g0_invariant; ++z) {
    const Matrix a = g0_action(d, z);
    for (const auto& v : r.basis)
      if (!hspan.contains(a * v)) {
        r.g0_invariant = false;
        break;
      }
  }
  return r;
}

Matrix inclusion_map(const GradedLieData& small, const GradedLieData& big) {
  const std::size_t n = small.dim(), nb = big.dim(), m = small.minus.size();
  if (big.minus.size() != m) throw IdentificationError("g/p and g~/p~ differ in dimension");
  std::vector<Vector> incl;
  for (const auto& b : small.basis) incl.push_back(big.coordinates(b));
  // p maps into p~
  for (std::size_t a = 0; a < n; ++a) {
    if (small.degree[a] < 0) continue;
    for (auto i : big.minus)
      if (!incl[a][i].is_zero()) throw IdentificationError("p is not contained in p~");
  }
  Matrix proj(m, m);  // proj(q, l) = component of Y_l along Y~_q
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t q = 0; q < m; ++q) proj(q, l) = incl[small.minus[l]][big.minus[q]];
  auto r = exalg::inverse(proj);
  if (!r) throw IdentificationError("g/p -> g~/p~ is not bijective");
  const CochainSpace cs(small, 2), cb(big, 2);
  Matrix out(cb.dim(), cs.dim());
  for (std::size_t sj = 0; sj < cb.subsets().size(); ++sj) {
    const std::size_t p = cb.subsets()[sj][0], q = cb.subsets()[sj][1];
    for (std::size_t si = 0; si < cs.subsets().size(); ++si) {
      const std::size_t ml = cs.subsets()[si][0], ll = cs.subsets()[si][1];
      const Scalar w = (*r)(ml, p) * (*r)(ll, q) - (*r)(ll, p) * (*r)(ml, q);
      if (w.is_zero()) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < nb; ++b)
          if (!incl[a][b].is_zero()) out(cb.index(sj, b), cs.index(si, a)).add_product(w, incl[a][b]);
    }
  }
  return out;
}

NormalityReport normality_check(const GradedLieData& small, const GradedLieData& big, const HarmonicReport& h) {
  NormalityReport r;
  const Matrix inc = inclusion_map(small, big);
  const Matrix sd = codifferential(big, 2) * inc;
  for (const auto& v : h.basis) {
    ++r.checked;
    if (!exalg::is_zero(sd * v)) ++r.nonzero;
  }
  r.zero_maps_to_zero = exalg::is_zero(inc * Vector(inc.cols()));

  // on Λ²(g/p)* ⊗ g0 the image lies in p~+ ⊗ p~+
  const CochainSpace cs(small, 2), c1(big, 1);
  r.g0_part_lands_in_pplus_tensor_pplus = true;
  for (std::size_t j = 0; j < cs.dim(); ++j) {
    if (small.degree[j % small.dim()] != 0) continue;
    for (std::size_t i = 0; i < sd.rows(); ++i)
      if (!sd(i, j).is_zero() && big.degree[i % big.dim()] <= 0) r.g0_part_lands_in_pplus_tensor_pplus = false;
  }

  // p~+ under the small grading element
  const Vector e = big.coordinates(small.matrix_of(small.grading_element));
  std::vector<std::pair<Scalar, std::vector<std::size_t>>> by_weight;
  for (auto p : big.plus) {
    Vector img = big.bracket(e, exalg::unit_vector(big.dim(), p));
    const Scalar w = img[p];
    if (img != w * exalg::unit_vector(big.dim(), p)) throw MathError("grading element is not diagonal on p~+");
    auto it = std::find_if(by_weight.begin(), by_weight.end(), [&](const auto& x) { return x.first == w; });
    if (it == by_weight.end()) {
      by_weight.push_back({w, {}});
      it = by_weight.end() - 1;
    }
    it->second.push_back(p);
  }
  std::sort(by_weight.begin(), by_weight.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Matrix> g0_ad;
  for (auto z : small.zero) {
    const Vector zb = big.coordinates(small.basis[z]);
    Matrix ad(big.dim(), big.dim());
    for (std::size_t b = 0; b < big.dim(); ++b) {
      Vector c = big.bracket(zb, exalg::unit_vector(big.dim(), b));
      for (std::size_t a = 0; a < big.dim(); ++a) ad(a, b) = c[a];
    }
    g0_ad.push_back(std::move(ad));
  }
  r.pplus_blocks_irreducible = true;
  for (const auto& [w, idx] : by_weight) {
    r.pplus_blocks.push_back(idx.size());
    std::vector<Vector> sub;
    for (auto p : idx) sub.push_back(exalg::unit_vector(big.dim(), p));
    if (!stabilizers::is_invariant(g0_ad, sub) || !stabilizers::probe_irreducible(g0_ad, sub, sub))
      r.pplus_blocks_irreducible = false;
  }
  for (auto a : r.pplus_blocks)
    for (auto b : r.pplus_blocks) r.pplus_tensor_blocks.push_back(a * b);
  return r;
}

}  // namespace gentwistor::kostant
