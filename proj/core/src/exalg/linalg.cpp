#include "gentwistor/exalg/linalg.hpp"

#include <utility>

namespace gentwistor::exalg {

namespace {

// row -= factor * pivot_row, touching only the pivot row's nonzero columns
void eliminate(Vector& row, const Vector& pivot_row, const std::vector<std::size_t>& nz, const Scalar& factor) {
  for (std::size_t j : nz) row[j].sub_product(factor, pivot_row[j]);
}

std::vector<std::size_t> nonzeros(const Vector& v, std::size_t from = 0) {
  std::vector<std::size_t> nz;
  for (std::size_t j = from; j < v.size(); ++j)
    if (!v[j].is_zero()) nz.push_back(j);
  return nz;
}

void normalize(Vector& row, std::size_t pivot) {
  if (row[pivot].is_one()) return;
  Scalar inv = row[pivot].inverse();
  for (std::size_t j = pivot; j < row.size(); ++j)
    if (!row[j].is_zero()) row[j] *= inv;
}

}  // namespace

Echelon rref(const Matrix& a) {
  std::vector<Vector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < rows.size(); ++c) {
    // prefer a rational pivot: keeps entries small
    std::size_t p = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      if (p == rows.size()) p = i;
      if (rows[i][c].is_rational()) {
        p = i;
        break;
      }
    }
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    normalize(rows[r], c);
    auto nz = nonzeros(rows[r], c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c];
      eliminate(rows[i], rows[r], nz, f);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return {Matrix::from_rows(rows, a.cols()), pivots};
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

std::vector<Vector> kernel(const Matrix& a) {
  Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(a.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    basis.push_back(std::move(v));
  }
  if (basis.size() + e.pivots.size() != a.cols()) throw MathError("rank-nullity violated");
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw MathError("shape mismatch in solve");
  Matrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  Echelon e = rref(aug);
  Vector x(a.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == a.cols()) return std::nullopt;
    x[e.pivots[k]] = e.reduced(k, a.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw MathError("inverse of non-square matrix");
  std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix::identity(n));
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Scalar determinant(const Matrix& a) {
  if (!a.is_square()) throw MathError("determinant of non-square matrix");
  std::size_t n = a.rows();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(a.row(i));
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && rows[p][c].is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      std::swap(rows[p], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    Scalar inv = rows[c][c].inverse();
    auto nz = nonzeros(rows[c], c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c] * inv;
      eliminate(rows[i], rows[c], nz, f);
    }
  }
  return det;
}

Inertia signature(const Matrix& b) {
  if (!b.is_symmetric()) throw MathError("signature requires a symmetric matrix");
  Matrix m = b;
  std::size_t n = m.rows();
  std::vector<bool> done(n, false);
  Inertia in;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && !m(i, i).is_zero()) piv = i;
    if (piv == n) {
      // all remaining diagonal entries vanish: look for an off-diagonal entry
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[j] && !m(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      }
      if (pi == n) {
        in.zero += remaining;
        break;
      }
      // hyperbolic pair: e_i <- e_i + e_j gives diagonal entry 2 m(i,j)
      for (std::size_t k = 0; k < n; ++k) m(pi, k) += m(pj, k);
      for (std::size_t k = 0; k < n; ++k) m(k, pi) += m(k, pj);
      piv = pi;
    }
    const Scalar d = m(piv, piv);
    (d.sign() > 0 ? in.positive : in.negative) += 1;
    done[piv] = true;
    --remaining;
    Scalar inv = d.inverse();
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m(i, piv).is_zero()) continue;
      Scalar f = m(i, piv) * inv;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j] && !m(piv, j).is_zero()) m(i, j).sub_product(f, m(piv, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      m(i, piv) = 0;
      m(piv, i) = 0;
    }
  }
  return in;
}

SpanReducer::SpanReducer(std::size_t dim, const std::vector<Vector>& vs) : dim_(dim) {
  for (const auto& v : vs) add(v);
}

Vector SpanReducer::reduce(Vector v) const {
  if (v.size() != dim_) throw MathError("dimension mismatch in span reduction");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::size_t p = pivots_[k];
    if (v[p].is_zero()) continue;
    Scalar f = v[p];
    for (std::size_t j = p; j < dim_; ++j)
      if (!rows_[k][j].is_zero()) v[j].sub_product(f, rows_[k][j]);
  }
  return v;
}

bool SpanReducer::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool SpanReducer::add(const Vector& v) {
  Vector r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  normalize(r, p);
  // keep rows fully reduced against each other
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k][p].is_zero()) continue;
    Scalar f = rows_[k][p];
    for (std::size_t j = p; j < dim_; ++j)
      if (!r[j].is_zero()) rows_[k][j].sub_product(f, r[j]);
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

std::size_t rank_of(const std::vector<Vector>& vs, std::size_t dim) { return SpanReducer(dim, vs).rank(); }

bool in_span(const std::vector<Vector>& vs, const Vector& v) {
  if (vs.empty()) return is_zero(v);
  return SpanReducer(v.size(), vs).contains(v);
}

std::optional<Vector> coordinates(const std::vector<Vector>& vs, const Vector& v) {
  if (vs.empty()) return is_zero(v) ? std::optional<Vector>(Vector{}) : std::nullopt;
  return solve(Matrix::from_columns(vs), v);
}

std::vector<Vector> intersection(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
  if (a.empty() || b.empty()) return {};
  // x in both iff x = A s = B t
  std::vector<Vector> cols = a;
  for (const auto& v : b) cols.push_back(Scalar(-1) * v);
  Matrix m = Matrix::from_columns(cols, dim);
  SpanReducer out(dim);
  for (const auto& k : kernel(m)) {
    Vector x(dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!k[i].is_zero()) x = x + k[i] * a[i];
    out.add(x);
  }
  return out.basis();
}

std::vector<Vector> orthogonal_complement(const Matrix& m, const std::vector<Vector>& ws) {
  if (ws.empty()) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < m.rows(); ++i) all.push_back(unit_vector(m.rows(), i));
    return all;
  }
  std::vector<Vector> rows;
  for (const auto& w : ws) rows.push_back(m * w);
  return kernel(Matrix::from_rows(rows));
}

}  // namespace gentwistor::exalg
