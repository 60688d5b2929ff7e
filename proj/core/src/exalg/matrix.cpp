#include "gentwistor/exalg/matrix.hpp"

#include <stdexcept>

namespace gentwistor::exalg {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw MathError(what);
}
}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  if (!cols.empty()) rows = cols.front().size();
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, "ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_antisymmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "shape mismatch in *");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j).add_product(aik, bkj);
      }
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  require(a.cols_ == v.size(), "shape mismatch in matrix*vector");
  Vector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!v[j].is_zero() && !a(i, j).is_zero()) r[i].add_product(a(i, j), v[j]);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  require(r0 + rows <= rows_ && c0 + cols <= cols_, "block out of range");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Scalar trace(const Matrix& a) {
  require(a.is_square(), "trace of non-square matrix");
  Scalar t;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vector operator+(Vector a, const Vector& b) {
  require(a.size() == b.size(), "length mismatch in +");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector operator-(Vector a, const Vector& b) {
  require(a.size() == b.size(), "length mismatch in -");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vector operator*(const Scalar& s, Vector v) {
  for (auto& x : v) x *= s;
  return v;
}

Scalar dot(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "length mismatch in dot");
  Scalar r;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) r.add_product(a[i], b[i]);
  return r;
}

Scalar bilinear(const Matrix& m, const Vector& a, const Vector& b) { return dot(a, m * b); }

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

}  // namespace gentwistor::exalg
