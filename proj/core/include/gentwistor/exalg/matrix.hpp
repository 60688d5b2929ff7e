#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gentwistor/exalg/scalar.hpp"

namespace gentwistor::exalg {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols = 0);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows = 0);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  Matrix operator-() const;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // rows x cols block starting at (r0, c0)
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);
Scalar trace(const Matrix& a);
// (A ⊗ B) with the row-major convention (i*rowsB + k, j*colsB + l)
Matrix kron(const Matrix& a, const Matrix& b);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(const Scalar& s, Vector v);
Scalar dot(const Vector& a, const Vector& b);
// a^T M b
Scalar bilinear(const Matrix& m, const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

}  // namespace gentwistor::exalg
