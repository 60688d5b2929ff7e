#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gentwistor/exalg/matrix.hpp"

namespace gentwistor::exalg {

struct Echelon {
  Matrix reduced;                    // reduced row echelon form, zero rows trimmed
  std::vector<std::size_t> pivots;   // pivot column per nonzero row
};

Echelon rref(const Matrix& a);
std::size_t rank(const Matrix& a);
// Basis of {x : A x = 0}; one vector per free column, unit entry there.
std::vector<Vector> kernel(const Matrix& a);
std::optional<Vector> solve(const Matrix& a, const Vector& b);
std::optional<Matrix> inverse(const Matrix& a);
Scalar determinant(const Matrix& a);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Sylvester inertia by symmetric elimination; throws MathError on non-symmetric input.
Inertia signature(const Matrix& b);

// Incrementally maintained echelon basis of a subspace of K^dim.
class SpanReducer {
 public:
  explicit SpanReducer(std::size_t dim) : dim_(dim) {}
  SpanReducer(std::size_t dim, const std::vector<Vector>& vs);

  // Returns true if v was independent of the current span (and adds it).
  bool add(const Vector& v);
  bool contains(const Vector& v) const;
  Vector reduce(Vector v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& basis() const { return rows_; }

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;  // each row has leading 1 at pivots_[k]
  std::vector<std::size_t> pivots_;
};

std::size_t rank_of(const std::vector<Vector>& vs, std::size_t dim);
bool in_span(const std::vector<Vector>& vs, const Vector& v);
// Coefficients c with sum c_i vs[i] = v, if any (vs need not be independent).
std::optional<Vector> coordinates(const std::vector<Vector>& vs, const Vector& v);
// Basis of span(a) ∩ span(b).
std::vector<Vector> intersection(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim);
// Basis of {v : bilinear(m, v, w) = 0 for all w in ws}
std::vector<Vector> orthogonal_complement(const Matrix& m, const std::vector<Vector>& ws);

}  // namespace gentwistor::exalg
