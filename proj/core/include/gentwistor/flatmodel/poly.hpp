#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gentwistor/exalg/scalar.hpp"

namespace gentwistor::flatmodel {

using exalg::Scalar;

// Exponents packed 8 bits per variable, variable 0 in the lowest byte; at most 8 variables.
using Monomial = std::uint64_t;

int exponent(Monomial m, std::size_t var);
Monomial with_exponent(Monomial m, std::size_t var, int e);
int total_degree(Monomial m);
// All monomials of exact total degree d in n variables, in increasing key order.
std::vector<Monomial> monomials(std::size_t n, int d);
std::string monomial_text(Monomial m, std::size_t n);  // "x0^2*x3", "1"
Monomial parse_monomial(const std::string& text, std::size_t n);

class Poly {
 public:
  Poly() = default;
  Poly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  static Poly variable(std::size_t i);
  static Poly term(Monomial m, const Scalar& c);

  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  Scalar coefficient(Monomial m) const;
  int degree() const;  // -1 for zero

  Poly derivative(std::size_t var) const;
  Scalar evaluate(const std::vector<Scalar>& x) const;
  Poly homogeneous_part(int d) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& s);
  void add_term(Monomial m, const Scalar& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Scalar(-1); }
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(std::size_t nvars) const;

 private:
  std::map<Monomial, Scalar> terms_;
};

}  // namespace gentwistor::flatmodel
