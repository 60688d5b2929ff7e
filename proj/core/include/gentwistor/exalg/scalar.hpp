#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gentwistor::exalg {

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public MathError {
 public:
  DivisionByZero() : MathError("division by zero") {}
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a + b*sqrt(2) with a, b rational. mpq_class keeps both parts canonical.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class a, mpq_class b = 0);

  static Scalar sqrt2() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar frac(long num, long den, long num2 = 0, long den2 = 1);
  static Scalar parse(std::string_view text);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& sqrt2_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_one() const { return sgn(b_) == 0 && a_ == 1; }
  int sign() const;

  Scalar inverse() const;
  std::optional<Scalar> try_inverse() const;
  Scalar conjugate() const { return Scalar(a_, -b_); }
  // a^2 - 2b^2
  mpq_class norm() const { return a_ * a_ - 2 * b_ * b_; }

  Scalar operator-() const { return Scalar(-a_, -b_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  // this += x*y without temporaries on the common rational path
  void add_product(const Scalar& x, const Scalar& y);
  void sub_product(const Scalar& x, const Scalar& y);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }

  std::string to_string() const;
  double to_double() const;

 private:
  mpq_class a_{0};
  mpq_class b_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace gentwistor::exalg
