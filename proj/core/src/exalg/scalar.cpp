#include "gentwistor/exalg/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace gentwistor::exalg {

Scalar::Scalar(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

Scalar Scalar::frac(long num, long den, long num2, long den2) {
  if (den == 0 || den2 == 0) throw DivisionByZero();
  return Scalar(mpq_class(num, den), mpq_class(num2, den2));
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: the part with the larger square wins
  int c = cmp(a_ * a_, 2 * b_ * b_);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

std::optional<Scalar> Scalar::try_inverse() const {
  if (is_zero()) return std::nullopt;
  if (is_rational()) return Scalar(1 / a_, mpq_class(0));
  mpq_class n = norm();
  return Scalar(a_ / n, -b_ / n);
}

Scalar Scalar::inverse() const {
  auto r = try_inverse();
  if (!r) throw DivisionByZero();
  return *r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  mpq_class na = a_ * o.a_ + 2 * b_ * o.b_;
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

void Scalar::add_product(const Scalar& x, const Scalar& y) {
  if (sgn(x.b_) == 0 && sgn(y.b_) == 0) {
    a_ += x.a_ * y.a_;
    return;
  }
  *this += x * y;
}

void Scalar::sub_product(const Scalar& x, const Scalar& y) {
  if (sgn(x.b_) == 0 && sgn(y.b_) == 0) {
    a_ -= x.a_ * y.a_;
    return;
  }
  *this -= x * y;
}

std::string Scalar::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string s = a_.get_str();
  if (sgn(b_) > 0) s += '+';
  s += b_.get_str();
  s += "*r2";
  return s;
}

double Scalar::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(2.0); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace {

mpq_class parse_rational(std::string_view t, std::string_view whole) {
  if (t.empty()) throw ParseError("empty coefficient in scalar '" + std::string(whole) + "'");
  auto slash = t.find('/');
  auto digits = [&](std::string_view d) {
    if (d.empty()) throw ParseError("bad number in scalar '" + std::string(whole) + "'");
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("bad character in scalar '" + std::string(whole) + "'");
    return mpz_class(std::string(d));
  };
  if (slash == std::string_view::npos) return mpq_class(digits(t));
  mpz_class num = digits(t.substr(0, slash));
  mpz_class den = digits(t.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in scalar '" + std::string(whole) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

// Accepts sums of terms "q", "q*r2", "r2", "q r2" with optional signs and whitespace.
Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty scalar");
  mpq_class a = 0;
  mpq_class b = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    bool had_sign = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      had_sign = true;
      ++i;
    }
    if (i == s.size()) throw ParseError("dangling sign in scalar '" + std::string(text) + "'");
    if (i > 0 && !had_sign) throw ParseError("missing operator in scalar '" + std::string(text) + "'");
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string_view term(s.data() + i, j - i);
    bool irrational = false;
    std::string_view coeff = term;
    for (std::string_view suffix : {"*sqrt2", "sqrt2", "*r2", "r2"}) {
      if (term.size() >= suffix.size() && term.substr(term.size() - suffix.size()) == suffix) {
        irrational = true;
        coeff = term.substr(0, term.size() - suffix.size());
        break;
      }
    }
    mpq_class q = (irrational && coeff.empty()) ? mpq_class(1) : parse_rational(coeff, text);
    if (sign < 0) q = -q;
    (irrational ? b : a) += q;
    i = j;
  }
  return Scalar(a, b);
}

}  // namespace gentwistor::exalg
