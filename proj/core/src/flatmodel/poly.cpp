#include "gentwistor/flatmodel/poly.hpp"

#include <algorithm>
#include <sstream>

namespace gentwistor::flatmodel {

using exalg::MathError;
using exalg::ParseError;

int exponent(Monomial m, std::size_t var) { return static_cast<int>((m >> (8 * var)) & 0xffu); }

Monomial with_exponent(Monomial m, std::size_t var, int e) {
  if (var >= 8 || e < 0 || e > 255) throw MathError("monomial exponent out of range");
  const Monomial mask = Monomial{0xff} << (8 * var);
  return (m & ~mask) | (static_cast<Monomial>(e) << (8 * var));
}

int total_degree(Monomial m) {
  int d = 0;
  for (std::size_t v = 0; v < 8; ++v) d += exponent(m, v);
  return d;
}

std::vector<Monomial> monomials(std::size_t n, int d) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var + 1 == n) {
      e[var] = left;
      Monomial m = 0;
      for (std::size_t i = 0; i < n; ++i) m = with_exponent(m, i, e[i]);
      out.push_back(m);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(0);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

std::string monomial_text(Monomial m, std::size_t n) {
  std::string out;
  for (std::size_t v = 0; v < n; ++v) {
    int e = exponent(m, v);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

Monomial parse_monomial(const std::string& text, std::size_t n) {
  if (text == "1") return 0;
  Monomial m = 0;
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    if (factor.size() < 2 || factor[0] != 'x') throw ParseError("bad monomial '" + text + "'");
    auto caret = factor.find('^');
    std::size_t var = 0;
    int e = 1;
    try {
      var = std::stoul(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      if (caret != std::string::npos) e = std::stoi(factor.substr(caret + 1));
    } catch (const std::exception&) {
      throw ParseError("bad monomial '" + text + "'");
    }
    if (var >= n) throw ParseError("variable x" + std::to_string(var) + " out of range");
    if (e < 1) throw ParseError("bad exponent in '" + text + "'");
    m = with_exponent(m, var, exponent(m, var) + e);
  }
  return m;
}

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) terms_[0] = c;
}

Poly Poly::variable(std::size_t i) { return term(with_exponent(0, i, 1), 1); }

Poly Poly::term(Monomial m, const Scalar& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

Scalar Poly::constant_term() const { return coefficient(0); }

Scalar Poly::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

Poly Poly::derivative(std::size_t var) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    int e = exponent(m, var);
    if (e == 0) continue;
    out.add_term(with_exponent(m, var, e - 1), Scalar(e) * c);
  }
  return out;
}

Scalar Poly::evaluate(const std::vector<Scalar>& x) const {
  Scalar out;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t v = 0; v < x.size(); ++v)
      for (int k = exponent(m, v); k > 0; --k) t *= x[v];
    out += t;
  }
  return out;
}

Poly Poly::homogeneous_part(int d) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (total_degree(m) == d) out.terms_[m] = c;
  return out;
}

void Poly::add_term(Monomial m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      // per-byte addition; exponents stay below 256 in practice
      Monomial m = 0;
      for (std::size_t v = 0; v < 8; ++v) m = with_exponent(m, v, exponent(ma, v) + exponent(mb, v));
      out.add_term(m, ca * cb);
    }
  return out;
}

std::string Poly::to_string(std::size_t nvars) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (m != 0) out += "*" + monomial_text(m, nvars);
  }
  return out;
}

}  // namespace gentwistor::flatmodel
