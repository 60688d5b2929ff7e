#include "gentwistor/clifford.hpp"

#include <algorithm>
#include <map>

namespace gentwistor::clifford {

using exalg::MathError;

UnsupportedSignature::UnsupportedSignature(int p, int q)
    : std::runtime_error("unsupported signature (" + std::to_string(p) + "," + std::to_string(q) + ")") {}

std::size_t SignatureSpec::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::out_of_range("no basis vector labelled '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

bool is_supported(int p, int q) {
  static const std::vector<std::pair<int, int>> ok = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2},
                                                      {2, 3}, {3, 3}, {3, 4}, {4, 4}};
  return std::find(ok.begin(), ok.end(), std::make_pair(p, q)) != ok.end();
}

Matrix CliffordModel::gamma_of(const Vector& v) const {
  if (v.size() != dim()) throw MathError("vector dimension mismatch");
  Matrix g(spinor_dim_, spinor_dim_);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) g += v[i] * gammas_[i];
  return g;
}

std::vector<std::size_t> CliffordModel::half_spin_indices(int sign) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chirality_.size(); ++i)
    if (chirality_[i] == sign) out.push_back(i);
  return out;
}

std::vector<Vector> CliffordModel::half_spin_basis(int sign) const {
  std::vector<Vector> out;
  for (auto i : half_spin_indices(sign)) out.push_back(exalg::unit_vector(spinor_dim_, i));
  return out;
}

int CliffordModel::chirality_of(const Vector& s) const {
  if (!has_half_spin() || exalg::is_zero(s)) return 0;
  int seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_zero()) continue;
    if (seen == 0) seen = chirality_[i];
    else if (seen != chirality_[i]) return 0;
  }
  return seen;
}

CliffordModel double_model(const std::shared_ptr<const CliffordModel>& base, std::vector<std::string> labels) {
  const std::size_t n = base->dim();
  const std::size_t d = base->spinor_dim();
  CliffordModel m;
  m.sig_.p = base->sig_.p + 1;
  m.sig_.q = base->sig_.q + 1;
  m.sig_.labels = std::move(labels);
  m.sig_.gram = Matrix(n + 2, n + 2);
  m.sig_.gram.set_block(1, 1, base->sig_.gram);
  m.sig_.gram(0, n + 1) = 1;
  m.sig_.gram(n + 1, 0) = 1;
  m.spinor_dim_ = 2 * d;
  const Matrix id = Matrix::identity(d);
  const Scalar r2 = Scalar::sqrt2();
  // (tau, chi) -> (-xi.tau - r2 rho chi, xi.chi + r2 sigma tau) for v = sigma e- + xi + rho e+
  Matrix eplus(2 * d, 2 * d);
  eplus.set_block(0, d, -r2 * id);
  m.gammas_.push_back(eplus);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix g(2 * d, 2 * d);
    g.set_block(0, 0, -base->gammas_[i]);
    g.set_block(d, d, base->gammas_[i]);
    m.gammas_.push_back(g);
  }
  Matrix eminus(2 * d, 2 * d);
  eminus.set_block(d, 0, r2 * id);
  m.gammas_.push_back(eminus);
  if (base->has_half_spin()) {
    // the tau slot flips chirality, the chi slot inherits it
    for (std::size_t i = 0; i < d; ++i) m.chirality_.push_back(-base->chirality_[i]);
    for (std::size_t i = 0; i < d; ++i) m.chirality_.push_back(base->chirality_[i]);
  }
  m.ancestor_ = base;
  return m;
}

CliffordModel relabel(const CliffordModel& src, const std::vector<std::size_t>& order, std::vector<std::string> labels) {
  CliffordModel m = src;
  const std::size_t n = order.size();
  m.sig_.labels = std::move(labels);
  m.sig_.gram = Matrix(n, n);
  m.gammas_.clear();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) m.sig_.gram(k, l) = src.sig_.gram(order[k], order[l]);
    m.gammas_.push_back(src.gammas_[order[k]]);
  }
  return m;
}

CliffordModel build_clifford(int p, int q) {
  if (!is_supported(p, q)) throw UnsupportedSignature(p, q);
  if (p == 0) {
    CliffordModel m;
    m.spinor_dim_ = 1;
    if (q == 0) {
      m.sig_.gram = Matrix(0, 0);
      m.chirality_ = {-1};
    } else {
      // odd chain: a single timelike vector r acting by +1, so r.r = 1 = -h(r,r)
      m.sig_.q = 1;
      m.sig_.labels = {"r"};
      m.sig_.gram = Matrix::diagonal({Scalar(-1)});
      m.gammas_ = {Matrix::identity(1)};
    }
    return m;
  }
  auto base = std::make_shared<const CliffordModel>(build_clifford(p - 1, q - 1));
  switch (p * 10 + q) {
    case 11:
      return double_model(base, {"u1", "v1"});
    case 12:
      return double_model(base, {"u1", "r", "v1"});
    case 22:
      return double_model(base, {"u2", "u1", "v1", "v2"});
    case 23:
      return relabel(double_model(base, {"u2", "u1", "r", "v1", "v2"}), {0, 1, 2, 4, 3},
                     {"e1", "e2", "r", "f1", "f2"});
    case 33:
      return relabel(double_model(base, {"u3", "u2", "u1", "v1", "v2", "v3"}), {0, 1, 2, 5, 4, 3},
                     {"e1", "e2", "e3", "f1", "f2", "f3"});
    case 34:
      return double_model(base, {"e+", "e1", "e2", "r", "f1", "f2", "e-"});
    case 44:
      return double_model(base, {"e+", "e1", "e2", "e3", "f1", "f2", "f3", "e-"});
    default:
      throw UnsupportedSignature(p, q);
  }
}

CliffordModel build_clifford(const SignatureSpec& sig) {
  CliffordModel m = build_clifford(sig.p, sig.q);
  if (m.signature().labels != sig.labels || m.signature().gram != sig.gram)
    throw MathError("signature data does not match the supported basis conventions");
  return m;
}

SignatureSpec signature_spec(int p, int q) { return build_clifford(p, q).signature(); }

Vector vector_action(const CliffordModel& m, const Vector& v, const Vector& s) {
  if (s.size() != m.spinor_dim()) throw MathError("spinor dimension mismatch");
  return m.gamma_of(v) * s;
}

bool check_anticommutation(const CliffordModel& m) {
  const auto& h = m.signature().gram;
  const Matrix id = Matrix::identity(m.spinor_dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (exalg::anticommutator(m.gamma(i), m.gamma(j)) != Scalar(-2) * h(i, j) * id) return false;
  return true;
}

SoAction::SoAction(std::shared_ptr<const CliffordModel> m, SoSign sign) : model_(std::move(m)), sign_(sign) {
  const auto& sig = model_->signature();
  const std::size_t n = sig.dim();
  const Scalar s = sign_ == SoSign::standard ? Scalar(1) : Scalar(-1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
  for (auto [i, j] : pairs_) {
    // w -> h(e_i, w) e_j - h(e_j, w) e_i
    Matrix a(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      a(j, k) += s * sig.gram(i, k);
      a(i, k) -= s * sig.gram(j, k);
    }
    vec_mats_.push_back(a);
  }
  auto inv = exalg::inverse(sig.gram);
  if (!inv) throw MathError("degenerate metric");
  gram_inv_ = *inv;

  // solve c from the first basis triple where [[g_u, g_v], g_w] is nonzero
  bool found = false;
  for (std::size_t k = 0; k < pairs_.size() && !found; ++k) {
    auto [u, v] = pairs_[k];
    Matrix cu = exalg::commutator(model_->gamma(u), model_->gamma(v));
    for (std::size_t w = 0; w < n && !found; ++w) {
      Matrix lhs = exalg::commutator(cu, model_->gamma(w));
      Matrix rhs = model_->gamma_of(vec_mats_[k].column(w));
      for (std::size_t r = 0; r < lhs.rows() && !found; ++r)
        for (std::size_t c = 0; c < lhs.cols(); ++c)
          if (!lhs(r, c).is_zero()) {
            c_ = rhs(r, c) / lhs(r, c);
            found = true;
            break;
          }
    }
  }
  if (!found) c_ = 0;
  for (auto [i, j] : pairs_) spin_mats_.push_back(c_ * exalg::commutator(model_->gamma(i), model_->gamma(j)));
  if (!check_derivation()) throw MathError("no spinor constant satisfies the derivation property");
}

std::size_t SoAction::pair_index(std::size_t i, std::size_t j) const {
  if (i >= j) throw std::out_of_range("pair_index needs i < j");
  auto it = std::find(pairs_.begin(), pairs_.end(), std::make_pair(i, j));
  return static_cast<std::size_t>(it - pairs_.begin());
}

Vector SoAction::wedge(const Vector& u, const Vector& v) const {
  Vector b(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    auto [i, j] = pairs_[k];
    b[k] = u[i] * v[j] - u[j] * v[i];
  }
  return b;
}

Vector SoAction::wedge(const std::string& u, const std::string& v) const {
  const auto& sig = model_->signature();
  return wedge(sig.basis_vector(u), sig.basis_vector(v));
}

Matrix SoAction::vector_matrix(const Vector& b) const {
  const std::size_t n = model_->dim();
  Matrix m(n, n);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (!b[k].is_zero()) m += b[k] * vec_mats_[k];
  return m;
}

Matrix SoAction::spinor_matrix(const Vector& b) const {
  const std::size_t d = model_->spinor_dim();
  Matrix m(d, d);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (!b[k].is_zero()) m += b[k] * spin_mats_[k];
  return m;
}

Vector SoAction::from_vector_matrix(const Matrix& m) const {
  Matrix w = m * gram_inv_;
  if (!w.is_antisymmetric()) throw MathError("matrix is not in so(h)");
  const Scalar s = sign_ == SoSign::standard ? Scalar(1) : Scalar(-1);
  Vector b(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k) b[k] = s * w(pairs_[k].second, pairs_[k].first);
  return b;
}

Vector SoAction::bracket(const Vector& a, const Vector& b) const {
  return from_vector_matrix(exalg::commutator(vector_matrix(a), vector_matrix(b)));
}

bool SoAction::check_derivation() const {
  for (std::size_t k = 0; k < pairs_.size(); ++k)
    for (std::size_t w = 0; w < model_->dim(); ++w)
      if (exalg::commutator(spin_mats_[k], model_->gamma(w)) != model_->gamma_of(vec_mats_[k].column(w))) return false;
  return true;
}

bool SoAction::check_homomorphism() const {
  for (std::size_t a = 0; a < pairs_.size(); ++a)
    for (std::size_t b = a + 1; b < pairs_.size(); ++b) {
      Vector ea = exalg::unit_vector(pairs_.size(), a);
      Vector eb = exalg::unit_vector(pairs_.size(), b);
      if (spinor_matrix(bracket(ea, eb)) != exalg::commutator(spin_mats_[a], spin_mats_[b])) return false;
    }
  return true;
}

namespace {

std::string coefficient_text(const Scalar& c) {
  const auto& a = c.rational_part();
  const auto& b = c.sqrt2_part();
  if (sgn(b) == 0) return a.get_str();
  std::string irr = (b == 1 ? std::string() : b.get_str() + "*") + "r2";
  if (sgn(a) == 0) return irr;
  return "(" + c.to_string() + ")";
}

}  // namespace

std::string SoAction::format(const Vector& b) const {
  const auto& labels = model_->signature().labels;
  std::string out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k].is_zero()) continue;
    Scalar c = b[k];
    bool negative = sgn(c.rational_part()) <= 0 && sgn(c.sqrt2_part()) <= 0;
    if (negative) c = -c;
    if (out.empty()) out = negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (!c.is_one()) out += coefficient_text(c) + "*";
    out += labels[pairs_[k].first] + "^" + labels[pairs_[k].second];
  }
  return out.empty() ? "0" : out;
}

}  // namespace gentwistor::clifford
