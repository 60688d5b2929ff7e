#include "gentwistor/pairings.hpp"

namespace gentwistor::pairings {

using exalg::MathError;

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::skew:
      return "skew";
    case Symmetry::symmetric:
      return "symmetric";
    case Symmetry::duality:
      return "duality";
  }
  return "?";
}

std::string Weight::to_string() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

namespace {

// Unknowns: entries M(i, j) for i in rows, j in cols.
struct BlockUnknowns {
  std::vector<std::size_t> rows, cols;
  std::size_t d;
  std::vector<long> slot;  // i*d + j -> unknown index or -1
  BlockUnknowns(std::size_t dim, std::vector<std::size_t> r, std::vector<std::size_t> c)
      : rows(std::move(r)), cols(std::move(c)), d(dim), slot(dim * dim, -1) {
    long k = 0;
    for (auto i : rows)
      for (auto j : cols) slot[i * d + j] = k++;
  }
  std::size_t count() const { return rows.size() * cols.size(); }
  // add coefficient for M(i, j); entries outside the block are fixed at zero
  void add(Vector& row, std::size_t i, std::size_t j, const Scalar& c) const {
    long s = slot[i * d + j];
    if (s >= 0 && !c.is_zero()) row[static_cast<std::size_t>(s)] += c;
  }
  Matrix assemble(const Vector& x) const {
    Matrix m(d, d);
    for (auto i : rows)
      for (auto j : cols) m(i, j) = x[static_cast<std::size_t>(slot[i * d + j])];
    return m;
  }
};

std::vector<std::size_t> all_indices(std::size_t d) {
  std::vector<std::size_t> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = i;
  return v;
}

std::vector<Vector> constraint_kernel(const CliffordModel& m, BlockUnknowns& u) {
  const std::size_t d = m.spinor_dim();
  const bool even = m.has_half_spin();
  std::vector<Vector> rows;
  for (std::size_t v = 0; v < m.dim(); ++v) {
    const Matrix& g = m.gamma(v);
    if (!even) {
      // (g^T M - M g)_{ij} = 0
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          Vector r(u.count());
          for (std::size_t k = 0; k < d; ++k) {
            u.add(r, k, j, g(k, i));
            u.add(r, i, k, -g(k, j));
          }
          rows.push_back(std::move(r));
        }
    } else {
      // (M g)_{ij} + (M g)_{ji} = 0 for i, j in the row block
      for (auto i : u.rows)
        for (auto j : u.rows) {
          Vector r(u.count());
          for (std::size_t k = 0; k < d; ++k) {
            u.add(r, i, k, g(k, j));
            u.add(r, j, k, g(k, i));
          }
          rows.push_back(std::move(r));
        }
    }
  }
  // skew in every signature; in even ones this fixes the extension to the Δ- x Δ+ block
  if (!even || u.rows.size() == d) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        Vector r(u.count());
        u.add(r, i, j, 1);
        u.add(r, j, i, 1);
        if (!exalg::is_zero(r)) rows.push_back(std::move(r));
      }
  }
  return exalg::kernel(Matrix::from_rows(rows, u.count()));
}

BlockUnknowns unknowns_for(const CliffordModel& m) {
  return BlockUnknowns(m.spinor_dim(), all_indices(m.spinor_dim()), all_indices(m.spinor_dim()));
}

void require_pairing_model(const CliffordModel& m) {
  const auto& s = m.signature();
  if (!((s.p == 2 && s.q == 3) || (s.p == 3 && s.q == 3)))
    throw PairingError("invariant pairings are solved only for the (2,3) and (3,3) models");
}

}  // namespace

std::size_t invariant_pairing_dimension(const CliffordModel& m) {
  require_pairing_model(m);
  auto u = unknowns_for(m);
  return constraint_kernel(m, u).size();
}

std::size_t duality_block_dimension(const CliffordModel& m) {
  require_pairing_model(m);
  if (!m.has_half_spin()) throw PairingError("no half-spin split in an odd signature");
  BlockUnknowns u(m.spinor_dim(), m.half_spin_indices(1), m.half_spin_indices(-1));
  return constraint_kernel(m, u).size();
}

PairingSolution solve_invariant_pairing(const CliffordModel& m) {
  require_pairing_model(m);
  auto u = unknowns_for(m);
  auto sol = constraint_kernel(m, u);
  if (sol.size() != 1)
    throw PairingError("invariant pairing solution space has dimension " + std::to_string(sol.size()));
  Matrix g = u.assemble(sol.front());
  const Scalar n = g(0, m.spinor_dim() - 1);
  if (n.is_zero()) throw PairingError("normalization entry b(s_0, s_last) vanishes");
  g *= n.inverse();
  Pairing p;
  p.gram = g;
  p.weight = {-2};
  if (m.has_half_spin()) {
    p.name = "b33";
    p.symmetry = Symmetry::duality;
    p.clifford_sign = 1;
    for (auto i : m.half_spin_indices(1))
      for (auto j : m.half_spin_indices(1))
        if (!g(i, j).is_zero()) throw PairingError("b33 does not vanish on the positive half-spin block");
  } else {
    p.name = "b23";
    p.symmetry = Symmetry::skew;
    p.clifford_sign = 1;
  }
  return {p, sol.size()};
}

Pairing build_B(const CliffordModel& doubled, const Pairing& base) {
  const auto& anc = doubled.ancestor();
  if (!anc || anc->spinor_dim() != base.gram.rows()) throw MathError("base pairing does not belong to the ancestor model");
  const std::size_t d = anc->spinor_dim();
  auto assemble = [&](const Matrix& b) {
    // X = (tau, chi): B(X, Y) = b(chi_X, tau_Y) + b(chi_Y, tau_X)
    Matrix g(2 * d, 2 * d);
    g.set_block(d, 0, b);
    g.set_block(0, d, b.transpose());
    Pairing p;
    p.gram = g;
    p.symmetry = Symmetry::symmetric;
    p.weight = base.weight;
    p.name = base.name == "b23" ? "B34" : "B44";
    return p;
  };
  Pairing p = assemble(base.gram);
  for (int sign : {1, -1}) {
    if (check_clifford_compatibility(doubled, p, sign)) {
      p.clifford_sign = sign;
      return p;
    }
  }
  throw MathError("B is not Clifford compatible");
}

bool check_clifford_compatibility(const CliffordModel& m, const Pairing& b, int sign) {
  const Scalar s(sign);
  for (const auto& g : m.gammas()) {
    Matrix lhs = g.transpose() * b.gram;
    Matrix rhs = s * (b.gram * g);
    if (lhs != rhs) return false;
  }
  return true;
}

bool check_defining_identity(const CliffordModel& m, const Pairing& b) {
  if (b.symmetry != Symmetry::duality) return check_clifford_compatibility(m, b, b.clifford_sign);
  // b(x, v.y) + b(y, v.x) = 0 for all spinors x, y
  for (const auto& g : m.gammas()) {
    Matrix mg = b.gram * g;
    if (!(mg + mg.transpose()).is_zero()) return false;
  }
  return true;
}

bool check_so_invariance(const clifford::SoAction& so, const Pairing& b) {
  for (std::size_t k = 0; k < so.bivector_dim(); ++k) {
    const Matrix& r = so.basis_spinor_matrix(k);
    if (!(r.transpose() * b.gram + b.gram * r).is_zero()) return false;
  }
  return true;
}

std::vector<Vector> clifford_kernel(const CliffordModel& m, const Vector& spinor) {
  if (spinor.size() != m.spinor_dim()) throw MathError("spinor dimension mismatch");
  // columns gamma_i * spinor
  std::vector<Vector> cols;
  for (const auto& g : m.gammas()) cols.push_back(g * spinor);
  return exalg::kernel(Matrix::from_columns(cols, m.spinor_dim()));
}

bool is_generic(const Pairing& b, const Vector& chi, const Vector& tau) { return !b(chi, tau).is_zero(); }

Vector distinguished_chi(const CliffordModel& m) { return exalg::unit_vector(m.spinor_dim(), 0); }
Vector distinguished_tau(const CliffordModel& m) { return exalg::unit_vector(m.spinor_dim(), m.spinor_dim() - 1); }

Vector double_spinor(const Vector& tau, const Vector& chi) {
  Vector x = tau;
  x.insert(x.end(), chi.begin(), chi.end());
  return x;
}

}  // namespace gentwistor::pairings
