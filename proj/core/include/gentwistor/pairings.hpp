#pragma once

#include <string>
#include <vector>

#include "gentwistor/clifford.hpp"

namespace gentwistor::pairings {

using clifford::CliffordModel;
using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;

enum class Symmetry { skew, symmetric, duality };
std::string to_string(Symmetry s);

// Density weight label in halves: twice = -2 means weight -1.
struct Weight {
  int twice = 0;
  friend Weight operator+(Weight a, Weight b) { return {a.twice + b.twice}; }
  friend bool operator==(Weight a, Weight b) { return a.twice == b.twice; }
  std::string to_string() const;
};

struct Pairing {
  std::string name;
  Matrix gram;  // b(x, y) = x^T gram y on the full spinor space
  Symmetry symmetry = Symmetry::skew;
  Weight weight;
  // b(v.x, y) = clifford_sign * b(x, v.y)
  int clifford_sign = 1;

  Scalar operator()(const Vector& x, const Vector& y) const { return exalg::bilinear(gram, x, y); }
};

struct PairingSolution {
  Pairing pairing;
  std::size_t solution_dimension = 0;
};

class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (2,3): skew b with b(v.x, y) = b(x, v.y).
// (3,3): skew b on the full spinor space with b(x, v.y) + b(y, v.x) = 0 for all x, y, so again
// b(v.x, y) = b(x, v.y). It pairs Δ+ with Δ- and vanishes on Δ+ x Δ+ and Δ- x Δ-.
// Normalized by b(s_0, s_last) = 1. Throws PairingError unless the solution space is a line.
PairingSolution solve_invariant_pairing(const CliffordModel& m);
// Dimension of the constraint system solved above, without throwing.
std::size_t invariant_pairing_dimension(const CliffordModel& m);
// (3,3) only: unknowns restricted to the Δ+ x Δ- block, identity imposed for x, y in Δ+.
std::size_t duality_block_dimension(const CliffordModel& m);

// B((tau, chi), (tau', chi')) = b(chi, tau') + b(chi', tau) on the doubled model.
Pairing build_B(const CliffordModel& doubled, const Pairing& base);

// Whether b(v.x, y) = sign * b(x, v.y) on all basis triples, restricted to the given spinor subspaces.
bool check_clifford_compatibility(const CliffordModel& m, const Pairing& b, int sign);
// (2,3): the skew compatibility above. (3,3): b(x, v.y) + b(y, v.x) = 0 on all spinors.
bool check_defining_identity(const CliffordModel& m, const Pairing& b);
bool check_so_invariance(const clifford::SoAction& so, const Pairing& b);

std::vector<Vector> clifford_kernel(const CliffordModel& m, const Vector& spinor);
bool is_generic(const Pairing& b, const Vector& chi, const Vector& tau);

// Standard basis spinors used as the distinguished pair: chi = s_0, tau = s_last.
Vector distinguished_chi(const CliffordModel& m);
Vector distinguished_tau(const CliffordModel& m);
// X = (tau; chi) in the doubled spinor space.
Vector double_spinor(const Vector& tau, const Vector& chi);

}  // namespace gentwistor::pairings
