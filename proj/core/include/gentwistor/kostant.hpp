#pragma once

#include <map>
#include <string>
#include <vector>

#include "gentwistor/stabilizers.hpp"

namespace gentwistor::kostant {

using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;

// A graded Lie algebra realized by matrices on the vector representation, basis sorted by degree.
struct GradedLieData {
  std::string name;
  std::vector<Matrix> basis;
  std::vector<int> degree;
  // [z_i, z_j] = sum_k structure[i][j][k] z_k
  std::vector<std::vector<Vector>> structure;
  Matrix trace_form;  // tr(z_i z_j)
  std::vector<std::size_t> minus, zero, plus;
  // dual[m] in p+ with B(dual[m], z_minus[m']) = delta
  std::vector<Vector> dual;
  Vector grading_element;  // ad-eigenvalue on z_i is degree[i]

  std::size_t dim() const { return basis.size(); }
  Vector coordinates(const Matrix& a) const;  // throws MathError if a is not in the span
  Vector bracket(const Vector& a, const Vector& b) const;
  Matrix matrix_of(const Vector& a) const;

  // picks matrix entries that determine coordinates
  std::vector<std::size_t> pivot_entries;
  Matrix pivot_inverse;
};

GradedLieData graded_data(const stabilizers::LieSubalgebra& s, const stabilizers::GradedDecomposition& g,
                          std::string name);
// All of so(h) graded by the null pair: e+ weight 1, e- weight -1.
GradedLieData conformal_data(const clifford::SoAction& so, std::string name);

bool check_jacobi(const GradedLieData& d);
bool minus_generated_by_degree_minus_one(const GradedLieData& d);

// Alternating k-cochains on g- with values in g, identified with Λ^k p+ ⊗ g through the trace
// form: coefficient (I, a) is eps^I ⊗ z_a = Z^I ⊗ z_a.
class CochainSpace {
 public:
  CochainSpace(const GradedLieData& d, std::size_t k);

  std::size_t k() const { return k_; }
  std::size_t dim() const { return subsets_.size() * n_; }
  std::size_t index(std::size_t subset, std::size_t a) const { return subset * n_ + a; }
  const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }
  // position of the sorted subset and the sign of the sorting permutation; -1 on a repeat
  std::pair<long, int> locate(std::vector<std::size_t> positions) const;
  int homogeneity(std::size_t idx) const { return homogeneity_[idx]; }

 private:
  std::size_t k_, n_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::map<std::vector<std::size_t>, std::size_t> lookup_;
  std::vector<int> homogeneity_;
};

// Lie algebra cohomology differential of g- with values in g: C^k -> C^(k+1).
Matrix differential(const GradedLieData& d, std::size_t k);
// Kostant codifferential C^k -> C^(k-1), from the decomposable formula
// Z_0∧Z_1⊗A -> Z_0⊗[Z_1,A] - Z_1⊗[Z_0,A] - [Z_0,Z_1]⊗A and its extension to all degrees.
Matrix codifferential(const GradedLieData& d, std::size_t k);

// Pairing Q_k(a, b) = <a, theta b> with theta(M) = -M^T, Λ^k of theta on p+ and the trace form on g.
Matrix theta_pairing(const GradedLieData& d, std::size_t k);

struct AdjointReport {
  bool theta_stable = false;
  // d_k^T Q_{k+1} = lambda Q_k d*_{k+1} for k = 0, 1, 2
  bool holds = false;
  Scalar lambda;
};
AdjointReport check_adjointness(const GradedLieData& d);

struct HarmonicReport {
  std::size_t dimension = 0;
  std::size_t laplacian_kernel = 0;
  bool agree = false;  // ker d ∩ ker d* == ker(d d* + d* d)
  std::map<int, std::size_t> by_homogeneity;
  bool regular = false;  // every harmonic element has homogeneity >= 1
  bool g0_invariant = false;
  bool homogeneity_preserved = false;
  std::vector<Vector> basis;
};
HarmonicReport harmonic_module(const GradedLieData& d);

// g0 action on C^2
Matrix g0_action(const GradedLieData& d, std::size_t zero_index);

struct NormalityReport {
  std::size_t checked = 0;
  std::size_t nonzero = 0;
  bool g0_part_lands_in_pplus_tensor_pplus = false;
  std::vector<std::size_t> pplus_blocks;        // E-eigenspace dims of the big p+ under the small grading
  std::vector<std::size_t> pplus_tensor_blocks;  // pairwise products
  bool pplus_blocks_irreducible = false;
  bool zero_maps_to_zero = false;
};

class IdentificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix of I: C^2(small) -> C^2(big) through g ⊂ g~ and g/p ≅ g~/p~.
Matrix inclusion_map(const GradedLieData& small, const GradedLieData& big);
NormalityReport normality_check(const GradedLieData& small, const GradedLieData& big, const HarmonicReport& h);

}  // namespace gentwistor::kostant
