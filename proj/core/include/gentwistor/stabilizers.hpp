#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gentwistor/pairings.hpp"

namespace gentwistor::stabilizers {

using clifford::SoAction;
using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;
using SoPtr = std::shared_ptr<const SoAction>;

struct LieSubalgebra {
  SoPtr so;
  std::vector<Vector> basis;  // bivector coordinates

  std::size_t dim() const { return basis.size(); }
  bool contains(const Vector& a) const;
};

LieSubalgebra full_algebra(SoPtr so);
LieSubalgebra stabilizer(SoPtr so, const Vector& spinor);
bool is_closed(const LieSubalgebra& s);
bool annihilates(const LieSubalgebra& s, const Vector& spinor);

struct GradedDecomposition {
  Vector E;
  std::vector<Scalar> vector_weights;  // E is diagonal on the vector basis
  std::map<int, std::vector<Vector>> components;

  std::vector<std::size_t> dims() const;
  int depth() const { return components.empty() ? 0 : components.rbegin()->first; }
  std::vector<Vector> positive_part() const;
  std::vector<Vector> negative_part() const;
};

class GradingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grading of s by a diagonal element E; throws GradingError if E is not diagonal on the
// vector basis or some ad(E)-eigenvalue on s is not an integer.
GradedDecomposition grade_by(const LieSubalgebra& s, const Vector& E);
// E spans s ∩ span{e+^e-, sum_i e_i^f_i}, scaled so that the smallest positive
// eigenvalue of ad(E) on s is 1 and e+ has positive weight.
GradedDecomposition frame_grading(const LieSubalgebra& s);
// [g_i, g_j] ⊆ g_{i+j} on all basis pairs
bool check_bracket_grading(const LieSubalgebra& s, const GradedDecomposition& g);

enum class Case { g2, so34 };
std::string to_string(Case c);

struct SpanElement {
  int degree = 0;
  std::string text;
  Vector element;
  std::vector<std::pair<std::string, std::string>> terms;
  bool member = false;        // lies in s
  bool in_component = false;  // lies in the computed component of that degree
  std::string computed;       // for a non-member: the element of s with the same wedge terms, if unique
};

std::vector<SpanElement> listed_span_elements(const SoAction& so, Case c);
std::vector<std::size_t> listed_dims(Case c);

struct GradedBasisReport {
  Case which = Case::g2;
  GradedDecomposition grading;
  std::vector<SpanElement> elements;
  std::vector<std::size_t> dims;
  bool eigenvalues_ok = false;   // ad(E) spectrum is exactly -depth..depth
  bool closure = false;
  bool bracket_grading = false;
  bool shapes_span = false;      // listed shapes (members or computed counterparts) span each component

  bool all_members() const;
  std::string missing() const;
};

class MembershipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects membership of every listed element instead of stopping at the first non-member.
GradedBasisReport verify_graded_basis(const LieSubalgebra& s, Case c);
// Throws MembershipError naming every listed element outside s.
void require_members(const GradedBasisReport& r);

// Representation matrices of the basis of s.
enum class Rep { vector, spin };
std::vector<Matrix> rep_matrices(const LieSubalgebra& s, Rep r);
std::vector<Matrix> rep_matrices(const SoAction& so, const std::vector<Vector>& elements, Rep r);
std::vector<Vector> generated_subspace(const std::vector<Matrix>& mats, const Vector& v);
bool is_invariant(const std::vector<Matrix>& mats, const std::vector<Vector>& subspace);
// Every probe vector in the list generates the whole subspace.
bool probe_irreducible(const std::vector<Matrix>& mats, const std::vector<Vector>& subspace,
                       const std::vector<Vector>& probes);
// Joint kernel of the given operators inside the subspace.
std::vector<Vector> joint_kernel(const std::vector<Matrix>& mats, const std::vector<Vector>& subspace);

struct BranchingFact {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct BranchingReport {
  Case which = Case::g2;
  std::vector<BranchingFact> facts;
  bool all_hold() const;
};

BranchingReport branching(const LieSubalgebra& s, const GradedDecomposition& g, const pairings::Pairing& B,
                          const Vector& X, Case c);

// v -> v.X and its inverse from h(v,w) B(X,X) = -eps B(w.X, Y), eps the Clifford sign of B.
class PerpIso {
 public:
  PerpIso(const clifford::CliffordModel& m, const pairings::Pairing& B, const Vector& X);
  Vector forward(const Vector& v) const;
  Vector inverse(const Vector& y) const;

 private:
  std::vector<Matrix> gammas_;
  Matrix B_;
  int eps_;
  Vector X_;
  Scalar norm_;
  Matrix gram_inv_;
};

// Basis of s-equivariant maps T: V -> W (T a_V = a_W T), as dim W x dim V matrices, with V and W
// given as invariant subspaces of the spaces the matrices act on.
std::vector<Matrix> equivariant_maps(const std::vector<Matrix>& mats_v, const std::vector<Vector>& v_basis,
                                     const std::vector<Matrix>& mats_w, const std::vector<Vector>& w_basis);
// Restriction of the action to an invariant subspace, in coordinates of the given basis.
std::vector<Matrix> restrict_action(const std::vector<Matrix>& mats, const std::vector<Vector>& basis);

}  // namespace gentwistor::stabilizers
