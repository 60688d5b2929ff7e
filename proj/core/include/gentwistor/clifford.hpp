#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gentwistor/exalg/linalg.hpp"

namespace gentwistor::clifford {

using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;

class UnsupportedSignature : public std::runtime_error {
 public:
  UnsupportedSignature(int p, int q);
};

struct SignatureSpec {
  int p = 0;
  int q = 0;
  std::vector<std::string> labels;
  Matrix gram;

  std::size_t dim() const { return labels.size(); }
  std::size_t index_of(const std::string& label) const;
  Vector basis_vector(const std::string& label) const { return exalg::unit_vector(dim(), index_of(label)); }
  Scalar h(const Vector& v, const Vector& w) const { return exalg::bilinear(gram, v, w); }
};

// (0,0) (0,1) (1,1) (1,2) (2,2) (2,3) (3,3) (3,4) (4,4)
bool is_supported(int p, int q);
SignatureSpec signature_spec(int p, int q);

class CliffordModel {
 public:
  const SignatureSpec& signature() const { return sig_; }
  std::size_t dim() const { return sig_.dim(); }
  std::size_t spinor_dim() const { return spinor_dim_; }

  const std::vector<Matrix>& gammas() const { return gammas_; }
  const Matrix& gamma(std::size_t i) const { return gammas_.at(i); }
  const Matrix& gamma(const std::string& label) const { return gammas_.at(sig_.index_of(label)); }
  Matrix gamma_of(const Vector& v) const;

  bool has_half_spin() const { return !chirality_.empty(); }
  // +1 / -1 per standard spinor basis element (even signatures only)
  const std::vector<int>& chirality() const { return chirality_; }
  std::vector<std::size_t> half_spin_indices(int sign) const;
  std::vector<Vector> half_spin_basis(int sign) const;
  int chirality_of(const Vector& s) const;  // 0 if mixed or zero

  // The model this one doubles, if any. Basis positions 1..n-2 carry its vectors,
  // spinors are (tau, chi) pairs of its spinors.
  const std::shared_ptr<const CliffordModel>& ancestor() const { return ancestor_; }

 private:
  friend CliffordModel build_clifford(int p, int q);
  friend CliffordModel double_model(const std::shared_ptr<const CliffordModel>& base, std::vector<std::string> labels);
  friend CliffordModel relabel(const CliffordModel& m, const std::vector<std::size_t>& order,
                               std::vector<std::string> labels);

  SignatureSpec sig_;
  std::size_t spinor_dim_ = 0;
  std::vector<Matrix> gammas_;
  std::vector<int> chirality_;
  std::shared_ptr<const CliffordModel> ancestor_;
};

CliffordModel build_clifford(int p, int q);
CliffordModel build_clifford(const SignatureSpec& sig);

// One hyperbolic doubling step: basis (e+, base basis, e-), spinors (tau, chi).
CliffordModel double_model(const std::shared_ptr<const CliffordModel>& base, std::vector<std::string> labels);
// Reorders the vector basis; spinors unchanged.
CliffordModel relabel(const CliffordModel& m, const std::vector<std::size_t>& order, std::vector<std::string> labels);

Vector vector_action(const CliffordModel& m, const Vector& v, const Vector& s);

// Checks gamma_i gamma_j + gamma_j gamma_i = -2 h_ij on all pairs.
bool check_anticommutation(const CliffordModel& m);

enum class SoSign { standard, negated };

// so(p,q) realized on Λ² of the vector space with basis e_i∧e_j, i<j.
class SoAction {
 public:
  explicit SoAction(std::shared_ptr<const CliffordModel> m, SoSign sign = SoSign::standard);

  const CliffordModel& model() const { return *model_; }
  std::shared_ptr<const CliffordModel> model_ptr() const { return model_; }
  SoSign sign() const { return sign_; }
  const Scalar& spinor_constant() const { return c_; }
  std::size_t bivector_dim() const { return pairs_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  Vector wedge(const Vector& u, const Vector& v) const;
  Vector wedge(const std::string& u, const std::string& v) const;
  Matrix vector_matrix(const Vector& bivector) const;
  Matrix spinor_matrix(const Vector& bivector) const;
  const Matrix& basis_vector_matrix(std::size_t k) const { return vec_mats_.at(k); }
  const Matrix& basis_spinor_matrix(std::size_t k) const { return spin_mats_.at(k); }
  // Inverse of vector_matrix on so(h); throws if m is not h-skew.
  Vector from_vector_matrix(const Matrix& m) const;
  Vector bracket(const Vector& a, const Vector& b) const;

  // "2 e+^e- - 1/2*r2 f1^f2" style
  std::string format(const Vector& bivector) const;
  bool check_derivation() const;
  bool check_homomorphism() const;

 private:
  std::shared_ptr<const CliffordModel> model_;
  SoSign sign_;
  Scalar c_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<Matrix> vec_mats_;
  std::vector<Matrix> spin_mats_;
  Matrix gram_inv_;
};

}  // namespace gentwistor::clifford
