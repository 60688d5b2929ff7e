#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gentwistor/flatmodel/poly.hpp"
#include "gentwistor/pairings.hpp"

namespace gentwistor::flatmodel {

using clifford::CliffordModel;
using exalg::Matrix;
using exalg::Vector;
using pairings::Pairing;
using pairings::Weight;

// Flat R^{p,q} with linear coordinates x0..x(n-1) along the model basis, so g_ij = h(b_i, b_j).
class FlatContext {
 public:
  FlatContext(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  std::size_t n() const { return n_; }
  std::size_t spinor_dim() const { return model_->spinor_dim(); }
  const CliffordModel& model() const { return *model_; }
  const CliffordModel& doubled() const { return *doubled_; }
  std::shared_ptr<const CliffordModel> model_ptr() const { return model_; }
  std::shared_ptr<const CliffordModel> doubled_ptr() const { return doubled_; }
  const Matrix& g() const { return g_; }
  const Matrix& ginv() const { return ginv_; }
  const Pairing& b() const { return b_; }
  const Pairing& B() const { return B_; }
  // gamma_a = gamma(b_a) and gamma^a = g^{ab} gamma_b
  const Matrix& gamma_lower(std::size_t a) const { return model_->gamma(a); }
  const Matrix& gamma_upper(std::size_t a) const { return gamma_upper_.at(a); }

 private:
  int p_, q_;
  std::size_t n_;
  std::shared_ptr<const CliffordModel> model_, doubled_;
  Matrix g_, ginv_;
  Pairing b_, B_;
  std::vector<Matrix> gamma_upper_;
};

enum class FieldKind { scalar, vector, covector, spinor, covector_spinor, bilinear, form };
std::string to_string(FieldKind k);
FieldKind parse_field_kind(const std::string& s);

// Component layouts: vector/covector index a; covector_spinor a*d + k; bilinear a*n + b;
// form: one component per increasing index tuple, in lexicographic order.
struct PolyField {
  FieldKind kind = FieldKind::scalar;
  std::size_t nvars = 0;
  Weight weight;
  std::size_t form_degree = 0;
  std::vector<Poly> comps;

  static PolyField zero(FieldKind kind, std::size_t nvars, std::size_t ncomps, Weight w = {});
  static PolyField constant(FieldKind kind, std::size_t nvars, const Vector& v, Weight w = {});

  std::size_t size() const { return comps.size(); }
  int degree() const;  // -1 for the zero field
  bool is_zero() const;
  bool is_constant() const;
  PolyField derivative(std::size_t var) const;
  Vector evaluate(const std::vector<Scalar>& x) const;
  Vector constant_value() const;

  PolyField& operator+=(const PolyField& o);
  PolyField& operator-=(const PolyField& o);
  PolyField& operator*=(const Scalar& s);
  friend PolyField operator+(PolyField a, const PolyField& b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField& b) { return a -= b; }
  friend PolyField operator*(const Scalar& s, PolyField a) { return a *= s; }
  friend bool operator==(const PolyField& a, const PolyField& b) {
    return a.kind == b.kind && a.nvars == b.nvars && a.comps == b.comps;
  }
};

std::vector<std::vector<std::size_t>> form_indices(std::size_t n, std::size_t k);

// Constant matrix acting on a spinor field; the weight label shifts by `shift`.
PolyField apply(const Matrix& m, const PolyField& spinor, int shift_twice = 0);
// f * field, f a scalar field; weights add.
PolyField multiply(const PolyField& f, const PolyField& field);
// Pointwise b(x, y); weights add together with the pairing label.
Poly pair(const Pairing& b, const PolyField& x, const PolyField& y);
PolyField pair_field(const Pairing& b, const PolyField& x, const PolyField& y);
// gamma(v) for a vector field v = v^a b_a, or a covector field raised with g^{-1}
PolyField clifford_multiply(const FlatContext& ctx, const PolyField& v, const PolyField& spinor);
PolyField lower(const FlatContext& ctx, const PolyField& vector);
PolyField raise(const FlatContext& ctx, const PolyField& covector);
PolyField gradient(const PolyField& scalar);  // covector D_a f
Poly divergence(const PolyField& vector);
Poly laplacian(const FlatContext& ctx, const Poly& f);
PolyField position_vector(const FlatContext& ctx);

PolyField dirac(const FlatContext& ctx, const PolyField& spinor);
// (sqrt2/n) Dslash chi
PolyField dirac_companion(const FlatContext& ctx, const PolyField& spinor);
PolyField twistor_operator(const FlatContext& ctx, const PolyField& spinor);
// sum g^{ab} gamma_b Theta_a
PolyField gamma_trace(const FlatContext& ctx, const PolyField& theta);
// (D_a D_b s)_0
PolyField aes_operator(const FlatContext& ctx, const PolyField& scalar);
// D_a xi_b + D_b xi_a - (2/n) g_ab D^p xi_p
PolyField ckf_operator(const FlatContext& ctx, const PolyField& vector);

enum class Equation { twistor, aes, ckf };
std::string to_string(Equation e);
Equation parse_equation(const std::string& s);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KernelBasis {
  Equation equation = Equation::twistor;
  int p = 0, q = 0;
  int max_degree = 0;
  int chirality = 0;  // twistor only: restrict the ansatz to a half-spin space
  std::vector<std::size_t> cumulative;  // dimension of solutions of degree <= k
  std::vector<PolyField> basis;
  std::size_t dim() const { return basis.size(); }
};

// Polynomial ansatz, solved exactly degree by degree (every operator is homogeneous of degree -1 or -2).
KernelBasis solve_kernel(const FlatContext& ctx, Equation eq, int max_degree = 3, int chirality = 0);
PolyField apply_equation(const FlatContext& ctx, Equation eq, const PolyField& f);
bool in_span(const std::vector<PolyField>& basis, const PolyField& f);
std::size_t span_rank(const std::vector<PolyField>& fields);
// one coordinate per (component, monomial) occurring in any of the fields
std::vector<Vector> coefficient_vectors(const std::vector<PolyField>& fields);
// coefficients of f in the given basis, if f lies in the span
std::optional<Vector> span_coordinates(const std::vector<PolyField>& basis, const PolyField& f);

// Tractors. Standard slots (rho, phi_a, sigma); spin slots (tau, chi);
// adjoint slots (top_a, mu_ab as a 2-form, nu, xi_a).
enum class TractorKind { standard, spin, adjoint };

struct TractorSection {
  TractorKind kind = TractorKind::standard;
  std::vector<PolyField> slots;
  bool is_zero() const;
};

// Weight labels of the slots, in halves.
std::vector<Weight> slot_weights(TractorKind k);
std::vector<Weight> slot_labels(const TractorSection& t);

TractorSection l0_s(const FlatContext& ctx, const PolyField& chi);
TractorSection l0_t(const FlatContext& ctx, const PolyField& sigma);
TractorSection l0_a(const FlatContext& ctx, const PolyField& xi);  // xi a vector field
PolyField pi0(const TractorSection& t);

// Flat tractor connections along the coordinate direction c (Schouten tensor zero).
TractorSection nabla(const FlatContext& ctx, const TractorSection& t, std::size_t c);
bool is_parallel(const FlatContext& ctx, const TractorSection& t);

// An adjoint tractor realized as a skew (n+2)x(n+2) matrix on the standard tractor coordinates:
// A = alpha xi_a [phi_a ^ sigma] + beta mu_ab [phi_a ^ phi_b] + gamma nu [rho ^ sigma] + delta top_a [rho ^ phi_a].
struct AdjointEmbedding {
  Scalar alpha, beta, gamma, delta;
  std::size_t solution_dimension = 0;
};
// Coefficients making every L0_A(xi), xi in `ckf`, parallel for the Λ² connection, normalized by alpha = 1.
// Throws SolverError unless they are unique up to scale with alpha != 0.
AdjointEmbedding solve_adjoint_embedding(const FlatContext& ctx, const std::vector<PolyField>& ckf);
std::vector<std::vector<Poly>> adjoint_matrix(const FlatContext& ctx, const TractorSection& a, const AdjointEmbedding& e);
bool adjoint_is_parallel(const FlatContext& ctx, const TractorSection& a, const AdjointEmbedding& e);

// s.(tau, chi) = (-phi.tau - sqrt2 rho chi, phi.chi + sqrt2 sigma tau)
TractorSection tractor_clifford(const FlatContext& ctx, const TractorSection& s, const TractorSection& x);
// h = [[0,0,1],[0,g^{-1},0],[1,0,0]] on (rho, phi_a, sigma)
Poly tractor_metric(const FlatContext& ctx, const TractorSection& s, const TractorSection& t);
TractorSection constant_standard_tractor(const FlatContext& ctx, const Scalar& rho, const Vector& phi, const Scalar& sigma);
TractorSection spin_tractor(const PolyField& tau, const PolyField& chi);

// The parallel spin tractor through X0 = (tau0, chi0) at the origin: (tau0, chi0 - (1/sqrt2) x.tau0).
TractorSection parallel_spin_tractor(const FlatContext& ctx, const Vector& x0);
// chi(x) = chi0 - (1/sqrt2) x.tau0, no genericity requirement
PolyField parallel_twistor(const FlatContext& ctx, const Vector& chi0, const Vector& tau0);

class NullSeed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Same field; throws NullSeed if B(X, X) = 0 for X = (tau0, chi0).
PolyField generic_twistor(const FlatContext& ctx, const Vector& chi0, const Vector& tau0);
// The generic field from the distinguished pair chi = s_0, tau = s_last.
PolyField standard_generic_twistor(const FlatContext& ctx);

// Weight labels in halves
inline constexpr int kTwistorWeight = 1;
inline constexpr int kScaleWeight = 2;

}  // namespace gentwistor::flatmodel
