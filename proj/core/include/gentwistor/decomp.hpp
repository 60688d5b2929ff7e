#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gentwistor/distributions.hpp"

namespace gentwistor::decomp {

using distributions::Point;
using exalg::Scalar;
using exalg::Vector;
using flatmodel::FlatContext;
using flatmodel::KernelBasis;
using flatmodel::Poly;
using flatmodel::PolyField;

// D_[a xi_b] as a 2-form, xi a vector field
PolyField skew_derivative(const FlatContext& ctx, const PolyField& xi);
// w.chi = sum_{a<b} w_ab ½(gamma^a gamma^b - gamma^b gamma^a) chi
PolyField two_form_action(const FlatContext& ctx, const PolyField& form, const PolyField& spinor);

// b(eta, Dslash chi) + b(chi, Dslash eta)
Poly perp_defect(const FlatContext& ctx, const PolyField& eta, const PolyField& chi);

struct TwPerpSpace {
  PolyField chi;
  std::size_t twistor_dim = 0;
  std::vector<PolyField> basis;
};
// twistors: the twistor solutions ((2,3)) or positive twistor solutions ((3,3))
TwPerpSpace tw_perp(const FlatContext& ctx, const PolyField& chi, const std::vector<PolyField>& twistors);

// Coefficients of the correspondence maps. The printed values depend on sign conventions, so the
// maps take them as parameters and resolve_constants fixes them by requiring each map to land in
// its target solution space.
struct MapConstants {
  Scalar aes_twistor;     // sigma Dslash chi in the aes -> twistor map
  Scalar ckf_dirac;       // xi.Dslash chi in the ckf forward map
  Scalar ckf_divergence;  // (D^p xi_p) chi in the (3,3) ckf forward map
};
// (2/5, -4/5, 0) in (2,3); (1/3, -2/3, 0) in (3,3), where the divergence term is not printed
MapConstants printed_constants(const FlatContext& ctx);

// (2,3)
PolyField aes_to_twistor23(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi, const MapConstants& k);
PolyField twistor_to_aes23(const FlatContext& ctx, const PolyField& eta, const PolyField& chi);
// b(chi, k xi.Dslash chi + (D_[a xi_b]).chi)
PolyField ckf_to_aes23(const FlatContext& ctx, const PolyField& xi, const PolyField& chi, const MapConstants& k);
// xi_a = b(gamma_a chi, aes_to_twistor23(sigma)), raised
PolyField aes_to_ckf23(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi, const MapConstants& k);

// (3,3)
PolyField aes_to_negative_twistor33(const FlatContext& ctx, const PolyField& sigma, const PolyField& chi,
                                    const MapConstants& k);
PolyField negative_twistor_to_aes33(const FlatContext& ctx, const PolyField& eta, const PolyField& chi);
// k xi.Dslash chi + (D_[a xi_b]).chi + k' (D^p xi_p) chi
PolyField ckf_to_twistor33(const FlatContext& ctx, const PolyField& xi, const PolyField& chi, const MapConstants& k);
// xi_a = b(chi, gamma_a eta), raised
PolyField twistor_to_ckf33(const FlatContext& ctx, const PolyField& eta, const PolyField& chi);

// t with fixed[i] + sum_j t_j moving[j][i] = 0 for every i, if unique
std::optional<Vector> solve_affine(const std::vector<PolyField>& fixed, const std::vector<std::vector<PolyField>>& moving);

struct ConstantResolution {
  MapConstants printed, resolved;
  bool aes_unique = false, ckf_unique = false;
  bool printed_aes_lands = false, printed_ckf_lands = false;
  // (3,3): the divergence coefficient that works together with the printed ckf_dirac, if any
  std::optional<Scalar> printed_divergence;
  bool solved() const { return aes_unique && ckf_unique; }
  // delta xi = delta_factor D^p xi_p under the printed (1/6)(delta xi)
  Scalar delta_factor() const { return Scalar(6) * resolved.ckf_divergence; }
  // The printed values come back after Dslash -> -Dslash and w.chi -> sum_{a,b} w_ab gamma^a gamma^b chi:
  // aes_twistor flips sign, ckf_dirac becomes -2x the resolved one.
  bool printed_after_convention_change() const {
    return solved() && printed.aes_twistor == -resolved.aes_twistor && printed.ckf_dirac == Scalar(-2) * resolved.ckf_dirac;
  }
};
ConstantResolution resolve_constants(const FlatContext& ctx, const PolyField& chi, const std::vector<PolyField>& aes,
                                     const std::vector<PolyField>& ckf);

using FieldMap = std::function<PolyField(const PolyField&)>;

// back(forth(s)) = c s for every s in `source`, with one common c
struct Roundtrip {
  std::size_t checked = 0;
  std::optional<Scalar> constant;  // empty if not a common multiple of the identity
  bool nonzero() const { return constant && !constant->is_zero(); }
};
Roundtrip roundtrip(const std::vector<PolyField>& source, const FieldMap& forth, const FieldMap& back);

// Whether every image lies in the span of `target`.
bool lands_in(const std::vector<PolyField>& source, const FieldMap& map, const std::vector<PolyField>& target);

// xi_aut = xi - back(forward(xi)) / c
struct CkfSplit {
  PolyField aut;
  PolyField complement;  // forward(xi): an aes in (2,3), a Tw-perp twistor in (3,3)
};

struct CkfDecomposition {
  Scalar c;  // forward(back(s)) = c s on the complement space
  std::size_t ckf_dim = 0, aut_rank = 0, complement_rank = 0, sum_rank = 0;
  bool aut_preserves_distribution = false;  // at every sample point
  bool forward_kills_aut = false;
  // automorphisms found independently: ckf fields whose brackets with the frame stay in D at the sample points
  std::size_t automorphism_dim = 0;
  bool automorphisms_fixed = false;  // forward = 0 and xi_aut = xi on them
  bool direct() const { return aut_rank + complement_rank == ckf_dim && sum_rank == ckf_dim; }
};

struct Decomposer {
  const FlatContext& ctx;
  PolyField chi;
  MapConstants constants;
  FieldMap forward() const;
  FieldMap back() const;
  CkfSplit split(const PolyField& xi, const Scalar& c) const;
};

CkfDecomposition decompose_ckf_space(const Decomposer& d, const std::vector<PolyField>& ckf,
                                     const std::vector<PolyField>& complement_space);

// Infinitesimal automorphisms of D among the given ckf basis, tested at the sample points.
std::vector<PolyField> automorphisms(const FlatContext& ctx, const distributions::DistributionField& dist,
                                     const std::vector<PolyField>& ckf);

// phi_2 = b(chi, gamma_[a gamma_b] chi) in (2,3), phi_3 = b(chi, gamma_[a gamma_b gamma_c] chi) in (3,3)
struct NCKForm {
  std::size_t k = 0;
  PolyField form;
};
NCKForm nck_form(const FlatContext& ctx, const PolyField& chi);

// component of an alternating form on an arbitrary index tuple
Scalar form_value(const PolyField& form, const std::vector<std::size_t>& idx, const Point& x);
bool plucker_holds(const PolyField& form, const Point& x);
std::vector<Vector> insertion_kernel(const PolyField& form, const Point& x);

struct NckPointReport {
  Point x;
  bool nonzero = false;
  bool decomposable = false;
  std::size_t kernel_dim = 0;
  bool kernel_equals_D = false;   // (3,3)
  bool radical_equals_D = false;  // (2,3): radical of g on the kernel, informational
};
NckPointReport nck_point_report(const FlatContext& ctx, const NCKForm& f, const distributions::DistributionField& dist,
                                const Point& x);

}  // namespace gentwistor::decomp
