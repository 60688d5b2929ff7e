#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gentwistor/flatmodel.hpp"

namespace gentwistor::distributions {

using exalg::Matrix;
using exalg::Scalar;
using exalg::Vector;
using flatmodel::FlatContext;
using flatmodel::Poly;
using flatmodel::PolyField;
using Point = std::vector<Scalar>;

class OutsideCell : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ker gamma(chi) as polynomial vector fields on the cell {minor != 0}.
struct DistributionField {
  int p = 0, q = 0;
  std::size_t rank = 0;
  std::vector<PolyField> frame;
  Poly minor;
  bool generic_at_origin = false;  // b(chi, companion) != 0 at x = 0

  bool in_cell(const Point& x) const { return !minor.evaluate(x).is_zero(); }
};

// Frame by Cramer's rule on a nonzero minor of [gamma_a chi](0).
DistributionField distribution_from_spinor(const FlatContext& ctx, const PolyField& chi);
// gamma(v).chi == 0 as polynomials for every frame vector
bool frame_annihilates(const FlatContext& ctx, const DistributionField& d, const PolyField& chi);

PolyField lie_bracket(const PolyField& x, const PolyField& y);

// Ranks of D, D + [D,D], D + [D,D] + [D,[D,D]] at x, stopping once the full tangent space is reached.
std::vector<std::size_t> growth_vector(const DistributionField& d, const Point& x);

// Fixed small-integer sample points, x = 0 first.
std::vector<Point> sample_points(std::size_t n);

// [xi, e](x) lies in D(x) for every frame field e
bool preserves(const DistributionField& d, const PolyField& xi, const Point& x);

struct FrameCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct AdaptedFrame {
  Point x;
  Vector chi, tau;
  std::vector<Vector> e, f;
  std::optional<Vector> r;  // (2,3) only
  // ½ e1 e2 tau = c_e chi and ½ f1 f2 chi = c_f tau in (2,3); without the ½ in (3,3)
  Scalar c_e, c_f;
  std::vector<FrameCheck> checks;
  bool all_hold() const;
  std::vector<std::string> failures() const;
};

// Kernels of chi(x) and tau(x), f dual to e under g, r on the orthogonal line with r.chi = chi,
// and e1 rescaled so that the e-relation holds with coefficient 1.
AdaptedFrame adapted_frame(const FlatContext& ctx, const PolyField& chi, const Point& x);

// b(xi.chi, tau) = k_r g(xi, r) for all xi and b(xi.chi, eta.tau) = k_eta g(xi, eta) for eta in D
struct PairingConstants {
  std::optional<Scalar> k_r;    // (2,3) only
  std::optional<Scalar> k_eta;  // empty if not proportional
};
PairingConstants pairing_constants(const FlatContext& ctx, const AdaptedFrame& fr);

struct BracketReport {
  bool e1e2_orthogonal_to_D = false;  // g([e1,e2], eta) = 0, eta in D
  bool e1e2_multiple_of_r = false;    // [e1,e2] in D + R r
  Scalar g_e1e2_r;                    // g([e1,e2], r)
  Scalar e1e2_mod_D;                  // [e1,e2] = k r mod D
  // [e_i, r] mod D^1 = sum_j coeff[i][j] f_j
  std::vector<Vector> ei_r_mod_D1;
  Scalar reference_g_e1e2_r, reference_e1e2_mod_D;
  std::vector<Vector> reference_ei_r_mod_D1;
};
// (2,3): the constants of the bracket relations at x, computed from the polynomial frame through the
// tensorial Levi brackets D x D -> TM/D and D x D^1/D -> TM/D^1.
BracketReport bracket_relations_report(const FlatContext& ctx, const PolyField& chi, const Point& x);

}  // namespace gentwistor::distributions
