#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "engel/distcalc.hpp"
#include "engel/poly.hpp"

namespace engel {

/// Which distribution a disc is tangent to.
enum class TangencyModel { WStandard, DStandard, EStandard, General };

std::string to_string(TangencyModel m);

/// Violated hypothesis of a construction, e.g. v not in D_p.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A polynomial disc with exact tangency to the tagged model.
///
/// Constant curves are representable (`degenerate`), since samplers need
/// them, but they are not lines.
struct HorizontalDisc {
  PolyCurve curve;
  TangencyModel model = TangencyModel::DStandard;
  ExactPoint basepoint;
  bool degenerate = false;
};

HorizontalDisc make_disc(PolyCurve curve, TangencyModel model);

/// dy - z dx and dz - w dx.
std::vector<DiffForm> standard_d_forms();
/// dy - z dx.
DiffForm standard_e_form();
/// dx, dy, dz.
std::vector<DiffForm> standard_w_forms();
std::vector<DiffForm> forms_for(TangencyModel m);

/// Solves y' = z x', z' = w x' by exact integration from (y0, z0).
HorizontalDisc integrate_horizontal_D(const UPoly& w, const UPoly& x, const GaussianRational& y0,
                                      const GaussianRational& z0);

/// Solves y' = z x' with w and z free.
HorizontalDisc integrate_horizontal_E(const UPoly& w, const UPoly& x, const UPoly& z, const GaussianRational& y0);

/// v lies in D at p: v_y = z0 v_x and v_z = w0 v_x.
bool in_standard_d(const ExactPoint& p, const ExactPoint& v);

/// The explicit cubic line through p with velocity v in D_p:
///   (w0 + v_w t, x0 + v_x t, y0 + v_y t + v_x v_z t^2/2 + v_x^2 v_w t^3/6,
///    z0 + v_z t + v_x v_w t^2/2).
/// Throws PreconditionError naming the violated relation.
HorizontalDisc remark_line(const ExactPoint& p, const ExactPoint& v);

struct TangencyReport {
  bool tangent = true;
  /// omega_k(f'(zeta)) for each form, in input order.
  std::vector<UPoly> residuals;
};

/// Substitutes the curve into each 1-form; tangent iff every residual is the
/// zero polynomial.
TangencyReport verify_tangency(const PolyCurve& curve, std::span<const DiffForm> forms);

/// Drops the fiber coordinate (named "t" or "s") of a prolongation chart.
PolyCurve project_prolongation(const PolyCurve& curve);

}  // namespace engel
