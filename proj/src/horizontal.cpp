#include "engel/horizontal.hpp"

namespace engel {

std::string to_string(TangencyModel m) {
  switch (m) {
    case TangencyModel::WStandard:
      return "W-of-standard";
    case TangencyModel::DStandard:
      return "D-of-standard";
    case TangencyModel::EStandard:
      return "E-of-standard";
    case TangencyModel::General:
      return "general";
  }
  return "unknown";
}

HorizontalDisc make_disc(PolyCurve curve, TangencyModel model) {
  ExactPoint base = curve.basepoint();
  const bool degenerate = curve.is_constant();
  return {std::move(curve), model, std::move(base), degenerate};
}

std::vector<DiffForm> standard_d_forms() {
  const Ambient& a = standard_ambient();
  const MultiPoly one = MultiPoly::constant(a, 1), zero(a);
  const MultiPoly w = MultiPoly::variable(a, "w"), z = MultiPoly::variable(a, "z");
  return {DiffForm::one_form(a, {zero, -z, one, zero}), DiffForm::one_form(a, {zero, -w, zero, one})};
}

DiffForm standard_e_form() { return standard_d_forms().front(); }

std::vector<DiffForm> standard_w_forms() {
  const Ambient& a = standard_ambient();
  return {DiffForm::coordinate(a, "x"), DiffForm::coordinate(a, "y"), DiffForm::coordinate(a, "z")};
}

std::vector<DiffForm> forms_for(TangencyModel m) {
  switch (m) {
    case TangencyModel::WStandard:
      return standard_w_forms();
    case TangencyModel::DStandard:
      return standard_d_forms();
    case TangencyModel::EStandard:
      return {standard_e_form()};
    case TangencyModel::General:
      break;
  }
  throw std::invalid_argument("forms_for: general model has no fixed forms");
}

HorizontalDisc integrate_horizontal_D(const UPoly& w, const UPoly& x, const GaussianRational& y0,
                                      const GaussianRational& z0) {
  const UPoly dx = x.derivative();
  const UPoly z = UPoly::constant(z0) + antiderivative_zeta(w * dx);
  const UPoly y = UPoly::constant(y0) + antiderivative_zeta(z * dx);
  return make_disc(PolyCurve(standard_ambient(), {w, x, y, z}), TangencyModel::DStandard);
}

HorizontalDisc integrate_horizontal_E(const UPoly& w, const UPoly& x, const UPoly& z, const GaussianRational& y0) {
  const UPoly y = UPoly::constant(y0) + antiderivative_zeta(z * x.derivative());
  return make_disc(PolyCurve(standard_ambient(), {w, x, y, z}), TangencyModel::EStandard);
}

namespace {

void require_standard_vector(const ExactPoint& v, const char* what) {
  if (v.size() != 4) throw PreconditionError(std::string(what) + " must have 4 coordinates (w,x,y,z)");
}

}  // namespace

bool in_standard_d(const ExactPoint& p, const ExactPoint& v) {
  require_standard_vector(p, "point");
  require_standard_vector(v, "vector");
  return v(2) == p(3) * v(1) && v(3) == p(0) * v(1);
}

HorizontalDisc remark_line(const ExactPoint& p, const ExactPoint& v) {
  require_standard_vector(p, "point");
  require_standard_vector(v, "vector");
  const auto &w0 = p(0), &x0 = p(1), &y0 = p(2), &z0 = p(3);
  const auto &vw = v(0), &vx = v(1), &vy = v(2), &vz = v(3);
  if (vz != w0 * vx) throw PreconditionError("v not in D_p: v_z = w0*v_x violated");
  if (vy != z0 * vx) throw PreconditionError("v not in D_p: v_y = z0*v_x violated");

  const GaussianRational half(Rational(1, 2)), sixth(Rational(1, 6));
  UPoly w({w0, vw});
  UPoly x({x0, vx});
  UPoly y({y0, vy, vx * vz * half, vx * vx * vw * sixth});
  UPoly z({z0, vz, vx * vw * half});
  return make_disc(PolyCurve(standard_ambient(), {std::move(w), std::move(x), std::move(y), std::move(z)}),
                   TangencyModel::DStandard);
}

TangencyReport verify_tangency(const PolyCurve& curve, std::span<const DiffForm> forms) {
  TangencyReport report;
  const PolyCurve velocity = curve.derivative();
  for (const auto& form : forms) {
    if (form.degree() != 1) throw std::invalid_argument("verify_tangency: forms must have degree 1");
    const Ambient& amb = form.ambient();
    UPoly residual;
    for (const auto& [idx, coef] : form.coefficients()) {
      const std::string& name = amb.name(static_cast<std::size_t>(idx[0]));
      residual += compose_curve(coef, curve) * velocity.component(name);
    }
    if (!residual.is_zero()) report.tangent = false;
    report.residuals.push_back(std::move(residual));
  }
  return report;
}

PolyCurve project_prolongation(const PolyCurve& curve) {
  const Ambient& amb = curve.ambient();
  auto fiber = amb.index_of("t");
  if (!fiber) fiber = amb.index_of("s");
  if (!fiber) throw AmbientError("project_prolongation: curve has no fiber coordinate t or s");
  std::vector<std::string> names;
  std::vector<UPoly> comps;
  for (std::size_t i = 0; i < amb.size(); ++i) {
    if (i == *fiber) continue;
    names.push_back(amb.name(i));
    comps.push_back(curve[i]);
  }
  return {Ambient(std::move(names)), std::move(comps)};
}

}  // namespace engel
