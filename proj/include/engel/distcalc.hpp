#pragma once

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "engel/linalg.hpp"
#include "engel/poly.hpp"

namespace engel {

/// Polynomial vector field sum_i X_i d/dx_i.
class VectorField {
 public:
  VectorField(Ambient ambient, std::vector<MultiPoly> components);
  static VectorField zero(const Ambient& ambient);
  /// d/dx_i.
  static VectorField coordinate(const Ambient& ambient, std::size_t i);
  static VectorField coordinate(const Ambient& ambient, std::string_view name);

  const Ambient& ambient() const { return ambient_; }
  std::size_t size() const { return comps_.size(); }
  const MultiPoly& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<MultiPoly>& components() const { return comps_; }
  bool is_zero() const;

  /// Directional derivative X(f).
  MultiPoly apply(const MultiPoly& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const MultiPoly& f, const VectorField& x);
  friend VectorField operator*(const GaussianRational& c, const VectorField& x);
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.ambient_ == b.ambient_ && a.comps_ == b.comps_;
  }

  template <typename Scalar>
  VectorX<Scalar> evaluate(const VectorX<Scalar>& point) const {
    VectorX<Scalar> out(static_cast<Eigen::Index>(comps_.size()));
    for (std::size_t i = 0; i < comps_.size(); ++i) out(static_cast<Eigen::Index>(i)) = engel::evaluate(comps_[i], point);
    return out;
  }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const VectorField& v) { return os << v.str(); }

 private:
  Ambient ambient_;
  std::vector<MultiPoly> comps_;
};

/// Strictly increasing list of coordinate indices (dx_{i1} ^ ... ^ dx_{ik}).
using FormIndex = std::vector<int>;

/// Differential k-form with polynomial coefficients.
class DiffForm {
 public:
  DiffForm(Ambient ambient, int degree);
  /// The 0-form f.
  static DiffForm function(const MultiPoly& f);
  /// dx_i.
  static DiffForm coordinate(const Ambient& ambient, std::size_t i);
  static DiffForm coordinate(const Ambient& ambient, std::string_view name);
  /// sum_i a_i dx_i.
  static DiffForm one_form(const Ambient& ambient, const std::vector<MultiPoly>& coefficients);

  const Ambient& ambient() const { return ambient_; }
  int degree() const { return degree_; }
  const std::map<FormIndex, MultiPoly>& coefficients() const { return coeffs_; }
  MultiPoly coefficient(const FormIndex& index) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Adds f to the coefficient of `index` (which must be strictly increasing).
  void add(const FormIndex& index, const MultiPoly& f);

  /// Coefficient vector of a 1-form, in ambient order.
  std::vector<MultiPoly> one_form_coefficients() const;

  DiffForm operator-() const;
  friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator*(const MultiPoly& f, const DiffForm& w);
  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.ambient_ == b.ambient_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const DiffForm& v) { return os << v.str(); }

 private:
  Ambient ambient_;
  int degree_;
  std::map<FormIndex, MultiPoly> coeffs_;
};

VectorField lie_bracket(const VectorField& x, const VectorField& y);
DiffForm exterior_derivative(const DiffForm& w);
/// Contraction in the first slot.
DiffForm interior_product(const VectorField& x, const DiffForm& w);
DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// w(X) for a 1-form w, as a polynomial.
MultiPoly pair(const DiffForm& w, const VectorField& x);

/// Rows are vectors with polynomial entries; used for generic-rank questions.
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Symbolic determinant by cofactor expansion (square, small).
MultiPoly determinant(const PolyMatrix& m);

/// Generic rank over the field of rational functions, together with rows
/// and columns of a minor that is symbolically nonzero.
///
/// The rank is read off at pseudorandom small-height rational points; the
/// lower bound is certified by the nonzero minor, the upper bound by checking
/// that every bordering minor vanishes identically.
PivotSelection generic_pivots(const PolyMatrix& rows);
int generic_rank(const PolyMatrix& rows);
int generic_rank(std::span<const VectorField> fields);

/// X lies in the span of `frame` over rational functions.
bool in_span(const VectorField& x, std::span<const VectorField> frame);

/// A frame of polynomial vector fields with a verified generic rank.
class DistributionFrame {
 public:
  /// Throws std::invalid_argument when the generic rank differs from
  /// claimed_rank.
  DistributionFrame(std::vector<VectorField> fields, int claimed_rank);

  const Ambient& ambient() const { return fields_.front().ambient(); }
  const std::vector<VectorField>& fields() const { return fields_; }
  int rank() const { return rank_; }

 private:
  std::vector<VectorField> fields_;
  int rank_;
};

/// 1-form annihilating n-1 independent fields in dimension n: coefficient j
/// is (-1)^j times the minor with column j removed.
DiffForm annihilator(std::span<const VectorField> fields);

/// Scales to unit content: divides out the gcd of the components and makes
/// the leading coefficient of the first nonzero component equal to one.
VectorField normalize(const VectorField& x);
DiffForm normalize(const DiffForm& w);

/// [E, E] spans the tangent space and E has rank 3 (ambient dimension 4).
bool check_even_contact(const DistributionFrame& e);

/// The unique line W in E with [W, E] in E, found as the solution of
/// iota_W d(alpha) ^ alpha = 0, alpha(W) = 0 for a defining form alpha of E.
/// The bracket condition is verified afterwards. Throws std::runtime_error
/// if no unique line exists.
VectorField characteristic_line_field(const DistributionFrame& e);

struct EngelFlag {
  VectorField w;
  DistributionFrame d;
  DistributionFrame e;
  /// Two independent 1-forms annihilating D.
  std::vector<DiffForm> d_forms;
  /// The 1-form annihilating E.
  DiffForm e_form;
};

struct EngelFailure {
  std::string stage;
  std::string detail;
};

using EngelCheck = std::variant<EngelFlag, EngelFailure>;

/// Builds the flag W < D < E from a rank-2 frame or reports the failing stage
/// ("rank-3", "rank-4", "characteristic", "W-in-D").
EngelCheck check_engel(const DistributionFrame& d);

/// Frame {d/dw, d/dx + z d/dy + w d/dz} of the standard Engel structure.
DistributionFrame standard_engel_frame();

}  // namespace engel
