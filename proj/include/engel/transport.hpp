#pragma once

#include <vector>

#include "engel/distcalc.hpp"
#include "engel/horizontal.hpp"
#include "engel/sampling.hpp"

namespace engel {

/// c -> c + term, with term free of c.
struct Shear {
  std::size_t target = 0;
  MultiPoly term;
};

/// Jacobian rows dF_i / dx_j.
PolyMatrix jacobian(const PolyMap& f);

/// A polynomial automorphism with its polynomial inverse.
///
/// Shear compositions carry their descriptors, applied in list order:
/// Phi = s_n o ... o s_1.
class PolyAutomorphism {
 public:
  /// Throws std::invalid_argument unless the maps are mutually inverse.
  PolyAutomorphism(PolyMap forward, PolyMap inverse);
  static PolyAutomorphism identity(const Ambient& ambient);

  const Ambient& ambient() const { return forward_.source(); }
  const PolyMap& forward() const { return forward_; }
  const PolyMap& inverse() const { return inverse_; }
  const std::vector<Shear>& shears() const { return shears_; }
  PolyMatrix jacobian() const { return engel::jacobian(forward_); }
  MultiPoly jacobian_determinant() const { return determinant(jacobian()); }

  /// this o inner.
  PolyAutomorphism after(const PolyAutomorphism& inner) const;

 private:
  PolyAutomorphism(PolyMap forward, PolyMap inverse, std::vector<Shear> shears);
  friend PolyAutomorphism make_shear(const Ambient&, std::size_t, const MultiPoly&);

  PolyMap forward_;
  PolyMap inverse_;
  std::vector<Shear> shears_;
};

/// Throws PreconditionError if term involves the target coordinate.
PolyAutomorphism make_shear(const Ambient& ambient, std::size_t target, const MultiPoly& term);
PolyAutomorphism make_shear(const Ambient& ambient, std::string_view target, const MultiPoly& term);
/// s_n o ... o s_1; the identity for an empty list.
PolyAutomorphism compose_shears(const Ambient& ambient, const std::vector<Shear>& shears);

/// (Phi^* X)(p) = D Phi(p)^-1 X(Phi(p)), with D Phi(p)^-1 = D(Phi^-1)(Phi(p)).
VectorField pullback_field(const PolyAutomorphism& phi, const VectorField& x);

/// Pulls back the D frame and rebuilds the flag with check_engel; the
/// pulled-back W must agree with the new characteristic line. Throws
/// std::runtime_error on a verification failure.
EngelFlag pullback_flag(const PolyAutomorphism& phi, const EngelFlag& flag);

/// {d/dz, d/dx + z d/dy} on (x, y, z).
DistributionFrame standard_contact_frame();
/// dy - z dx on (x, y, z).
DiffForm standard_contact_form();

enum class ProlongChart { Zero, Infinity };
std::string to_string(ProlongChart c);
/// Fiber coordinate name: "t" on chart 0, "s" on chart infinity.
std::string fiber_name(ProlongChart c);

/// Cartan prolongation of a contact plane field {C1, C2} = ker alpha on C^3:
/// {d/dt, C1 + t C2} on chart 0 and {d/ds, s C1 + C2} on chart infinity,
/// with the fiber coordinate appended to the ambient. Throws
/// PreconditionError when alpha ^ d alpha vanishes or the frame is not in
/// ker alpha.
DistributionFrame cartan_prolong(const DistributionFrame& contact, const DiffForm& alpha, ProlongChart chart);

/// The two chart frames span the same 2-plane at p (chart-0 coordinates,
/// t != 0), after the change s = 1/t. Exact.
bool charts_agree_at(const DistributionFrame& chart0, const DistributionFrame& chart_inf, const ExactPoint& p);

/// Random shear c -> c + a m with m a monomial of degree 1..degree free of c.
Shear random_shear(Rng& rng, const Ambient& ambient, int degree, int height);

/// Composition of `count` random shears, redrawn until forward and inverse
/// have total degree <= max_map_degree (chained shears multiply degrees).
PolyAutomorphism random_automorphism(Rng& rng, const Ambient& ambient, int count, int degree, int height,
                                     int max_map_degree = 8);

}  // namespace engel
