#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "engel/obstacles.hpp"

namespace engel {

/// Three pairwise distinct points of C.
struct TripleSet {
  std::array<GaussianRational, 3> elements;

  /// Throws std::invalid_argument unless the points are pairwise distinct.
  TripleSet(GaussianRational a, GaussianRational b, GaussianRational c);
  /// {0, 1, R i}; throws for R = 0.
  static TripleSet standard(const Rational& R);
};

/// h(zeta) = a zeta + b with h(S[k]) = S'[images[k]].
struct AffineWitness {
  GaussianRational a;
  GaussianRational b;
  /// Index of the bijection in lexicographic order, 0 for the identity.
  int permutation = 0;
  std::array<int, 3> images{0, 1, 2};

  GaussianRational operator()(const GaussianRational& z) const { return a * z + b; }
};

/// Tries the six bijections in lexicographic order; (a, b) comes from the
/// first two constraints and is accepted iff the third holds and a != 0.
std::optional<AffineWitness> affine_bijection_exists(const TripleSet& s, const TripleSet& t);

/// The witness for (t, s): h^-1(zeta) = (zeta - b) / a.
AffineWitness invert(const AffineWitness& w);

/// h is a bijection of s onto t under its stated permutation. Exact.
bool verify_witness(const AffineWitness& w, const TripleSet& s, const TripleSet& t);

/// x-coordinate of p (in C^4) is 0, 1 or R i. Throws for R = 0.
bool vr_membership(const Rational& R, const ExactPoint& p);
/// p in (C x {0, 1, R i}) u ({0} x C) in C^2. Throws for R = 0.
bool cr_membership(const Rational& R, const ExactPoint& p);

/// Floating-point membership for irrational R, up to relative tolerance tau;
/// never exact.
struct ApproxMembership {
  bool in = false;
  bool exact = false;
};
ApproxMembership vr_membership(double R, const FloatPoint& p, double tau = kMembershipTau);
ApproxMembership cr_membership(double R, const FloatPoint& p, double tau = kMembershipTau);

/// Ordered pairs R != R' over {1/2, 1, 3/2, 2, 3}: twenty pairs.
std::vector<std::pair<Rational, Rational>> moduli_grid();

}  // namespace engel
