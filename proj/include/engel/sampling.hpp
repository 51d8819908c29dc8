#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "engel/distcalc.hpp"
#include "engel/poly.hpp"

namespace engel {

using Rng = std::mt19937_64;

/// Independent stream for a named suite: the master seed and the name are
/// mixed through std::seed_seq, so adding a suite never shifts another.
Rng stream(std::uint64_t seed, std::string_view name);

/// Stream for sample `index` of a suite; lets samples run in any order.
Rng substream(std::uint64_t seed, std::string_view name, std::uint64_t index);

/// p/q with |p| <= height, 1 <= q <= height.
Rational random_rational(Rng& rng, int height);
GaussianRational random_gaussian(Rng& rng, int height);
/// Nonzero with probability one; retried until nonzero.
GaussianRational random_nonzero_gaussian(Rng& rng, int height);
ExactPoint random_point(Rng& rng, std::size_t n, int height);

UPoly random_upoly(Rng& rng, int degree, int height);
/// Degree exactly `degree` (nonzero leading coefficient).
UPoly random_upoly_exact_degree(Rng& rng, int degree, int height);

/// Up to `terms` random monomials of total degree <= degree.
MultiPoly random_multipoly(Rng& rng, const Ambient& ambient, int degree, int terms, int height);
VectorField random_field(Rng& rng, const Ambient& ambient, int degree, int terms, int height);
DiffForm random_one_form(Rng& rng, const Ambient& ambient, int degree, int terms, int height);

/// Random exact point p and v in D_p for the standard structure.
struct PointDirection {
  ExactPoint p;
  ExactPoint v;
};
PointDirection random_d_direction(Rng& rng, int height);

}  // namespace engel
