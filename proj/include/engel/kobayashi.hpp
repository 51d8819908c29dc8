#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "engel/estimates.hpp"
#include "engel/obstacles.hpp"
#include "engel/steering.hpp"

namespace engel {

struct SearchConfig {
  /// Degree budget of w and x.
  int degree = 4;
  int restarts = 8;
  /// Simplex iterations per restart.
  int iterations = 100;
  std::uint64_t seed = 0x5eed;
  /// Simplex size at which a restart stops.
  double shrink_tolerance = 1e-4;
  /// Grid cap handed to disc_avoids.
  int max_grid = 64;
  /// Budget on the derivative modulus |f'(0)| in the normalized direction.
  double mu_cap = 1048576.0;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

struct DiscSearchResult {
  /// 1/|lambda| of the best certified witness; +infinity when none was found.
  double upper = std::numeric_limits<double>::infinity();
  std::optional<HorizontalDisc> witness;
  /// f'(0) = lambda v.
  GaussianRational lambda;
  int feasible_restarts = 0;
  /// Certification calls across all restarts.
  long evaluations = 0;
  std::string diagnostic;
};

/// Local search over horizontal polynomial discs with f(0) = p and
/// f'(0) = lambda v, maximizing |lambda| subject to disc_avoids(S, f, 1)
/// being Certified. The search runs in the direction v / |v| with a
/// canonical phase, so v and c v share their search. Restarts run
/// concurrently on indexed substreams of cfg.seed.
/// Throws PreconditionError for v = 0 or v not in D_p.
DiscSearchResult extremal_disc_search(const ExactPoint& p, const ExactPoint& v, const ShellSet& s,
                                      const SearchConfig& cfg = {});

struct FinslerBound {
  ExactPoint point;
  ExactPoint direction;
  FinslerLower lower;
  double upper = std::numeric_limits<double>::infinity();
  std::optional<HorizontalDisc> witness;
  GaussianRational lambda;
  SearchConfig config;
  std::string diagnostic;
};

/// Lemma model whose complement S is; throws for kinds other than A and B.
LemmaModel lemma_model_for(const ShellSet& s);

/// Lower bound from the lemma constants and upper bound from the search.
/// Throws std::logic_error if lower exceeds upper by more than 1e-12.
FinslerBound finsler_report(const ExactPoint& p, const ExactPoint& v, const ShellSet& s, const SearchConfig& cfg = {});

enum class Estimator { Lower, Upper };

/// Composite Simpson rule with n (even) intervals per segment of the
/// pointwise estimator F(gamma(t), gamma'(t)). Lower needs S of kind A or B.
/// Throws PreconditionError for a non-tangent path.
double path_finsler_length(const HorizontalPath& path, Estimator e, const ShellSet& s, int n = 128,
                           const SearchConfig& cfg = {});

/// Upper estimator along hermite_steer(p, q): a heuristic bound for the
/// directed distance, since it measures one path.
double directed_distance_upper(const ExactPoint& p, const ExactPoint& q, const ShellSet& s, int n = 128,
                               const SearchConfig& cfg = {});

}  // namespace engel
