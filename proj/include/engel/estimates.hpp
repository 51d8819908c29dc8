#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "engel/obstacles.hpp"
#include "engel/sampling.hpp"

namespace engel {

/// Complement of A or of B: selects the threshold set of the lemma.
enum class LemmaModel { A, B };

std::string to_string(LemmaModel m);
LemmaModel parse_lemma_model(std::string_view name);
ShellSet obstacle_for(LemmaModel m);

/// M / rho: the derivative bound at the center of a rho-circle on which the
/// function is bounded by M.
double cauchy_derivative_bound(double M, double rho);

/// Least N0 >= 1 with p in the open polydisc 2^N0 D^n.
int minimal_n0(const ExactPoint& p);

/// Exponents t_k of the strict bounds |f_k'(0)| < 2^t_k, in (w, x, y, z)
/// order: B gives (N0+1, N0+1, 3N0+2, 2N0+1), A gives (N0+1, N0+1, 2N0+1, N0+1).
std::array<int, 4> lemma_thresholds(LemmaModel m, int n0);

struct LemmaBound {
  std::string coordinate;
  double observed = 0.0;
  int threshold_exponent = 0;
  bool pass = false;
};

struct LemmaVerdict {
  int n0 = 0;
  std::array<LemmaBound, 4> bounds;
  bool pass = false;
};

/// Reads f'(0) off the curve coefficients and compares exactly against the
/// thresholds. Checks f(0) in 2^N0 D^4 and D-tangency; avoidance is the
/// caller's responsibility (see lemma_B_verdict).
LemmaVerdict lemma_verdict_unchecked(const HorizontalDisc& disc, int n0, LemmaModel m);

/// Full pipeline: the disc must be certified to avoid S on the closed unit
/// disc. Throws PreconditionError naming the broken hypothesis.
LemmaVerdict lemma_B_verdict(const HorizontalDisc& disc, int n0, const ShellSet& s);
LemmaVerdict lemma_A_verdict(const HorizontalDisc& disc, int n0, const ShellSet& s);

/// Lower bound for the directed Finsler pseudo-metric from the lemma
/// thresholds. The value is max_k |v_k| / 2^t_k; it is kept exactly through
/// its square, which is rational.
struct FinslerLower {
  ExactPoint point;
  ExactPoint direction;
  int n0 = 0;
  Rational value_squared{0};
  /// The value itself when value_squared is the square of a rational.
  std::optional<Rational> exact;
  double value() const;
};

/// N0 is the least admissible exponent; v must lie in D_p.
FinslerLower finsler_lower_bound(const ExactPoint& p, const ExactPoint& v, LemmaModel m);
/// With an explicit N0; throws unless p lies in 2^N0 D^4.
FinslerLower finsler_lower_bound(const ExactPoint& p, const ExactPoint& v, LemmaModel m, int n0);

/// Sufficient test for injectivity on the closed unit disc: some coordinate
/// has |a_1| > sum_{k>=2} k |a_k|, so its derivative stays in a half-plane.
bool certified_injective(const PolyCurve& curve);

enum class DiscRegime { SubShell, Crossing };
std::string to_string(DiscRegime r);

/// Horizontal disc samplers covering both admissible regimes.
///
/// SubShell: the block coordinates have exact coefficient l1-sum below the
/// first shell radius. Crossing: the block runs through shells while a
/// capped coordinate stays above every reachable cap, bounded below by
/// |c(0)| minus the coefficient sum of its primitive.
HorizontalDisc sample_disc(Rng& rng, LemmaModel m, DiscRegime regime, int degree);

struct LemmaSample {
  std::uint64_t index = 0;
  DiscRegime regime = DiscRegime::SubShell;
  /// False when no attempt was certified; the verdict is then empty.
  bool certified = false;
  bool injective = false;
  int attempts = 0;
  HorizontalDisc disc;
  LemmaVerdict verdict;
};

struct LemmaSuiteResult {
  LemmaModel model = LemmaModel::B;
  std::uint64_t seed = 0;
  int degree = 0;
  std::vector<LemmaSample> samples;
  int counterexamples = 0;
  int injective = 0;
  int injective_counterexamples = 0;
  /// Samples whose certification failed on every attempt.
  int uncertified = 0;
};

/// Samples are indexed substreams of the seed, so the result does not
/// depend on the thread count.
LemmaSuiteResult run_lemma_suite(LemmaModel m, int samples, std::uint64_t seed, int degree = 4);

}  // namespace engel
