#include "engel/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "engel/parallel.hpp"

namespace engel {

namespace {

constexpr std::array<const char*, 4> kCoordNames = {"w", "x", "y", "z"};

/// Sum of |re| + |im| over the coefficients: an exact upper bound for the
/// sup of |u| on the closed unit disc.
Rational l1(const UPoly& u) {
  Rational s = 0;
  for (const auto& c : u.coeffs()) s += c.abs_l1();
  return s;
}

/// Exact rational square root, when there is one.
std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  return Rational(a, b);
}

void require_in_polydisc(const ExactPoint& p, int n0) {
  for (Eigen::Index k = 0; k < p.size(); ++k)
    if (cmp_abs_to_dyadic(p(k), n0) != std::strong_ordering::less)
      throw PreconditionError("f(0) not in 2^" + std::to_string(n0) + " D^4: |" + kCoordNames[k] +
                              "(0)| >= 2^" + std::to_string(n0));
}

/// Largest layer i >= 0 whose block radius 2^(i-1) is at most u.
int reachable_layer(const Rational& u) {
  int i = 0;
  while (dyadic(i) <= u) ++i;
  return i;
}

const std::array<GaussianRational, 8> kPhases = {
    GaussianRational(1),  GaussianRational(0, 1), GaussianRational(-1), GaussianRational(0, -1),
    GaussianRational(Rational(3, 5), Rational(4, 5)),   GaussianRational(Rational(-4, 5), Rational(3, 5)),
    GaussianRational(Rational(5, 13), Rational(-12, 13)), GaussianRational(Rational(-8, 17), Rational(-15, 17))};

/// A point of modulus exactly `modulus` in a random exact phase.
GaussianRational with_phase(Rng& rng, const Rational& modulus) {
  std::uniform_int_distribution<std::size_t> pick(0, kPhases.size() - 1);
  return kPhases[pick(rng)] * GaussianRational(modulus);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random polynomial with l1-sum exactly `target` (or zero).
UPoly scaled_to(Rng& rng, int degree, const Rational& target) {
  UPoly u = random_upoly(rng, degree, 9);
  const Rational s = l1(u);
  if (s == 0) return u;
  return u * GaussianRational(target / s);
}

/// Random rational in [lo, hi] on a grid of step (hi - lo) / 64.
Rational random_between(Rng& rng, const Rational& lo, const Rational& hi) {
  return lo + (hi - lo) * Rational(uniform_int(rng, 0, 64), 64);
}

GaussianRational free_constant(Rng& rng) { return random_gaussian(rng, 9) * GaussianRational(dyadic(uniform_int(rng, -2, 6))); }

HorizontalDisc sub_shell_B(Rng& rng, int degree) {
  UPoly w = scaled_to(rng, uniform_int(rng, 0, degree), random_between(rng, Rational(1, 16), Rational(15, 16)));
  UPoly x = scaled_to(rng, uniform_int(rng, 1, degree), random_between(rng, Rational(1, 16), Rational(15, 16)));
  return integrate_horizontal_D(w, x, free_constant(rng), free_constant(rng));
}

HorizontalDisc sub_shell_A(Rng& rng, int degree) {
  // |w|, |x| <= 3/4 and |z| <= |z0| + l1(w) l1(x') <= 1/2 + 1/4 on the disc.
  UPoly x = scaled_to(rng, uniform_int(rng, 1, degree), random_between(rng, Rational(1, 16), Rational(3, 4)));
  const Rational dx = l1(x.derivative());
  Rational wcap = Rational(3, 4);
  if (dx > 0) wcap = std::min(wcap, Rational(Rational(1, 4) / dx));
  UPoly w = scaled_to(rng, uniform_int(rng, 0, degree), random_between(rng, Rational(0), wcap));
  const GaussianRational z0 = with_phase(rng, random_between(rng, Rational(0), Rational(1, 2)));
  return integrate_horizontal_D(w, x, free_constant(rng), z0);
}

HorizontalDisc crossing_B(Rng& rng, int degree) {
  const Rational scale = dyadic(uniform_int(rng, 0, 3));
  UPoly w = random_upoly(rng, uniform_int(rng, 0, degree), 9) * GaussianRational(scale);
  UPoly x = random_upoly(rng, uniform_int(rng, 1, degree), 9) * GaussianRational(scale);
  const int top = reachable_layer(std::max(l1(w), l1(x)));
  // z - z0 = int w x'; |z| >= |z0| - l1(z - z0) > e_top >= e_i for every reachable i.
  const Rational drift = l1(integrate_horizontal_D(w, x, 0, 0).curve[3]);
  const Rational modulus = dyadic(3 * top + 1) + drift + 1 + random_between(rng, Rational(0), Rational(8));
  return integrate_horizontal_D(w, x, free_constant(rng), with_phase(rng, modulus));
}

HorizontalDisc crossing_A(Rng& rng, int degree) {
  const Rational scale = dyadic(uniform_int(rng, 0, 3));
  UPoly w = random_upoly(rng, uniform_int(rng, 0, degree), 9) * GaussianRational(scale);
  UPoly x = random_upoly(rng, uniform_int(rng, 1, degree), 9) * GaussianRational(scale);
  const GaussianRational z0 = free_constant(rng);
  const PolyCurve base = integrate_horizontal_D(w, x, 0, z0).curve;
  const int top = reachable_layer(std::max({l1(w), l1(x), l1(base[3])}));
  // y - y0 = int z x'; |y| >= |y0| - l1(y - y0) > c_top.
  const Rational modulus = dyadic(3 * top + 1) + l1(base[2]) + 1 + random_between(rng, Rational(0), Rational(8));
  return integrate_horizontal_D(w, x, with_phase(rng, modulus), z0);
}

LemmaVerdict checked_verdict(const HorizontalDisc& disc, int n0, const ShellSet& s, ShellKind expected) {
  if (s.kind != expected)
    throw PreconditionError("obstacle must be of kind " + to_string(expected) + ", got " + to_string(s.kind));
  const AvoidResult avoid = disc_avoids(s, disc, 1.0);
  if (avoid.status != AvoidStatus::Certified)
    throw PreconditionError("disc not certified to avoid " + to_string(s.kind) + ": " + to_string(avoid.status));
  return lemma_verdict_unchecked(disc, n0, expected == ShellKind::A ? LemmaModel::A : LemmaModel::B);
}

}  // namespace

std::string to_string(LemmaModel m) { return m == LemmaModel::A ? "A" : "B"; }

LemmaModel parse_lemma_model(std::string_view name) {
  if (name == "A") return LemmaModel::A;
  if (name == "B") return LemmaModel::B;
  throw std::invalid_argument("unknown lemma model: " + std::string(name));
}

ShellSet obstacle_for(LemmaModel m) { return m == LemmaModel::A ? ShellSet::A() : ShellSet::B(); }

double cauchy_derivative_bound(double M, double rho) {
  if (!(rho > 0)) throw std::domain_error("cauchy_derivative_bound: rho must be positive");
  if (!(M >= 0)) throw std::domain_error("cauchy_derivative_bound: M must be nonnegative");
  return M / rho;
}

int minimal_n0(const ExactPoint& p) {
  int n0 = 1;
  for (Eigen::Index k = 0; k < p.size(); ++k)
    while (cmp_abs_to_dyadic(p(k), n0) != std::strong_ordering::less) ++n0;
  return n0;
}

std::array<int, 4> lemma_thresholds(LemmaModel m, int n0) {
  if (m == LemmaModel::B) return {n0 + 1, n0 + 1, 3 * n0 + 2, 2 * n0 + 1};
  return {n0 + 1, n0 + 1, 2 * n0 + 1, n0 + 1};
}

LemmaVerdict lemma_verdict_unchecked(const HorizontalDisc& disc, int n0, LemmaModel m) {
  if (disc.curve.size() != 4) throw PreconditionError("disc must live in C^4");
  if (disc.model != TangencyModel::DStandard) throw PreconditionError("disc must be tagged D-of-standard");
  const auto forms = standard_d_forms();
  if (!verify_tangency(disc.curve, forms).tangent) throw PreconditionError("disc not tangent to D");
  require_in_polydisc(disc.curve.basepoint(), n0);

  LemmaVerdict out;
  out.n0 = n0;
  out.pass = true;
  const auto t = lemma_thresholds(m, n0);
  for (std::size_t k = 0; k < 4; ++k) {
    const GaussianRational d = disc.curve[k].coeff(1);
    auto& b = out.bounds[k];
    b.coordinate = kCoordNames[k];
    b.observed = std::abs(d.to_complex());
    b.threshold_exponent = t[k];
    b.pass = cmp_abs_to_dyadic(d, t[k]) == std::strong_ordering::less;
    out.pass = out.pass && b.pass;
  }
  return out;
}

LemmaVerdict lemma_B_verdict(const HorizontalDisc& disc, int n0, const ShellSet& s) {
  return checked_verdict(disc, n0, s, ShellKind::B);
}

LemmaVerdict lemma_A_verdict(const HorizontalDisc& disc, int n0, const ShellSet& s) {
  return checked_verdict(disc, n0, s, ShellKind::A);
}

double FinslerLower::value() const { return std::sqrt(value_squared.get_d()); }

FinslerLower finsler_lower_bound(const ExactPoint& p, const ExactPoint& v, LemmaModel m) {
  return finsler_lower_bound(p, v, m, minimal_n0(p));
}

FinslerLower finsler_lower_bound(const ExactPoint& p, const ExactPoint& v, LemmaModel m, int n0) {
  if (p.size() != 4 || v.size() != 4) throw std::invalid_argument("finsler_lower_bound: point and direction must be in C^4");
  if (n0 < 1) throw PreconditionError("N0 must be at least 1");
  if (!in_standard_d(p, v)) throw PreconditionError("v not in D_p");
  require_in_polydisc(p, n0);
  FinslerLower out;
  out.point = p;
  out.direction = v;
  out.n0 = n0;
  const auto t = lemma_thresholds(m, n0);
  for (Eigen::Index k = 0; k < 4; ++k)
    out.value_squared = std::max(out.value_squared, Rational(v(k).abs2() / (dyadic(t[k]) * dyadic(t[k]))));
  out.exact = rational_sqrt(out.value_squared);
  return out;
}

bool certified_injective(const PolyCurve& curve) {
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const UPoly& u = curve[k];
    Rational tail = 0;
    for (int j = 2; j <= u.degree(); ++j) tail += j * u.coeff(j).abs_l1();
    if (u.coeff(1).abs2() > tail * tail) return true;
  }
  return false;
}

std::string to_string(DiscRegime r) { return r == DiscRegime::SubShell ? "sub-shell" : "crossing"; }

HorizontalDisc sample_disc(Rng& rng, LemmaModel m, DiscRegime regime, int degree) {
  if (degree < 1) throw std::invalid_argument("sample_disc: degree must be at least 1");
  if (regime == DiscRegime::SubShell) return m == LemmaModel::A ? sub_shell_A(rng, degree) : sub_shell_B(rng, degree);
  return m == LemmaModel::A ? crossing_A(rng, degree) : crossing_B(rng, degree);
}

LemmaSuiteResult run_lemma_suite(LemmaModel m, int samples, std::uint64_t seed, int degree) {
  constexpr int kAttempts = 8;
  LemmaSuiteResult out;
  out.model = m;
  out.seed = seed;
  out.degree = degree;
  out.samples.resize(static_cast<std::size_t>(std::max(samples, 0)));
  const ShellSet obstacle = obstacle_for(m);
  const std::string name = "lemma-" + to_string(m);

  parallel_for(out.samples.size(), [&](std::size_t i) {
    Rng rng = substream(seed, name, i);
    LemmaSample& s = out.samples[i];
    s.index = i;
    s.regime = i % 2 == 0 ? DiscRegime::SubShell : DiscRegime::Crossing;
    while (!s.certified && s.attempts < kAttempts) {
      ++s.attempts;
      s.disc = sample_disc(rng, m, s.regime, degree);
      s.certified = disc_avoids(obstacle, s.disc, 1.0).status == AvoidStatus::Certified;
    }
    if (!s.certified) return;
    s.injective = certified_injective(s.disc.curve);
    s.verdict = lemma_verdict_unchecked(s.disc, minimal_n0(s.disc.basepoint), m);
  });

  for (const LemmaSample& s : out.samples) {
    if (!s.certified) {
      ++out.uncertified;
      continue;
    }
    if (s.injective) ++out.injective;
    if (!s.verdict.pass) {
      ++out.counterexamples;
      if (s.injective) ++out.injective_counterexamples;
    }
  }
  return out;
}

}  // namespace engel
