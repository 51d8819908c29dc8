#include "engel/kobayashi.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "engel/parallel.hpp"

namespace engel {

namespace {

constexpr double kInfeasible = 1e6;
constexpr int kDyadicBits = 24;

GaussianRational dyadic_round(ComplexFloat c) {
  return GaussianRational::from_double(std::ldexp(std::round(std::ldexp(c.real(), kDyadicBits)), -kDyadicBits),
                                       std::ldexp(std::round(std::ldexp(c.imag(), kDyadicBits)), -kDyadicBits));
}

/// |v| and the unit phase of its first nonzero component.
struct Normalization {
  double norm = 0.0;
  ComplexFloat phase{1.0, 0.0};
};

Normalization normalization(const ExactPoint& v) {
  Normalization out;
  double sq = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) sq += v(k).abs2().get_d();
  out.norm = std::sqrt(sq);
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (!v(k).is_zero()) {
      const ComplexFloat c = v(k).to_complex();
      out.phase = c / std::abs(c);
      break;
    }
  return out;
}

/// Search point: x[0] = log mu, then (Re, Im) of the w and x coefficients of
/// degree 2..d.
class DiscProblem {
 public:
  DiscProblem(const ExactPoint& p, const ExactPoint& v, const ShellSet& s, const SearchConfig& cfg)
      : p_(p), v_(v), s_(s), cfg_(cfg), norm_(normalization(v)) {}

  std::size_t dimension() const { return 1 + 4 * static_cast<std::size_t>(cfg_.degree - 1); }

  GaussianRational lambda(double log_mu) const {
    return dyadic_round(std::exp(log_mu) * std::conj(norm_.phase) / norm_.norm);
  }

  HorizontalDisc disc(const std::vector<double>& x) const {
    const GaussianRational l = lambda(x[0]);
    std::vector<GaussianRational> w{p_(0), l * v_(0)}, xs{p_(1), l * v_(1)};
    for (int k = 2; k <= cfg_.degree; ++k) {
      const std::size_t o = 1 + 4 * static_cast<std::size_t>(k - 2);
      w.push_back(dyadic_round({x[o], x[o + 1]}));
      xs.push_back(dyadic_round({x[o + 2], x[o + 3]}));
    }
    return integrate_horizontal_D(UPoly(std::move(w)), UPoly(std::move(xs)), p_(2), p_(3));
  }

  bool feasible(const std::vector<double>& x) const {
    if (!(x[0] <= std::log(cfg_.mu_cap))) return false;
    for (double c : x)
      if (!std::isfinite(c)) return false;
    evaluations_.fetch_add(1, std::memory_order_relaxed);
    return disc_avoids(s_, disc(x), 1.0, cfg_.max_grid).status == AvoidStatus::Certified;
  }

  long evaluations() const { return evaluations_.load(); }

  double objective(const std::vector<double>& x) const { return feasible(x) ? -x[0] : kInfeasible; }

  const SearchConfig& config() const { return cfg_; }

 private:
  ExactPoint p_;
  ExactPoint v_;
  ShellSet s_;
  SearchConfig cfg_;
  Normalization norm_;
  mutable std::atomic<long> evaluations_{0};
};

double gsl_objective(const gsl_vector* v, void* params) {
  const auto* problem = static_cast<const DiscProblem*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  return problem->objective(x);
}

struct RestartResult {
  bool feasible = false;
  std::vector<double> x;
};

/// A feasible start: the random shape and mu are halved together until the
/// disc is certified.
std::optional<std::vector<double>> feasible_start(const DiscProblem& problem, Rng& rng) {
  std::normal_distribution<double> coef(0.0, 0.25);
  std::vector<double> x(problem.dimension());
  for (std::size_t i = 1; i < x.size(); ++i) x[i] = coef(rng);
  x[0] = std::log(0.5);
  for (int j = 0; j < 40; ++j) {
    if (problem.feasible(x)) return x;
    x[0] -= std::log(2.0);
    for (std::size_t i = 1; i < x.size(); ++i) x[i] *= 0.5;
  }
  return std::nullopt;
}

/// Raises log mu with the shape fixed: doubling steps while feasible, then
/// bisection on the last step.
void push_mu(const DiscProblem& problem, std::vector<double>& x) {
  const double cap = std::log(problem.config().mu_cap);
  std::vector<double> trial = x;
  double lo = x[0], hi = lo;
  while (lo < cap) {
    hi = std::min(lo + std::log(2.0), cap);
    trial[0] = hi;
    if (!problem.feasible(trial)) break;
    lo = hi;
  }
  if (lo < hi)
    for (int k = 0; k < 12; ++k) {
      trial[0] = 0.5 * (lo + hi);
      if (problem.feasible(trial))
        lo = trial[0];
      else
        hi = trial[0];
    }
  x[0] = lo;
}

RestartResult run_restart(const DiscProblem& problem, Rng rng) {
  RestartResult out;
  auto start = feasible_start(problem, rng);
  if (!start) return out;
  const std::size_t n = problem.dimension();
  const SearchConfig& cfg = problem.config();

  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x0(gsl_vector_alloc(n), gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(n), gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x0.get(), i, (*start)[i]);
    gsl_vector_set(step.get(), i, i == 0 ? 0.5 : 0.25);
  }
  gsl_multimin_function f{&gsl_objective, n, const_cast<DiscProblem*>(&problem)};
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(m.get(), &f, x0.get(), step.get());
  for (int it = 0; it < cfg.iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), cfg.shrink_tolerance) == GSL_SUCCESS) break;
  }
  std::vector<double> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = gsl_vector_get(m->x, i);
  if (!problem.feasible(best)) best = *start;
  push_mu(problem, best);
  out.feasible = true;
  out.x = std::move(best);
  return out;
}

/// GSL's default handler aborts; errors are read from return codes instead.
struct GslErrorsOff {
  GslErrorsOff() { gsl_set_error_handler_off(); }
};

}  // namespace

void SearchConfig::validate() const {
  if (degree < 1 || restarts < 1 || iterations < 1 || !(shrink_tolerance > 0) || max_grid < 1 || !(mu_cap > 0))
    throw std::invalid_argument("SearchConfig: all fields must be positive");
}

DiscSearchResult extremal_disc_search(const ExactPoint& p, const ExactPoint& v, const ShellSet& s,
                                      const SearchConfig& cfg) {
  static const GslErrorsOff gsl_errors_off;
  cfg.validate();
  if (p.size() != 4 || v.size() != 4) throw std::invalid_argument("extremal_disc_search: point and direction must be in C^4");
  if (v == ExactPoint::Zero(4)) throw PreconditionError("extremal_disc_search: v = 0");
  if (!in_standard_d(p, v)) throw PreconditionError("v not in D_p");
  if (cfg.degree < 2) throw std::invalid_argument("extremal_disc_search: degree budget must be at least 2");

  const DiscProblem problem(p, v, s, cfg);
  std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  parallel_for(results.size(), [&](std::size_t r) { results[r] = run_restart(problem, substream(cfg.seed, "disc-search", r)); });

  DiscSearchResult out;
  out.evaluations = problem.evaluations();
  const RestartResult* best = nullptr;
  for (const auto& r : results) {
    if (!r.feasible) continue;
    ++out.feasible_restarts;
    if (!best || r.x[0] > best->x[0] || (r.x[0] == best->x[0] && r.x < best->x)) best = &r;
  }
  if (!best) {
    out.diagnostic = "no certified disc found within budget";
    return out;
  }
  out.witness = problem.disc(best->x);
  out.lambda = problem.lambda(best->x[0]);
  out.upper = 1.0 / std::sqrt(out.lambda.abs2().get_d());
  if (best->x[0] >= std::log(cfg.mu_cap) - 1e-12) out.diagnostic = "derivative budget reached";
  return out;
}

LemmaModel lemma_model_for(const ShellSet& s) {
  if (s.kind == ShellKind::A) return LemmaModel::A;
  if (s.kind == ShellKind::B) return LemmaModel::B;
  throw std::invalid_argument("lemma constants exist only for the complements of A and B");
}

FinslerBound finsler_report(const ExactPoint& p, const ExactPoint& v, const ShellSet& s, const SearchConfig& cfg) {
  FinslerBound out;
  out.point = p;
  out.direction = v;
  out.config = cfg;
  out.lower = finsler_lower_bound(p, v, lemma_model_for(s));
  DiscSearchResult r = extremal_disc_search(p, v, s, cfg);
  out.upper = r.upper;
  out.witness = std::move(r.witness);
  out.lambda = r.lambda;
  out.diagnostic = r.diagnostic;
  if (out.lower.value() > out.upper + 1e-12)
    throw std::logic_error("finsler_report: lower bound exceeds upper bound");
  return out;
}

double path_finsler_length(const HorizontalPath& path, Estimator e, const ShellSet& s, int n, const SearchConfig& cfg) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("path_finsler_length: n must be even and positive");
  if (!path_tangent(path)) throw PreconditionError("path_finsler_length: path is not tangent");
  const std::optional<LemmaModel> model =
      e == Estimator::Lower ? std::optional<LemmaModel>(lemma_model_for(s)) : std::nullopt;
  double total = 0.0;
  for (const auto& seg : path.segments) {
    const PolyCurve d = seg.curve.derivative();
    const Rational h = (seg.t1 - seg.t0) / n;
    std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
    parallel_for(f.size(), [&](std::size_t k) {
      const GaussianRational t(seg.t0 + h * static_cast<long>(k));
      const ExactPoint pt = seg.curve.evaluate(t), v = d.evaluate(t);
      if (v == ExactPoint::Zero(4)) return;
      f[k] = model ? finsler_lower_bound(pt, v, *model).value() : extremal_disc_search(pt, v, s, cfg).upper;
    });
    double acc = f.front() + f.back();
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f[static_cast<std::size_t>(k)];
    total += acc * h.get_d() / 3.0;
  }
  return total;
}

double directed_distance_upper(const ExactPoint& p, const ExactPoint& q, const ShellSet& s, int n,
                               const SearchConfig& cfg) {
  if (p == q) return 0.0;
  return path_finsler_length(hermite_steer(p, q), Estimator::Upper, s, n, cfg);
}

}  // namespace engel
