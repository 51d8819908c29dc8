#include "engel/suites.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "engel/parallel.hpp"

namespace engel {

namespace {

const Ambient& std4() { return standard_ambient(); }
VectorField d(const char* n) { return VectorField::coordinate(std4(), n); }
DiffForm dx(const char* n) { return DiffForm::coordinate(std4(), n); }
MultiPoly var(const char* n) { return MultiPoly::variable(std4(), n); }

/// Counts cases and keeps the first failure message.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  int cases() const { return cases_; }
  int failures() const { return failures_; }
  const std::string& first_failure() const { return first_; }

  void fill(SuiteResult& r, const std::string& summary) const {
    r.cases = cases_;
    r.failures = failures_;
    r.summary = failures_ == 0 ? summary : summary + "; first failure: " + first_;
    r.report["cases"] = cases_;
    r.report["failures"] = failures_;
    if (failures_ > 0) r.report["first_failure"] = first_;
  }

 private:
  int cases_ = 0;
  int failures_ = 0;
  std::string first_;
};

bool proportional(const VectorField& a, const VectorField& b) {
  const std::vector<VectorField> v = {a, b};
  return generic_rank(v) == 1;
}

void flag_derivation(SuiteResult& r) {
  Tally t;
  const EngelCheck check = check_engel(standard_engel_frame());
  if (const auto* f = std::get_if<EngelFailure>(&check)) {
    t.check(false, "check_engel failed at " + f->stage + ": " + f->detail);
    t.fill(r, "standard frame is not Engel");
    return;
  }
  const EngelFlag& flag = std::get<EngelFlag>(check);
  const DiffForm e_expected = dx("y") - var("z") * dx("x");
  const std::vector<DiffForm> d_expected = {e_expected, dx("z") - var("w") * dx("x")};
  t.check(normalize(flag.e_form) == normalize(e_expected), "E form is not dy - z dx");
  t.check(flag.e.rank() == 3, "E has rank " + std::to_string(flag.e.rank()));
  for (const auto& x : flag.e.fields()) t.check(pair(e_expected, x).is_zero(), "dy - z dx does not kill E");
  for (const auto& w : d_expected)
    for (const auto& x : flag.d.fields()) t.check(pair(w, x).is_zero(), "D forms do not kill D");
  t.check(normalize(flag.w) == d("w"), "W is not span d/dw");
  for (const char* c : {"x", "y", "z"}) t.check(pair(dx(c), flag.w).is_zero(), std::string("d") + c + " does not kill W");
  t.check(!pair(dx("w"), flag.w).is_zero(), "W vanishes");
  r.report["flag"] = to_json(flag);
  t.fill(r, "E = ker(dy - z dx), W = span d/dw");
}

void remark_formula(SuiteResult& r) {
  Tally t;
  for (int i = 0; i < 100; ++i) {
    Rng rng = substream(r.seed, "remark-formula", static_cast<std::uint64_t>(i));
    const auto [p, v] = random_d_direction(rng, 12);
    const PolyCurve line = remark_line(p, v).curve;
    const PolyCurve integrated = integrate_horizontal_D(UPoly({p(0), v(0)}), UPoly({p(1), v(1)}), p(2), p(3)).curve;
    const std::string at = " at sample " + std::to_string(i);
    t.check(line == integrated, "remark_line differs from integrate_horizontal_D" + at);
    // w, x, y, z = components 0..3; v = (v_w, v_x, v_y, v_z).
    t.check(line[2].coeff(2) == v(1) * v(3) / GaussianRational(2), "y zeta^2 coefficient" + at);
    t.check(line[2].coeff(3) == v(1) * v(1) * v(0) / GaussianRational(6), "y zeta^3 coefficient" + at);
    t.check(line[3].coeff(2) == v(1) * v(0) / GaussianRational(2), "z zeta^2 coefficient" + at);
  }
  t.fill(r, "100 samples equal coefficient for coefficient");
}

void lemma_suite(SuiteResult& r, LemmaModel m) {
  Tally t;
  const LemmaSuiteResult s = run_lemma_suite(m, 1000, r.seed);
  for (const auto& sample : s.samples) {
    const std::string at = " at sample " + std::to_string(sample.index);
    t.check(sample.certified, "no certified disc" + at);
    if (sample.certified) t.check(sample.verdict.pass, "lemma bound violated" + at);
  }
  r.counterexample = s.counterexamples > 0;
  r.report["model"] = to_string(m);
  r.report["samples"] = s.samples.size();
  r.report["counterexamples"] = s.counterexamples;
  r.report["uncertified"] = s.uncertified;
  r.report["injective"] = s.injective;
  r.report["injective_counterexamples"] = s.injective_counterexamples;
  std::ostringstream os;
  os << s.samples.size() << " certified discs, " << s.counterexamples << " counterexamples (" << s.injective
     << " certified injective)";
  t.fill(r, os.str());
}

void prolongation(SuiteResult& r) {
  Tally t;
  for (ProlongChart c : {ProlongChart::Zero, ProlongChart::Infinity}) {
    const DistributionFrame p = cartan_prolong(standard_contact_frame(), standard_contact_form(), c);
    const EngelCheck check = check_engel(p);
    const auto* flag = std::get_if<EngelFlag>(&check);
    t.check(flag != nullptr, "chart " + to_string(c) + " is not Engel");
    if (flag)
      t.check(proportional(flag->w, VectorField::coordinate(p.ambient(), fiber_name(c))),
              "characteristic field of chart " + to_string(c) + " is not the fiber direction");
  }
  const DistributionFrame p0 = cartan_prolong(standard_contact_frame(), standard_contact_form(), ProlongChart::Zero);
  const std::vector<DiffForm> d_forms = std::get<EngelFlag>(check_engel(p0)).d_forms;
  const std::vector<DiffForm> alpha = {standard_contact_form()};
  for (int i = 0; i < 50; ++i) {
    Rng rng = substream(r.seed, "prolongation", static_cast<std::uint64_t>(i));
    // x' = t z', y' = z x' with z and t free.
    const UPoly z = random_upoly(rng, 3, 7), tt = random_upoly(rng, 3, 7);
    const UPoly x = antiderivative_zeta(tt * z.derivative()) + UPoly({random_gaussian(rng, 7)});
    const UPoly y = antiderivative_zeta(z * x.derivative()) + UPoly({random_gaussian(rng, 7)});
    const PolyCurve lifted(p0.ambient(), {x, y, z, tt});
    const std::string at = " at curve " + std::to_string(i);
    t.check(verify_tangency(lifted, d_forms).tangent, "lifted curve not tangent" + at);
    t.check(verify_tangency(project_prolongation(lifted), alpha).tangent, "projection not contact" + at);
  }
  t.fill(r, "both charts Engel with fiber characteristic; 50 projections contact");
}

void pullback(SuiteResult& r) {
  Tally t;
  const EngelFlag st = std::get<EngelFlag>(check_engel(standard_engel_frame()));
  for (int i = 0; i < 50; ++i) {
    Rng rng = substream(r.seed, "pullback-flag", static_cast<std::uint64_t>(i));
    const PolyAutomorphism phi = random_automorphism(rng, std4(), 1 + i % 5, 2, 4);
    const std::string at = " at composition " + std::to_string(i);
    try {
      const EngelFlag f = pullback_flag(phi, st);
      t.check(proportional(f.w, pullback_field(phi, st.w)), "pulled-back W is not the new W" + at);
    } catch (const std::runtime_error& e) {
      t.check(false, e.what() + at);
    }
  }
  for (int i = 0; i < 50; ++i) {
    Rng rng = substream(r.seed, "pullback-bracket", static_cast<std::uint64_t>(i));
    const PolyAutomorphism phi = random_automorphism(rng, std4(), 1 + i % 5, 2, 4);
    const VectorField x = random_field(rng, std4(), 2, 3, 5), y = random_field(rng, std4(), 2, 3, 5);
    t.check(pullback_field(phi, lie_bracket(x, y)) == lie_bracket(pullback_field(phi, x), pullback_field(phi, y)),
            "bracket naturality at pair " + std::to_string(i));
  }
  t.fill(r, "50 compositions stay Engel; naturality exact on 50 pairs");
}

void steering(SuiteResult& r) {
  Tally t;
  int equal_x = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = substream(r.seed, "steering", static_cast<std::uint64_t>(i));
    const ExactPoint p = random_point(rng, 4, 9);
    ExactPoint q = random_point(rng, 4, 9);
    if (i % 10 == 0) q(1) = p(1);
    equal_x += q(1) == p(1);
    const HorizontalPath path = hermite_steer(p, q);
    const std::string at = " at pair " + std::to_string(i);
    t.check(path_endpoint_check(path, p, q), "endpoints" + at);
    t.check(path_tangent(path), "tangency" + at);
  }
  r.report["equal_x_pairs"] = equal_x;
  t.check(equal_x >= 10, "fewer than 10 pairs with x_p = x_q");
  t.fill(r, "100 paths exact (" + std::to_string(equal_x) + " with x_p = x_q)");
}

ExactPoint scaled(const ExactPoint& v, const GaussianRational& c) {
  ExactPoint out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = c * v(k);
  return out;
}

GaussianRational random_dyadic_scale(Rng& rng) {
  std::uniform_int_distribution<long> part(-4, 4);
  std::uniform_int_distribution<int> shift(0, 2);
  GaussianRational c;
  while (c.is_zero()) c = GaussianRational(Rational(part(rng)), Rational(part(rng)));
  return c * GaussianRational(dyadic(-shift(rng)));
}

void finsler_bounds(SuiteResult& r) {
  Tally t;
  const SearchConfig cfg = finsler_suite_config(r.seed);
  r.report["search"] = to_json(cfg);

  const ExactPoint origin = ExactPoint::Zero(4), e_x = make_point({0, 1, 0, 0});
  const FinslerBound b = finsler_report(origin, e_x, ShellSet::B(), cfg);
  t.check(b.lower.exact && *b.lower.exact == Rational(1, 4) && b.lower.n0 == 1, "lower bound at the origin is not 1/4");
  t.check(b.upper >= 0.25, "upper bound at the origin below 1/4");
  t.check(b.witness.has_value(), "no witness at the origin");
  if (b.witness) {
    const PolyCurve& f = b.witness->curve;
    t.check(disc_avoids(ShellSet::B(), f, 1.0, cfg.max_grid).status == AvoidStatus::Certified, "witness not certified");
    t.check(verify_tangency(f, standard_d_forms()).tangent, "witness not tangent");
    t.check(f.basepoint() == origin && f.derivative().basepoint() == scaled(e_x, b.lambda), "witness jet mismatch");
  }
  r.report["origin"] = {{"lower", to_json(b.lower)}, {"upper", b.upper}, {"lambda", b.lambda.str()}};

  struct Case {
    bool ok_order = true, ok_lower_scale = true, ok_upper_scale = true, finite = true;
    double lower = 0, upper = 0, scaled_upper = 0, scale = 0;
  };
  std::vector<Case> cases(100);
  parallel_for(cases.size(), [&](std::size_t i) {
    Rng rng = substream(r.seed, "finsler-bounds", i);
    const ShellSet s = i % 2 == 0 ? ShellSet::B() : ShellSet::A();
    // The metric lives on the complement of S.
    PointDirection pv = random_d_direction(rng, 6);
    while (shell_membership(s, pv.p).in) pv = random_d_direction(rng, 6);
    const auto& [p, v] = pv;
    const GaussianRational c = random_dyadic_scale(rng);
    const FinslerBound base = finsler_report(p, v, s, cfg);
    const FinslerBound sc = finsler_report(p, scaled(v, c), s, cfg);
    Case& k = cases[i];
    k.scale = std::sqrt(c.abs2().get_d());
    k.lower = base.lower.value();
    k.upper = base.upper;
    k.scaled_upper = sc.upper;
    k.ok_order = base.lower.value() <= base.upper && sc.lower.value() <= sc.upper;
    k.ok_lower_scale = sc.lower.value_squared == c.abs2() * base.lower.value_squared;
    k.finite = std::isfinite(base.upper) && std::isfinite(sc.upper);
    const double expected = k.scale * base.upper;
    k.ok_upper_scale = k.finite && std::abs(sc.upper - expected) <= 0.05 * expected;
  });
  double worst = 0.0;
  Json rows = Json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& k = cases[i];
    const std::string at = " at pair " + std::to_string(i);
    t.check(k.ok_order, "lower > upper" + at);
    t.check(k.ok_lower_scale, "lower bound not homogeneous" + at);
    t.check(k.finite, "search found no witness" + at);
    t.check(k.ok_upper_scale, "upper bound homogeneity off by more than 5%" + at);
    if (k.finite) worst = std::max(worst, std::abs(k.scaled_upper / (k.scale * k.upper) - 1.0));
    rows.push_back({{"lower", k.lower}, {"upper", k.upper}, {"scale", k.scale}, {"scaled_upper", k.scaled_upper}});
  }
  r.report["pairs"] = rows;
  r.report["worst_upper_homogeneity"] = worst;
  std::ostringstream os;
  os << "origin lower 1/4, upper " << b.upper << "; 100 pairs, worst upper homogeneity " << worst;
  t.fill(r, os.str());
}

void wline_intersection(SuiteResult& r) {
  Tally t;
  const ShellSet kw = ShellSet::KW();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = substream(r.seed, "wline-intersection", static_cast<std::uint64_t>(i));
    std::uniform_int_distribution<int> deg(1, 4);
    const UPoly w = random_upoly_exact_degree(rng, deg(rng), 9);
    const ExactPoint base = random_point(rng, 3, 30);
    const WLineHit hit = wline_shell_intersection(w, base, kw);
    // Fresh evaluation, independent of the reported residual.
    const double fresh = std::abs(std::abs(w.evaluate(hit.zeta)) / std::ldexp(1.0, hit.layer - 1) - 1.0);
    worst = std::max({worst, hit.residual, fresh});
    t.check(hit.residual <= 1e-9 && fresh <= 1e-9, "residual above 1e-9 at sample " + std::to_string(i));
  }
  r.report["worst_residual"] = worst;
  std::ostringstream os;
  os << "100 W-lines hit KW, worst residual " << worst;
  t.fill(r, os.str());
}

/// Tries each bijection directly; written independently of the module.
std::optional<std::array<int, 3>> affine_oracle(const TripleSet& s, const TripleSet& u) {
  std::array<int, 3> perm{0, 1, 2};
  do {
    const GaussianRational a = (u.elements[perm[1]] - u.elements[perm[0]]) / (s.elements[1] - s.elements[0]);
    const GaussianRational b = u.elements[perm[0]] - a * s.elements[0];
    if (!a.is_zero() && a * s.elements[2] + b == u.elements[perm[2]]) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

void moduli_obstruction(SuiteResult& r) {
  Tally t;
  for (const auto& [R, Rp] : moduli_grid()) {
    const TripleSet s = TripleSet::standard(R), u = TripleSet::standard(Rp);
    const std::string at = " for R = " + format_rational(R) + ", R' = " + format_rational(Rp);
    t.check(!affine_bijection_exists(s, u).has_value(), "affine bijection found" + at);
    t.check(!affine_oracle(s, u).has_value(), "oracle disagrees" + at);
  }
  for (const Rational& R : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
    const TripleSet s = TripleSet::standard(R);
    const auto w = affine_bijection_exists(s, s);
    const std::string at = " for R = " + format_rational(R);
    t.check(w && w->a == GaussianRational(1) && w->b.is_zero() && w->permutation == 0, "no identity witness" + at);
    const auto o = affine_oracle(s, s);
    t.check(o && *o == std::array<int, 3>{0, 1, 2}, "oracle disagrees" + at);
  }
  r.report["grid_pairs"] = moduli_grid().size();
  t.fill(r, "20 grid pairs None, 5 diagonal identities");
}

/// Exact point of modulus `radius` with a Pythagorean phase.
GaussianRational on_circle(Rng& rng, const Rational& radius) {
  static const std::array<std::array<long, 3>, 6> phases{
      {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {3, 4, 5}, {-5, 12, 13}, {8, -15, 17}}};
  std::uniform_int_distribution<std::size_t> pick(0, phases.size() - 1);
  const auto& ph = phases[pick(rng)];
  return {radius * Rational(ph[0], ph[2]), radius * Rational(ph[1], ph[2])};
}

/// Exact point in the square inscribed in the disc of `radius`.
GaussianRational inside_disc(Rng& rng, const Rational& radius) {
  std::uniform_int_distribution<long> u(-1000, 1000);
  return {radius * Rational(u(rng), 1415), radius * Rational(u(rng), 1415)};
}

void shell_inclusion(SuiteResult& r) {
  Tally t;
  const ShellSet b = ShellSet::B(), k3 = ShellSet::K3(Rational(1, 2));
  for (int i = 0; i < 1000; ++i) {
    Rng rng = substream(r.seed, "shell-inclusion", static_cast<std::uint64_t>(i));
    const int layer = std::uniform_int_distribution<int>(1, 8)(rng);
    const int hit = std::uniform_int_distribution<int>(0, 1)(rng);
    ExactPoint p(4);
    p(hit) = on_circle(rng, dyadic(layer - 1));
    p(1 - hit) = inside_disc(rng, dyadic(layer - 1));
    p(2) = inside_disc(rng, dyadic(5 * layer + 2));
    p(3) = inside_disc(rng, dyadic(3 * layer + 1));
    const std::string at = " at " + format_point(p);
    t.check(shell_membership(b, p).layer == layer, "sampled point not on its B layer" + at);
    t.check(shell_membership(k3, p).in, "point of B outside K3 x C" + at);
  }
  t.fill(r, "1000 points of B lie in K3 x C");
}

void calculus_axioms(SuiteResult& r) {
  Tally t;
  for (int i = 0; i < 200; ++i) {
    Rng rng = substream(r.seed, "calculus-axioms", static_cast<std::uint64_t>(i));
    const VectorField X = random_field(rng, std4(), 2, 3, 5), Y = random_field(rng, std4(), 2, 3, 5),
                      Z = random_field(rng, std4(), 2, 3, 5);
    const MultiPoly f = random_multipoly(rng, std4(), 2, 3, 5);
    const std::string at = " at case " + std::to_string(i);
    t.check((lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y)))
                .is_zero(),
            "Jacobi" + at);
    t.check(lie_bracket(X, f * Y) == X.apply(f) * Y + f * lie_bracket(X, Y), "Leibniz" + at);
    const DiffForm w = random_one_form(rng, std4(), 3, 3, 7);
    const MultiPoly g = random_multipoly(rng, std4(), 3, 4, 7);
    t.check(exterior_derivative(exterior_derivative(w)).is_zero() &&
                exterior_derivative(exterior_derivative(DiffForm::function(g))).is_zero(),
            "d^2 = 0" + at);
    const PolyAutomorphism phi = random_automorphism(rng, std4(), 2, 2, 4), psi = random_automorphism(rng, std4(), 2, 2, 4);
    t.check(pullback_field(phi.after(psi), X) == pullback_field(psi, pullback_field(phi, X)), "functoriality" + at);
  }
  t.fill(r, "Jacobi, Leibniz, d^2 = 0, functoriality on 200 cases each");
}

}  // namespace

const std::vector<SuiteInfo>& acceptance_suites() {
  static const std::vector<SuiteInfo> suites = {
      {1, "flag-derivation", 1.0},     {2, "remark-formula", 5.0},      {3, "lemma-B", 60.0},
      {4, "lemma-A", 60.0},            {5, "prolongation", 10.0},       {6, "pullback", 30.0},
      {7, "steering", 10.0},           {8, "finsler-bounds", 120.0},    {9, "wline-intersection", 30.0},
      {10, "moduli-obstruction", 1.0}, {11, "shell-inclusion", 5.0},    {12, "calculus-axioms", 30.0},
  };
  return suites;
}

const SuiteInfo& suite_info(std::string_view name) {
  for (const auto& s : acceptance_suites())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite \"" + std::string(name) + "\"");
}

SearchConfig finsler_suite_config(std::uint64_t seed) {
  SearchConfig cfg;
  cfg.restarts = 2;
  cfg.iterations = 30;
  cfg.max_grid = 32;
  cfg.seed = seed;
  return cfg;
}

SuiteResult run_suite(const SuiteInfo& info, std::uint64_t seed) {
  SuiteResult r;
  r.info = info;
  r.seed = seed;
  r.report = {{"id", info.id}, {"name", info.name}, {"seed", seed}};
  const auto start = std::chrono::steady_clock::now();
  switch (info.id) {
    case 1: flag_derivation(r); break;
    case 2: remark_formula(r); break;
    case 3: lemma_suite(r, LemmaModel::B); break;
    case 4: lemma_suite(r, LemmaModel::A); break;
    case 5: prolongation(r); break;
    case 6: pullback(r); break;
    case 7: steering(r); break;
    case 8: finsler_bounds(r); break;
    case 9: wline_intersection(r); break;
    case 10: moduli_obstruction(r); break;
    case 11: shell_inclusion(r); break;
    case 12: calculus_axioms(r); break;
    default: throw std::invalid_argument("unknown suite id " + std::to_string(info.id));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.report["pass"] = r.checks_pass();
  r.report["summary"] = r.summary;
  return r;
}

}  // namespace engel
