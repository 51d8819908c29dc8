#include "engel/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace engel {

int total_degree(const Exponent& e) {
  int d = 0;
  for (auto k : e) d += k;
  return d;
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Ambient::Ambient(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
  if (names_->size() > kMaxVars) throw AmbientError("ambient has more than 5 coordinates");
  for (std::size_t i = 0; i < names_->size(); ++i)
    for (std::size_t j = i + 1; j < names_->size(); ++j)
      if ((*names_)[i] == (*names_)[j]) throw AmbientError("duplicate coordinate name " + (*names_)[i]);
}

std::optional<std::size_t> Ambient::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t Ambient::require_index(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw AmbientError("unknown coordinate '" + std::string(name) + "'");
  return *idx;
}

const Ambient& standard_ambient() {
  static const Ambient amb{"w", "x", "y", "z"};
  return amb;
}

void require_same_ambient(const Ambient& a, const Ambient& b, const char* what) {
  if (a != b) throw AmbientError(std::string(what) + ": ambient mismatch");
}

// MultiPoly

MultiPoly MultiPoly::constant(const Ambient& ambient, const GaussianRational& c) {
  MultiPoly p(ambient);
  p.add_term(Exponent{}, c);
  return p;
}

MultiPoly MultiPoly::variable(const Ambient& ambient, std::size_t index) {
  if (index >= ambient.size()) throw AmbientError("variable index out of range");
  Exponent e{};
  e[index] = 1;
  return monomial(ambient, e);
}

MultiPoly MultiPoly::variable(const Ambient& ambient, std::string_view name) {
  return variable(ambient, ambient.require_index(name));
}

MultiPoly MultiPoly::monomial(const Ambient& ambient, const Exponent& e, const GaussianRational& c) {
  for (std::size_t i = ambient.size(); i < kMaxVars; ++i)
    if (e[i]) throw AmbientError("exponent longer than ambient");
  MultiPoly p(ambient);
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && engel::total_degree(terms_.begin()->first) == 0);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return engel::total_degree(terms_.rbegin()->first);
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[var]);
  return d;
}

GaussianRational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational MultiPoly::leading_coefficient() const {
  return terms_.empty() ? GaussianRational() : terms_.rbegin()->second;
}

void MultiPoly::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(ambient_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_ambient(ambient_, o.ambient_, "poly add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_ambient(ambient_, o.ambient_, "poly sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_ambient(a.ambient_, b.ambient_, "poly mul");
  MultiPoly out(a.ambient_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e;
      for (std::size_t i = 0; i < kMaxVars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  return out;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    const bool unit = c == GaussianRational(1);
    if (!unit || engel::total_degree(e) == 0) os << (c.is_real() ? c.str() : "(" + c.str() + ")");
    bool need_star = !unit;
    for (std::size_t i = 0; i < ambient_.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << ambient_.name(i);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op) {
  switch (op) {
    case PolyOp::Add:
      return p + q;
    case PolyOp::Sub:
      return p - q;
    case PolyOp::Mul:
      return p * q;
  }
  throw std::invalid_argument("unknown PolyOp");
}

MultiPoly scale(const MultiPoly& p, const GaussianRational& c) { return p * c; }

MultiPoly pow(const MultiPoly& p, unsigned k) {
  MultiPoly result = MultiPoly::constant(p.ambient(), 1);
  MultiPoly base = p;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly differentiate(const MultiPoly& p, std::size_t var) {
  if (var >= p.ambient().size()) throw AmbientError("differentiate: coordinate out of range");
  MultiPoly out(p.ambient());
  for (const auto& [e, c] : p.terms()) {
    if (!e[var]) continue;
    Exponent d = e;
    --d[var];
    out.add_term(d, c * GaussianRational(static_cast<long>(e[var])));
  }
  return out;
}

MultiPoly differentiate(const MultiPoly& p, std::string_view var) {
  return differentiate(p, p.ambient().require_index(var));
}

Exponent monomial_content(const MultiPoly& p) {
  Exponent g{};
  if (p.is_zero()) return g;
  g = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < kMaxVars; ++i) g[i] = std::min(g[i], e[i]);
  return g;
}

MultiPoly divide_monomial(const MultiPoly& p, const Exponent& m) {
  MultiPoly out(p.ambient());
  for (const auto& [e, c] : p.terms()) {
    Exponent d = e;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (d[i] < m[i]) throw std::invalid_argument("divide_monomial: monomial does not divide");
      d[i] = static_cast<std::uint16_t>(d[i] - m[i]);
    }
    out.add_term(d, c);
  }
  return out;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q) {
  require_same_ambient(p.ambient(), q.ambient(), "divide_exact");
  if (q.is_zero()) throw std::domain_error("divide_exact: division by the zero polynomial");
  const auto& [eq, cq] = *q.terms().rbegin();
  MultiPoly quotient(p.ambient()), rem = p;
  while (!rem.is_zero()) {
    const auto& [er, cr] = *rem.terms().rbegin();
    Exponent e{};
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (er[i] < eq[i]) return std::nullopt;
      e[i] = static_cast<std::uint16_t>(er[i] - eq[i]);
    }
    const MultiPoly t = MultiPoly::monomial(p.ambient(), e, cr / cq);
    quotient += t;
    rem -= t * q;
  }
  return quotient;
}

namespace {

MultiPoly exact_quotient(const MultiPoly& p, const MultiPoly& q) {
  auto r = divide_exact(p, q);
  if (!r) throw std::logic_error("gcd: expected exact division");
  return std::move(*r);
}

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return scale(p, GaussianRational(1) / p.leading_coefficient());
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t v) {
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(p.degree_in(v), 0) + 1), MultiPoly(p.ambient()));
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    rest[v] = 0;
    out[e[v]].add_term(rest, c);
  }
  return out;
}

MultiPoly leading_in(const MultiPoly& p, std::size_t v) { return coefficients_in(p, v).back(); }

MultiPoly gcd_of(std::vector<MultiPoly> polys, const Ambient& amb);

MultiPoly content_in(const MultiPoly& p, std::size_t v) { return gcd_of(coefficients_in(p, v), p.ambient()); }

MultiPoly primitive_in(const MultiPoly& p, std::size_t v) {
  if (p.is_zero()) return p;
  return exact_quotient(p, content_in(p, v));
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  const int db = b.degree_in(v);
  const MultiPoly lb = leading_in(b, v);
  MultiPoly r = a;
  int e = a.degree_in(v) - db + 1;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    Exponent shift{};
    shift[v] = static_cast<std::uint16_t>(r.degree_in(v) - db);
    r = lb * r - leading_in(r, v) * MultiPoly::monomial(a.ambient(), shift) * b;
    --e;
  }
  for (; e > 0; --e) r = lb * r;
  return r;
}

/// p with every coordinate except k fixed to `at`, as a polynomial in x_k.
UPoly univariate_image(const MultiPoly& p, std::size_t k, const std::vector<GaussianRational>& at) {
  std::vector<GaussianRational> c(static_cast<std::size_t>(p.degree_in(k)) + 1);
  for (const auto& [e, coef] : p.terms()) {
    GaussianRational t = coef;
    for (std::size_t i = 0; i < at.size(); ++i)
      for (int r = 0; i != k && r < e[i]; ++r) t *= at[i];
    c[e[k]] += t;
  }
  return UPoly(std::move(c));
}

UPoly univariate_remainder(UPoly a, const UPoly& b) {
  const GaussianRational lead = b.coeffs().back();
  while (!a.is_zero() && a.degree() >= b.degree()) {
    const GaussianRational f = a.coeffs().back() / lead;
    a -= UPoly::monomial(a.degree() - b.degree(), f) * b;
  }
  return a;
}

int univariate_gcd_degree(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = univariate_remainder(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.degree();
}

/// Upper bound on deg_k gcd(a, b) from univariate images at fixed Gaussian
/// points; images that drop a degree are skipped. Sound: when both leading
/// coefficients survive, the image of the gcd divides the image gcd.
int gcd_degree_bound(const MultiPoly& a, const MultiPoly& b, std::size_t k) {
  const std::size_t n = a.ambient().size();
  int bound = std::min(a.degree_in(k), b.degree_in(k));
  for (int attempt = 0; attempt < 3 && bound > 0; ++attempt) {
    std::vector<GaussianRational> at;
    for (std::size_t i = 0; i < n; ++i)
      at.emplace_back(Rational(static_cast<long>(2 + 3 * i + 7 * attempt)), Rational(static_cast<long>(1 + i + attempt), 2));
    const UPoly ia = univariate_image(a, k, at), ib = univariate_image(b, k, at);
    if (ia.degree() != a.degree_in(k) || ib.degree() != b.degree_in(k)) continue;
    bound = std::min(bound, univariate_gcd_degree(ia, ib));
  }
  return bound;
}

/// gcd of a list, smallest first; exact division short-circuits the
/// common case where the running gcd already divides the next entry.
MultiPoly gcd_of(std::vector<MultiPoly> polys, const Ambient& amb) {
  std::sort(polys.begin(), polys.end(), [](const MultiPoly& x, const MultiPoly& y) { return x.term_count() < y.term_count(); });
  MultiPoly g(amb);
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (!g.is_zero() && divide_exact(p, g)) continue;
    g = gcd(g, p);
    if (g.is_constant()) break;
  }
  return g.is_zero() ? g : monic(g);
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  require_same_ambient(a.ambient(), b.ambient(), "gcd");
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  const Ambient& amb = a.ambient();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(amb, 1);

  // A variable only one side involves cannot occur in the gcd.
  for (std::size_t k = 0; k < amb.size(); ++k) {
    if (a.involves(k) && !b.involves(k)) return gcd(content_in(a, k), b);
    if (b.involves(k) && !a.involves(k)) return gcd(a, content_in(b, k));
  }

  // Degree bounds per variable; all zero certifies coprimality, one zero
  // removes that variable.
  std::vector<int> bounds(amb.size(), 0);
  std::optional<std::size_t> main, eliminate;
  bool divides = true;
  const MultiPoly& small = a.term_count() <= b.term_count() ? a : b;
  const MultiPoly& large = a.term_count() <= b.term_count() ? b : a;
  for (std::size_t k = 0; k < amb.size(); ++k) {
    if (!a.involves(k)) continue;
    bounds[k] = gcd_degree_bound(a, b, k);
    if (bounds[k] == 0 && !eliminate) eliminate = k;
    if (bounds[k] != small.degree_in(k)) divides = false;
    if (!main || std::min(a.degree_in(k), b.degree_in(k)) < std::min(a.degree_in(*main), b.degree_in(*main))) main = k;
  }
  if (std::all_of(bounds.begin(), bounds.end(), [](int d) { return d == 0; })) return MultiPoly::constant(amb, 1);
  if (eliminate) {
    std::vector<MultiPoly> cs = coefficients_in(a, *eliminate);
    for (auto& c : coefficients_in(b, *eliminate)) cs.push_back(std::move(c));
    return gcd_of(std::move(cs), amb);
  }
  if (divides && divide_exact(large, small)) return monic(small);

  const std::size_t v = *main;
  const MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly pa = exact_quotient(a, ca), pb = exact_quotient(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  MultiPoly g(amb);
  for (;;) {
    const MultiPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (!r.involves(v)) {
      g = MultiPoly::constant(amb, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  return monic(gcd(ca, cb) * primitive_in(g, v));
}

// UPoly

UPoly::UPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::monomial(int k, const GaussianRational& c) {
  std::vector<GaussianRational> v(static_cast<std::size_t>(k + 1));
  v.back() = c;
  return UPoly(std::move(v));
}

GaussianRational UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return {};
  return c_[static_cast<std::size_t>(k)];
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const GaussianRational& c) {
  for (auto& a : c_) a *= c;
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussianRational> out(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
  return UPoly(std::move(out));
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + UPoly::constant(*it);
  return acc;
}

std::string UPoly::str(std::string_view var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << (c_[k].is_real() ? c_[k].str() : "(" + c_[k].str() + ")");
    if (k >= 1) os << "*" << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

UPoly antiderivative_zeta(const UPoly& u) {
  if (u.is_zero()) return {};
  std::vector<GaussianRational> out(u.coeffs().size() + 1);
  for (std::size_t k = 0; k < u.coeffs().size(); ++k)
    out[k + 1] = u.coeffs()[k] / GaussianRational(static_cast<long>(k + 1));
  return UPoly(std::move(out));
}

std::vector<ComplexFloat> float_coeffs(const UPoly& u) {
  std::vector<ComplexFloat> out;
  out.reserve(u.coeffs().size());
  for (const auto& c : u.coeffs()) out.push_back(c.to_complex());
  return out;
}

ComplexFloat horner(const std::vector<ComplexFloat>& coeffs, ComplexFloat t) {
  ComplexFloat acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double sup_bound_on_disc(const UPoly& u, double r) {
  double acc = 0.0, rk = 1.0;
  for (const auto& c : u.coeffs()) {
    acc += std::abs(c.to_complex()) * rk;
    rk *= r;
  }
  return acc;
}

double derivative_bound_on_disc(const UPoly& u, double r) {
  double acc = 0.0, rk = 1.0;
  for (std::size_t k = 1; k < u.coeffs().size(); ++k) {
    acc += static_cast<double>(k) * std::abs(u.coeffs()[k].to_complex()) * rk;
    rk *= r;
  }
  return acc;
}

CircleSup sup_on_circle(const UPoly& u, double r, int samples) {
  if (!(r > 0.0)) throw std::invalid_argument("sup_on_circle: radius must be positive");
  if (samples < 8) throw std::invalid_argument("sup_on_circle: need at least 8 samples");
  const auto coeffs = float_coeffs(u);
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / samples;
    best = std::max(best, std::abs(horner(coeffs, std::polar(r, theta))));
  }
  const double arc = std::numbers::pi * r / samples;
  return {best, best + arc * derivative_bound_on_disc(u, r)};
}

CircleSup sup_on_circle(const UPoly& u, double r) { return sup_on_circle(u, r, std::max(64, 8 * u.degree())); }

// PolyCurve

PolyCurve::PolyCurve() : PolyCurve(standard_ambient(), std::vector<UPoly>(4)) {}

PolyCurve::PolyCurve(Ambient ambient, std::vector<UPoly> components)
    : ambient_(std::move(ambient)), comps_(std::move(components)) {
  if (comps_.size() != ambient_.size()) throw AmbientError("curve component count differs from ambient size");
}

int PolyCurve::max_degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.degree());
  return d;
}

bool PolyCurve::is_constant() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const UPoly& u) { return u.is_constant(); });
}

PolyCurve PolyCurve::derivative() const {
  std::vector<UPoly> d;
  d.reserve(comps_.size());
  for (const auto& c : comps_) d.push_back(c.derivative());
  return {ambient_, std::move(d)};
}

PolyCurve PolyCurve::reparametrize(const GaussianRational& a, const GaussianRational& b) const {
  const UPoly inner({b, a});
  std::vector<UPoly> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.compose(inner));
  return {ambient_, std::move(out)};
}

namespace {

/// Lazily grown power table base^0, base^1, ...
template <typename T>
class PowerCache {
 public:
  PowerCache(T one, T base) : base_(std::move(base)) { powers_.push_back(std::move(one)); }
  const T& get(std::size_t k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * base_);
    return powers_[k];
  }

 private:
  T base_;
  std::vector<T> powers_;
};

}  // namespace

UPoly compose_curve(const MultiPoly& p, const PolyCurve& gamma) {
  const Ambient& amb = p.ambient();
  std::vector<PowerCache<UPoly>> caches;
  caches.reserve(amb.size());
  for (std::size_t i = 0; i < amb.size(); ++i) {
    auto idx = gamma.ambient().index_of(amb.name(i));
    if (!idx) throw AmbientError("compose_curve: curve lacks coordinate '" + amb.name(i) + "'");
    caches.emplace_back(UPoly::constant(1), gamma[*idx]);
  }
  UPoly acc;
  for (const auto& [e, c] : p.terms()) {
    UPoly t = UPoly::constant(c);
    for (std::size_t i = 0; i < amb.size(); ++i)
      if (e[i]) t = t * caches[i].get(e[i]);
    acc += t;
  }
  return acc;
}

// PolyMap

PolyMap::PolyMap(Ambient source, Ambient target, std::vector<MultiPoly> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  if (comps_.size() != target_.size()) throw AmbientError("map component count differs from target dimension");
  for (const auto& c : comps_) require_same_ambient(c.ambient(), source_, "PolyMap component");
}

PolyMap PolyMap::identity(const Ambient& ambient) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < ambient.size(); ++i) comps.push_back(MultiPoly::variable(ambient, i));
  return {ambient, ambient, std::move(comps)};
}

int PolyMap::max_degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.total_degree());
  return d;
}

MultiPoly compose(const MultiPoly& p, const PolyMap& f) {
  require_same_ambient(p.ambient(), f.target(), "compose");
  std::vector<PowerCache<MultiPoly>> caches;
  caches.reserve(f.target().size());
  for (std::size_t i = 0; i < f.target().size(); ++i)
    caches.emplace_back(MultiPoly::constant(f.source(), 1), f[i]);
  MultiPoly acc(f.source());
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(f.source(), c);
    for (std::size_t i = 0; i < f.target().size(); ++i)
      if (e[i]) t = t * caches[i].get(e[i]);
    acc += t;
  }
  return acc;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  require_same_ambient(outer.source(), inner.target(), "map compose");
  std::vector<MultiPoly> comps;
  comps.reserve(outer.target().size());
  for (const auto& c : outer.components()) comps.push_back(compose(c, inner));
  return {inner.source(), outer.target(), std::move(comps)};
}

}  // namespace engel
