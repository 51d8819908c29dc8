#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "engel/exactnum.hpp"

namespace engel {

inline constexpr std::size_t kMaxVars = 5;

/// Dense exponent vector; entries beyond the ambient size stay zero.
using Exponent = std::array<std::uint16_t, kMaxVars>;

int total_degree(const Exponent& e);

/// Graded lexicographic order: total degree first, then lexicographic with
/// the first coordinate most significant.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Raised when two objects over different coordinate lists are combined, or
/// an unknown coordinate name is requested.
class AmbientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered coordinate names shared by polynomials, fields and forms.
class Ambient {
 public:
  Ambient(std::vector<std::string> names);  // NOLINT(google-explicit-constructor)
  Ambient(std::initializer_list<std::string> names) : Ambient(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws AmbientError for unknown names.
  std::size_t require_index(std::string_view name) const;

  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }
  friend bool operator!=(const Ambient& a, const Ambient& b) { return !(a == b); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// (w, x, y, z), the coordinates of the standard Engel model.
const Ambient& standard_ambient();

void require_same_ambient(const Ambient& a, const Ambient& b, const char* what);

/// Polynomial over GaussianRational in the variables of an Ambient.
/// Zero coefficients are never stored; terms iterate in graded-lex order.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, GaussianRational, GrlexLess>;

  explicit MultiPoly(Ambient ambient) : ambient_(std::move(ambient)) {}

  static MultiPoly constant(const Ambient& ambient, const GaussianRational& c);
  static MultiPoly variable(const Ambient& ambient, std::size_t index);
  static MultiPoly variable(const Ambient& ambient, std::string_view name);
  static MultiPoly monomial(const Ambient& ambient, const Exponent& e, const GaussianRational& c = 1);

  const Ambient& ambient() const { return ambient_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  GaussianRational coefficient(const Exponent& e) const;
  /// Coefficient of the grlex-largest term; zero for the zero polynomial.
  GaussianRational leading_coefficient() const;

  /// Accumulates c into the coefficient of e, dropping it if it cancels.
  void add_term(const Exponent& e, const GaussianRational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussianRational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
  friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.ambient_ == b.ambient_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

 private:
  Ambient ambient_;
  Terms terms_;
};

enum class PolyOp { Add, Sub, Mul };

/// Ring arithmetic; throws AmbientError when the ambients differ.
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op);
MultiPoly scale(const MultiPoly& p, const GaussianRational& c);
MultiPoly pow(const MultiPoly& p, unsigned k);

MultiPoly differentiate(const MultiPoly& p, std::size_t var);
/// Throws AmbientError for an unknown coordinate name.
MultiPoly differentiate(const MultiPoly& p, std::string_view var);

/// Largest monomial dividing every term, as an exponent vector.
Exponent monomial_content(const MultiPoly& p);
/// Divides every term by x^e; e must divide each term.
MultiPoly divide_monomial(const MultiPoly& p, const Exponent& e);

/// Exact quotient p / q, or std::nullopt when q does not divide p.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q);

/// Greatest common divisor with leading coefficient one; gcd(0, 0) = 0.
/// Recursive in the variables, primitive pseudo-remainder sequences.
MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);

template <typename Scalar>
Scalar evaluate(const MultiPoly& p, const VectorX<Scalar>& point) {
  const std::size_t n = p.ambient().size();
  if (static_cast<std::size_t>(point.size()) != n)
    throw AmbientError("evaluate: point dimension does not match ambient size");
  std::array<std::vector<Scalar>, kMaxVars> powers;
  for (std::size_t i = 0; i < n; ++i) {
    const int d = p.degree_in(i);
    powers[i].reserve(static_cast<std::size_t>(d + 1));
    powers[i].push_back(Scalar(1));
    for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point(static_cast<Eigen::Index>(i)));
  }
  Scalar acc(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar t = convert<Scalar>(c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) t *= powers[i][e[i]];
    acc += t;
  }
  return acc;
}

/// Univariate polynomial in the disc parameter zeta; dense, trailing zeros
/// trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<GaussianRational> coeffs);
  UPoly(std::initializer_list<GaussianRational> coeffs) : UPoly(std::vector<GaussianRational>(coeffs)) {}

  static UPoly constant(const GaussianRational& c) { return UPoly({c}); }
  static UPoly monomial(int k, const GaussianRational& c);
  static UPoly zeta() { return UPoly({0, 1}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  GaussianRational coeff(int k) const;
  const std::vector<GaussianRational>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const GaussianRational& c);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const GaussianRational& c) { return a *= c; }
  friend UPoly operator*(const GaussianRational& c, UPoly a) { return a *= c; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly derivative() const;
  /// u(inner(zeta)).
  UPoly compose(const UPoly& inner) const;

  template <typename Scalar>
  Scalar evaluate(const Scalar& t) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + convert<Scalar>(*it);
    return acc;
  }

  std::string str(std::string_view var = "zeta") const;
  friend std::ostream& operator<<(std::ostream& os, const UPoly& u) { return os << u.str(); }

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

/// Primitive with zero constant term.
UPoly antiderivative_zeta(const UPoly& u);

/// Floating copy of the coefficients, for fast repeated evaluation.
std::vector<ComplexFloat> float_coeffs(const UPoly& u);
ComplexFloat horner(const std::vector<ComplexFloat>& coeffs, ComplexFloat t);

/// sum |a_k| r^k, an upper bound for |u| on the closed disc of radius r.
double sup_bound_on_disc(const UPoly& u, double r);
/// sum k |a_k| r^(k-1), an upper bound for |u'| on the closed disc of radius r.
double derivative_bound_on_disc(const UPoly& u, double r);

struct CircleSup {
  double numeric_max = 0.0;
  double certified_upper = 0.0;
};

/// Sampled maximum of |u| on |zeta| = r together with a rigorous upper bound:
/// every circle point lies within an arc of length pi r / samples of a
/// sample, so the sampled maximum can be exceeded by at most that arc times
/// the coefficient-sum bound of |u'|.
CircleSup sup_on_circle(const UPoly& u, double r, int samples);
/// Uses samples = max(64, 8 deg u).
CircleSup sup_on_circle(const UPoly& u, double r);

/// A polynomial curve zeta -> (u_1(zeta), ..., u_n(zeta)); component i is the
/// coordinate named ambient.name(i).
class PolyCurve {
 public:
  /// The zero curve in the standard ambient.
  PolyCurve();
  PolyCurve(Ambient ambient, std::vector<UPoly> components);

  const Ambient& ambient() const { return ambient_; }
  std::size_t size() const { return comps_.size(); }
  const UPoly& operator[](std::size_t i) const { return comps_[i]; }
  const UPoly& component(std::string_view name) const { return comps_[ambient_.require_index(name)]; }
  const std::vector<UPoly>& components() const { return comps_; }

  int max_degree() const;
  bool is_constant() const;
  PolyCurve derivative() const;
  /// zeta -> f(a zeta + b).
  PolyCurve reparametrize(const GaussianRational& a, const GaussianRational& b) const;
  ExactPoint basepoint() const { return evaluate(GaussianRational(0)); }

  template <typename Scalar>
  VectorX<Scalar> evaluate(const Scalar& t) const {
    VectorX<Scalar> out(static_cast<Eigen::Index>(comps_.size()));
    for (std::size_t i = 0; i < comps_.size(); ++i) out(static_cast<Eigen::Index>(i)) = comps_[i].evaluate(t);
    return out;
  }

  friend bool operator==(const PolyCurve& a, const PolyCurve& b) {
    return a.ambient_ == b.ambient_ && a.comps_ == b.comps_;
  }

 private:
  Ambient ambient_;
  std::vector<UPoly> comps_;
};

/// p(gamma(zeta)); gamma's coordinates are matched to p's ambient by name.
UPoly compose_curve(const MultiPoly& p, const PolyCurve& gamma);

/// Polynomial map source -> target: one component per target coordinate,
/// each a polynomial on the source ambient.
class PolyMap {
 public:
  PolyMap(Ambient source, Ambient target, std::vector<MultiPoly> components);
  static PolyMap identity(const Ambient& ambient);

  const Ambient& source() const { return source_; }
  const Ambient& target() const { return target_; }
  const MultiPoly& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<MultiPoly>& components() const { return comps_; }
  int max_degree() const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.comps_ == b.comps_;
  }

 private:
  Ambient source_;
  Ambient target_;
  std::vector<MultiPoly> comps_;
};

/// p(F(q)) for p on F.target(); result lives on F.source().
MultiPoly compose(const MultiPoly& p, const PolyMap& f);
/// outer o inner.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

}  // namespace engel
