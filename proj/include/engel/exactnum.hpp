#pragma once

#include <compare>
#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace engel {

using Rational = mpq_class;
using ComplexFloat = std::complex<double>;

/// Exact 2^k for any integer k.
Rational dyadic(int k);

/// Rational parsed from "a", "-a/b", "+a/b". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Complex number with rational real and imaginary parts.
///
/// Both parts are kept in lowest terms with positive denominators, so equal
/// values always share one representation and `==` is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  /// Exact binary64 -> rational conversion. Search heuristics only; core
  /// geometry never converts floats back into exact values.
  static GaussianRational from_double(double re, double im = 0.0);
  static GaussianRational from_complex(ComplexFloat c) { return from_double(c.real(), c.imag()); }

  /// Parses the textual form "a/b+c/d*i" (signs optional, either part may be
  /// omitted, "i" alone means 1*i). Throws std::invalid_argument.
  static GaussianRational parse(std::string_view text);

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |c|^2 = re^2 + im^2, exact.
  Rational abs2() const { return re_ * re_ + im_ * im_; }
  /// Upper bound |re| + |im| >= |c|, exact and cheap.
  Rational abs_l1() const { return abs(re_) + abs(im_); }

  ComplexFloat to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string str() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws std::domain_error on a zero divisor.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Lexicographic total order on (re, im); used only for deterministic
  /// tie-breaks and sorted containers, not as a field order.
  friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& c) { return os << c.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const ComplexFloat& c) { return c == ComplexFloat(0.0, 0.0); }

enum class ArithOp { Add, Sub, Mul, Div };

/// Field arithmetic with an explicit error value: std::nullopt for division
/// by zero.
std::optional<GaussianRational> gaussian_arith(const GaussianRational& a, const GaussianRational& b,
                                               ArithOp op);

inline Rational abs2(const GaussianRational& c) { return c.abs2(); }

/// Exact trichotomy of |c| against 2^k, decided on |c|^2 versus 4^k.
std::strong_ordering cmp_abs_to_dyadic(const GaussianRational& c, int k);

/// Exact trichotomy of |c| against a nonnegative rational radius.
std::strong_ordering cmp_abs_to(const GaussianRational& c, const Rational& radius);

/// Throws std::domain_error if either component is NaN or infinite.
ComplexFloat require_finite(ComplexFloat c);

template <typename Scalar>
Scalar convert(const GaussianRational& c);

template <>
inline GaussianRational convert<GaussianRational>(const GaussianRational& c) {
  return c;
}
template <>
inline ComplexFloat convert<ComplexFloat>(const GaussianRational& c) {
  return c.to_complex();
}

}  // namespace engel

namespace Eigen {

template <>
struct NumTraits<engel::GaussianRational> : GenericNumTraits<engel::GaussianRational> {
  using Real = engel::GaussianRational;
  using NonInteger = engel::GaussianRational;
  using Nested = engel::GaussianRational;
  using Literal = engel::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
};

}  // namespace Eigen

namespace engel {

/// Column vectors over an exact or floating scalar; coordinates follow the
/// owning ambient list.
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ExactPoint = VectorX<GaussianRational>;
using FloatPoint = VectorX<ComplexFloat>;

ExactPoint make_point(std::initializer_list<GaussianRational> coords);
/// Parses "1,0,1/2+i,0". Throws std::invalid_argument.
ExactPoint parse_point(std::string_view text);
std::string format_point(const ExactPoint& p);
FloatPoint to_float(const ExactPoint& p);

}  // namespace engel
