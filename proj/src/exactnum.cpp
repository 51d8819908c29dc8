#include "engel/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace engel {

Rational dyadic(int k) {
  mpz_class p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  Rational q(mpz_class(1), p);
  q.canonicalize();
  return q;
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  std::string text = strip_spaces(raw);
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den))
    throw std::invalid_argument("malformed rational: '" + std::string(raw) + "'");
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(raw) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw std::domain_error("non-finite value cannot become exact");
  return {Rational(re), Rational(im)};
}

GaussianRational GaussianRational::parse(std::string_view raw) {
  std::string text = strip_spaces(raw);
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  GaussianRational acc;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = pos + 1;
    while (next < text.size() && text[next] != '+' && text[next] != '-') ++next;
    std::string term = text.substr(pos, next - pos);
    pos = next;
    bool imaginary = false;
    if (!term.empty() && term.back() == 'i') {
      imaginary = true;
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
    }
    Rational value;
    if (term.empty() || term == "+") {
      if (!imaginary) throw std::invalid_argument("malformed complex literal: '" + std::string(raw) + "'");
      value = 1;
    } else if (term == "-") {
      if (!imaginary) throw std::invalid_argument("malformed complex literal: '" + std::string(raw) + "'");
      value = -1;
    } else {
      try {
        value = parse_rational(term);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed complex literal: '" + std::string(raw) + "'");
      }
    }
    acc += imaginary ? GaussianRational(0, value) : GaussianRational(value, 0);
  }
  return acc;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (abs(im_) == 1)
    imag = "i";
  else
    imag = Rational(abs(im_)).get_str() + "*i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  Rational n = o.abs2();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::optional<GaussianRational> gaussian_arith(const GaussianRational& a, const GaussianRational& b,
                                               ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
    case ArithOp::Div:
      if (b.is_zero()) return std::nullopt;
      return a / b;
  }
  return std::nullopt;
}

namespace {

std::strong_ordering order_of(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering cmp_abs_to_dyadic(const GaussianRational& c, int k) {
  return order_of(cmp(c.abs2(), dyadic(2 * k)));
}

std::strong_ordering cmp_abs_to(const GaussianRational& c, const Rational& radius) {
  if (sgn(radius) < 0) throw std::invalid_argument("negative radius");
  return order_of(cmp(c.abs2(), radius * radius));
}

ComplexFloat require_finite(ComplexFloat c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw std::domain_error("non-finite complex value");
  return c;
}

ExactPoint make_point(std::initializer_list<GaussianRational> coords) {
  ExactPoint p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) p(i++) = c;
  return p;
}

ExactPoint parse_point(std::string_view text) {
  std::vector<GaussianRational> coords;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    coords.push_back(GaussianRational::parse(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  ExactPoint p(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) p(static_cast<Eigen::Index>(i)) = coords[i];
  return p;
}

std::string format_point(const ExactPoint& p) {
  std::string out;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += p(i).str();
  }
  return out;
}

FloatPoint to_float(const ExactPoint& p) {
  FloatPoint f(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) f(i) = p(i).to_complex();
  return f;
}

}  // namespace engel
