#include "engel/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace engel {

namespace {

void require_nonzero(const Rational& R) {
  if (sgn(R) == 0) throw std::invalid_argument("R must be nonzero");
}

bool near(ComplexFloat a, ComplexFloat b, double tau) { return std::abs(a - b) <= tau * (1.0 + std::abs(b)); }

}  // namespace

TripleSet::TripleSet(GaussianRational a, GaussianRational b, GaussianRational c)
    : elements{std::move(a), std::move(b), std::move(c)} {
  if (elements[0] == elements[1] || elements[0] == elements[2] || elements[1] == elements[2])
    throw std::invalid_argument("TripleSet: elements must be pairwise distinct");
}

TripleSet TripleSet::standard(const Rational& R) {
  require_nonzero(R);
  return {GaussianRational(0), GaussianRational(1), GaussianRational(0, R)};
}

std::optional<AffineWitness> affine_bijection_exists(const TripleSet& s, const TripleSet& t) {
  std::array<int, 3> perm{0, 1, 2};
  int index = 0;
  do {
    const auto& src = s.elements;
    const GaussianRational& t0 = t.elements[perm[0]];
    const GaussianRational& t1 = t.elements[perm[1]];
    const GaussianRational a = (t1 - t0) / (src[1] - src[0]);
    const GaussianRational b = t0 - a * src[0];
    if (!a.is_zero() && a * src[2] + b == t.elements[perm[2]]) return AffineWitness{a, b, index, perm};
    ++index;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

AffineWitness invert(const AffineWitness& w) {
  if (w.a.is_zero()) throw std::invalid_argument("invert: a = 0");
  AffineWitness out;
  out.a = GaussianRational(1) / w.a;
  out.b = -(w.b / w.a);
  for (int k = 0; k < 3; ++k) out.images[w.images[k]] = k;
  std::array<int, 3> perm{0, 1, 2};
  out.permutation = 0;
  while (perm != out.images) {
    std::next_permutation(perm.begin(), perm.end());
    ++out.permutation;
  }
  return out;
}

bool verify_witness(const AffineWitness& w, const TripleSet& s, const TripleSet& t) {
  if (w.a.is_zero()) return false;
  std::array<int, 3> sorted = w.images;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) return false;
  for (int k = 0; k < 3; ++k)
    if (w(s.elements[k]) != t.elements[w.images[k]]) return false;
  return true;
}

bool vr_membership(const Rational& R, const ExactPoint& p) {
  require_nonzero(R);
  if (p.size() != 4) throw std::invalid_argument("vr_membership: point must be in C^4");
  const GaussianRational& x = p(1);
  return x == GaussianRational(0) || x == GaussianRational(1) || x == GaussianRational(0, R);
}

bool cr_membership(const Rational& R, const ExactPoint& p) {
  require_nonzero(R);
  if (p.size() != 2) throw std::invalid_argument("cr_membership: point must be in C^2");
  return shell_membership(ShellSet::CR(R), p).in;
}

ApproxMembership vr_membership(double R, const FloatPoint& p, double tau) {
  if (R == 0.0 || !std::isfinite(R)) throw std::invalid_argument("R must be finite and nonzero");
  if (p.size() != 4) throw std::invalid_argument("vr_membership: point must be in C^4");
  const ComplexFloat x = p(1);
  return {near(x, 0.0, tau) || near(x, 1.0, tau) || near(x, ComplexFloat(0.0, R), tau), false};
}

ApproxMembership cr_membership(double R, const FloatPoint& p, double tau) {
  if (R == 0.0 || !std::isfinite(R)) throw std::invalid_argument("R must be finite and nonzero");
  if (p.size() != 2) throw std::invalid_argument("cr_membership: point must be in C^2");
  const ComplexFloat y = p(1);
  const bool in = near(y, 0.0, tau) || near(y, 1.0, tau) || near(y, ComplexFloat(0.0, R), tau) || near(p(0), 0.0, tau);
  return {in, false};
}

std::vector<std::pair<Rational, Rational>> moduli_grid() {
  const std::array<Rational, 5> values = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& r : values)
    for (const auto& rp : values)
      if (r != rp) out.emplace_back(r, rp);
  return out;
}

}  // namespace engel
