#include "engel/steering.hpp"

#include "engel/linalg.hpp"

namespace engel {

namespace {

/// Falling factorial k (k-1) ... (k-d+1).
long falling(int k, int d) {
  long out = 1;
  for (int j = 0; j < d; ++j) out *= k - j;
  return out;
}

GaussianRational power(const GaussianRational& base, int e) {
  GaussianRational out(1);
  for (int j = 0; j < e; ++j) out = out * base;
  return out;
}

}  // namespace

Jet2 jet_of(const ExactPoint& p) {
  if (p.size() != 4) throw std::invalid_argument("jet_of: point must be in C^4");
  return {p(2), p(3), p(0)};
}

PathSegment jet_lift(const UPoly& yx, const GaussianRational& x0, const GaussianRational& x1) {
  if (x0 == x1) throw PreconditionError("jet_lift: x0 = x1");
  const UPoly x({x0, x1 - x0});
  const UPoly dy = yx.derivative();
  const UPoly d2y = dy.derivative();
  return {PolyCurve(standard_ambient(), {d2y.compose(x), x, yx.compose(x), dy.compose(x)}), Rational(0),
          Rational(1)};
}

UPoly hermite_quintic(const GaussianRational& x0, const Jet2& j0, const GaussianRational& x1, const Jet2& j1) {
  if (x0 == x1) throw PreconditionError("hermite_quintic: x0 = x1");
  // Unknowns c_k of y = sum c_k (x - x0)^k; rows are the d-th derivatives at 0 and at h.
  const GaussianRational h = x1 - x0;
  MatrixX<GaussianRational> a = MatrixX<GaussianRational>::Zero(6, 6);
  VectorX<GaussianRational> b(6);
  const GaussianRational rhs[6] = {j0.value, j0.first, j0.second, j1.value, j1.first, j1.second};
  for (int d = 0; d < 3; ++d) {
    a(d, d) = GaussianRational(falling(d, d));
    for (int k = d; k < 6; ++k) a(3 + d, k) = GaussianRational(falling(k, d)) * power(h, k - d);
  }
  for (int r = 0; r < 6; ++r) b(r) = rhs[r];
  const auto c = exact_solve(a, b);
  if (!c) throw std::logic_error("hermite_quintic: singular system for distinct nodes");
  return UPoly(std::vector<GaussianRational>(c->begin(), c->end())).compose(UPoly({-x0, 1}));
}

HorizontalPath hermite_steer(const ExactPoint& p, const ExactPoint& q) {
  if (p.size() != 4 || q.size() != 4) throw std::invalid_argument("hermite_steer: points must be in C^4");
  const Jet2 jp = jet_of(p), jq = jet_of(q);
  const GaussianRational xp = p(1), xq = q(1);
  HorizontalPath path;
  if (xp != xq) {
    path.segments.push_back(jet_lift(hermite_quintic(xp, jp, xq, jq), xp, xq));
    return path;
  }
  const GaussianRational xm = xp + GaussianRational(1);
  const GaussianRational half(Rational(1, 2));
  const Jet2 jm{(jp.value + jq.value) * half, (jp.first + jq.first) * half, (jp.second + jq.second) * half};
  path.segments.push_back(jet_lift(hermite_quintic(xp, jp, xm, jm), xp, xm));
  path.segments.push_back(jet_lift(hermite_quintic(xm, jm, xq, jq), xm, xq));
  return path;
}

bool path_endpoint_check(const HorizontalPath& path, const ExactPoint& p, const ExactPoint& q) {
  if (path.segments.empty()) return p == q;
  if (path.segments.front().start() != p || path.segments.back().end() != q) return false;
  for (std::size_t i = 1; i < path.segments.size(); ++i)
    if (path.segments[i - 1].end() != path.segments[i].start()) return false;
  return true;
}

bool path_tangent(const HorizontalPath& path) {
  const auto forms = forms_for(path.model);
  for (const auto& s : path.segments)
    if (!verify_tangency(s.curve, forms).tangent) return false;
  return true;
}

HorizontalPath reverse(const HorizontalPath& path) {
  HorizontalPath out;
  out.model = path.model;
  for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it)
    out.segments.push_back({it->curve.reparametrize(-1, GaussianRational(it->t0 + it->t1)), it->t0, it->t1});
  return out;
}

}  // namespace engel
