#include "engel/obstacles.hpp"

#include <cmath>
#include <numbers>

namespace engel {

std::string to_string(ShellKind k) {
  switch (k) {
    case ShellKind::Empty:
      return "empty";
    case ShellKind::A:
      return "A";
    case ShellKind::B:
      return "B";
    case ShellKind::K3:
      return "K3";
    case ShellKind::KW:
      return "KW";
    case ShellKind::Ln:
      return "Ln";
    case ShellKind::CR:
      return "CR";
  }
  return "unknown";
}

ShellKind parse_shell_kind(std::string_view name) {
  for (ShellKind k : {ShellKind::Empty, ShellKind::A, ShellKind::B, ShellKind::K3, ShellKind::KW, ShellKind::Ln,
                      ShellKind::CR})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown obstacle kind '" + std::string(name) + "'");
}

std::string to_string(AvoidStatus s) {
  switch (s) {
    case AvoidStatus::Certified:
      return "certified";
    case AvoidStatus::Intersects:
      return "intersects";
    case AvoidStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

ShellSet ShellSet::empty() { return {}; }

ShellSet ShellSet::A() {
  ShellSet s;
  s.kind = ShellKind::A;
  s.block = {0, 1, 3};
  s.caps = {{2, 3, 1}};
  return s;
}

ShellSet ShellSet::B() {
  ShellSet s;
  s.kind = ShellKind::B;
  s.block = {0, 1};
  s.caps = {{2, 5, 2}, {3, 3, 1}};
  return s;
}

ShellSet ShellSet::K3(const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon > Rational(1, 2))
    throw std::invalid_argument("K3: epsilon must lie in (0, 1/2] so that a_i < b_i <= a_(i+1)");
  ShellSet s;
  s.kind = ShellKind::K3;
  s.block = {0, 1};
  s.caps = {{2, 5, 2}};
  s.epsilon = epsilon;
  return s;
}

ShellSet ShellSet::KW() {
  ShellSet s;
  s.kind = ShellKind::KW;
  s.block = {0, 2};
  s.caps = {{3, 1, 0}};
  return s;
}

ShellSet ShellSet::Ln(int n) {
  if (n < 1) throw std::invalid_argument("Ln: n must be at least 1");
  ShellSet s;
  s.kind = ShellKind::Ln;
  s.n = n;
  return s;
}

ShellSet ShellSet::CR(const Rational& R) {
  if (sgn(R) == 0) throw std::invalid_argument("CR: R must be nonzero");
  ShellSet s;
  s.kind = ShellKind::CR;
  s.R = R;
  return s;
}

bool ShellSet::dyadic() const {
  return kind == ShellKind::A || kind == ShellKind::B || kind == ShellKind::K3 || kind == ShellKind::KW;
}

Rational ShellSet::inner_radius(int i) const { return engel::dyadic(i - 1) - epsilon; }
Rational ShellSet::outer_radius(int i) const { return engel::dyadic(i - 1) + epsilon; }

namespace {

void require_dimension(const ShellSet& s, Eigen::Index size) {
  if (static_cast<std::size_t>(size) != s.dimension())
    throw std::invalid_argument("shell_membership: point has " + std::to_string(size) + " coordinates, set " +
                                to_string(s.kind) + " needs " + std::to_string(s.dimension()));
}

GaussianRational cr_value(const ShellSet& s, int branch) {
  switch (branch) {
    case 1:
      return 0;
    case 2:
      return 1;
    default:
      return {Rational(0), s.R};
  }
}

}  // namespace

Membership shell_membership(const ShellSet& s, const ExactPoint& p) {
  require_dimension(s, p.size());
  switch (s.kind) {
    case ShellKind::Empty:
      return {};
    case ShellKind::Ln: {
      const GaussianRational& x = p(1);
      if (!x.is_real() || x.real().get_den() != 1) return {};
      const mpz_class& k = x.real().get_num();
      if (k >= 1 && k <= s.n) return {true, static_cast<int>(k.get_si())};
      return {};
    }
    case ShellKind::CR: {
      for (int b = 1; b <= 3; ++b)
        if (p(1) == cr_value(s, b)) return {true, b};
      if (p(0).is_zero()) return {true, 4};
      return {};
    }
    default:
      break;
  }
  Rational m2 = 0;
  for (auto c : s.block) m2 = std::max(m2, abs2(p(static_cast<Eigen::Index>(c))));
  for (int i = 1;; ++i) {
    const Rational lo = s.inner_radius(i);
    if (lo * lo > m2) break;
    const Rational hi = s.outer_radius(i);
    if (m2 > hi * hi) continue;
    bool caps = true;
    for (const auto& c : s.caps)
      caps = caps && abs2(p(static_cast<Eigen::Index>(c.coord))) <= dyadic(2 * ShellSet::cap_exponent(c, i));
    if (caps) return {true, i};
  }
  return {};
}

Membership shell_membership(const ShellSet& s, const FloatPoint& p, double tau) {
  require_dimension(s, p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) require_finite(p(k));
  switch (s.kind) {
    case ShellKind::Empty:
      return {};
    case ShellKind::Ln: {
      const ComplexFloat x = p(1);
      const double k = std::round(x.real());
      if (k >= 1 && k <= s.n && std::abs(x - k) <= tau * k) return {true, static_cast<int>(k)};
      return {};
    }
    case ShellKind::CR: {
      for (int b = 1; b <= 3; ++b) {
        const ComplexFloat v = cr_value(s, b).to_complex();
        if (std::abs(p(1) - v) <= tau * std::max(1.0, std::abs(v))) return {true, b};
      }
      if (std::abs(p(0)) <= tau) return {true, 4};
      return {};
    }
    default:
      break;
  }
  double m = 0.0;
  for (auto c : s.block) m = std::max(m, std::abs(p(static_cast<Eigen::Index>(c))));
  for (int i = 1;; ++i) {
    const double lo = s.inner_radius(i).get_d();
    if (lo * (1 - tau) > m) break;
    const double hi = s.outer_radius(i).get_d();
    if (m > hi * (1 + tau)) continue;
    bool caps = true;
    for (const auto& c : s.caps)
      caps = caps &&
             std::abs(p(static_cast<Eigen::Index>(c.coord))) <= std::ldexp(1.0 + tau, ShellSet::cap_exponent(c, i));
    if (caps) return {true, i};
  }
  return {};
}

namespace {

/// Float picture of a curve near a cell: values at the center and a bound on
/// the deviation of each coordinate over the cell.
struct Cell {
  std::vector<ComplexFloat> value;
  std::vector<double> dev;
};

struct CurveData {
  std::vector<std::vector<ComplexFloat>> coeffs;
  std::vector<UPoly> polys;
  /// Absolute slack covering float rounding in Horner evaluation.
  std::vector<double> slack;
};

CurveData curve_data(const PolyCurve& curve, double r) {
  CurveData d;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    d.coeffs.push_back(float_coeffs(curve[k]));
    d.polys.push_back(curve[k]);
    d.slack.push_back(1e-12 * (sup_bound_on_disc(curve[k], 2 * r) + 1.0));
  }
  return d;
}

int relevant_layers(const ShellSet& s, const CurveData& d, double r) {
  switch (s.kind) {
    case ShellKind::Empty:
      return 0;
    case ShellKind::Ln:
      return s.n;
    case ShellKind::CR:
      return 4;
    default:
      break;
  }
  double upper = 0.0;
  for (auto c : s.block) upper = std::max(upper, sup_bound_on_disc(d.polys[c], r) + d.slack[c]);
  upper *= 1 + 1e-12;
  int layers = 0;
  while (s.inner_radius(layers + 1).get_d() <= upper) ++layers;
  return layers;
}

bool cell_safe(const ShellSet& s, int layer, const Cell& c) {
  auto margin = [&](std::size_t k, const ComplexFloat& target) { return std::abs(c.value[k] - target) - c.dev[k]; };
  switch (s.kind) {
    case ShellKind::Empty:
      return true;
    case ShellKind::Ln:
      return margin(1, static_cast<double>(layer)) > 0;
    case ShellKind::CR:
      if (layer == 4) return margin(0, 0.0) > 0;
      return margin(1, cr_value(s, layer).to_complex()) > 0;
    default:
      break;
  }
  const double lo = s.inner_radius(layer).get_d(), hi = s.outer_radius(layer).get_d();
  double upper = 0.0, lower = 0.0;
  for (auto k : s.block) {
    upper = std::max(upper, std::abs(c.value[k]) + c.dev[k]);
    lower = std::max(lower, std::abs(c.value[k]) - c.dev[k]);
  }
  if (upper < lo * (1 - 1e-15) || lower > hi * (1 + 1e-15)) return true;
  for (const auto& cap : s.caps)
    if (std::abs(c.value[cap.coord]) - c.dev[cap.coord] > std::ldexp(1.0 + 1e-15, ShellSet::cap_exponent(cap, layer)))
      return true;
  return false;
}

Cell evaluate_cell(const CurveData& d, ComplexFloat center, const std::vector<double>& lipschitz, double rho) {
  Cell c;
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) {
    c.value.push_back(horner(d.coeffs[k], center));
    c.dev.push_back(lipschitz[k] * rho + d.slack[k]);
  }
  return c;
}

FloatPoint to_point(const std::vector<ComplexFloat>& v) {
  FloatPoint p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) p(static_cast<Eigen::Index>(k)) = v[k];
  return p;
}

double block_modulus(const ShellSet& s, const CurveData& d, ComplexFloat z) {
  double m = 0.0;
  for (auto k : s.block) m = std::max(m, std::abs(horner(d.coeffs[k], z)));
  return m;
}

/// Caps of `layer` hold with margin on the whole segment [a, b].
bool caps_hold_on_segment(const ShellSet& s, int layer, const CurveData& d, const std::vector<double>& lipschitz,
                          ComplexFloat a, ComplexFloat b) {
  const ComplexFloat mid = 0.5 * (a + b);
  const double half = 0.5 * std::abs(b - a);
  for (const auto& cap : s.caps) {
    const double bound = std::abs(horner(d.coeffs[cap.coord], mid)) + lipschitz[cap.coord] * half + d.slack[cap.coord];
    if (!(bound < std::ldexp(1.0, ShellSet::cap_exponent(cap, layer)))) return false;
  }
  return true;
}

/// Root of block_modulus - radius on [a, b], given opposite signs at the ends.
ComplexFloat bisect_segment(const ShellSet& s, const CurveData& d, double radius, ComplexFloat a, ComplexFloat b) {
  double ta = 0.0, tb = 1.0;
  const bool a_below = block_modulus(s, d, a) < radius;
  for (int it = 0; it < 200 && tb - ta > 1e-17; ++it) {
    const double tm = 0.5 * (ta + tb);
    const bool below = block_modulus(s, d, a + tm * (b - a)) < radius;
    (below == a_below ? ta : tb) = tm;
  }
  return a + 0.5 * (ta + tb) * (b - a);
}

std::optional<AvoidResult> newton_hit(const ShellSet& s, const CurveData& d, int layer, ComplexFloat start, double r) {
  const std::size_t coord = (s.kind == ShellKind::CR && layer == 4) ? 0 : 1;
  const ComplexFloat target =
      s.kind == ShellKind::Ln ? ComplexFloat(layer) : (layer == 4 ? ComplexFloat(0) : cr_value(s, layer).to_complex());
  const auto& c = d.coeffs[coord];
  std::vector<ComplexFloat> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(static_cast<double>(k) * c[k]);
  ComplexFloat z = start;
  for (int it = 0; it < 60; ++it) {
    const ComplexFloat f = horner(c, z) - target, df = horner(dc, z);
    if (std::abs(df) == 0.0) return std::nullopt;
    z -= f / df;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
  }
  if (std::abs(z) > r) return std::nullopt;
  if (std::abs(horner(c, z) - target) > 1e-12 * (1.0 + std::abs(target)) + d.slack[coord]) return std::nullopt;
  AvoidResult res;
  res.status = AvoidStatus::Intersects;
  res.zeta = z;
  res.layer = layer;
  return res;
}

}  // namespace

AvoidResult disc_avoids(const ShellSet& s, const PolyCurve& curve, double r, int max_grid) {
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("disc_avoids: radius must lie in (0, 1]");
  if (curve.size() != s.dimension()) throw std::invalid_argument("disc_avoids: curve dimension does not match set");
  AvoidResult result;
  if (s.kind == ShellKind::Empty) {
    result.status = AvoidStatus::Certified;
    return result;
  }
  const Membership at_zero = shell_membership(s, curve.basepoint());
  if (at_zero.in) {
    result.status = AvoidStatus::Intersects;
    result.zeta = ComplexFloat(0.0);
    result.exact_zeta = GaussianRational(0);
    result.layer = at_zero.layer;
    return result;
  }

  const CurveData data = curve_data(curve, r);
  const int layers = relevant_layers(s, data, r);

  // Whole-disc pass: deviation from f(0) is bounded by the tail coefficient sums.
  {
    Cell global;
    for (std::size_t k = 0; k < curve.size(); ++k) {
      global.value.push_back(curve[k].coeff(0).to_complex());
      global.dev.push_back(sup_bound_on_disc(curve[k], r) - std::abs(global.value.back()) + data.slack[k]);
    }
    bool safe = true;
    for (int i = 1; i <= layers && safe; ++i) safe = cell_safe(s, i, global);
    if (safe) {
      result.status = AvoidStatus::Certified;
      return result;
    }
  }

  for (int n = 16; n <= max_grid; n *= 2) {
    result.grid = n;
    const double h = 2.0 * r / n, rho = h / std::numbers::sqrt2;
    std::vector<double> lipschitz;
    for (const auto& u : data.polys) lipschitz.push_back(derivative_bound_on_disc(u, r + 2 * rho));

    auto center = [&](int j, int k) { return ComplexFloat(-r + (j + 0.5) * h, -r + (k + 0.5) * h); };
    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(n));
    std::vector<std::vector<bool>> inside(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    bool all_safe = true;
    std::vector<std::pair<int, ComplexFloat>> unsafe;  // (layer, center)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const ComplexFloat c = center(j, k);
        cells[j].push_back(evaluate_cell(data, c, lipschitz, rho));
        inside[j][k] = std::abs(c) <= r;
        if (std::abs(c) > r + rho) continue;
        for (int i = 1; i <= layers; ++i)
          if (!cell_safe(s, i, cells[j][k])) {
            all_safe = false;
            unsafe.emplace_back(i, c);
          }
      }
    }
    if (all_safe) {
      result.status = AvoidStatus::Certified;
      return result;
    }

    // Exact hits at grid nodes that look like members in floating point.
    int exact_checks = 0;
    for (int j = 0; j < n && exact_checks < 32; ++j)
      for (int k = 0; k < n && exact_checks < 32; ++k) {
        if (!inside[j][k]) continue;
        if (!shell_membership(s, to_point(cells[j][k].value), 1e-6).in) continue;
        ++exact_checks;
        const ComplexFloat c = center(j, k);
        const GaussianRational zeta = GaussianRational::from_complex(c);
        const Membership m = shell_membership(s, curve.evaluate(zeta));
        if (m.in) {
          result.status = AvoidStatus::Intersects;
          result.zeta = c;
          result.exact_zeta = zeta;
          result.layer = m.layer;
          return result;
        }
      }

    if (s.dyadic()) {
      // Sign changes of a layer equality along grid edges with robust caps.
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (!inside[j][k]) continue;
          for (auto [dj, dk] : {std::pair{1, 0}, std::pair{0, 1}}) {
            if (j + dj >= n || k + dk >= n || !inside[j + dj][k + dk]) continue;
            const ComplexFloat a = center(j, k), b = center(j + dj, k + dk);
            const double ma = block_modulus(s, data, a), mb = block_modulus(s, data, b);
            for (int i = 1; i <= layers; ++i) {
              for (const Rational& radius_q : {s.inner_radius(i), s.outer_radius(i)}) {
                const double radius = radius_q.get_d();
                if ((ma < radius) == (mb < radius)) continue;
                if (!caps_hold_on_segment(s, i, data, lipschitz, a, b)) continue;
                result.status = AvoidStatus::Intersects;
                result.zeta = bisect_segment(s, data, radius, a, b);
                result.layer = i;
                return result;
              }
            }
          }
        }
    } else {
      // Hyperplane layers: Newton from the worst unsafe cell of each layer.
      for (int i = 1; i <= layers; ++i) {
        std::optional<ComplexFloat> start;
        for (const auto& [layer, c] : unsafe)
          if (layer == i) {
            start = c;
            break;
          }
        if (!start) continue;
        if (auto hit = newton_hit(s, data, i, *start, r)) {
          hit->grid = n;
          return *hit;
        }
      }
    }
  }
  result.status = AvoidStatus::Unknown;
  return result;
}

WLineHit wline_shell_intersection(const UPoly& w, const ExactPoint& base_xyz, const ShellSet& s) {
  if (s.kind != ShellKind::KW) throw PreconditionError("wline_shell_intersection: set must be of kind KW");
  if (w.degree() < 1) throw PreconditionError("wline_shell_intersection: w must be nonconstant");
  if (base_xyz.size() != 3) throw PreconditionError("wline_shell_intersection: base point must be (x0, y0, z0)");
  const GaussianRational &y0 = base_xyz(1), &z0 = base_xyz(2);
  const GaussianRational w0 = w.coeff(0);
  int layer = 1;
  while (cmp_abs_to_dyadic(y0, layer - 1) != std::strong_ordering::less ||
         cmp_abs_to_dyadic(w0, layer - 1) != std::strong_ordering::less ||
         cmp_abs_to_dyadic(z0, layer) == std::strong_ordering::greater)
    ++layer;
  const double target = std::ldexp(1.0, layer - 1);
  const auto coeffs = float_coeffs(w);

  // A circle point beyond the target modulus; |w| is unbounded.
  ComplexFloat far;
  bool found = false;
  const int samples = std::max(64, 8 * w.degree());
  for (double r = 1.0; !found; r *= 2.0) {
    if (r > 1e300) throw std::runtime_error("wline_shell_intersection: modulus never reaches target");
    double best = -1.0;
    for (int k = 0; k < samples; ++k) {
      const ComplexFloat z = std::polar(r, 2.0 * std::numbers::pi * k / samples);
      const double m = std::abs(horner(coeffs, z));
      if (m > best) {
        best = m;
        far = z;
      }
    }
    found = best > target;
  }
  double ta = 0.0, tb = 1.0;
  for (int it = 0; it < 200 && tb - ta > 0.0; ++it) {
    const double tm = 0.5 * (ta + tb);
    if (tm == ta || tm == tb) break;
    (std::abs(horner(coeffs, tm * far)) < target ? ta : tb) = tm;
  }
  const double ea = std::abs(std::abs(horner(coeffs, ta * far)) / target - 1.0);
  const double eb = std::abs(std::abs(horner(coeffs, tb * far)) / target - 1.0);
  WLineHit hit;
  hit.zeta = (ea <= eb ? ta : tb) * far;
  hit.layer = layer;
  hit.residual = std::min(ea, eb);
  return hit;
}

}  // namespace engel
