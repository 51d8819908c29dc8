#include "engel/transport.hpp"

#include <stdexcept>

#include "engel/linalg.hpp"

namespace engel {

namespace {

PolyMap embedding(const Ambient& big, const Ambient& small) {
  std::vector<MultiPoly> comps;
  for (const auto& n : small.names()) comps.push_back(MultiPoly::variable(big, n));
  return PolyMap(big, small, std::move(comps));
}

VectorField lift(const VectorField& x, const Ambient& big) {
  const PolyMap emb = embedding(big, x.ambient());
  std::vector<MultiPoly> comps;
  for (const auto& c : x.components()) comps.push_back(compose(c, emb));
  comps.emplace_back(big);
  return VectorField(big, std::move(comps));
}

}  // namespace

PolyMatrix jacobian(const PolyMap& f) {
  PolyMatrix out;
  for (const auto& c : f.components()) {
    std::vector<MultiPoly> row;
    for (const auto& n : f.source().names()) row.push_back(differentiate(c, n));
    out.push_back(std::move(row));
  }
  return out;
}

PolyAutomorphism::PolyAutomorphism(PolyMap forward, PolyMap inverse, std::vector<Shear> shears)
    : forward_(std::move(forward)), inverse_(std::move(inverse)), shears_(std::move(shears)) {}

PolyAutomorphism::PolyAutomorphism(PolyMap forward, PolyMap inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {
  if (forward_.source() != forward_.target() || inverse_.source() != forward_.source() ||
      inverse_.target() != forward_.source())
    throw std::invalid_argument("PolyAutomorphism: maps must be self-maps of one ambient");
  const PolyMap id = PolyMap::identity(forward_.source());
  if (compose(forward_, inverse_) != id || compose(inverse_, forward_) != id)
    throw std::invalid_argument("PolyAutomorphism: maps are not mutually inverse");
}

PolyAutomorphism PolyAutomorphism::identity(const Ambient& ambient) {
  const PolyMap id = PolyMap::identity(ambient);
  return PolyAutomorphism(id, id, {});
}

PolyAutomorphism PolyAutomorphism::after(const PolyAutomorphism& inner) const {
  if (ambient() != inner.ambient()) throw AmbientError("PolyAutomorphism::after: ambient mismatch");
  std::vector<Shear> shears = inner.shears_;
  shears.insert(shears.end(), shears_.begin(), shears_.end());
  return PolyAutomorphism(compose(forward_, inner.forward_), compose(inner.inverse_, inverse_), std::move(shears));
}

PolyAutomorphism make_shear(const Ambient& ambient, std::size_t target, const MultiPoly& term) {
  if (target >= ambient.size()) throw AmbientError("make_shear: target out of range");
  if (term.ambient() != ambient) throw AmbientError("make_shear: term lives in another ambient");
  if (term.involves(target)) throw PreconditionError("make_shear: term involves " + ambient.name(target));
  std::vector<MultiPoly> fwd, inv;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    const MultiPoly v = MultiPoly::variable(ambient, ambient.name(i));
    fwd.push_back(i == target ? v + term : v);
    inv.push_back(i == target ? v - term : v);
  }
  return PolyAutomorphism(PolyMap(ambient, ambient, std::move(fwd)), PolyMap(ambient, ambient, std::move(inv)),
                          {Shear{target, term}});
}

PolyAutomorphism make_shear(const Ambient& ambient, std::string_view target, const MultiPoly& term) {
  return make_shear(ambient, ambient.require_index(target), term);
}

PolyAutomorphism compose_shears(const Ambient& ambient, const std::vector<Shear>& shears) {
  PolyAutomorphism out = PolyAutomorphism::identity(ambient);
  for (const auto& s : shears) out = make_shear(ambient, s.target, s.term).after(out);
  return out;
}

VectorField pullback_field(const PolyAutomorphism& phi, const VectorField& x) {
  if (x.ambient() != phi.ambient()) throw AmbientError("pullback_field: ambient mismatch");
  const PolyMap& f = phi.forward();
  const PolyMatrix jinv = jacobian(phi.inverse());
  std::vector<MultiPoly> xf;
  for (const auto& c : x.components()) xf.push_back(compose(c, f));
  std::vector<MultiPoly> out;
  for (const auto& row : jinv) {
    MultiPoly acc(phi.ambient());
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero() && !xf[j].is_zero()) acc = acc + compose(row[j], f) * xf[j];
    out.push_back(std::move(acc));
  }
  return VectorField(phi.ambient(), std::move(out));
}

EngelFlag pullback_flag(const PolyAutomorphism& phi, const EngelFlag& flag) {
  std::vector<VectorField> frame;
  for (const auto& x : flag.d.fields()) frame.push_back(pullback_field(phi, x));
  const EngelCheck check = check_engel(DistributionFrame(std::move(frame), 2));
  if (const auto* fail = std::get_if<EngelFailure>(&check))
    throw std::runtime_error("pullback_flag: pulled-back frame fails " + fail->stage + ": " + fail->detail);
  EngelFlag out = std::get<EngelFlag>(check);
  const std::vector<VectorField> pair_w = {out.w, pullback_field(phi, flag.w)};
  if (generic_rank(pair_w) != 1)
    throw std::runtime_error("pullback_flag: pulled-back W differs from the characteristic line");
  return out;
}

DistributionFrame standard_contact_frame() {
  const Ambient xyz{"x", "y", "z"};
  const VectorField c1 = VectorField::coordinate(xyz, "z");
  const VectorField c2 = VectorField::coordinate(xyz, "x") + MultiPoly::variable(xyz, "z") * VectorField::coordinate(xyz, "y");
  return DistributionFrame({c1, c2}, 2);
}

DiffForm standard_contact_form() {
  const Ambient xyz{"x", "y", "z"};
  return DiffForm::coordinate(xyz, "y") - MultiPoly::variable(xyz, "z") * DiffForm::coordinate(xyz, "x");
}

std::string to_string(ProlongChart c) { return c == ProlongChart::Zero ? "0" : "inf"; }
std::string fiber_name(ProlongChart c) { return c == ProlongChart::Zero ? "t" : "s"; }

DistributionFrame cartan_prolong(const DistributionFrame& contact, const DiffForm& alpha, ProlongChart chart) {
  const Ambient& base = contact.ambient();
  if (base.size() != 3 || contact.fields().size() != 2 || contact.rank() != 2)
    throw PreconditionError("cartan_prolong: need a rank-2 frame on a 3-dimensional ambient");
  if (alpha.degree() != 1 || alpha.ambient() != base) throw PreconditionError("cartan_prolong: alpha must be a 1-form on the frame's ambient");
  if (wedge(alpha, exterior_derivative(alpha)).is_zero())
    throw PreconditionError("cartan_prolong: alpha ^ d alpha vanishes; not a contact form");
  for (const auto& c : contact.fields())
    if (!pair(alpha, c).is_zero()) throw PreconditionError("cartan_prolong: frame is not in ker alpha");

  const std::string fiber = fiber_name(chart);
  if (base.index_of(fiber)) throw AmbientError("cartan_prolong: ambient already has coordinate " + fiber);
  std::vector<std::string> names = base.names();
  names.push_back(fiber);
  const Ambient big(names);
  const VectorField c1 = lift(contact.fields()[0], big), c2 = lift(contact.fields()[1], big);
  const MultiPoly f = MultiPoly::variable(big, fiber);
  const VectorField tangent = chart == ProlongChart::Zero ? c1 + f * c2 : f * c1 + c2;
  return DistributionFrame({VectorField::coordinate(big, fiber), tangent}, 2);
}

bool charts_agree_at(const DistributionFrame& chart0, const DistributionFrame& chart_inf, const ExactPoint& p) {
  const Eigen::Index n = p.size();
  if (static_cast<std::size_t>(n) != chart0.ambient().size() || chart0.ambient().size() != chart_inf.ambient().size())
    throw AmbientError("charts_agree_at: dimension mismatch");
  const GaussianRational t = p(n - 1);
  if (t == GaussianRational(0)) throw PreconditionError("charts_agree_at: t = 0 is outside the overlap");
  ExactPoint q = p;
  q(n - 1) = GaussianRational(1) / t;
  // d/ds = -t^2 d/dt under s = 1/t.
  MatrixX<GaussianRational> m(4, n);
  for (int k = 0; k < 2; ++k) {
    m.row(k) = chart0.fields()[k].evaluate(p).transpose();
    ExactPoint v = chart_inf.fields()[k].evaluate(q);
    v(n - 1) = -(t * t) * v(n - 1);
    m.row(2 + k) = v.transpose();
  }
  return exact_rank(m.topRows(2)) == 2 && exact_rank(m.bottomRows(2)) == 2 && exact_rank(m) == 2;
}

Shear random_shear(Rng& rng, const Ambient& ambient, int degree, int height) {
  const std::size_t n = ambient.size();
  const std::size_t target = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  std::uniform_int_distribution<std::size_t> other(0, n - 2);
  Exponent e{};
  const int d = std::uniform_int_distribution<int>(1, degree)(rng);
  for (int k = 0; k < d; ++k) {
    std::size_t v = other(rng);
    if (v >= target) ++v;
    ++e[v];
  }
  return {target, MultiPoly::monomial(ambient, e, random_nonzero_gaussian(rng, height))};
}

PolyAutomorphism random_automorphism(Rng& rng, const Ambient& ambient, int count, int degree, int height,
                                     int max_map_degree) {
  for (;;) {
    std::vector<Shear> shears;
    for (int k = 0; k < count; ++k) shears.push_back(random_shear(rng, ambient, degree, height));
    PolyAutomorphism phi = compose_shears(ambient, shears);
    if (phi.forward().max_degree() <= max_map_degree && phi.inverse().max_degree() <= max_map_degree) return phi;
  }
}

}  // namespace engel
