#include "engel/sampling.hpp"

#include <vector>

namespace engel {

Rng stream(std::uint64_t seed, std::string_view name) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : name) material.push_back(c);
  std::seed_seq seq(material.begin(), material.end());
  return Rng(seq);
}

Rng substream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                      0x9e3779b9u};
  for (unsigned char c : name) material.push_back(c);
  std::seed_seq seq(material.begin(), material.end());
  return Rng(seq);
}

Rational random_rational(Rng& rng, int height) {
  std::uniform_int_distribution<long> num(-height, height), den(1, height);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

GaussianRational random_gaussian(Rng& rng, int height) {
  Rational re = random_rational(rng, height);
  return {re, random_rational(rng, height)};
}

GaussianRational random_nonzero_gaussian(Rng& rng, int height) {
  for (;;) {
    GaussianRational c = random_gaussian(rng, height);
    if (!c.is_zero()) return c;
  }
}

ExactPoint random_point(Rng& rng, std::size_t n, int height) {
  ExactPoint p(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = random_gaussian(rng, height);
  return p;
}

UPoly random_upoly(Rng& rng, int degree, int height) {
  std::vector<GaussianRational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_gaussian(rng, height));
  return UPoly(std::move(c));
}

UPoly random_upoly_exact_degree(Rng& rng, int degree, int height) {
  std::vector<GaussianRational> c;
  for (int k = 0; k < degree; ++k) c.push_back(random_gaussian(rng, height));
  c.push_back(random_nonzero_gaussian(rng, height));
  return UPoly(std::move(c));
}

MultiPoly random_multipoly(Rng& rng, const Ambient& ambient, int degree, int terms, int height) {
  MultiPoly p(ambient);
  std::uniform_int_distribution<int> deg(0, degree);
  std::uniform_int_distribution<std::size_t> var(0, ambient.size() - 1);
  for (int t = 0; t < terms; ++t) {
    Exponent e{};
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(e, random_gaussian(rng, height));
  }
  return p;
}

VectorField random_field(Rng& rng, const Ambient& ambient, int degree, int terms, int height) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < ambient.size(); ++i) comps.push_back(random_multipoly(rng, ambient, degree, terms, height));
  return {ambient, std::move(comps)};
}

DiffForm random_one_form(Rng& rng, const Ambient& ambient, int degree, int terms, int height) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < ambient.size(); ++i) comps.push_back(random_multipoly(rng, ambient, degree, terms, height));
  return DiffForm::one_form(ambient, comps);
}

PointDirection random_d_direction(Rng& rng, int height) {
  ExactPoint p = random_point(rng, 4, height);
  ExactPoint v(4);
  v(0) = random_gaussian(rng, height);
  v(1) = random_gaussian(rng, height);
  v(2) = p(3) * v(1);
  v(3) = p(0) * v(1);
  return {std::move(p), std::move(v)};
}

}  // namespace engel
