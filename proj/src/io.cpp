#include "engel/io.hpp"

#include <string>

namespace engel {

namespace {

const Ambient& zeta_ambient() {
  static const Ambient a{"zeta"};
  return a;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Rational rational_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  try {
    return parse_rational(text(j, what));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

Ambient ambient_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxVars) throw SchemaError("ambient must be a list of 1 to 5 names");
  std::vector<std::string> names;
  for (const auto& n : j) names.push_back(text(n, "ambient entry"));
  try {
    return Ambient(std::move(names));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("ambient: ") + e.what());
  }
}

Json ambient_json(const Ambient& a) { return Json(a.names()); }

Json components_json(const Ambient& a, const std::vector<MultiPoly>& comps) {
  Json out = Json::object();
  for (std::size_t i = 0; i < comps.size(); ++i) out[a.name(i)] = to_json(comps[i]);
  return out;
}

Json fields_json(const std::vector<VectorField>& fields) {
  Json out = Json::array();
  for (const auto& x : fields) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json to_json(const GaussianRational& c) { return c.str(); }

Json to_json(const ExactPoint& p) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) out.push_back(p(k).str());
  return out;
}

Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  const std::size_t n = p.ambient().size();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", std::vector<int>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n))}, {"coef", c.str()}});
  return {{"ambient", ambient_json(p.ambient())}, {"terms", terms}};
}

Json to_json(const UPoly& u) {
  Json terms = Json::array();
  for (int k = 0; k <= u.degree(); ++k)
    if (!u.coeff(k).is_zero()) terms.push_back({{"exp", {k}}, {"coef", u.coeff(k).str()}});
  return {{"ambient", {"zeta"}}, {"terms", terms}};
}

Json to_json(const PolyCurve& c) {
  Json out = Json::object();
  for (std::size_t i = 0; i < c.size(); ++i) out[c.ambient().name(i)] = to_json(c[i]);
  return out;
}

Json to_json(const PolyMap& f) { return components_json(f.target(), f.components()); }

Json to_json(const VectorField& x) {
  return {{"type", "field"}, {"degree", 1}, {"ambient", ambient_json(x.ambient())},
          {"components", components_json(x.ambient(), x.components())}};
}

Json to_json(const DiffForm& w) {
  Json terms = Json::array();
  for (const auto& [idx, c] : w.coefficients()) {
    Json names = Json::array();
    for (int i : idx) names.push_back(w.ambient().name(static_cast<std::size_t>(i)));
    terms.push_back({{"index", names}, {"coef", to_json(c)}});
  }
  return {{"type", "form"}, {"degree", w.degree()}, {"ambient", ambient_json(w.ambient())}, {"terms", terms}};
}

Json to_json(const DistributionFrame& d) { return {{"rank", d.rank()}, {"fields", fields_json(d.fields())}}; }

Json to_json(const EngelFlag& f) {
  Json d_forms = Json::array();
  for (const auto& w : f.d_forms) d_forms.push_back(to_json(w));
  return {{"W", to_json(f.w)}, {"D", to_json(f.d)}, {"E", to_json(f.e)}, {"D_forms", d_forms}, {"E_form", to_json(f.e_form)}};
}

Json to_json(const ShellSet& s) {
  Json out = {{"kind", to_string(s.kind)}};
  if (s.kind == ShellKind::K3) out["epsilon"] = format_rational(s.epsilon);
  if (s.kind == ShellKind::Ln) out["n"] = s.n;
  if (s.kind == ShellKind::CR) out["R"] = format_rational(s.R);
  return out;
}

Json to_json(const HorizontalDisc& d) {
  return {{"model", to_string(d.model)}, {"basepoint", to_json(d.basepoint)}, {"degenerate", d.degenerate},
          {"curve", to_json(d.curve)}};
}

Json to_json(const TangencyReport& r) {
  Json residuals = Json::array();
  for (const auto& u : r.residuals) residuals.push_back(to_json(u));
  return {{"tangent", r.tangent}, {"residuals", residuals}};
}

Json to_json(const LemmaVerdict& v) {
  Json bounds = Json::array();
  for (const auto& b : v.bounds)
    bounds.push_back({{"coordinate", b.coordinate}, {"observed", b.observed},
                      {"threshold", "2^" + std::to_string(b.threshold_exponent)}, {"pass", b.pass}});
  return {{"N0", v.n0}, {"pass", v.pass}, {"bounds", bounds}};
}

Json to_json(const FinslerLower& l) {
  Json out = {{"N0", l.n0}, {"value", l.value()}, {"value_squared", format_rational(l.value_squared)}};
  out["exact"] = l.exact ? Json(format_rational(*l.exact)) : Json(nullptr);
  return out;
}

Json to_json(const SearchConfig& c) {
  return {{"degree", c.degree}, {"restarts", c.restarts}, {"iterations", c.iterations}, {"seed", c.seed},
          {"shrink_tolerance", c.shrink_tolerance}, {"max_grid", c.max_grid}, {"mu_cap", c.mu_cap}};
}

Json to_json(const FinslerBound& b) {
  Json out = {{"point", to_json(b.point)}, {"direction", to_json(b.direction)}, {"lower", to_json(b.lower)}};
  out["upper"] = std::isfinite(b.upper) ? Json(b.upper) : Json(nullptr);
  out["lambda"] = b.lambda.str();
  out["witness"] = b.witness ? to_json(*b.witness) : Json(nullptr);
  out["search"] = to_json(b.config);
  out["diagnostic"] = b.diagnostic;
  return out;
}

Json to_json(const HorizontalPath& p) {
  Json segs = Json::array();
  for (const auto& s : p.segments)
    segs.push_back({{"t0", format_rational(s.t0)}, {"t1", format_rational(s.t1)}, {"curve", to_json(s.curve)}});
  return {{"model", to_string(p.model)}, {"segments", segs}};
}

Json to_json(const Shear& s) {
  return {{"target", s.term.ambient().name(s.target)}, {"term", to_json(s.term)}};
}

Json to_json(const AffineWitness& w) {
  return {{"a", w.a.str()}, {"b", w.b.str()}, {"permutation", w.permutation}, {"images", w.images}};
}

GaussianRational gaussian_from_json(const Json& j) {
  if (j.is_number_integer()) return GaussianRational(j.get<long>());
  try {
    return GaussianRational::parse(text(j, "coefficient"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("coefficient: ") + e.what());
  }
}

MultiPoly poly_from_json(const Json& j) {
  const Ambient a = ambient_from_json(field(j, "ambient"));
  MultiPoly p(a);
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw SchemaError("terms must be a list");
  for (const auto& t : terms) {
    const Json& exp = field(t, "exp");
    if (!exp.is_array() || exp.size() != a.size()) throw SchemaError("exp must have one entry per ambient coordinate");
    Exponent e{};
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!exp[i].is_number_integer() || exp[i].get<long>() < 0 || exp[i].get<long>() > 1000)
        throw SchemaError("exp entries must be integers in [0, 1000]");
      e[i] = static_cast<std::uint16_t>(exp[i].get<long>());
    }
    p.add_term(e, gaussian_from_json(field(t, "coef")));
  }
  return p;
}

MultiPoly poly_from_json(const Json& j, const Ambient& expected) {
  MultiPoly p = poly_from_json(j);
  if (p.ambient() != expected) throw SchemaError("polynomial ambient does not match the expected coordinates");
  return p;
}

UPoly upoly_from_json(const Json& j) {
  const MultiPoly p = poly_from_json(j, zeta_ambient());
  std::vector<GaussianRational> c;
  for (const auto& [e, coef] : p.terms()) {
    if (c.size() <= e[0]) c.resize(e[0] + 1u);
    c[e[0]] = coef;
  }
  return UPoly(std::move(c));
}

PolyCurve curve_from_json(const Json& j) {
  if (!j.is_object() || j.empty()) throw SchemaError("curve must be an object keyed by coordinate");
  std::vector<std::string> names;
  std::vector<UPoly> comps;
  for (const auto& [name, poly] : j.items()) {
    names.push_back(name);
    comps.push_back(upoly_from_json(poly));
  }
  if (names.size() > kMaxVars) throw SchemaError("curve has too many coordinates");
  try {
    return PolyCurve(Ambient(std::move(names)), std::move(comps));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("curve: ") + e.what());
  }
}

VectorField field_from_json(const Json& j) {
  if (field(j, "type") != "field") throw SchemaError("type must be \"field\"");
  const Ambient a = ambient_from_json(field(j, "ambient"));
  const Json& comps = field(j, "components");
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(comps.contains(a.name(i)) ? poly_from_json(comps.at(a.name(i)), a) : MultiPoly(a));
  for (const auto& [name, poly] : comps.items())
    if (!a.index_of(name)) throw SchemaError("component \"" + name + "\" is not an ambient coordinate");
  return VectorField(a, std::move(out));
}

ShellSet shellset_from_json(const Json& j) {
  ShellKind kind;
  try {
    kind = parse_shell_kind(text(field(j, "kind"), "kind"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  try {
    switch (kind) {
      case ShellKind::Empty:
        return ShellSet::empty();
      case ShellKind::A:
        return ShellSet::A();
      case ShellKind::B:
        return ShellSet::B();
      case ShellKind::KW:
        return ShellSet::KW();
      case ShellKind::K3:
        return j.contains("epsilon") ? ShellSet::K3(rational_from_json(j.at("epsilon"), "epsilon")) : ShellSet::K3();
      case ShellKind::Ln: {
        const Json& n = field(j, "n");
        if (!n.is_number_integer()) throw SchemaError("n must be an integer");
        return ShellSet::Ln(n.get<int>());
      }
      case ShellKind::CR:
        return ShellSet::CR(rational_from_json(field(j, "R"), "R"));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("unknown shell kind");
}

std::vector<Shear> shears_from_json(const Json& j, const Ambient& ambient) {
  if (!j.is_array()) throw SchemaError("shears must be a list");
  std::vector<Shear> out;
  for (const auto& s : j) {
    const std::string target = text(field(s, "target"), "target");
    const auto idx = ambient.index_of(target);
    if (!idx) throw SchemaError("unknown shear target \"" + target + "\"");
    MultiPoly term = poly_from_json(field(s, "term"), ambient);
    if (term.involves(*idx)) throw SchemaError("shear term involves its target \"" + target + "\"");
    out.push_back({*idx, std::move(term)});
  }
  return out;
}

}  // namespace engel
