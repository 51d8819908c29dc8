#pragma once

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "engel/distcalc.hpp"
#include "engel/estimates.hpp"
#include "engel/kobayashi.hpp"
#include "engel/moduli.hpp"
#include "engel/obstacles.hpp"
#include "engel/steering.hpp"
#include "engel/transport.hpp"

namespace engel {

/// Key order is preserved so reports are byte-stable.
using Json = nlohmann::ordered_json;

/// Malformed JSON input; the CLI maps it to "invalid input".
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const GaussianRational& c);
Json to_json(const ExactPoint& p);
/// {"ambient":[...],"terms":[{"exp":[...],"coef":"a/b+c/d*i"}]}.
Json to_json(const MultiPoly& p);
/// The poly schema on the ambient ["zeta"].
Json to_json(const UPoly& u);
/// Object keyed by target coordinate.
Json to_json(const PolyCurve& c);
Json to_json(const PolyMap& f);
Json to_json(const VectorField& x);
Json to_json(const DiffForm& w);
Json to_json(const DistributionFrame& d);
Json to_json(const EngelFlag& f);
Json to_json(const ShellSet& s);
Json to_json(const HorizontalDisc& d);
Json to_json(const TangencyReport& r);
Json to_json(const LemmaVerdict& v);
Json to_json(const FinslerLower& l);
Json to_json(const FinslerBound& b);
Json to_json(const SearchConfig& c);
Json to_json(const HorizontalPath& p);
Json to_json(const Shear& s);
Json to_json(const AffineWitness& w);

/// Parsers throw SchemaError with the offending field in the message.
GaussianRational gaussian_from_json(const Json& j);
/// With an expected ambient, the "ambient" field must match it.
MultiPoly poly_from_json(const Json& j);
MultiPoly poly_from_json(const Json& j, const Ambient& expected);
UPoly upoly_from_json(const Json& j);
PolyCurve curve_from_json(const Json& j);
/// The field schema written by to_json(VectorField).
VectorField field_from_json(const Json& j);
ShellSet shellset_from_json(const Json& j);
/// Ordered list of {"target":"w","term":poly}, applied first to last.
std::vector<Shear> shears_from_json(const Json& j, const Ambient& ambient);

}  // namespace engel
