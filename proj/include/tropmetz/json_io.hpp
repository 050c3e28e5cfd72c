#pragma once

#include "tropmetz/game_graph.hpp"
#include "tropmetz/minmax.hpp"
#include "tropmetz/pencil.hpp"
#include "tropmetz/semilinear_lp.hpp"
#include "tropmetz/transforms.hpp"

#include <json.hpp>

#include <string>

namespace tropmetz {

using Json = nlohmann::ordered_json;

// Every reader throws Error{Malformed} on schema violations.

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);  // "p/q" strings or integers
Json trop_to_json(const TropScalar& a);
TropScalar trop_from_json(const Json& j);
Json signed_to_json(const SignedTropScalar& a);
SignedTropScalar signed_from_json(const Json& j);

Json graph_to_json(const GameGraph& g);
GameGraph graph_from_json(const Json& j);

Json minmax_to_json(const MinMaxOperator& op);
MinMaxOperator minmax_from_json(const Json& j);

/// {"m", "n", "matrices", "visible", "witness"}; with `sparse` the matrices
/// are replaced by "entries": [{"i", "j", "k", "coef"}] over nonzero slots.
Json pencil_to_json(const MetzlerPencil& p, std::size_t visible, const Json& witness = nullptr, bool sparse = false);
/// Accepts both layouts; the result carries no witness.
ProjectedPencil pencil_from_json(const Json& j);

Json union_to_json(const PolyhedralUnion& u);
PolyhedralUnion union_from_json(const Json& j);

Json witness_to_json(const WitnessMap& w);
Json validation_to_json(const ValidationReport& r);

/// "0,1/2,-inf" -> point. Throws Error{Malformed}.
TropVector parse_point(const std::string& text);
std::string format_point(const TropVector& x);

Json read_json_file(const std::string& path);

}  // namespace tropmetz
