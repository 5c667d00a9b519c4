#pragma once

#include "json.hpp"

#include "hyperdec/hyper_value.hpp"

namespace hyperdec {

/// {"truncated": bool, "terms": [{"c": "p/q", "b": "p/q", "a": "p/q"}, ...]},
/// terms leading-first. A truncated value also carries
/// "horizon": {"b": ..., "a": ...}. Exact values round-trip bit for bit.
nlohmann::json to_json(const HyperValue& x);

/// Throws Error(InvalidArgument) on malformed documents. A truncated document
/// without a horizon gets the conservative horizon just below its last term
/// (that term itself is dropped as no longer certain).
HyperValue hyper_from_json(const nlohmann::json& doc, ContextPtr ctx);

std::string coefficient_to_json_string(const Coefficient& c);

}  // namespace hyperdec
