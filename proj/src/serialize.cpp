#include "hyperdec/serialize.hpp"

#include "hyperdec/errors.hpp"

namespace hyperdec {

namespace {

using nlohmann::json;

json exponent_json(const ExponentPair& e) {
  return json{{"b", to_string(e.b)}, {"a", to_string(e.a)}};
}

const std::string& string_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string()) {
    throw Error(ErrorKind::InvalidArgument, std::string("missing string field '") + key + "'");
  }
  return obj.at(key).get_ref<const std::string&>();
}

ExponentPair exponent_from_json(const json& obj) {
  return {parse_rational(string_field(obj, "b")), parse_rational(string_field(obj, "a"))};
}

Coefficient coefficient_from_string(const std::string& text, const NumContext& ctx) {
  if (ctx.exact()) return Coefficient(parse_rational(text));
  if (text.find('/') != std::string::npos) return ctx.coefficient(parse_rational(text));
  return Coefficient(BigFloat::parse(text, ctx.bits()));
}

}  // namespace

std::string coefficient_to_json_string(const Coefficient& c) {
  return c.is_exact() ? to_string(c.rational()) : c.real().to_round_trip_string();
}

json to_json(const HyperValue& x) {
  json terms = json::array();
  for (const auto& t : x.terms()) {
    json term = exponent_json(t.exponent);
    term["c"] = coefficient_to_json_string(t.coeff);
    terms.push_back(std::move(term));
  }
  json out{{"truncated", x.truncated()}, {"terms", std::move(terms)}};
  if (x.horizon()) out["horizon"] = exponent_json(*x.horizon());
  return out;
}

HyperValue hyper_from_json(const json& doc, ContextPtr ctx) {
  if (!doc.is_object() || !doc.contains("terms") || !doc.at("terms").is_array() ||
      !doc.contains("truncated") || !doc.at("truncated").is_boolean()) {
    throw Error(ErrorKind::InvalidArgument, "expected {\"truncated\": bool, \"terms\": [...]}");
  }
  std::vector<Term> terms;
  for (const auto& item : doc.at("terms")) {
    terms.push_back(Term{coefficient_from_string(string_field(item, "c"), *ctx),
                         exponent_from_json(item)});
  }
  std::optional<ExponentPair> horizon;
  if (doc.at("truncated").get<bool>()) {
    if (doc.contains("horizon")) {
      horizon = exponent_from_json(doc.at("horizon"));
    } else if (!terms.empty()) {
      horizon = terms.back().exponent;
      for (const auto& t : terms) {
        if (t.exponent < *horizon) horizon = t.exponent;
      }
    } else {
      throw Error(ErrorKind::InvalidArgument, "truncated value with no terms and no horizon");
    }
  }
  return HyperValue::from_terms(std::move(ctx), std::move(terms), std::move(horizon));
}

}  // namespace hyperdec
