#include <cmath>

#include "app.hpp"

namespace nullseries::cli {

namespace {

bool type_ok(const std::string& t, const json& v) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

}  // namespace

// Covers the keywords the published schema uses, nothing more.
std::vector<std::string> schema_violations(const json& schema, const json& v, const std::string& where) {
  std::vector<std::string> out;
  if (schema.contains("type") && !type_ok(schema["type"].get<std::string>(), v)) {
    out.push_back(where + ": expected " + schema["type"].get<std::string>());
    return out;
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& e : schema["enum"]) hit = hit || e == v;
    if (!hit) out.push_back(where + ": value " + v.dump() + " not in enum");
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>())
      out.push_back(where + ": " + v.dump() + " < minimum " + schema["minimum"].dump());
    if (schema.contains("maximum") && x > schema["maximum"].get<double>())
      out.push_back(where + ": " + v.dump() + " > maximum " + schema["maximum"].dump());
    if (schema.contains("exclusiveMinimum") && !(x > schema["exclusiveMinimum"].get<double>()))
      out.push_back(where + ": " + v.dump() + " <= exclusiveMinimum " + schema["exclusiveMinimum"].dump());
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
      out.push_back(where + ": fewer than " + schema["minItems"].dump() + " items");
    if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>())
      out.push_back(where + ": more than " + schema["maxItems"].dump() + " items");
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        auto sub = schema_violations(schema["items"], v[i], where + "[" + std::to_string(i) + "]");
        out.insert(out.end(), sub.begin(), sub.end());
      }
    }
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) out.push_back(where + ": missing " + k.get<std::string>());
    const json props = schema.value("properties", json::object());
    const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (const auto& [k, val] : v.items()) {
      if (props.contains(k)) {
        auto sub = schema_violations(props[k], val, where + "." + k);
        out.insert(out.end(), sub.begin(), sub.end());
      } else if (closed) {
        out.push_back(where + ": unknown key " + k);
      }
    }
  }
  return out;
}

void validate_config(const json& cfg) {
  static const json schema = json::parse(kRunConfigSchema);
  const auto v = schema_violations(schema, cfg);
  if (!v.empty()) throw UsageError("config violates schema", {{"schema_violations", v}, {"config", cfg}});
}

Rational parse_rational(const json& j) {
  try {
    if (j.is_string()) {
      Rational q(j.get<std::string>());
      q.canonicalize();
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      return q;
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return exact_rational(j.get<double>());
  } catch (const std::invalid_argument&) {
  }
  throw UsageError("not a rational: " + j.dump());
}

}  // namespace nullseries::cli
