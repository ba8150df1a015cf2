#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace seqoc::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void config_fail(const std::string& what) { throw ConfigError(what); }

// "utilities" is accepted as a 4-element shorthand for these named fields.
const std::vector<std::string>& utility_names() {
  static const std::vector<std::string> names = {"uTypeI", "uCorrectNonRej", "uCorrectRej",
                                                 "uTypeII"};
  return names;
}

// Approximate double for validation and display; the engine re-parses the raw
// text itself.  Accepts fractions, decimals with exponent, and (signed) inf.
bool approximate_value(const std::string& text, double* out) {
  static const std::regex kInf(R"(^\s*([+-]?)(?:inf|infinity)\s*$)", std::regex::icase);
  static const std::regex kFraction(R"(^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$)");
  static const std::regex kDecimal(R"(^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, kInf)) {
    const double inf = std::numeric_limits<double>::infinity();
    *out = m[1].str() == "-" ? -inf : inf;
    return true;
  }
  if (std::regex_match(text, m, kFraction)) {
    const double den = std::strtod(m[2].str().c_str(), nullptr);
    if (den == 0.0) return false;
    *out = std::strtod(m[1].str().c_str(), nullptr) / den;
    return true;
  }
  if (std::regex_match(text, m, kDecimal)) {
    *out = std::strtod(text.c_str(), nullptr);
    return true;
  }
  return false;
}

NumericValue value_from_json(const std::string& field, const ordered_json& j) {
  NumericValue out;
  if (j.is_string()) {
    out.raw = j.get<std::string>();
    out.quoted = true;
    if (!approximate_value(out.raw, &out.value)) {
      config_fail("field \"" + field + "\": not a number: \"" + out.raw + "\"");
    }
    return out;
  }
  if (j.is_number()) {
    out.raw = j.dump();
    out.quoted = false;
    out.value = j.get<double>();
    return out;
  }
  config_fail("field \"" + field + "\": expected a number, a string like \"3/7\" or \"inf\", or "
              "an array of those");
}

void check_value(const std::string& field, FieldKind kind, const NumericValue& v) {
  switch (kind) {
    case FieldKind::probability:
      if (!(v.value >= 0.0 && v.value <= 1.0)) {
        config_fail("field \"" + field + "\": probability must lie in [0, 1], got " + v.raw);
      }
      break;
    case FieldKind::utility:
      if (!std::isfinite(v.value)) {
        config_fail("field \"" + field + "\": utility must be finite, got " + v.raw);
      }
      break;
    case FieldKind::integer:
      if (v.quoted || !(std::isfinite(v.value) && v.value == std::floor(v.value)) ||
          std::abs(v.value) > 1e9) {
        config_fail("field \"" + field + "\": expected a plain integer, got " + v.raw);
      }
      break;
    case FieldKind::cutoff:
      if (std::isnan(v.value) || v.value <= 0.0) {
        config_fail("field \"" + field + "\": cutoff must be positive or \"inf\", got " + v.raw);
      }
      break;
  }
}

FieldSpec field_from_json(const std::string& field, FieldKind kind, const ordered_json& j) {
  FieldSpec spec;
  if (j.is_array()) {
    if (j.empty()) config_fail("field \"" + field + "\": empty range");
    spec.is_range = true;
    for (const auto& element : j) {
      if (element.is_array()) {
        config_fail("field \"" + field + "\": nested arrays are not a valid range");
      }
      spec.values.push_back(value_from_json(field, element));
    }
  } else {
    spec.values.push_back(value_from_json(field, j));
  }
  for (const auto& v : spec.values) check_value(field, kind, v);
  return spec;
}

}  // namespace

const std::map<std::string, FieldKind>& known_fields() {
  static const std::map<std::string, FieldKind> fields = {
      {"p0", FieldKind::probability},      {"pa", FieldKind::probability},
      {"prH0", FieldKind::probability},    {"scientistQ", FieldKind::probability},
      {"uTypeI", FieldKind::utility},      {"uCorrectNonRej", FieldKind::utility},
      {"uCorrectRej", FieldKind::utility}, {"uTypeII", FieldKind::utility},
      {"n", FieldKind::integer},           {"m", FieldKind::integer},
      {"targetC", FieldKind::cutoff},      {"lrF", FieldKind::cutoff},
      {"lrT", FieldKind::cutoff},
  };
  return fields;
}

bool same_value(const NumericValue& a, const NumericValue& b) {
  if (a.quoted != b.quoted) return false;
  // Quoted text is preserved verbatim; number tokens round-trip by value.
  return a.quoted ? a.raw == b.raw : a.value == b.value;
}

const NumericValue& ScenarioConfig::scalar(const std::string& name) const {
  const auto it = fields.find(name);
  if (it == fields.end()) config_fail("missing required field: \"" + name + "\"");
  if (it->second.is_range) {
    config_fail("field \"" + name + "\": a range is not valid for this command");
  }
  return it->second.values.front();
}

const NumericValue* ScenarioConfig::maybe_scalar(const std::string& name) const {
  const auto it = fields.find(name);
  if (it == fields.end()) return nullptr;
  if (it->second.is_range) {
    config_fail("field \"" + name + "\": a range is not valid for this command");
  }
  return &it->second.values.front();
}

std::int64_t ScenarioConfig::integer(const std::string& name) const {
  return static_cast<std::int64_t>(scalar(name).value);
}

std::vector<std::string> ScenarioConfig::range_fields() const {
  std::vector<std::string> out;
  for (const auto& name : declared_order) {
    if (fields.at(name).is_range) out.push_back(name);
  }
  return out;
}

ScenarioConfig parse_config_text(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    config_fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_fail("config must be a JSON object");

  ScenarioConfig config;
  const auto add_field = [&](const std::string& name, FieldSpec spec) {
    if (config.has(name)) {
      config_fail("field \"" + name + "\": given more than once (utilities shorthand?)");
    }
    config.fields.emplace(name, std::move(spec));
    config.declared_order.push_back(name);
  };

  for (const auto& [key, value] : doc.items()) {
    if (key == "utilities") {
      if (!value.is_array() || value.size() != 4) {
        config_fail("field \"utilities\": expected exactly four values "
                    "[uTypeI, uCorrectNonRej, uCorrectRej, uTypeII]");
      }
      for (std::size_t i = 0; i < 4; ++i) {
        if (value[i].is_array()) {
          config_fail("field \"utilities\": ranges go on the named fields (uTypeI, "
                      "uCorrectNonRej, uCorrectRej, uTypeII), not inside the shorthand");
        }
        const auto& name = utility_names()[i];
        auto v = value_from_json(name, value[i]);
        check_value(name, FieldKind::utility, v);
        add_field(name, FieldSpec{{std::move(v)}, false});
      }
      continue;
    }
    const auto it = known_fields().find(key);
    if (it == known_fields().end()) config_fail("unknown config field: \"" + key + "\"");
    add_field(key, field_from_json(key, it->second, value));
  }
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const ScenarioConfig& config) {
  ordered_json doc = ordered_json::object();
  const auto render = [](const NumericValue& v) -> ordered_json {
    if (v.quoted) return v.raw;
    return ordered_json::parse(v.raw);  // number token, re-emitted as a number
  };
  for (const auto& name : config.declared_order) {
    const auto& spec = config.fields.at(name);
    if (spec.is_range) {
      ordered_json arr = ordered_json::array();
      for (const auto& v : spec.values) arr.push_back(render(v));
      doc[name] = std::move(arr);
    } else {
      doc[name] = render(spec.values.front());
    }
  }
  return doc.dump(2) + "\n";
}

bool equivalent(const ScenarioConfig& a, const ScenarioConfig& b) {
  if (a.declared_order != b.declared_order) return false;
  for (const auto& name : a.declared_order) {
    const auto& fa = a.fields.at(name);
    const auto& fb = b.fields.at(name);
    if (fa.is_range != fb.is_range || fa.values.size() != fb.values.size()) return false;
    for (std::size_t i = 0; i < fa.values.size(); ++i) {
      if (!same_value(fa.values[i], fb.values[i])) return false;
    }
  }
  return true;
}

}  // namespace seqoc::cli
