#pragma once

// Scenario configuration files: a single JSON object whose numeric fields
// accept plain numbers or strings ("3/7", "0.25", "inf").  Values are kept as
// the literal text they were written as and handed to the engine verbatim, so
// fractions and decimals stay exact where the exact engine applies.  Any
// numeric field may instead hold an array, declaring a sweep range; the
// Cartesian product of ranges (in declared field order) forms the sweep grid.
// Unknown fields are rejected.
//
// This layer deliberately depends only on the JSON parser — all numeric
// interpretation beyond coarse validation happens in the engine behind the
// C API.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqoc::cli {

// Configuration mistakes: malformed JSON, unknown fields, missing required
// fields, values of the wrong type.  Mapped to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One numeric value as written in the config: `raw` is the literal text (the
// string contents, or the number token), `quoted` whether it was a JSON
// string, `value` the approximate double (for display, validation, and CSV
// echo — the engine re-parses `raw` exactly).
struct NumericValue {
  std::string raw;
  bool quoted = false;
  double value = 0;
};

bool same_value(const NumericValue& a, const NumericValue& b);

// A field's parsed contents: one value, or several when the field declares a
// sweep range.
struct FieldSpec {
  std::vector<NumericValue> values;
  bool is_range = false;
};

struct ScenarioConfig {
  std::map<std::string, FieldSpec> fields;
  std::vector<std::string> declared_order;  // present fields, file order

  bool has(const std::string& name) const { return fields.count(name) != 0; }

  // The field's single value; ConfigError when absent or a range.
  const NumericValue& scalar(const std::string& name) const;
  // As above but nullptr when the field is absent.
  const NumericValue* maybe_scalar(const std::string& name) const;

  // Integer-valued fields (n, m).
  std::int64_t integer(const std::string& name) const;

  // Names of range-declaring fields, in declared order.
  std::vector<std::string> range_fields() const;
};

// The known numeric fields and their validation class.
enum class FieldKind { probability, utility, integer, cutoff };
const std::map<std::string, FieldKind>& known_fields();

ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

// Canonical JSON rendering; parse(serialize(c)) is value-identical to c.
std::string serialize_config(const ScenarioConfig& config);

// Value equality: same fields in the same order, same values (literal text
// for quoted values, double equality for number tokens), same range shape.
bool equivalent(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace seqoc::cli
