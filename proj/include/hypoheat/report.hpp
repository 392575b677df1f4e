#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hypoheat/rational.hpp"

namespace hypoheat {

/// Deterministic JSON tree. Field order is insertion order, floats print with
/// 17 significant digits and rationals as "p/q" strings, so identical report
/// values always serialize to identical bytes.
class JsonValue {
 public:
  enum class Kind { null, boolean, integer, number, string, array, object };

  JsonValue() : kind_(Kind::null) {}
  static JsonValue boolean(bool b);
  static JsonValue integer(int64_t v);
  static JsonValue number(double v);
  static JsonValue string(std::string s);
  static JsonValue rational(const Rational& r) { return string(to_fraction_string(r)); }
  static JsonValue array();
  static JsonValue object();

  Kind kind() const { return kind_; }

  JsonValue& push_back(JsonValue v);
  JsonValue& set(const std::string& key, JsonValue v);

  std::string dump(int indent = 0) const;

 private:
  void write(std::string& out, int indent, int depth) const;

  Kind kind_;
  bool bool_ = false;
  int64_t int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  JsonValue details;         // deterministic payload, serialized in reports
  double runtime_seconds = 0;  // shown in the human table, never serialized
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool overall_pass() const;
  /// Canonical JSON; wall-clock runtimes are deliberately excluded so equal
  /// runs emit byte-identical reports.
  std::string to_json() const;
  std::string to_csv() const;
  std::string human_table() const;
};

}  // namespace hypoheat
