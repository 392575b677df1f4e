#include "hypoheat/report.hpp"

#include <cmath>
#include <cstdio>

namespace hypoheat {

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::boolean;
  v.bool_ = b;
  return v;
}

JsonValue JsonValue::integer(int64_t i) {
  JsonValue v;
  v.kind_ = Kind::integer;
  v.int_ = i;
  return v;
}

JsonValue JsonValue::number(double d) {
  JsonValue v;
  v.kind_ = Kind::number;
  v.num_ = d;
  return v;
}

JsonValue JsonValue::string(std::string s) {
  JsonValue v;
  v.kind_ = Kind::string;
  v.str_ = std::move(s);
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::array;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::object;
  return v;
}

JsonValue& JsonValue::push_back(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  for (auto& [k, old] : fields_) {
    if (k == key) {
      old = std::move(v);
      return *this;
    }
  }
  fields_.emplace_back(key, std::move(v));
  return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_indent(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<size_t>(indent * depth), ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::null: out += "null"; return;
    case Kind::boolean: out += bool_ ? "true" : "false"; return;
    case Kind::integer: out += std::to_string(int_); return;
    case Kind::number:
      if (std::isfinite(num_)) {
        out += format_double(num_);
      } else {
        // JSON has no infinities; report them as strings.
        append_escaped(out, format_double(num_));
      }
      return;
    case Kind::string: append_escaped(out, str_); return;
    case Kind::array: {
      if (items_.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        append_indent(out, indent, depth + 1);
        items_[i].write(out, indent, depth + 1);
      }
      append_indent(out, indent, depth);
      out += ']';
      return;
    }
    case Kind::object: {
      if (fields_.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      for (size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        append_indent(out, indent, depth + 1);
        append_escaped(out, fields_[i].first);
        out += indent > 0 ? ": " : ":";
        fields_[i].second.write(out, indent, depth + 1);
      }
      append_indent(out, indent, depth);
      out += '}';
      return;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

bool SuiteReport::overall_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string SuiteReport::to_json() const {
  JsonValue root = JsonValue::object();
  root.set("suite", JsonValue::string(suite));
  root.set("seed", JsonValue::integer(static_cast<int64_t>(seed)));
  JsonValue arr = JsonValue::array();
  for (const auto& c : checks) {
    JsonValue item = JsonValue::object();
    item.set("id", JsonValue::integer(c.id));
    item.set("name", JsonValue::string(c.name));
    item.set("pass", JsonValue::boolean(c.pass));
    item.set("details", c.details);
    arr.push_back(std::move(item));
  }
  root.set("checks", std::move(arr));
  root.set("overall_pass", JsonValue::boolean(overall_pass()));
  return root.dump(2) + "\n";
}

std::string SuiteReport::to_csv() const {
  std::string out = "id,name,pass\n";
  for (const auto& c : checks) {
    out += std::to_string(c.id);
    out += ',';
    out += c.name;
    out += ',';
    out += c.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string SuiteReport::human_table() const {
  std::string out;
  char buf[160];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof(buf), "[%2d] %-4s %-38s (%.2fs)\n", c.id,
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.runtime_seconds);
    out += buf;
  }
  out += overall_pass() ? "OVERALL: PASS\n" : "OVERALL: FAIL\n";
  return out;
}

}  // namespace hypoheat
