#pragma once

#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace grwcli {

/// %.17g round-trips IEEE doubles exactly and is locale-independent here,
/// which keeps reports byte-stable across runs.  Non-finite values are not
/// representable in JSON and come out as the strings "nan" / "inf" / "-inf".
inline std::string fmt17(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

/// Streaming JSON writer with insertion-ordered keys, two-space indentation
/// and one scalar per line, so that a single field (the wall clock) can be
/// filtered out of byte comparisons by dropping its line.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  void begin_object() { open('{', true); }
  void end_object() { close('}'); }
  void begin_array() { open('[', false); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    assert(!stack_.empty() && stack_.back().is_object && !pending_key_);
    element_separator();
    os_ << '"' << json_escape(k) << "\": ";
    pending_key_ = true;
  }

  void value(double v) { scalar(fmt17(v)); }
  void value(int v) { scalar(std::to_string(v)); }
  void value(long long v) { scalar(std::to_string(v)); }
  void value(unsigned long long v) { scalar(std::to_string(v)); }
  void value(bool v) { scalar(v ? "true" : "false"); }
  void value(std::string_view v) { scalar('"' + json_escape(v) + '"'); }
  void value(const char* v) { value(std::string_view(v)); }

  void kv(std::string_view k, double v) { key(k); value(v); }
  void kv(std::string_view k, int v) { key(k); value(v); }
  void kv(std::string_view k, bool v) { key(k); value(v); }
  void kv(std::string_view k, std::string_view v) { key(k); value(v); }
  // without this overload a string literal would decay to the bool one
  void kv(std::string_view k, const char* v) { key(k); value(std::string_view(v)); }

 private:
  struct Frame {
    bool is_object;
    int count = 0;
  };

  void indent() {
    for (std::size_t i = 0; i < stack_.size(); ++i) os_ << "  ";
  }

  // comma/newline handling for a new element in the enclosing container
  void element_separator() {
    if (stack_.empty()) return;
    if (stack_.back().count++ > 0) os_ << ',';
    os_ << '\n';
    indent();
  }

  void scalar(const std::string& text) {
    if (pending_key_)
      pending_key_ = false;
    else
      element_separator();
    os_ << text;
  }

  void open(char bracket, bool is_object) {
    if (pending_key_)
      pending_key_ = false;
    else
      element_separator();
    os_ << bracket;
    stack_.push_back({is_object, 0});
  }

  void close(char bracket) {
    assert(!stack_.empty());
    const bool had_entries = stack_.back().count > 0;
    stack_.pop_back();
    if (had_entries) {
      os_ << '\n';
      indent();
    }
    os_ << bracket;
    if (stack_.empty()) os_ << '\n';
  }

  std::ostream& os_;
  std::vector<Frame> stack_;
  bool pending_key_ = false;
};

}  // namespace grwcli
