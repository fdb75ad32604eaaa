#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

// All numeric text output uses 17-significant-digit decimal so values
// round-trip exactly.
inline std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal append-only JSON emitter. Exists because the stock serializers
// print shortest-round-trip doubles; report files must carry the same
// 17-significant-digit text as every other output channel. Non-finite
// doubles are emitted as the strings "inf"/"-inf"/"nan" (JSON has no
// literal for them).
class JsonWriter {
 public:
  void begin_object() {
    comma();
    out_ += '{';
    fresh_.push_back(true);
  }
  void end_object() {
    out_ += '}';
    fresh_.pop_back();
  }
  void begin_array() {
    comma();
    out_ += '[';
    fresh_.push_back(true);
  }
  void end_array() {
    out_ += ']';
    fresh_.pop_back();
  }
  void key(std::string_view k) {
    comma();
    quote(k);
    out_ += ':';
    pending_value_ = true;
  }
  void value(double v) {
    comma();
    if (std::isfinite(v)) {
      out_ += fmt17(v);
    } else {
      quote(fmt17(v));
    }
  }
  void value(std::string_view s) {
    comma();
    quote(s);
  }
  void value(const char* s) { value(std::string_view(s)); }
  void value(bool b) {
    comma();
    out_ += b ? "true" : "false";
  }
  void value(long long i) {
    comma();
    out_ += std::to_string(i);
  }
  void value(std::size_t i) {
    comma();
    out_ += std::to_string(i);
  }
  void value(int i) { value(static_cast<long long>(i)); }

  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!fresh_.empty()) {
      if (!fresh_.back()) out_ += ',';
      fresh_.back() = false;
    }
  }
  void quote(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> fresh_;
  bool pending_value_ = false;
};

}  // namespace qc
