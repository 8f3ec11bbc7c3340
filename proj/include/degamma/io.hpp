#pragma once

// Output records (JSON lines / CSV) and command-line literal parsing.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "classical_gamma.hpp"
#include "degenerate.hpp"

namespace degamma {

struct OutputRecord {
  double s_re = 0.0;
  double s_im = 0.0;
  double lambda = 0.0;
  double value_re = 0.0;
  double value_im = 0.0;
  double abs_error = 0.0;
  std::string method;
  std::string status;  ///< regular, near-pole, pole or skipped
};

inline const std::vector<std::string>& output_fields() {
  static const std::vector<std::string> fields = {"s_re",     "s_im",      "lambda", "value_re",
                                                  "value_im", "abs_error", "method", "status"};
  return fields;
}

/// Record for an evaluation result. At a pole the residue goes into value_*.
inline OutputRecord make_record(Complex s, double lambda, const EvalResult& r) {
  OutputRecord rec{s.real(), s.imag(), lambda, r.value.real(), r.value.imag(), r.abs_error_estimate,
                   to_string(r.method), to_string(r.status)};
  if (r.status == EvalStatus::AtPole && r.pole) {
    rec.value_re = r.pole->residue.real();
    rec.value_im = r.pole->residue.imag();
    rec.abs_error = 0.0;
  }
  return rec;
}

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_number(double v) {
  const std::string s = format_double(v);
  return s.empty() ? "null" : s;
}

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
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
  return out + "\"";
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// One JSON object, no trailing newline. Non-finite numbers become null.
inline std::string to_json(const OutputRecord& r) {
  using detail::json_number, detail::json_string;
  return "{\"s_re\":" + json_number(r.s_re) + ",\"s_im\":" + json_number(r.s_im) +
         ",\"lambda\":" + json_number(r.lambda) + ",\"value_re\":" + json_number(r.value_re) +
         ",\"value_im\":" + json_number(r.value_im) + ",\"abs_error\":" + json_number(r.abs_error) +
         ",\"method\":" + json_string(r.method) + ",\"status\":" + json_string(r.status) + "}";
}

inline std::string csv_header() {
  std::string out;
  for (const auto& f : output_fields()) out += (out.empty() ? "" : ",") + f;
  return out;
}

/// One CSV row; non-finite numbers become empty fields.
inline std::string to_csv(const OutputRecord& r) {
  using detail::format_double, detail::csv_field;
  return format_double(r.s_re) + "," + format_double(r.s_im) + "," + format_double(r.lambda) + "," +
         format_double(r.value_re) + "," + format_double(r.value_im) + "," + format_double(r.abs_error) + "," +
         csv_field(r.method) + "," + csv_field(r.status);
}

enum class OutputFormat { JsonLines, Csv };

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  void write(const OutputRecord& r) {
    if (format_ == OutputFormat::Csv) {
      if (!header_written_) out_ << csv_header() << '\n';
      header_written_ = true;
      out_ << to_csv(r) << '\n';
    } else {
      out_ << to_json(r) << '\n';
    }
  }

  /// CSV output always carries a header, even with zero rows.
  void finish() {
    if (format_ == OutputFormat::Csv && !header_written_) out_ << csv_header() << '\n';
    header_written_ = true;
    out_.flush();
  }

 private:
  std::ostream& out_;
  OutputFormat format_;
  bool header_written_ = false;
};

namespace detail {

inline std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') {
    text.remove_prefix(1);
    if (text.empty() || text.front() == '+' || text.front() == '-') return std::nullopt;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses "a", "ai", "a+bi" or "a-bi" (no whitespace). A bare "i" or "-i" has unit coefficient.
inline std::optional<Complex> parse_complex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    const auto re = detail::parse_double(text);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto coefficient = [](std::string_view c) -> std::optional<double> {
    if (c.empty() || c == "+") return 1.0;
    if (c == "-") return -1.0;
    return detail::parse_double(c);
  };
  if (split == std::string_view::npos) {
    const auto im = coefficient(body);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  const auto re = detail::parse_double(body.substr(0, split));
  const auto im = coefficient(body.substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

/// Inclusive grid "a:b:step" with round((b - a)/step) + 1 points.
struct RangeSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::int64_t count() const { return static_cast<std::int64_t>(std::llround((stop - start) / step)) + 1; }
  double at(std::int64_t i) const { return start + static_cast<double>(i) * step; }
};

inline std::optional<RangeSpec> parse_range(std::string_view text) {
  const auto first = text.find(':');
  if (first == std::string_view::npos) return std::nullopt;
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  const auto a = detail::parse_double(text.substr(0, first));
  const auto b = detail::parse_double(text.substr(first + 1, second - first - 1));
  const auto h = detail::parse_double(text.substr(second + 1));
  if (!a || !b || !h || !(*h > 0.0) || *b < *a || !std::isfinite(*a) || !std::isfinite(*b)) return std::nullopt;
  return RangeSpec{*a, *b, *h};
}

}  // namespace degamma
