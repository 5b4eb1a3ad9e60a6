#include "mcvi/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "mcvi/error.hpp"

namespace mcvi::csv {

namespace {

std::string at(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

}  // namespace

Reader::Reader(std::istream& in, std::string source_name)
    : in_(in), source_(std::move(source_name)) {}

bool Reader::next(Record& out) {
  std::string line;
  for (;;) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (first_) {
      first_ = false;
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) break;
  }

  out.line = line_;
  out.fields.clear();
  std::string field;
  std::size_t i = 0;
  bool quoted = false;
  bool after_quote = false;
  for (;;) {
    if (i == line.size()) {
      if (quoted) {
        // Quoted field spans a newline.
        std::string more;
        if (!std::getline(in_, more)) {
          throw Error(ErrorKind::MalformedCsv, "unterminated quoted field at " + at(source_, out.line),
                      at(source_, out.line));
        }
        ++line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field.push_back('\n');
        line = std::move(more);
        i = 0;
        continue;
      }
      out.fields.push_back(std::move(field));
      return true;
    }
    const char c = line[i++];
    if (quoted) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == ',') {
      out.fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (after_quote) {
      throw Error(ErrorKind::MalformedCsv, "unexpected character after closing quote at " + at(source_, line_),
                  at(source_, line_));
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
    } else {
      field.push_back(c);
    }
  }
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, std::string_view where) {
  const auto s = trim(field);
  double v = 0.0;
  if (!s.empty() && s.front() == '+') {
    // from_chars rejects a leading '+'; treat "+x" as malformed as well.
    throw Error(ErrorKind::MalformedCsv, "invalid number '" + std::string(field) + "' at " + std::string(where),
                std::string(where));
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::MalformedCsv, "invalid number '" + std::string(field) + "' at " + std::string(where),
                std::string(where));
  }
  return v;
}

std::optional<double> parse_optional_double(std::string_view field, std::string_view where) {
  if (trim(field).empty()) return std::nullopt;
  return parse_double(field, where);
}

int parse_int(std::string_view field, std::string_view where) {
  const auto s = trim(field);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::MalformedCsv, "invalid integer '" + std::string(field) + "' at " + std::string(where),
                std::string(where));
  }
  return v;
}

bool parse_flag(std::string_view field, std::string_view where) {
  const auto s = trim(field);
  if (s == "0") return false;
  if (s == "1") return true;
  throw Error(ErrorKind::MalformedCsv, "expected 0/1 flag, got '" + std::string(field) + "' at " + std::string(where),
              std::string(where));
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_report(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Writer& Writer::header(std::initializer_list<std::string_view> names) {
  for (auto n : names) cell(n);
  end_row();
  return *this;
}

void Writer::sep() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

Writer& Writer::cell(std::string_view text) {
  sep();
  out_ << escape(text);
  return *this;
}

Writer& Writer::cell(double v) {
  sep();
  out_ << format_report(v);
  return *this;
}

Writer& Writer::cell(std::optional<double> v) {
  sep();
  if (v) out_ << format_report(*v);
  return *this;
}

Writer& Writer::cell(int v) {
  sep();
  out_ << v;
  return *this;
}

Writer& Writer::cell(long v) {
  sep();
  out_ << v;
  return *this;
}

Writer& Writer::cell(std::size_t v) {
  sep();
  out_ << v;
  return *this;
}

Writer& Writer::cell(bool v) {
  sep();
  out_ << (v ? '1' : '0');
  return *this;
}

Writer& Writer::exact(double v) {
  sep();
  out_ << format_exact(v);
  return *this;
}

Writer& Writer::exact(std::optional<double> v) {
  sep();
  if (v) out_ << format_exact(*v);
  return *this;
}

void Writer::end_row() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace mcvi::csv
