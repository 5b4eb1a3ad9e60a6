#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcvi::csv {

/// One parsed data record with the 1-based line it started on.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Minimal RFC 4180 reader: comma separated, optional double-quote quoting
/// with "" escapes, LF or CRLF endings, leading UTF-8 BOM stripped, blank
/// lines skipped. Throws MalformedCsv (with the line number) on unterminated
/// quotes or stray characters after a closing quote.
class Reader {
 public:
  Reader(std::istream& in, std::string source_name);

  /// Reads the next record; returns false at end of input.
  bool next(Record& out);

  const std::string& source() const noexcept { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
  bool first_ = true;
};

/// Strict field parsers; each throws MalformedCsv naming `where` on failure.
double parse_double(std::string_view field, std::string_view where);
std::optional<double> parse_optional_double(std::string_view field, std::string_view where);
int parse_int(std::string_view field, std::string_view where);
bool parse_flag(std::string_view field, std::string_view where);

std::string_view trim(std::string_view s) noexcept;

/// Shortest decimal text that parses back to exactly `v`.
std::string format_exact(double v);
/// Six significant digits (printf %.6g); used for report tables.
std::string format_report(double v);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Row-at-a-time writer. Cells are appended with `<<` and committed by end_row().
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  Writer& header(std::initializer_list<std::string_view> names);
  Writer& cell(std::string_view text);
  Writer& cell(const char* text) { return cell(std::string_view(text)); }
  Writer& cell(const std::string& text) { return cell(std::string_view(text)); }
  Writer& cell(double v);
  Writer& cell(std::optional<double> v);
  Writer& cell(int v);
  Writer& cell(long v);
  Writer& cell(std::size_t v);
  Writer& cell(bool v);
  Writer& exact(double v);
  Writer& exact(std::optional<double> v);
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace mcvi::csv
