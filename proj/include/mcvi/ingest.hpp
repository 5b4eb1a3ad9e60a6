#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mcvi {

/// UNCTAD economy code or ISO3; non-empty, unique within the classification table.
using EconomyId = std::string;

enum class Region { Africa, Americas, Asia, Europe, Oceania };

std::string_view to_string(Region r) noexcept;
std::optional<Region> parse_region(std::string_view s) noexcept;

struct YearRange {
  int first = 2006;
  int last = 2025;
  bool contains(int y) const noexcept { return y >= first && y <= last; }
};

struct Classification {
  EconomyId economy;
  std::string name;
  bool sids = false;
  bool ldc = false;
  bool lldc = false;
  Region region = Region::Africa;
};

struct ClassificationTable {
  std::vector<Classification> rows;  // sorted by economy
  const Classification* find(std::string_view economy) const;
};

struct LsciRow {
  EconomyId economy;
  int year = 0;
  double lsci = 0.0;
};
struct LsciTable {
  std::vector<LsciRow> rows;  // sorted by (economy, year)
};

/// Stored with economy_a < economy_b; the loader folds reversed duplicates.
struct LsbciRow {
  EconomyId economy_a;
  EconomyId economy_b;
  int year = 0;
  double lsbci = 0.0;
};
struct LsbciTable {
  std::vector<LsbciRow> rows;  // sorted by (economy_a, economy_b, year)
};

struct PlsciRow {
  std::string port_id;
  EconomyId economy;
  int year = 0;
  double plsci = 0.0;
};
struct PlsciTable {
  std::vector<PlsciRow> rows;  // sorted by (economy, year, port_id)
};

struct ExternalRow {
  EconomyId economy;
  int year = 0;
  std::optional<double> gdp_pc;
  std::optional<double> trade_open;
  std::optional<double> lpi;
  std::optional<double> freight_advalorem;
};
struct ExternalTable {
  std::vector<ExternalRow> rows;  // sorted by (economy, year)
  const ExternalRow* find(std::string_view economy, int year) const;
};

enum class DatasetKind { Lsci, Lsbci, Plsci, Classification, External };

std::string_view to_string(DatasetKind k) noexcept;
/// Canonical file name, e.g. "lsci.csv".
std::string_view file_name(DatasetKind k) noexcept;

using AnyTable = std::variant<LsciTable, LsbciTable, PlsciTable, ClassificationTable, ExternalTable>;

struct LoadOptions {
  YearRange years;
  std::string source_name = "<stream>";
};

/// Parses and validates one dataset. Row order in the source never matters:
/// every table is returned in its canonical sort order.
AnyTable load_dataset(DatasetKind kind, std::istream& source, const LoadOptions& options = {});

LsciTable load_lsci(std::istream& source, const LoadOptions& options = {});
LsbciTable load_lsbci(std::istream& source, const LoadOptions& options = {});
PlsciTable load_plsci(std::istream& source, const LoadOptions& options = {});
ClassificationTable load_classifications(std::istream& source, const LoadOptions& options = {});
ExternalTable load_external(std::istream& source, const LoadOptions& options = {});

struct Provenance {
  std::string source;
  std::size_t rows = 0;
};

struct Tables {
  LsciTable lsci;
  LsbciTable lsbci;
  PlsciTable plsci;
  ClassificationTable classifications;
  ExternalTable external;
  std::vector<Provenance> provenance;
};

/// Validated, immutable image of the five inputs. Only validate_bundle and
/// generate_fixture create one; afterwards it is safe to share across threads.
class DataBundle {
 public:
  const LsciTable& lsci() const noexcept { return tables_.lsci; }
  const LsbciTable& lsbci() const noexcept { return tables_.lsbci; }
  const PlsciTable& plsci() const noexcept { return tables_.plsci; }
  const ClassificationTable& classifications() const noexcept { return tables_.classifications; }
  const ExternalTable& external() const noexcept { return tables_.external; }
  const std::vector<Provenance>& provenance() const noexcept { return tables_.provenance; }
  const YearRange& years() const noexcept { return years_; }
  /// Economies with at least one indicator record, per year.
  const std::map<int, std::size_t>& economies_per_year() const noexcept { return per_year_; }

 private:
  friend DataBundle validate_bundle(Tables tables, YearRange years);
  DataBundle() = default;

  Tables tables_;
  YearRange years_;
  std::map<int, std::size_t> per_year_;
};

/// Cross-references economies against the classification table. Never fills
/// gaps: a missing (economy, year) simply has no row.
DataBundle validate_bundle(Tables tables, YearRange years = {});

/// Reads the five canonical files from `dir` (external.csv may be absent,
/// giving an empty table). A missing required file is a SchemaMismatch.
DataBundle load_bundle(const std::filesystem::path& dir, YearRange years = {});

/// Serialisers use the shortest exact decimal form, so write then load
/// reproduces every value bit for bit.
void write_lsci(std::ostream& out, const LsciTable& t);
void write_lsbci(std::ostream& out, const LsbciTable& t);
void write_plsci(std::ostream& out, const PlsciTable& t);
void write_classifications(std::ostream& out, const ClassificationTable& t);
void write_external(std::ostream& out, const ExternalTable& t);
/// Writes the five canonical files; returns their paths.
std::vector<std::filesystem::path> write_bundle(const DataBundle& bundle, const std::filesystem::path& dir);

/// Deterministic synthetic bundle (see fixture.cpp for the generative model).
/// Years run from 2006; n_economies >= 4, 2 <= n_years <= 20.
DataBundle generate_fixture(int n_economies, int n_years, std::uint64_t seed);

}  // namespace mcvi
