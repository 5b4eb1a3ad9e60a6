#include "mcvi/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "mcvi/csv.hpp"
#include "mcvi/error.hpp"

namespace mcvi {

namespace {

constexpr double kSymmetricTolerance = 1e-9;

std::string where(const csv::Reader& r, const csv::Record& rec) {
  return r.source() + ":" + std::to_string(rec.line);
}

/// Maps the header onto the expected column list; exact names, any order.
std::vector<std::size_t> bind_header(csv::Reader& reader, std::initializer_list<std::string_view> expected) {
  csv::Record header;
  if (!reader.next(header)) {
    throw Error(ErrorKind::SchemaMismatch, reader.source() + ": empty file, expected a header row", reader.source());
  }
  std::vector<std::string> names;
  names.reserve(header.fields.size());
  for (const auto& f : header.fields) names.emplace_back(csv::trim(f));

  std::vector<std::size_t> index;
  for (auto col : expected) {
    const auto it = std::find(names.begin(), names.end(), col);
    if (it == names.end()) {
      throw Error(ErrorKind::SchemaMismatch, reader.source() + ": missing column '" + std::string(col) + "'",
                  std::string(col));
    }
    if (std::find(it + 1, names.end(), col) != names.end()) {
      throw Error(ErrorKind::SchemaMismatch, reader.source() + ": duplicate column '" + std::string(col) + "'",
                  std::string(col));
    }
    index.push_back(static_cast<std::size_t>(it - names.begin()));
  }
  for (const auto& n : names) {
    if (std::find(expected.begin(), expected.end(), n) == expected.end()) {
      throw Error(ErrorKind::SchemaMismatch, reader.source() + ": unexpected column '" + n + "'", n);
    }
  }
  return index;
}

const std::string& field(const csv::Reader& r, const csv::Record& rec, std::size_t i, std::size_t width) {
  if (rec.fields.size() != width) {
    throw Error(ErrorKind::MalformedCsv,
                "expected " + std::to_string(width) + " fields, got " + std::to_string(rec.fields.size()) + " at " +
                    where(r, rec),
                where(r, rec));
  }
  return rec.fields[i];
}

EconomyId economy_code(const csv::Reader& r, const csv::Record& rec, std::string_view raw) {
  const auto code = csv::trim(raw);
  if (code.empty()) throw Error(ErrorKind::DomainError, "empty economy code at " + where(r, rec), where(r, rec));
  return EconomyId(code);
}

int checked_year(const csv::Reader& r, const csv::Record& rec, std::string_view raw, const YearRange& range,
                 const std::string& key) {
  const int y = csv::parse_int(raw, where(r, rec));
  if (!range.contains(y)) {
    throw Error(ErrorKind::DomainError,
                "year " + std::to_string(y) + " outside [" + std::to_string(range.first) + ", " +
                    std::to_string(range.last) + "] for " + key + " at " + where(r, rec),
                key);
  }
  return y;
}

void duplicate(const std::string& key, const std::string& at) {
  throw Error(ErrorKind::DomainError, "duplicate key " + key + " at " + at, key);
}

}  // namespace

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::Africa: return "Africa";
    case Region::Americas: return "Americas";
    case Region::Asia: return "Asia";
    case Region::Europe: return "Europe";
    case Region::Oceania: return "Oceania";
  }
  return "Africa";
}

std::optional<Region> parse_region(std::string_view s) noexcept {
  for (auto r : {Region::Africa, Region::Americas, Region::Asia, Region::Europe, Region::Oceania}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

std::string_view to_string(DatasetKind k) noexcept {
  switch (k) {
    case DatasetKind::Lsci: return "lsci";
    case DatasetKind::Lsbci: return "lsbci";
    case DatasetKind::Plsci: return "plsci";
    case DatasetKind::Classification: return "classification";
    case DatasetKind::External: return "external";
  }
  return "lsci";
}

std::string_view file_name(DatasetKind k) noexcept {
  switch (k) {
    case DatasetKind::Lsci: return "lsci.csv";
    case DatasetKind::Lsbci: return "lsbci.csv";
    case DatasetKind::Plsci: return "plsci.csv";
    case DatasetKind::Classification: return "classifications.csv";
    case DatasetKind::External: return "external.csv";
  }
  return "lsci.csv";
}

const Classification* ClassificationTable::find(std::string_view economy) const {
  const auto it = std::lower_bound(rows.begin(), rows.end(), economy,
                                   [](const Classification& c, std::string_view e) { return c.economy < e; });
  return (it != rows.end() && it->economy == economy) ? &*it : nullptr;
}

const ExternalRow* ExternalTable::find(std::string_view economy, int year) const {
  const auto it = std::lower_bound(rows.begin(), rows.end(), std::pair(economy, year),
                                   [](const ExternalRow& r, const std::pair<std::string_view, int>& k) {
                                     return std::tie(r.economy, r.year) < std::tie(k.first, k.second);
                                   });
  return (it != rows.end() && it->economy == economy && it->year == year) ? &*it : nullptr;
}

LsciTable load_lsci(std::istream& source, const LoadOptions& options) {
  csv::Reader reader(source, options.source_name);
  const auto col = bind_header(reader, {"economy", "year", "lsci"});
  LsciTable table;
  std::map<std::pair<EconomyId, int>, std::size_t> seen;
  csv::Record rec;
  while (reader.next(rec)) {
    const auto at = where(reader, rec);
    LsciRow row;
    row.economy = economy_code(reader, rec, field(reader, rec, col[0], col.size()));
    row.year = checked_year(reader, rec, field(reader, rec, col[1], col.size()), options.years, row.economy);
    row.lsci = csv::parse_double(field(reader, rec, col[2], col.size()), at);
    const auto key = row.economy + "/" + std::to_string(row.year);
    if (row.lsci < 0.0) throw Error(ErrorKind::DomainError, "negative lsci for " + key + " at " + at, key);
    if (!seen.emplace(std::pair(row.economy, row.year), rec.line).second) duplicate(key, at);
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const LsciRow& a, const LsciRow& b) {
    return std::tie(a.economy, a.year) < std::tie(b.economy, b.year);
  });
  return table;
}

LsbciTable load_lsbci(std::istream& source, const LoadOptions& options) {
  csv::Reader reader(source, options.source_name);
  const auto col = bind_header(reader, {"economy_a", "economy_b", "year", "lsbci"});

  struct Seen {
    double value = 0.0;
    bool forward = false;  // an (a < b) record was read
    bool reverse = false;  // a (b, a) record was read
  };
  std::map<std::tuple<EconomyId, EconomyId, int>, Seen> pairs;
  csv::Record rec;
  while (reader.next(rec)) {
    const auto at = where(reader, rec);
    auto a = economy_code(reader, rec, field(reader, rec, col[0], col.size()));
    auto b = economy_code(reader, rec, field(reader, rec, col[1], col.size()));
    const auto key = a + "-" + b;
    if (a == b) throw Error(ErrorKind::DomainError, "self pair " + key + " at " + at, key);
    const int year = checked_year(reader, rec, field(reader, rec, col[2], col.size()), options.years, key);
    const double v = csv::parse_double(field(reader, rec, col[3], col.size()), at);
    const auto ykey = key + "/" + std::to_string(year);
    if (v < 0.0 || v > 1.0) throw Error(ErrorKind::DomainError, "lsbci outside [0,1] for " + ykey + " at " + at, ykey);

    const bool forward = a < b;
    if (!forward) std::swap(a, b);
    auto [it, inserted] = pairs.try_emplace(std::tuple(a, b, year));
    Seen& s = it->second;
    if (!inserted) {
      if ((forward && s.forward) || (!forward && s.reverse)) duplicate(ykey, at);
      if (std::fabs(s.value - v) > kSymmetricTolerance) {
        throw Error(ErrorKind::DomainError, "conflicting symmetric lsbci values for " + ykey + " at " + at, ykey);
      }
    }
    // Both orientations with equal values fold into one record; the a < b
    // orientation's value wins so file order cannot matter.
    if (forward || inserted) s.value = v;
    (forward ? s.forward : s.reverse) = true;
  }

  LsbciTable table;
  table.rows.reserve(pairs.size());
  for (auto& [k, s] : pairs) {
    table.rows.push_back(LsbciRow{std::get<0>(k), std::get<1>(k), std::get<2>(k), s.value});
  }
  return table;
}

PlsciTable load_plsci(std::istream& source, const LoadOptions& options) {
  csv::Reader reader(source, options.source_name);
  const auto col = bind_header(reader, {"port_id", "economy", "year", "plsci"});
  PlsciTable table;
  std::set<std::pair<std::string, int>> seen;
  csv::Record rec;
  while (reader.next(rec)) {
    const auto at = where(reader, rec);
    PlsciRow row;
    row.port_id = std::string(csv::trim(field(reader, rec, col[0], col.size())));
    if (row.port_id.empty()) throw Error(ErrorKind::DomainError, "empty port_id at " + at, at);
    row.economy = economy_code(reader, rec, field(reader, rec, col[1], col.size()));
    row.year = checked_year(reader, rec, field(reader, rec, col[2], col.size()), options.years, row.port_id);
    row.plsci = csv::parse_double(field(reader, rec, col[3], col.size()), at);
    const auto key = row.port_id + "/" + std::to_string(row.year);
    if (row.plsci < 0.0) throw Error(ErrorKind::DomainError, "negative plsci for " + key + " at " + at, key);
    if (!seen.emplace(row.port_id, row.year).second) duplicate(key, at);
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const PlsciRow& a, const PlsciRow& b) {
    return std::tie(a.economy, a.year, a.port_id) < std::tie(b.economy, b.year, b.port_id);
  });
  return table;
}

ClassificationTable load_classifications(std::istream& source, const LoadOptions& options) {
  csv::Reader reader(source, options.source_name);
  const auto col = bind_header(reader, {"economy", "name", "sids", "ldc", "lldc", "region"});
  ClassificationTable table;
  std::set<EconomyId> seen;
  csv::Record rec;
  while (reader.next(rec)) {
    const auto at = where(reader, rec);
    Classification c;
    c.economy = economy_code(reader, rec, field(reader, rec, col[0], col.size()));
    c.name = std::string(csv::trim(field(reader, rec, col[1], col.size())));
    c.sids = csv::parse_flag(field(reader, rec, col[2], col.size()), at);
    c.ldc = csv::parse_flag(field(reader, rec, col[3], col.size()), at);
    c.lldc = csv::parse_flag(field(reader, rec, col[4], col.size()), at);
    const auto region = csv::trim(field(reader, rec, col[5], col.size()));
    const auto r = parse_region(region);
    if (!r) {
      throw Error(ErrorKind::DomainError, "unknown region '" + std::string(region) + "' for " + c.economy + " at " + at,
                  c.economy);
    }
    c.region = *r;
    if (!seen.insert(c.economy).second) duplicate(c.economy, at);
    table.rows.push_back(std::move(c));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const Classification& a, const Classification& b) { return a.economy < b.economy; });
  return table;
}

ExternalTable load_external(std::istream& source, const LoadOptions& options) {
  csv::Reader reader(source, options.source_name);
  const auto col = bind_header(reader, {"economy", "year", "gdp_pc", "trade_open", "lpi", "freight_advalorem"});
  ExternalTable table;
  std::set<std::pair<EconomyId, int>> seen;
  csv::Record rec;
  while (reader.next(rec)) {
    const auto at = where(reader, rec);
    ExternalRow row;
    row.economy = economy_code(reader, rec, field(reader, rec, col[0], col.size()));
    row.year = checked_year(reader, rec, field(reader, rec, col[1], col.size()), options.years, row.economy);
    row.gdp_pc = csv::parse_optional_double(field(reader, rec, col[2], col.size()), at);
    row.trade_open = csv::parse_optional_double(field(reader, rec, col[3], col.size()), at);
    row.lpi = csv::parse_optional_double(field(reader, rec, col[4], col.size()), at);
    row.freight_advalorem = csv::parse_optional_double(field(reader, rec, col[5], col.size()), at);
    const auto key = row.economy + "/" + std::to_string(row.year);
    for (const auto* v : {&row.gdp_pc, &row.trade_open, &row.lpi, &row.freight_advalorem}) {
      if (*v && !(**v > 0.0)) throw Error(ErrorKind::DomainError, "non-positive covariate for " + key + " at " + at, key);
    }
    if (row.lpi && (*row.lpi < 1.0 || *row.lpi > 5.0)) {
      throw Error(ErrorKind::DomainError, "lpi outside [1,5] for " + key + " at " + at, key);
    }
    if (!seen.emplace(row.economy, row.year).second) duplicate(key, at);
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const ExternalRow& a, const ExternalRow& b) {
    return std::tie(a.economy, a.year) < std::tie(b.economy, b.year);
  });
  return table;
}

AnyTable load_dataset(DatasetKind kind, std::istream& source, const LoadOptions& options) {
  switch (kind) {
    case DatasetKind::Lsci: return load_lsci(source, options);
    case DatasetKind::Lsbci: return load_lsbci(source, options);
    case DatasetKind::Plsci: return load_plsci(source, options);
    case DatasetKind::Classification: return load_classifications(source, options);
    case DatasetKind::External: return load_external(source, options);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown dataset kind");
}

DataBundle validate_bundle(Tables tables, YearRange years) {
  const auto& cls = tables.classifications;
  auto require = [&](const EconomyId& e, std::string_view table) {
    if (!cls.find(e)) {
      throw Error(ErrorKind::UnknownEconomy, "economy '" + e + "' in " + std::string(table) + " has no classification",
                  e);
    }
  };

  std::map<int, std::set<EconomyId>> covered;
  for (const auto& r : tables.lsci.rows) {
    require(r.economy, "lsci");
    covered[r.year].insert(r.economy);
  }
  for (const auto& r : tables.lsbci.rows) {
    require(r.economy_a, "lsbci");
    require(r.economy_b, "lsbci");
    covered[r.year].insert(r.economy_a);
    covered[r.year].insert(r.economy_b);
  }
  for (const auto& r : tables.plsci.rows) {
    require(r.economy, "plsci");
    covered[r.year].insert(r.economy);
  }

  DataBundle bundle;
  bundle.years_ = years;
  for (const auto& [y, s] : covered) bundle.per_year_[y] = s.size();
  bundle.tables_ = std::move(tables);
  return bundle;
}

DataBundle load_bundle(const std::filesystem::path& dir, YearRange years) {
  Tables tables;
  auto open = [&](DatasetKind kind, bool required) -> std::optional<std::ifstream> {
    const auto path = dir / file_name(kind);
    if (!std::filesystem::exists(path)) {
      if (!required) return std::nullopt;
      throw Error(ErrorKind::SchemaMismatch, "required input file " + path.string() + " not found",
                  std::string(file_name(kind)));
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string(), path.string());
    return in;
  };
  auto options = [&](DatasetKind kind) { return LoadOptions{years, (dir / file_name(kind)).string()}; };

  {
    auto in = open(DatasetKind::Classification, true);
    tables.classifications = load_classifications(*in, options(DatasetKind::Classification));
    tables.provenance.push_back({options(DatasetKind::Classification).source_name, tables.classifications.rows.size()});
  }
  {
    auto in = open(DatasetKind::Lsci, true);
    tables.lsci = load_lsci(*in, options(DatasetKind::Lsci));
    tables.provenance.push_back({options(DatasetKind::Lsci).source_name, tables.lsci.rows.size()});
  }
  {
    auto in = open(DatasetKind::Lsbci, true);
    tables.lsbci = load_lsbci(*in, options(DatasetKind::Lsbci));
    tables.provenance.push_back({options(DatasetKind::Lsbci).source_name, tables.lsbci.rows.size()});
  }
  {
    auto in = open(DatasetKind::Plsci, true);
    tables.plsci = load_plsci(*in, options(DatasetKind::Plsci));
    tables.provenance.push_back({options(DatasetKind::Plsci).source_name, tables.plsci.rows.size()});
  }
  if (auto in = open(DatasetKind::External, false)) {
    tables.external = load_external(*in, options(DatasetKind::External));
    tables.provenance.push_back({options(DatasetKind::External).source_name, tables.external.rows.size()});
  }
  return validate_bundle(std::move(tables), years);
}

void write_lsci(std::ostream& out, const LsciTable& t) {
  csv::Writer w(out);
  w.header({"economy", "year", "lsci"});
  for (const auto& r : t.rows) {
    w.cell(r.economy).cell(r.year).exact(r.lsci);
    w.end_row();
  }
}

void write_lsbci(std::ostream& out, const LsbciTable& t) {
  csv::Writer w(out);
  w.header({"economy_a", "economy_b", "year", "lsbci"});
  for (const auto& r : t.rows) {
    w.cell(r.economy_a).cell(r.economy_b).cell(r.year).exact(r.lsbci);
    w.end_row();
  }
}

void write_plsci(std::ostream& out, const PlsciTable& t) {
  csv::Writer w(out);
  w.header({"port_id", "economy", "year", "plsci"});
  for (const auto& r : t.rows) {
    w.cell(r.port_id).cell(r.economy).cell(r.year).exact(r.plsci);
    w.end_row();
  }
}

void write_classifications(std::ostream& out, const ClassificationTable& t) {
  csv::Writer w(out);
  w.header({"economy", "name", "sids", "ldc", "lldc", "region"});
  for (const auto& c : t.rows) {
    w.cell(c.economy).cell(c.name).cell(c.sids).cell(c.ldc).cell(c.lldc).cell(to_string(c.region));
    w.end_row();
  }
}

void write_external(std::ostream& out, const ExternalTable& t) {
  csv::Writer w(out);
  w.header({"economy", "year", "gdp_pc", "trade_open", "lpi", "freight_advalorem"});
  for (const auto& r : t.rows) {
    w.cell(r.economy).cell(r.year).exact(r.gdp_pc).exact(r.trade_open).exact(r.lpi).exact(r.freight_advalorem);
    w.end_row();
  }
}

std::vector<std::filesystem::path> write_bundle(const DataBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](DatasetKind kind, auto&& writer) {
    const auto path = dir / file_name(kind);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string(), path.string());
    writer(out);
    written.push_back(path);
  };
  emit(DatasetKind::Lsci, [&](std::ostream& o) { write_lsci(o, bundle.lsci()); });
  emit(DatasetKind::Lsbci, [&](std::ostream& o) { write_lsbci(o, bundle.lsbci()); });
  emit(DatasetKind::Plsci, [&](std::ostream& o) { write_plsci(o, bundle.plsci()); });
  emit(DatasetKind::Classification, [&](std::ostream& o) { write_classifications(o, bundle.classifications()); });
  emit(DatasetKind::External, [&](std::ostream& o) { write_external(o, bundle.external()); });
  return written;
}

}  // namespace mcvi
