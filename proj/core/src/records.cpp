#include "wetmeta/records.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "csv_table.hpp"
#include "wetmeta/errors.hpp"

namespace wetmeta {

namespace {

constexpr std::array<std::string_view, 2> kBiomeLabels = {"InlandWetlands", "Other"};
constexpr std::array<std::string_view, 4> kWetlandTypeLabels = {"Floodplains", "PeatWetlands",
                                                                "SwampsMarshes", "Unspecified"};
constexpr std::array<std::string_view, 14> kServiceLabels = {
    "Climate",    "ExtremeEvents", "Food",          "Genepool", "Medical",
    "Ornamental", "RawMaterials",  "Recreation",    "SoilFertility",
    "Waste",      "Water",         "WaterFlows",    "TEV",      "Various"};
constexpr std::array<std::string_view, 8> kMethodLabels = {
    "AvoidedCost",    "ContingentValuation",       "DirectMarketPricing",
    "FactorIncomeProduction", "MitigationRestorationCost", "ReplacementCost",
    "TravelCost",     "BenefitTransfer"};
constexpr std::array<std::string_view, 2> kValueBasisLabels = {"PerAnnum", "Other"};

constexpr std::array<std::string_view, 18> kDatasetColumns = {
    "record_id", "article_id", "biome", "wetland_type", "service", "method",
    "value_basis", "raw_value", "currency_code", "value_year", "wetland_size_ha",
    "gni_per_capita", "population_density", "ev_degradation_described",
    "ev_degrading_activities", "ev_market_price_method", "ev_ideal_state_assumed",
    "quality_code"};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view text, const std::array<std::string_view, N>& labels) {
  for (std::size_t i = 0; i < N; ++i) {
    if (iequals(text, labels[i])) {
      return static_cast<E>(i);
    }
  }
  return std::nullopt;
}

}  // namespace

std::span<const std::string_view> enum_labels(Biome) { return kBiomeLabels; }
std::span<const std::string_view> enum_labels(WetlandType) { return kWetlandTypeLabels; }
std::span<const std::string_view> enum_labels(Service) { return kServiceLabels; }
std::span<const std::string_view> enum_labels(Method) { return kMethodLabels; }
std::span<const std::string_view> enum_labels(ValueBasis) { return kValueBasisLabels; }

std::string_view to_label(Biome value) { return kBiomeLabels[static_cast<std::size_t>(value)]; }
std::string_view to_label(WetlandType value) {
  return kWetlandTypeLabels[static_cast<std::size_t>(value)];
}
std::string_view to_label(Service value) {
  return kServiceLabels[static_cast<std::size_t>(value)];
}
std::string_view to_label(Method value) { return kMethodLabels[static_cast<std::size_t>(value)]; }
std::string_view to_label(ValueBasis value) {
  return kValueBasisLabels[static_cast<std::size_t>(value)];
}

template <>
std::optional<Biome> enum_from_label<Biome>(std::string_view text) {
  return lookup<Biome>(text, kBiomeLabels);
}
template <>
std::optional<WetlandType> enum_from_label<WetlandType>(std::string_view text) {
  return lookup<WetlandType>(text, kWetlandTypeLabels);
}
template <>
std::optional<Service> enum_from_label<Service>(std::string_view text) {
  return lookup<Service>(text, kServiceLabels);
}
template <>
std::optional<Method> enum_from_label<Method>(std::string_view text) {
  return lookup<Method>(text, kMethodLabels);
}
template <>
std::optional<ValueBasis> enum_from_label<ValueBasis>(std::string_view text) {
  return lookup<ValueBasis>(text, kValueBasisLabels);
}

bool same_fields_ignoring_id(const StudyRecord& a, const StudyRecord& b) {
  StudyRecord b_with_a_id = b;
  b_with_a_id.record_id = a.record_id;
  return a == b_with_a_id;
}

std::string record_field_key(const StudyRecord& r) {
  return fmt::format(
      "{}|{}|{}|{}|{}|{}|{}|{}|{}|{}|{}|{}|{}{}{}{}|{}{}", r.article_id, to_label(r.biome),
      to_label(r.wetland_type), to_label(r.service), to_label(r.method),
      to_label(r.value_basis), r.raw_value, r.currency_code, r.value_year, r.wetland_size_ha,
      r.gni_per_capita, r.population_density, int(r.quality_evidence.degradation_described),
      int(r.quality_evidence.degrading_activities), int(r.quality_evidence.market_price_method),
      int(r.quality_evidence.ideal_state_assumed),
      r.quality_code ? static_cast<int>(r.quality_code->state) : 0,
      r.quality_code ? (r.quality_code->confidence == Confidence::High ? 'H' : 'L') : '-');
}

std::span<const std::string_view> dataset_columns() { return kDatasetColumns; }

namespace {

double parse_double_field(std::string_view text, std::string_view column, std::size_t line) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw MalformedRow(line, fmt::format("column '{}': '{}' is not a number", column, text));
  }
  return value;
}

double parse_positive_field(std::string_view text, std::string_view column, std::size_t line) {
  const double value = parse_double_field(text, column, line);
  if (!(value > 0.0)) {
    throw NonPositiveValue(std::string(column), fmt::format("line {}", line));
  }
  return value;
}

int parse_int_field(std::string_view text, std::string_view column, std::size_t line) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw MalformedRow(line, fmt::format("column '{}': '{}' is not an integer", column, text));
  }
  return value;
}

bool parse_bool_field(std::string_view text, std::string_view column, std::size_t line) {
  if (text == "0") {
    return false;
  }
  if (text == "1") {
    return true;
  }
  throw MalformedRow(line, fmt::format("column '{}': '{}' is not 0/1", column, text));
}

template <typename E>
E parse_enum_field(std::string_view text, std::string_view column, std::size_t line) {
  if (auto value = enum_from_label<E>(text)) {
    return *value;
  }
  throw UnknownEnumLabel(std::string(column), std::string(text), line);
}

void require_header(const std::vector<std::string>& header,
                    std::span<const std::string_view> expected) {
  if (header.size() != expected.size() ||
      !std::equal(header.begin(), header.end(), expected.begin())) {
    throw MalformedRow(1, fmt::format("header must be exactly: {}", fmt::join(expected, ",")));
  }
}

}  // namespace

std::vector<StudyRecord> parse_dataset_text(std::string_view text) {
  const detail::CsvTable table = detail::read_csv_text(text);
  require_header(table.header, kDatasetColumns);

  std::vector<StudyRecord> records;
  records.reserve(table.rows.size());
  std::unordered_set<std::string> seen_ids;
  for (const auto& row : table.rows) {
    if (row.fields.size() != kDatasetColumns.size()) {
      throw MalformedRow(row.line, fmt::format("expected {} fields, found {}",
                                               kDatasetColumns.size(), row.fields.size()));
    }
    const auto& f = row.fields;
    StudyRecord r;
    r.record_id = f[0];
    if (r.record_id.empty()) {
      throw MalformedRow(row.line, "record_id must not be empty");
    }
    if (!seen_ids.insert(r.record_id).second) {
      throw MalformedRow(row.line, fmt::format("duplicate record_id '{}'", r.record_id));
    }
    r.article_id = f[1];
    r.biome = parse_enum_field<Biome>(f[2], "biome", row.line);
    r.wetland_type = parse_enum_field<WetlandType>(f[3], "wetland_type", row.line);
    r.service = parse_enum_field<Service>(f[4], "service", row.line);
    r.method = parse_enum_field<Method>(f[5], "method", row.line);
    r.value_basis = parse_enum_field<ValueBasis>(f[6], "value_basis", row.line);
    r.raw_value = parse_positive_field(f[7], "raw_value", row.line);
    r.currency_code = f[8];
    if (r.currency_code.empty()) {
      throw MalformedRow(row.line, "currency_code must not be empty");
    }
    r.value_year = parse_int_field(f[9], "value_year", row.line);
    if (r.value_year < 1950 || r.value_year > 2025) {
      throw MalformedRow(row.line,
                         fmt::format("value_year {} outside [1950, 2025]", r.value_year));
    }
    r.wetland_size_ha = parse_positive_field(f[10], "wetland_size_ha", row.line);
    r.gni_per_capita = parse_positive_field(f[11], "gni_per_capita", row.line);
    r.population_density = parse_positive_field(f[12], "population_density", row.line);
    r.quality_evidence.degradation_described =
        parse_bool_field(f[13], "ev_degradation_described", row.line);
    r.quality_evidence.degrading_activities =
        parse_bool_field(f[14], "ev_degrading_activities", row.line);
    r.quality_evidence.market_price_method =
        parse_bool_field(f[15], "ev_market_price_method", row.line);
    r.quality_evidence.ideal_state_assumed =
        parse_bool_field(f[16], "ev_ideal_state_assumed", row.line);
    if (f[17].empty()) {
      r.quality_code = std::nullopt;
    } else if (f[17] == "1") {
      r.quality_code = QualityCode{QualityState::NaturallyFunctioning, Confidence::Low};
    } else if (f[17] == "2") {
      r.quality_code = QualityCode{QualityState::Degraded, Confidence::Low};
    } else {
      throw MalformedRow(row.line,
                         fmt::format("column 'quality_code': '{}' is not blank, 1 or 2", f[17]));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<StudyRecord> parse_dataset(const std::filesystem::path& path, TableFormat) {
  return parse_dataset_text(detail::read_file(path));
}

std::string write_dataset(std::span<const StudyRecord> records) {
  std::string out = fmt::format("{}\n", fmt::join(kDatasetColumns, ","));
  for (const auto& r : records) {
    const auto& ev = r.quality_evidence;
    out += fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{:d},{:d},{:d},{:d},{}\n", r.record_id,
        r.article_id, to_label(r.biome), to_label(r.wetland_type), to_label(r.service),
        to_label(r.method), to_label(r.value_basis), r.raw_value, r.currency_code, r.value_year,
        r.wetland_size_ha, r.gni_per_capita, r.population_density, ev.degradation_described,
        ev.degrading_activities, ev.market_price_method, ev.ideal_state_assumed,
        r.quality_code ? fmt::format("{}", static_cast<int>(r.quality_code->state)) : "");
  }
  return out;
}

NormalizationTables parse_normalization_text(std::string_view text) {
  static constexpr std::array<std::string_view, 4> kColumns = {"kind", "currency_code", "year",
                                                               "rate"};
  const detail::CsvTable table = detail::read_csv_text(text);
  require_header(table.header, kColumns);

  NormalizationTables tables;
  for (const auto& row : table.rows) {
    if (row.fields.size() != kColumns.size()) {
      throw MalformedRow(row.line, fmt::format("expected {} fields, found {}", kColumns.size(),
                                               row.fields.size()));
    }
    const auto& f = row.fields;
    const int year = parse_int_field(f[2], "year", row.line);
    const double rate = parse_positive_field(f[3], "rate", row.line);
    if (f[0] == "deflator") {
      if (!f[1].empty()) {
        throw MalformedRow(row.line, "deflator rows must leave currency_code blank");
      }
      if (!tables.deflator.emplace(year, rate).second) {
        throw MalformedRow(row.line, fmt::format("duplicate deflator for year {}", year));
      }
    } else if (f[0] == "fx") {
      if (f[1].empty()) {
        throw MalformedRow(row.line, "fx rows must name a currency_code");
      }
      if (!tables.fx.emplace(std::pair{f[1], year}, rate).second) {
        throw MalformedRow(row.line,
                           fmt::format("duplicate fx rate for ({}, {})", f[1], year));
      }
    } else {
      throw MalformedRow(row.line, fmt::format("column 'kind': '{}' is not deflator|fx", f[0]));
    }
  }
  const auto base = tables.deflator.find(2007);
  if (base == tables.deflator.end() || base->second != 1.0) {
    throw InputError("records: deflator table must anchor base year 2007 at 1.0");
  }
  return tables;
}

NormalizationTables load_normalization_tables(const std::filesystem::path& path) {
  return parse_normalization_text(detail::read_file(path));
}

double normalize_value(const StudyRecord& record, const NormalizationTables& tables) {
  const auto fx = tables.fx.find({record.currency_code, record.value_year});
  if (fx == tables.fx.end()) {
    throw MissingRate(record.currency_code, record.value_year);
  }
  const auto deflator = tables.deflator.find(record.value_year);
  if (deflator == tables.deflator.end()) {
    throw MissingDeflator(record.value_year);
  }
  return record.raw_value * fx->second / deflator->second;
}

}  // namespace wetmeta
