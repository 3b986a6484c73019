#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wetmeta/quality.hpp"

namespace wetmeta {

enum class Biome { InlandWetlands, Other };

enum class WetlandType { Floodplains, PeatWetlands, SwampsMarshes, Unspecified };

enum class Service {
  Climate,
  ExtremeEvents,
  Food,
  Genepool,
  Medical,
  Ornamental,
  RawMaterials,
  Recreation,
  SoilFertility,
  Waste,
  Water,
  WaterFlows,
  TEV,
  Various
};

enum class Method {
  AvoidedCost,
  ContingentValuation,
  DirectMarketPricing,
  FactorIncomeProduction,
  MitigationRestorationCost,
  ReplacementCost,
  TravelCost,
  BenefitTransfer
};

enum class ValueBasis { PerAnnum, Other };

// Canonical labels in declaration order; matching is case-insensitive.
std::span<const std::string_view> enum_labels(Biome);
std::span<const std::string_view> enum_labels(WetlandType);
std::span<const std::string_view> enum_labels(Service);
std::span<const std::string_view> enum_labels(Method);
std::span<const std::string_view> enum_labels(ValueBasis);

std::string_view to_label(Biome value);
std::string_view to_label(WetlandType value);
std::string_view to_label(Service value);
std::string_view to_label(Method value);
std::string_view to_label(ValueBasis value);

template <typename E>
std::optional<E> enum_from_label(std::string_view text);

template <>
std::optional<Biome> enum_from_label<Biome>(std::string_view text);
template <>
std::optional<WetlandType> enum_from_label<WetlandType>(std::string_view text);
template <>
std::optional<Service> enum_from_label<Service>(std::string_view text);
template <>
std::optional<Method> enum_from_label<Method>(std::string_view text);
template <>
std::optional<ValueBasis> enum_from_label<ValueBasis>(std::string_view text);

/// One valuation estimate drawn from a primary study.
struct StudyRecord {
  std::string record_id;
  std::string article_id;
  Biome biome = Biome::InlandWetlands;
  WetlandType wetland_type = WetlandType::Unspecified;
  Service service = Service::Various;
  Method method = Method::DirectMarketPricing;
  ValueBasis value_basis = ValueBasis::PerAnnum;
  double raw_value = 0.0;  // currency units per hectare per year
  std::string currency_code;
  int value_year = 0;
  double wetland_size_ha = 0.0;
  double gni_per_capita = 0.0;       // 2007 US$ per person per year
  double population_density = 0.0;   // persons per square km
  QualityEvidence quality_evidence;
  std::optional<QualityCode> quality_code;

  friend bool operator==(const StudyRecord&, const StudyRecord&) = default;
};

/// True when every field except record_id is equal; the duplicate test used
/// by the screening pipeline.
bool same_fields_ignoring_id(const StudyRecord& a, const StudyRecord& b);

/// Stable serialization of all fields except record_id; equal keys <=> the
/// records are duplicates of one another.
std::string record_field_key(const StudyRecord& record);

/// Currency and price-level tables for converting raw values into
/// 2007 US$ per hectare per year. The deflator is indexed so that 2007 = 1.
struct NormalizationTables {
  std::map<int, double> deflator;                       // year -> price index
  std::map<std::pair<std::string, int>, double> fx;     // (currency, year) -> US$ per unit
};

enum class TableFormat { DelimitedTable };

/// Column order of the dataset file; the header row must match exactly.
std::span<const std::string_view> dataset_columns();

std::vector<StudyRecord> parse_dataset(const std::filesystem::path& path,
                                       TableFormat format = TableFormat::DelimitedTable);
std::vector<StudyRecord> parse_dataset_text(std::string_view text);

/// Serializes records back into the dataset format (header included).
std::string write_dataset(std::span<const StudyRecord> records);

NormalizationTables load_normalization_tables(const std::filesystem::path& path);
NormalizationTables parse_normalization_text(std::string_view text);

/// raw_value * fx(currency, year) / deflator(year), in 2007 US$ ha^-1 yr^-1.
double normalize_value(const StudyRecord& record, const NormalizationTables& tables);

}  // namespace wetmeta
