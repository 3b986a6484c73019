#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wetmeta/records.hpp"

namespace wetmeta {

enum class NominalField { Biome, WetlandType, Service, Method, ValueBasis };

/// Parses a dataset column name into a nominal field; throws NotNominalField.
NominalField nominal_field_from_name(std::string_view name);
std::string_view nominal_field_name(NominalField field);
std::span<const std::string_view> nominal_field_levels(NominalField field);
std::string_view nominal_field_level(const StudyRecord& record, NominalField field);

/// One dummy-coded group: every canonical level of the field must appear in
/// exactly one of `levels` (each gets a column) or `reference` (mapped to
/// the all-zero baseline).
struct NominalGroupSpec {
  std::string group_name;
  NominalField field = NominalField::WetlandType;
  std::vector<std::string> levels;
  std::vector<std::string> reference;

  friend bool operator==(const NominalGroupSpec&, const NominalGroupSpec&) = default;
};

/// Natural-log column of a positive continuous field
/// (wetland_size_ha, gni_per_capita or population_density).
struct LogTermSpec {
  std::string field;

  friend bool operator==(const LogTermSpec&, const LogTermSpec&) = default;
};

/// Quality dummy: 1 when the record's state equals positive_state.
struct QualityTermSpec {
  QualityState positive_state = QualityState::NaturallyFunctioning;

  friend bool operator==(const QualityTermSpec&, const QualityTermSpec&) = default;
};

using SchemaTerm = std::variant<NominalGroupSpec, LogTermSpec, QualityTermSpec>;

struct EncodingSchema {
  std::vector<SchemaTerm> terms;

  bool includes_quality() const;

  friend bool operator==(const EncodingSchema&, const EncodingSchema&) = default;
};

/// The schema mirroring the published regression layout: four method
/// dummies, ln(size), the quality dummy, three wetland-type dummies, eight
/// service dummies and ln(GNI per capita); population density excluded.
EncodingSchema default_schema();

/// Checks group/level consistency; throws UnknownLevel or SchemaMismatch.
void validate_schema(const EncodingSchema& schema);

/// Column labels the schema produces, starting with "intercept".
std::vector<std::string> schema_column_labels(const EncodingSchema& schema);

struct DesignMatrix {
  std::vector<std::string> column_labels;  // first = "intercept"
  Eigen::MatrixXd X;                       // n x (k + 1)
  Eigen::VectorXd y;                       // natural log of the normalized value

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index k() const { return X.cols() - 1; }
};

/// Explanatory fields shared by study records and policy sites.
struct ExplanatoryValues {
  std::string id;
  Biome biome = Biome::InlandWetlands;
  WetlandType wetland_type = WetlandType::Unspecified;
  Service service = Service::Various;
  Method method = Method::DirectMarketPricing;
  ValueBasis value_basis = ValueBasis::PerAnnum;
  double wetland_size_ha = 0.0;
  double gni_per_capita = 0.0;
  double population_density = 0.0;
  std::optional<QualityState> quality_state;
};

ExplanatoryValues explanatory_values(const StudyRecord& record);

/// Encodes one row (intercept included) under a validated schema.
Eigen::RowVectorXd encode_row(const EncodingSchema& schema, const ExplanatoryValues& values);

/// Builds the labeled design: X rows in record order, y = ln(2007-US$ value).
DesignMatrix encode(const std::vector<StudyRecord>& records, const EncodingSchema& schema,
                    const NormalizationTables& tables);

/// Observed level counts (absent levels omitted).
std::map<std::string, std::size_t> level_counts(const std::vector<StudyRecord>& records,
                                                NominalField field);

/// Delimited export: header = column labels plus final column y.
std::string write_design_csv(const DesignMatrix& design);

}  // namespace wetmeta
