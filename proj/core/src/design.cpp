#include "wetmeta/design.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "wetmeta/errors.hpp"

namespace wetmeta {

namespace {

constexpr std::array<std::string_view, 5> kFieldNames = {"biome", "wetland_type", "service",
                                                         "method", "value_basis"};

constexpr std::array<std::string_view, 3> kLogFields = {"wetland_size_ha", "gni_per_capita",
                                                        "population_density"};

double continuous_field(const ExplanatoryValues& values, std::string_view field) {
  if (field == "wetland_size_ha") {
    return values.wetland_size_ha;
  }
  if (field == "gni_per_capita") {
    return values.gni_per_capita;
  }
  return values.population_density;
}

std::string_view level_of(const ExplanatoryValues& values, NominalField field) {
  switch (field) {
    case NominalField::Biome:
      return to_label(values.biome);
    case NominalField::WetlandType:
      return to_label(values.wetland_type);
    case NominalField::Service:
      return to_label(values.service);
    case NominalField::Method:
      return to_label(values.method);
    case NominalField::ValueBasis:
      return to_label(values.value_basis);
  }
  return {};
}

}  // namespace

NominalField nominal_field_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
    if (name == kFieldNames[i]) {
      return static_cast<NominalField>(i);
    }
  }
  throw NotNominalField(std::string(name));
}

std::string_view nominal_field_name(NominalField field) {
  return kFieldNames[static_cast<std::size_t>(field)];
}

std::span<const std::string_view> nominal_field_levels(NominalField field) {
  switch (field) {
    case NominalField::Biome:
      return enum_labels(Biome{});
    case NominalField::WetlandType:
      return enum_labels(WetlandType{});
    case NominalField::Service:
      return enum_labels(Service{});
    case NominalField::Method:
      return enum_labels(Method{});
    case NominalField::ValueBasis:
      return enum_labels(ValueBasis{});
  }
  return {};
}

std::string_view nominal_field_level(const StudyRecord& record, NominalField field) {
  return level_of(explanatory_values(record), field);
}

bool EncodingSchema::includes_quality() const {
  return std::any_of(terms.begin(), terms.end(), [](const SchemaTerm& term) {
    return std::holds_alternative<QualityTermSpec>(term);
  });
}

EncodingSchema default_schema() {
  EncodingSchema schema;
  schema.terms.push_back(NominalGroupSpec{
      "method",
      NominalField::Method,
      {"AvoidedCost", "ContingentValuation", "DirectMarketPricing", "ReplacementCost"},
      {"FactorIncomeProduction", "MitigationRestorationCost", "TravelCost", "BenefitTransfer"}});
  schema.terms.push_back(LogTermSpec{"wetland_size_ha"});
  schema.terms.push_back(QualityTermSpec{QualityState::NaturallyFunctioning});
  schema.terms.push_back(NominalGroupSpec{"wetland_type",
                                          NominalField::WetlandType,
                                          {"Floodplains", "PeatWetlands", "SwampsMarshes"},
                                          {"Unspecified"}});
  schema.terms.push_back(NominalGroupSpec{"service",
                                          NominalField::Service,
                                          {"Climate", "ExtremeEvents", "Food", "Genepool",
                                           "Medical", "RawMaterials", "Recreation",
                                           "SoilFertility"},
                                          {"Ornamental", "Waste", "Water", "WaterFlows", "TEV",
                                           "Various"}});
  schema.terms.push_back(LogTermSpec{"gni_per_capita"});
  return schema;
}

void validate_schema(const EncodingSchema& schema) {
  std::set<std::string> group_names;
  std::set<std::string> log_fields;
  int quality_terms = 0;
  for (const auto& term : schema.terms) {
    if (const auto* group = std::get_if<NominalGroupSpec>(&term)) {
      if (group->group_name.empty()) {
        throw SchemaMismatch("nominal group without a name");
      }
      if (!group_names.insert(group->group_name).second) {
        throw SchemaMismatch(fmt::format("duplicate group name '{}'", group->group_name));
      }
      const auto canonical = nominal_field_levels(group->field);
      std::map<std::string_view, int> occurrences;
      for (const auto& level : group->levels) {
        ++occurrences[level];
      }
      for (const auto& level : group->reference) {
        ++occurrences[level];
      }
      for (const auto& [level, count] : occurrences) {
        if (std::find(canonical.begin(), canonical.end(), level) == canonical.end()) {
          throw UnknownLevel(group->group_name, std::string(level));
        }
        if (count > 1) {
          throw SchemaMismatch(fmt::format("group '{}': level '{}' listed more than once",
                                           group->group_name, level));
        }
      }
      if (occurrences.size() != canonical.size()) {
        for (const auto level : canonical) {
          if (!occurrences.contains(level)) {
            throw SchemaMismatch(fmt::format("group '{}': level '{}' assigned to neither "
                                             "levels nor reference",
                                             group->group_name, level));
          }
        }
      }
    } else if (const auto* log_term = std::get_if<LogTermSpec>(&term)) {
      if (std::find(kLogFields.begin(), kLogFields.end(), log_term->field) == kLogFields.end()) {
        throw SchemaMismatch(fmt::format("'{}' is not a positive continuous field",
                                         log_term->field));
      }
      if (!log_fields.insert(log_term->field).second) {
        throw SchemaMismatch(fmt::format("duplicate log term '{}'", log_term->field));
      }
    } else {
      if (++quality_terms > 1) {
        throw SchemaMismatch("more than one quality term");
      }
    }
  }
}

std::vector<std::string> schema_column_labels(const EncodingSchema& schema) {
  std::vector<std::string> labels;
  labels.emplace_back("intercept");
  for (const auto& term : schema.terms) {
    if (const auto* group = std::get_if<NominalGroupSpec>(&term)) {
      for (const auto& level : group->levels) {
        labels.push_back(fmt::format("{}:{}", group->group_name, level));
      }
    } else if (const auto* log_term = std::get_if<LogTermSpec>(&term)) {
      labels.push_back(fmt::format("ln({})", log_term->field));
    } else {
      labels.emplace_back("quality");
    }
  }
  return labels;
}

ExplanatoryValues explanatory_values(const StudyRecord& record) {
  ExplanatoryValues values;
  values.id = record.record_id;
  values.biome = record.biome;
  values.wetland_type = record.wetland_type;
  values.service = record.service;
  values.method = record.method;
  values.value_basis = record.value_basis;
  values.wetland_size_ha = record.wetland_size_ha;
  values.gni_per_capita = record.gni_per_capita;
  values.population_density = record.population_density;
  if (record.quality_code) {
    values.quality_state = record.quality_code->state;
  }
  return values;
}

Eigen::RowVectorXd encode_row(const EncodingSchema& schema, const ExplanatoryValues& values) {
  std::size_t width = 1;
  for (const auto& term : schema.terms) {
    if (const auto* group = std::get_if<NominalGroupSpec>(&term)) {
      width += group->levels.size();
    } else {
      ++width;
    }
  }
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(width));
  row(0) = 1.0;
  Eigen::Index col = 1;
  for (const auto& term : schema.terms) {
    if (const auto* group = std::get_if<NominalGroupSpec>(&term)) {
      const std::string_view level = level_of(values, group->field);
      for (const auto& included : group->levels) {
        if (included == level) {
          row(col) = 1.0;
        }
        ++col;
      }
    } else if (const auto* log_term = std::get_if<LogTermSpec>(&term)) {
      const double value = continuous_field(values, log_term->field);
      if (!(value > 0.0)) {
        throw NonPositiveValue(log_term->field, fmt::format("record '{}'", values.id));
      }
      row(col++) = std::log(value);
    } else {
      const auto& quality = std::get<QualityTermSpec>(term);
      if (!values.quality_state) {
        throw MissingQualityCode(values.id);
      }
      row(col++) = *values.quality_state == quality.positive_state ? 1.0 : 0.0;
    }
  }
  return row;
}

DesignMatrix encode(const std::vector<StudyRecord>& records, const EncodingSchema& schema,
                    const NormalizationTables& tables) {
  validate_schema(schema);
  DesignMatrix design;
  design.column_labels = schema_column_labels(schema);
  const auto n = static_cast<Eigen::Index>(records.size());
  design.X.resize(n, static_cast<Eigen::Index>(design.column_labels.size()));
  design.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& record = records[static_cast<std::size_t>(i)];
    design.X.row(i) = encode_row(schema, explanatory_values(record));
    design.y(i) = std::log(normalize_value(record, tables));
  }
  return design;
}

std::map<std::string, std::size_t> level_counts(const std::vector<StudyRecord>& records,
                                                NominalField field) {
  std::map<std::string, std::size_t> counts;
  for (const auto& record : records) {
    ++counts[std::string(nominal_field_level(record, field))];
  }
  return counts;
}

std::string write_design_csv(const DesignMatrix& design) {
  std::string out = fmt::format("{},y\n", fmt::join(design.column_labels, ","));
  for (Eigen::Index i = 0; i < design.n(); ++i) {
    for (Eigen::Index j = 0; j < design.X.cols(); ++j) {
      out += fmt::format("{},", design.X(i, j));
    }
    out += fmt::format("{}\n", design.y(i));
  }
  return out;
}

}  // namespace wetmeta
