#include "wetmeta/model_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <limits>

#include "csv_table.hpp"
#include "wetmeta/errors.hpp"

namespace wetmeta {

namespace {

using nlohmann::json;

constexpr std::string_view kFitFormat = "wetmeta.fit.v1";

json vector_to_json(const Eigen::VectorXd& vector) {
  json array = json::array();
  for (Eigen::Index i = 0; i < vector.size(); ++i) {
    array.push_back(vector(i));
  }
  return array;
}

Eigen::VectorXd vector_from_json(const json& array, std::string_view name) {
  if (!array.is_array()) {
    throw InputError(fmt::format("model: '{}' must be an array", name));
  }
  Eigen::VectorXd vector(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    // Non-finite values serialize as null.
    vector(static_cast<Eigen::Index>(i)) =
        array[i].is_null() ? std::numeric_limits<double>::quiet_NaN()
                           : array[i].get<double>();
  }
  return vector;
}

double number_from_json(const json& value) {
  return value.is_null() ? std::numeric_limits<double>::quiet_NaN() : value.get<double>();
}

json schema_to_value(const EncodingSchema& schema) {
  json terms = json::array();
  for (const auto& term : schema.terms) {
    if (const auto* group = std::get_if<NominalGroupSpec>(&term)) {
      terms.push_back({{"kind", "nominal"},
                       {"group", group->group_name},
                       {"field", std::string(nominal_field_name(group->field))},
                       {"levels", group->levels},
                       {"reference", group->reference}});
    } else if (const auto* log_term = std::get_if<LogTermSpec>(&term)) {
      terms.push_back({{"kind", "log"}, {"field", log_term->field}});
    } else {
      const auto& quality = std::get<QualityTermSpec>(term);
      terms.push_back(
          {{"kind", "quality"},
           {"positive_state", quality.positive_state == QualityState::NaturallyFunctioning
                                  ? "NaturallyFunctioning"
                                  : "Degraded"}});
    }
  }
  return json{{"terms", std::move(terms)}};
}

EncodingSchema schema_from_value(const json& value) {
  if (!value.is_object() || !value.contains("terms") || !value["terms"].is_array()) {
    throw SchemaMismatch("schema document must contain a 'terms' array");
  }
  EncodingSchema schema;
  for (const auto& term : value["terms"]) {
    const std::string kind = term.value("kind", "");
    if (kind == "nominal") {
      NominalGroupSpec group;
      group.group_name = term.value("group", "");
      group.field = nominal_field_from_name(term.value("field", ""));
      group.levels = term.value("levels", std::vector<std::string>{});
      group.reference = term.value("reference", std::vector<std::string>{});
      schema.terms.push_back(std::move(group));
    } else if (kind == "log") {
      schema.terms.push_back(LogTermSpec{term.value("field", "")});
    } else if (kind == "quality") {
      const std::string state = term.value("positive_state", "NaturallyFunctioning");
      if (state == "NaturallyFunctioning") {
        schema.terms.push_back(QualityTermSpec{QualityState::NaturallyFunctioning});
      } else if (state == "Degraded") {
        schema.terms.push_back(QualityTermSpec{QualityState::Degraded});
      } else {
        throw SchemaMismatch(fmt::format("unknown quality state '{}'", state));
      }
    } else {
      throw SchemaMismatch(fmt::format("unknown term kind '{}'", kind));
    }
  }
  validate_schema(schema);
  return schema;
}

json parse_json(std::string_view text, std::string_view what) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    throw InputError(fmt::format("model: '{}' is not valid JSON", what));
  }
  return value;
}

}  // namespace

std::string schema_to_json(const EncodingSchema& schema) {
  return schema_to_value(schema).dump(2) + "\n";
}

EncodingSchema schema_from_json(std::string_view text) {
  return schema_from_value(parse_json(text, "schema"));
}

EncodingSchema load_schema(const std::filesystem::path& path) {
  return schema_from_json(detail::read_file(path));
}

std::string fit_to_json(const RegressionFit& fit, const EncodingSchema& schema) {
  json document{{"format", kFitFormat},
                {"n", fit.n},
                {"column_labels", fit.column_labels},
                {"coefficients", vector_to_json(fit.coefficients)},
                {"std_errors", vector_to_json(fit.std_errors)},
                {"t_values", vector_to_json(fit.t_values)},
                {"p_values", vector_to_json(fit.p_values)},
                {"r2", fit.r2},
                {"adj_r2", fit.adj_r2},
                {"f_stat", fit.f_stat},
                {"f_p_value", fit.f_p_value},
                {"df_residual", fit.df_residual},
                {"sigma2", fit.sigma2},
                {"schema", schema_to_value(schema)}};
  return document.dump(2) + "\n";
}

SavedFit fit_from_json(std::string_view text) {
  const json document = parse_json(text, "fit");
  if (document.value("format", "") != kFitFormat) {
    throw InputError(fmt::format("model: expected format '{}'", kFitFormat));
  }
  SavedFit saved;
  saved.schema = schema_from_value(document.at("schema"));
  RegressionFit& fit = saved.fit;
  fit.column_labels = document.at("column_labels").get<std::vector<std::string>>();
  fit.coefficients = vector_from_json(document.at("coefficients"), "coefficients");
  fit.std_errors = vector_from_json(document.at("std_errors"), "std_errors");
  fit.t_values = vector_from_json(document.at("t_values"), "t_values");
  fit.p_values = vector_from_json(document.at("p_values"), "p_values");
  fit.r2 = number_from_json(document.at("r2"));
  fit.adj_r2 = number_from_json(document.at("adj_r2"));
  fit.f_stat = number_from_json(document.at("f_stat"));
  fit.f_p_value = number_from_json(document.at("f_p_value"));
  fit.df_residual = document.at("df_residual").get<int>();
  fit.sigma2 = number_from_json(document.at("sigma2"));
  fit.n = document.at("n").get<Eigen::Index>();
  if (fit.column_labels.size() != static_cast<std::size_t>(fit.coefficients.size())) {
    throw InputError("model: column_labels and coefficients disagree in length");
  }
  const auto expected = schema_column_labels(saved.schema);
  if (expected != fit.column_labels) {
    throw SchemaMismatch("embedded schema does not produce the fit's columns");
  }
  return saved;
}

void save_fit(const RegressionFit& fit, const EncodingSchema& schema,
              const std::filesystem::path& path) {
  detail::write_file(path, fit_to_json(fit, schema));
}

SavedFit load_fit(const std::filesystem::path& path) {
  return fit_from_json(detail::read_file(path));
}

}  // namespace wetmeta
