#include "wetmeta/transfer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "csv_table.hpp"
#include "wetmeta/errors.hpp"
#include "wetmeta/quality.hpp"

namespace wetmeta {

namespace {

constexpr std::array<std::string_view, 14> kSiteColumns = {
    "record_id", "article_id", "biome", "wetland_type", "service", "method",
    "wetland_size_ha", "gni_per_capita", "population_density",
    "ev_degradation_described", "ev_degrading_activities", "ev_market_price_method",
    "ev_ideal_state_assumed", "quality_code"};

ExplanatoryValues site_values(const PolicySite& site) {
  ExplanatoryValues values;
  values.id = site.site_id;
  values.biome = site.biome;
  values.wetland_type = site.wetland_type;
  values.service = site.service;
  values.method = site.method;
  values.value_basis = ValueBasis::PerAnnum;
  values.wetland_size_ha = site.wetland_size_ha;
  values.gni_per_capita = site.gni_per_capita;
  values.population_density = site.population_density;
  values.quality_state = site.quality_state();
  return values;
}

PolicySite held_out_site(const StudyRecord& record) {
  PolicySite site;
  site.site_id = record.record_id;
  site.article_id = record.article_id;
  site.biome = record.biome;
  site.wetland_type = record.wetland_type;
  site.service = record.service;
  site.method = record.method;
  site.wetland_size_ha = record.wetland_size_ha;
  site.gni_per_capita = record.gni_per_capita;
  site.population_density = record.population_density;
  site.quality_evidence = record.quality_evidence;
  site.quality_code = record.quality_code;
  return site;
}

double median_of(std::vector<double> values) {
  if (values.empty()) {
    return 0.0;
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) {
    return values[mid];
  }
  return 0.5 * (values[mid - 1] + values[mid]);
}

// Moves dummy levels into the reference when the training fold makes their
// column constant (level absent, or covering every training row); drops the
// quality term when only one state is present.
EncodingSchema fold_schema(const EncodingSchema& schema,
                           const std::vector<StudyRecord>& training) {
  EncodingSchema folded;
  for (const auto& term : schema.terms) {
    if (const auto* group = std::get_if<NominalGroupSpec>(&term)) {
      NominalGroupSpec reduced = *group;
      reduced.levels.clear();
      for (const auto& level : group->levels) {
        std::size_t count = 0;
        for (const auto& record : training) {
          if (nominal_field_level(record, group->field) == level) {
            ++count;
          }
        }
        if (count > 0 && count < training.size()) {
          reduced.levels.push_back(level);
        } else {
          reduced.reference.push_back(level);
        }
      }
      folded.terms.push_back(std::move(reduced));
    } else if (const auto* quality = std::get_if<QualityTermSpec>(&term)) {
      std::size_t positives = 0;
      for (const auto& record : training) {
        if (record.quality_code && record.quality_code->state == quality->positive_state) {
          ++positives;
        }
      }
      if (positives > 0 && positives < training.size()) {
        folded.terms.push_back(term);
      }
    } else {
      folded.terms.push_back(term);
    }
  }
  return folded;
}

}  // namespace

QualityState PolicySite::quality_state() const {
  if (quality_code) {
    return quality_code->state;
  }
  return assign_quality(quality_evidence).state;
}

std::span<const std::string_view> policy_site_columns() { return kSiteColumns; }

std::vector<PolicySite> parse_policy_sites_text(std::string_view text) {
  const detail::CsvTable table = detail::read_csv_text(text);
  if (table.header.size() != kSiteColumns.size() ||
      !std::equal(table.header.begin(), table.header.end(), kSiteColumns.begin())) {
    throw MalformedRow(1,
                       fmt::format("header must be exactly: {}", fmt::join(kSiteColumns, ",")));
  }

  const auto parse_positive = [](std::string_view field, std::string_view column,
                                 std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
      throw MalformedRow(line, fmt::format("column '{}': '{}' is not a number", column, field));
    }
    if (!(value > 0.0)) {
      throw NonPositiveValue(std::string(column), fmt::format("line {}", line));
    }
    return value;
  };
  const auto parse_bool = [](std::string_view field, std::string_view column, std::size_t line) {
    if (field == "0") {
      return false;
    }
    if (field == "1") {
      return true;
    }
    throw MalformedRow(line, fmt::format("column '{}': '{}' is not 0/1", column, field));
  };
  const auto parse_enum = [](auto tag, std::string_view field, std::string_view column,
                             std::size_t line) {
    if (auto value = enum_from_label<decltype(tag)>(field)) {
      return *value;
    }
    throw UnknownEnumLabel(std::string(column), std::string(field), line);
  };

  std::vector<PolicySite> sites;
  sites.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.fields.size() != kSiteColumns.size()) {
      throw MalformedRow(row.line, fmt::format("expected {} fields, found {}",
                                               kSiteColumns.size(), row.fields.size()));
    }
    const auto& f = row.fields;
    PolicySite site;
    site.site_id = f[0];
    if (site.site_id.empty()) {
      throw MalformedRow(row.line, "record_id must not be empty");
    }
    site.article_id = f[1];
    site.biome = parse_enum(Biome{}, f[2], "biome", row.line);
    site.wetland_type = parse_enum(WetlandType{}, f[3], "wetland_type", row.line);
    site.service = parse_enum(Service{}, f[4], "service", row.line);
    site.method = parse_enum(Method{}, f[5], "method", row.line);
    site.wetland_size_ha = parse_positive(f[6], "wetland_size_ha", row.line);
    site.gni_per_capita = parse_positive(f[7], "gni_per_capita", row.line);
    site.population_density = parse_positive(f[8], "population_density", row.line);
    site.quality_evidence.degradation_described =
        parse_bool(f[9], "ev_degradation_described", row.line);
    site.quality_evidence.degrading_activities =
        parse_bool(f[10], "ev_degrading_activities", row.line);
    site.quality_evidence.market_price_method =
        parse_bool(f[11], "ev_market_price_method", row.line);
    site.quality_evidence.ideal_state_assumed =
        parse_bool(f[12], "ev_ideal_state_assumed", row.line);
    if (f[13].empty()) {
      site.quality_code = std::nullopt;
    } else if (f[13] == "1") {
      site.quality_code = QualityCode{QualityState::NaturallyFunctioning, Confidence::Low};
    } else if (f[13] == "2") {
      site.quality_code = QualityCode{QualityState::Degraded, Confidence::Low};
    } else {
      throw MalformedRow(row.line,
                         fmt::format("column 'quality_code': '{}' is not blank, 1 or 2", f[13]));
    }
    sites.push_back(std::move(site));
  }
  return sites;
}

std::vector<PolicySite> parse_policy_sites(const std::filesystem::path& path) {
  return parse_policy_sites_text(detail::read_file(path));
}

std::string_view to_label(BackTransform mode) {
  return mode == BackTransform::NaiveExp ? "naive" : "corrected";
}

double predict_log(const RegressionFit& fit, const EncodingSchema& schema,
                   const PolicySite& site) {
  validate_schema(schema);
  const auto labels = schema_column_labels(schema);
  if (labels != fit.column_labels) {
    throw SchemaMismatch(
        fmt::format("schema columns ({}) do not match the fitted model's ({})",
                    fmt::join(labels, ", "), fmt::join(fit.column_labels, ", ")));
  }
  const Eigen::RowVectorXd row = encode_row(schema, site_values(site));
  return row.dot(fit.coefficients);
}

TransferPrediction predict_value(const RegressionFit& fit, const EncodingSchema& schema,
                                 const PolicySite& site, BackTransform mode) {
  TransferPrediction prediction;
  prediction.site_id = site.site_id;
  prediction.log_prediction = predict_log(fit, schema, site);
  const double shift =
      mode == BackTransform::HalfVarianceCorrected ? 0.5 * fit.sigma2 : 0.0;
  prediction.value_prediction = std::exp(prediction.log_prediction + shift);
  prediction.mode = mode;
  prediction.model = &fit;
  return prediction;
}

double unit_value_transfer(const std::vector<StudyRecord>& records,
                           const NormalizationTables& tables,
                           const std::function<bool(const StudyRecord&)>& filter) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& record : records) {
    if (filter(record)) {
      total += normalize_value(record, tables);
      ++count;
    }
  }
  if (count == 0) {
    throw EmptySelection();
  }
  return total / static_cast<double>(count);
}

double transfer_error(double predicted, double observed) {
  if (!(observed > 0.0)) {
    throw NonPositiveObserved();
  }
  return std::abs(predicted - observed) / observed;
}

LoocvResult loocv(const std::vector<StudyRecord>& records, const EncodingSchema& schema,
                  const NormalizationTables& tables, BackTransform mode, unsigned threads) {
  validate_schema(schema);
  const std::size_t n = records.size();

  // Normalize up front so data problems surface before any fold runs.
  std::vector<double> observed(n);
  for (std::size_t i = 0; i < n; ++i) {
    observed[i] = normalize_value(records[i], tables);
  }

  LoocvResult result;
  result.rows.resize(n);

  const auto run_fold = [&](std::size_t i) {
    LoocvRow row;
    row.record_id = records[i].record_id;

    std::vector<StudyRecord> training;
    training.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        training.push_back(records[j]);
      }
    }

    try {
      const EncodingSchema reduced = fold_schema(schema, training);
      const RegressionFit fit = fit_ols(encode(training, reduced, tables));
      const TransferPrediction prediction =
          predict_value(fit, reduced, held_out_site(records[i]), mode);
      row.function_error = transfer_error(prediction.value_prediction, observed[i]);
    } catch (const NumericError& error) {
      row.note = fmt::format("skipped: {}", error.what());
      result.rows[i] = std::move(row);
      return;
    }

    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && records[j].service == records[i].service) {
        total += observed[j];
        ++count;
      }
    }
    if (count > 0) {
      row.unit_error = transfer_error(total / static_cast<double>(count), observed[i]);
    } else {
      row.note = "no same-service record for unit transfer";
    }
    result.rows[i] = std::move(row);
  };

  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      run_fold(i);
    }
  } else {
    const unsigned worker_count = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n) {
            return;
          }
          run_fold(i);
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
  }

  std::vector<double> function_errors;
  std::vector<double> unit_errors;
  for (const auto& row : result.rows) {
    if (row.function_error) {
      function_errors.push_back(*row.function_error);
    } else {
      ++result.summary.skipped;
    }
    if (row.unit_error) {
      unit_errors.push_back(*row.unit_error);
    }
  }
  result.summary.folds = n;
  result.summary.function_count = function_errors.size();
  result.summary.unit_count = unit_errors.size();
  if (!function_errors.empty()) {
    double sum = 0.0;
    for (const double e : function_errors) {
      sum += e;
    }
    result.summary.function_mean = sum / static_cast<double>(function_errors.size());
    result.summary.function_median = median_of(function_errors);
  }
  if (!unit_errors.empty()) {
    double sum = 0.0;
    for (const double e : unit_errors) {
      sum += e;
    }
    result.summary.unit_mean = sum / static_cast<double>(unit_errors.size());
    result.summary.unit_median = median_of(unit_errors);
  }
  return result;
}

}  // namespace wetmeta
