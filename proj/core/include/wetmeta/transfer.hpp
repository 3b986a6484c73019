#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wetmeta/design.hpp"
#include "wetmeta/ols.hpp"
#include "wetmeta/records.hpp"

namespace wetmeta {

/// An unstudied site to transfer a value to; same explanatory fields as a
/// study record, without the observed value.
struct PolicySite {
  std::string site_id;
  std::string article_id;  // may be blank
  Biome biome = Biome::InlandWetlands;
  WetlandType wetland_type = WetlandType::Unspecified;
  Service service = Service::Various;
  Method method = Method::DirectMarketPricing;
  double wetland_size_ha = 0.0;
  double gni_per_capita = 0.0;
  double population_density = 0.0;
  QualityEvidence quality_evidence;
  std::optional<QualityCode> quality_code;

  /// The carried code when present, otherwise the state assigned from the
  /// evidence flags.
  QualityState quality_state() const;
};

std::vector<PolicySite> parse_policy_sites(const std::filesystem::path& path);
std::vector<PolicySite> parse_policy_sites_text(std::string_view text);
std::span<const std::string_view> policy_site_columns();

enum class BackTransform { NaiveExp, HalfVarianceCorrected };

std::string_view to_label(BackTransform mode);

struct TransferPrediction {
  std::string site_id;
  double log_prediction = 0.0;
  double value_prediction = 0.0;  // 2007 US$ per hectare per year
  BackTransform mode = BackTransform::HalfVarianceCorrected;
  const RegressionFit* model = nullptr;
};

/// Evaluates the fitted benefit function at the site's encoded row.
/// Throws SchemaMismatch when the schema's columns differ from the fit's.
double predict_log(const RegressionFit& fit, const EncodingSchema& schema,
                   const PolicySite& site);

/// exp(log prediction), with the optional half-sigma^2 log-normal mean
/// correction.
TransferPrediction predict_value(const RegressionFit& fit, const EncodingSchema& schema,
                                 const PolicySite& site, BackTransform mode);

/// Mean normalized value over the records matched by the filter.
double unit_value_transfer(const std::vector<StudyRecord>& records,
                           const NormalizationTables& tables,
                           const std::function<bool(const StudyRecord&)>& filter);

/// |predicted - observed| / observed.
double transfer_error(double predicted, double observed);

struct LoocvRow {
  std::string record_id;
  std::optional<double> function_error;
  std::optional<double> unit_error;
  std::string note;  // skip reason or empty
};

struct LoocvSummary {
  std::size_t folds = 0;
  std::size_t skipped = 0;
  std::size_t function_count = 0;
  std::size_t unit_count = 0;
  double function_mean = 0.0;
  double function_median = 0.0;
  double unit_mean = 0.0;
  double unit_median = 0.0;
};

struct LoocvResult {
  std::vector<LoocvRow> rows;  // in record order
  LoocvSummary summary;
};

/// Leave-one-out comparison of function transfer against unit-value
/// transfer pooled by service. Dummy levels absent from a training fold are
/// folded into that fold's baseline; folds that are still rank deficient or
/// too small are reported as skipped. Folds run in parallel when threads > 1
/// and are reduced in record order either way.
LoocvResult loocv(const std::vector<StudyRecord>& records, const EncodingSchema& schema,
                  const NormalizationTables& tables, BackTransform mode, unsigned threads = 1);

}  // namespace wetmeta
