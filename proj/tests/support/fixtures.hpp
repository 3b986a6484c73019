#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "wetmeta/records.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return WETMETA_DATA_DIR; }
inline std::filesystem::path golden_dir() { return WETMETA_GOLDEN_DIR; }
inline std::filesystem::path cli_bin() { return WETMETA_CLI_BIN; }

inline std::filesystem::path dataset_path() { return data_dir() / "teeb_inland_wetlands.csv"; }
inline std::filesystem::path rates_path() { return data_dir() / "normalization_rates.csv"; }

inline std::string dataset_header() {
  std::string header;
  for (const auto column : wetmeta::dataset_columns()) {
    if (!header.empty()) {
      header += ',';
    }
    header += column;
  }
  return header;
}

inline std::string dataset_csv(const std::vector<std::string>& rows) {
  std::string text = dataset_header() + "\n";
  for (const auto& row : rows) {
    text += row + "\n";
  }
  return text;
}

// A valid baseline record; tests tweak individual fields.
inline wetmeta::StudyRecord make_record(std::string id = "r1") {
  wetmeta::StudyRecord record;
  record.record_id = std::move(id);
  record.article_id = "Adekola2008";
  record.biome = wetmeta::Biome::InlandWetlands;
  record.wetland_type = wetmeta::WetlandType::Floodplains;
  record.service = wetmeta::Service::Food;
  record.method = wetmeta::Method::DirectMarketPricing;
  record.value_basis = wetmeta::ValueBasis::PerAnnum;
  record.raw_value = 100.0;
  record.currency_code = "USD";
  record.value_year = 2007;
  record.wetland_size_ha = 1200.0;
  record.gni_per_capita = 5760.0;
  record.population_density = 39.0;
  record.quality_evidence = {};
  record.quality_code =
      wetmeta::QualityCode{wetmeta::QualityState::NaturallyFunctioning, wetmeta::Confidence::Low};
  return record;
}

// Identity normalization: USD at several years, all rates 1.
inline wetmeta::NormalizationTables identity_tables() {
  wetmeta::NormalizationTables tables;
  for (int year = 1950; year <= 2025; ++year) {
    tables.deflator[year] = 1.0;
    tables.fx[{"USD", year}] = 1.0;
  }
  return tables;
}

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("wetmeta_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

}  // namespace fixtures
