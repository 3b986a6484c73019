#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wetmeta/design.hpp"
#include "wetmeta/ols.hpp"
#include "wetmeta/screening.hpp"
#include "wetmeta/transfer.hpp"

namespace wetmeta {

/// Contingency table of two nominal fields. Labels follow the enums'
/// declaration order; zero cells are kept.
struct CrossTab {
  std::string row_field;
  std::string col_field;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::size_t>> cells;  // row-major
  std::vector<std::size_t> row_totals;
  std::vector<std::size_t> col_totals;
  std::size_t grand_total = 0;

  std::size_t cell(std::string_view row_label, std::string_view col_label) const;
};

CrossTab crosstab(const std::vector<StudyRecord>& records, NominalField row_field,
                  NominalField col_field);
/// Field names as in the dataset header; throws NotNominalField.
CrossTab crosstab(const std::vector<StudyRecord>& records, std::string_view row_field,
                  std::string_view col_field);

struct RenderOptions {
  bool suppress_empty = false;  // drop all-zero rows and columns
};

// All renderers are deterministic and end with a single trailing newline.
// Regression cells use 3-decimal rounding with the leading zero stripped and
// the significance stars of the ols module.
std::string render_crosstab(const CrossTab& tab, RenderOptions options = {});
std::string render_crosstab_csv(const CrossTab& tab, RenderOptions options = {});
std::string render_regression(const RegressionFit& fit);
std::string render_regression_csv(const RegressionFit& fit);
std::string render_screening(const ScreeningReport& report);
std::string render_screening_csv(const ScreeningReport& report);
std::string render_loocv(const LoocvResult& result);
std::string render_loocv_csv(const LoocvResult& result);
std::string render_predictions(const std::vector<TransferPrediction>& predictions);
std::string render_predictions_csv(const std::vector<TransferPrediction>& predictions);

/// Fixed-decimal table formatting with the leading zero stripped, e.g.
/// 1.5621 -> "1.562", -0.1831 -> "-.183", 0.0378 -> ".038".
std::string table_number(double value, int decimals = 3);

}  // namespace wetmeta
