#include "wetmeta/reporting.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "wetmeta/errors.hpp"

namespace wetmeta {

namespace {

std::string full_precision(double value) { return fmt::format("{:.12g}", value); }

std::vector<std::size_t> keep_indices(const std::vector<std::size_t>& totals, bool suppress) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (!suppress || totals[i] > 0) {
      kept.push_back(i);
    }
  }
  return kept;
}

// Joins pre-rendered cells into a fixed-width text table, first column
// left-aligned, the rest right-aligned, two-space gutters.
std::string layout_table(const std::vector<std::vector<std::string>>& grid) {
  std::vector<std::size_t> widths;
  for (const auto& row : grid) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      widths[j] = std::max(widths[j], row[j].size());
    }
  }
  std::string out;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j == 0) {
        line += fmt::format("{:<{}}", row[j], widths[j]);
      } else {
        line += fmt::format("  {:>{}}", row[j], widths[j]);
      }
    }
    while (!line.empty() && line.back() == ' ') {
      line.pop_back();
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

std::string table_number(double value, int decimals) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  std::string text = fmt::format("{:.{}f}", value, decimals);
  if (text.rfind("0.", 0) == 0) {
    text.erase(0, 1);
  } else if (text.rfind("-0.", 0) == 0) {
    text.erase(1, 1);
  }
  return text;
}

std::size_t CrossTab::cell(std::string_view row_label, std::string_view col_label) const {
  const auto row_it = std::find(row_labels.begin(), row_labels.end(), row_label);
  const auto col_it = std::find(col_labels.begin(), col_labels.end(), col_label);
  if (row_it == row_labels.end() || col_it == col_labels.end()) {
    throw InputError(fmt::format("reporting: no cell ({}, {})", row_label, col_label));
  }
  return cells[static_cast<std::size_t>(row_it - row_labels.begin())]
              [static_cast<std::size_t>(col_it - col_labels.begin())];
}

CrossTab crosstab(const std::vector<StudyRecord>& records, NominalField row_field,
                  NominalField col_field) {
  CrossTab tab;
  tab.row_field = nominal_field_name(row_field);
  tab.col_field = nominal_field_name(col_field);
  for (const auto label : nominal_field_levels(row_field)) {
    tab.row_labels.emplace_back(label);
  }
  for (const auto label : nominal_field_levels(col_field)) {
    tab.col_labels.emplace_back(label);
  }
  tab.cells.assign(tab.row_labels.size(), std::vector<std::size_t>(tab.col_labels.size(), 0));
  tab.row_totals.assign(tab.row_labels.size(), 0);
  tab.col_totals.assign(tab.col_labels.size(), 0);

  const auto row_levels = nominal_field_levels(row_field);
  const auto col_levels = nominal_field_levels(col_field);
  for (const auto& record : records) {
    const std::string_view row_level = nominal_field_level(record, row_field);
    const std::string_view col_level = nominal_field_level(record, col_field);
    const auto i = static_cast<std::size_t>(
        std::find(row_levels.begin(), row_levels.end(), row_level) - row_levels.begin());
    const auto j = static_cast<std::size_t>(
        std::find(col_levels.begin(), col_levels.end(), col_level) - col_levels.begin());
    ++tab.cells[i][j];
    ++tab.row_totals[i];
    ++tab.col_totals[j];
    ++tab.grand_total;
  }
  return tab;
}

CrossTab crosstab(const std::vector<StudyRecord>& records, std::string_view row_field,
                  std::string_view col_field) {
  return crosstab(records, nominal_field_from_name(row_field),
                  nominal_field_from_name(col_field));
}

namespace {

std::vector<std::vector<std::string>> crosstab_grid(const CrossTab& tab, RenderOptions options) {
  const auto rows = keep_indices(tab.row_totals, options.suppress_empty);
  const auto cols = keep_indices(tab.col_totals, options.suppress_empty);

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header;
  header.push_back(fmt::format("{}\\{}", tab.row_field, tab.col_field));
  for (const auto j : cols) {
    header.push_back(tab.col_labels[j]);
  }
  header.emplace_back("total");
  grid.push_back(std::move(header));

  for (const auto i : rows) {
    std::vector<std::string> row;
    row.push_back(tab.row_labels[i]);
    for (const auto j : cols) {
      row.push_back(fmt::format("{}", tab.cells[i][j]));
    }
    row.push_back(fmt::format("{}", tab.row_totals[i]));
    grid.push_back(std::move(row));
  }

  std::vector<std::string> totals;
  totals.emplace_back("total");
  for (const auto j : cols) {
    totals.push_back(fmt::format("{}", tab.col_totals[j]));
  }
  totals.push_back(fmt::format("{}", tab.grand_total));
  grid.push_back(std::move(totals));
  return grid;
}

}  // namespace

std::string render_crosstab(const CrossTab& tab, RenderOptions options) {
  return layout_table(crosstab_grid(tab, options));
}

std::string render_crosstab_csv(const CrossTab& tab, RenderOptions options) {
  std::string out;
  for (const auto& row : crosstab_grid(tab, options)) {
    out += fmt::format("{}\n", fmt::join(row, ","));
  }
  return out;
}

std::string render_regression(const RegressionFit& fit) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"variable", "coefficient", "std_error", "t", "p", "stars"});
  for (Eigen::Index i = 0; i < fit.coefficients.size(); ++i) {
    grid.push_back({fit.column_labels[static_cast<std::size_t>(i)],
                    table_number(fit.coefficients(i)), table_number(fit.std_errors(i)),
                    table_number(fit.t_values(i)), table_number(fit.p_values(i)),
                    significance_stars(fit.p_values(i))});
  }
  std::string out = layout_table(grid);
  out += fmt::format("observations: {}\n", fit.n);
  out += fmt::format("r2: {}  adj_r2: {}\n", table_number(fit.r2), table_number(fit.adj_r2));
  out += fmt::format("F: {}  p: {}  df_residual: {}\n", table_number(fit.f_stat),
                     table_number(fit.f_p_value), fit.df_residual);
  out += fmt::format("sigma2: {}\n", table_number(fit.sigma2));
  return out;
}

std::string render_regression_csv(const RegressionFit& fit) {
  std::string out = "variable,coefficient,std_error,t,p,stars\n";
  for (Eigen::Index i = 0; i < fit.coefficients.size(); ++i) {
    out += fmt::format("{},{},{},{},{},{}\n", fit.column_labels[static_cast<std::size_t>(i)],
                       full_precision(fit.coefficients(i)), full_precision(fit.std_errors(i)),
                       full_precision(fit.t_values(i)), full_precision(fit.p_values(i)),
                       significance_stars(fit.p_values(i)));
  }
  out += fmt::format("# n,{}\n", fit.n);
  out += fmt::format("# r2,{}\n", full_precision(fit.r2));
  out += fmt::format("# adj_r2,{}\n", full_precision(fit.adj_r2));
  out += fmt::format("# f_stat,{}\n", full_precision(fit.f_stat));
  out += fmt::format("# f_p_value,{}\n", full_precision(fit.f_p_value));
  out += fmt::format("# df_residual,{}\n", fit.df_residual);
  out += fmt::format("# sigma2,{}\n", full_precision(fit.sigma2));
  return out;
}

std::string render_screening(const ScreeningReport& report) {
  std::string out = fmt::format("ingested: {}\n", report.ingested);
  for (const auto& stage : report.stages) {
    out += fmt::format("{}: removed {}, remaining {}\n", stage.name, stage.removed,
                       stage.remaining);
  }
  out += fmt::format("retained: {}\n", report.retained.size());
  out += fmt::format("distinct_articles: {}\n", report.article_count);
  return out;
}

std::string render_screening_csv(const ScreeningReport& report) {
  std::string out = "stage,removed,remaining\n";
  out += fmt::format("ingested,,{}\n", report.ingested);
  for (const auto& stage : report.stages) {
    out += fmt::format("{},{},{}\n", stage.name, stage.removed, stage.remaining);
  }
  out += fmt::format("retained,,{}\n", report.retained.size());
  out += fmt::format("distinct_articles,,{}\n", report.article_count);
  return out;
}

namespace {

std::string optional_number(const std::optional<double>& value) {
  return value ? full_precision(*value) : "";
}

}  // namespace

std::string render_loocv(const LoocvResult& result) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"record_id", "function_error", "unit_error", "note"});
  for (const auto& row : result.rows) {
    grid.push_back({row.record_id,
                    row.function_error ? table_number(*row.function_error) : "",
                    row.unit_error ? table_number(*row.unit_error) : "", row.note});
  }
  std::string out = layout_table(grid);
  const auto& s = result.summary;
  out += fmt::format("folds: {}  skipped: {}\n", s.folds, s.skipped);
  out += fmt::format("function: count {}, mean {}, median {}\n", s.function_count,
                     table_number(s.function_mean), table_number(s.function_median));
  out += fmt::format("unit: count {}, mean {}, median {}\n", s.unit_count,
                     table_number(s.unit_mean), table_number(s.unit_median));
  return out;
}

std::string render_loocv_csv(const LoocvResult& result) {
  std::string out = "record_id,function_error,unit_error,note\n";
  for (const auto& row : result.rows) {
    out += fmt::format("{},{},{},{}\n", row.record_id, optional_number(row.function_error),
                       optional_number(row.unit_error), row.note);
  }
  const auto& s = result.summary;
  out += fmt::format("# folds,{}\n", s.folds);
  out += fmt::format("# skipped,{}\n", s.skipped);
  out += fmt::format("# function_count,{}\n", s.function_count);
  out += fmt::format("# function_mean,{}\n", full_precision(s.function_mean));
  out += fmt::format("# function_median,{}\n", full_precision(s.function_median));
  out += fmt::format("# unit_count,{}\n", s.unit_count);
  out += fmt::format("# unit_mean,{}\n", full_precision(s.unit_mean));
  out += fmt::format("# unit_median,{}\n", full_precision(s.unit_median));
  return out;
}

std::string render_predictions(const std::vector<TransferPrediction>& predictions) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"site_id", "log_prediction", "value_prediction", "mode"});
  for (const auto& prediction : predictions) {
    grid.push_back({prediction.site_id, table_number(prediction.log_prediction),
                    table_number(prediction.value_prediction),
                    std::string(to_label(prediction.mode))});
  }
  return layout_table(grid);
}

std::string render_predictions_csv(const std::vector<TransferPrediction>& predictions) {
  std::string out = "site_id,log_prediction,value_prediction,mode\n";
  for (const auto& prediction : predictions) {
    out += fmt::format("{},{},{},{}\n", prediction.site_id,
                       full_precision(prediction.log_prediction),
                       full_precision(prediction.value_prediction), to_label(prediction.mode));
  }
  return out;
}

}  // namespace wetmeta
