// Command-line pipeline: ingest -> screen -> code quality -> encode -> fit,
// plus cross-tabulation, benefit transfer and leave-one-out evaluation.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "wetmeta/design.hpp"
#include "wetmeta/errors.hpp"
#include "wetmeta/model_io.hpp"
#include "wetmeta/ols.hpp"
#include "wetmeta/quality.hpp"
#include "wetmeta/records.hpp"
#include "wetmeta/reporting.hpp"
#include "wetmeta/screening.hpp"
#include "wetmeta/transfer.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wetmeta;

struct Options {
  std::string data;
  std::string rates;
  std::string schema;
  std::string out = "out";
  std::string format = "text";
  std::string fit_path;
  std::string sites;
  std::string mode = "corrected";
  unsigned threads = 1;
  bool suppress_empty = false;
  std::string crosstab_row;
  std::string crosstab_col;
};

bool use_csv(const Options& options) { return options.format == "csv"; }

std::string output_name(const Options& options, const std::string& stem) {
  return stem + (use_csv(options) ? ".csv" : ".txt");
}

// Writes the artifact under --out and echoes it on stdout.
void emit(const Options& options, const std::string& name, const std::string& content) {
  const fs::path path = fs::path(options.out) / name;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError(fmt::format("cannot create directory '{}': {}",
                                path.parent_path().string(), ec.message()));
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file.write(content.data(), static_cast<std::streamsize>(content.size())))) {
    throw IoError(fmt::format("cannot write '{}'", path.string()));
  }
  std::fwrite(content.data(), 1, content.size(), stdout);
}

BackTransform parse_mode(const std::string& mode) {
  return mode == "naive" ? BackTransform::NaiveExp : BackTransform::HalfVarianceCorrected;
}

EncodingSchema schema_for(const Options& options) {
  return options.schema.empty() ? default_schema() : load_schema(options.schema);
}

// Assigns quality from the evidence flags; a stored code that disagrees
// with its own evidence is a dataset inconsistency.
void code_quality(std::vector<StudyRecord>& records) {
  for (auto& record : records) {
    const QualityCode assigned = assign_quality(record.quality_evidence);
    if (record.quality_code && record.quality_code->state != assigned.state) {
      throw InputError(fmt::format(
          "quality: record '{}': stored code {} disagrees with evidence-derived code {}",
          record.record_id, static_cast<int>(record.quality_code->state),
          static_cast<int>(assigned.state)));
    }
    record.quality_code = assigned;
  }
}

std::vector<StudyRecord> screened_records(const Options& options) {
  auto report = screen(parse_dataset(options.data));
  return std::move(report.retained);
}

int cmd_screen(const Options& options) {
  const auto report = screen(parse_dataset(options.data));
  emit(options, output_name(options, "screening"),
       use_csv(options) ? render_screening_csv(report) : render_screening(report));
  return 0;
}

int cmd_crosstab(const Options& options) {
  const auto records = screened_records(options);
  const auto tab = crosstab(records, options.crosstab_row, options.crosstab_col);
  const RenderOptions render_options{options.suppress_empty};
  const auto name = fmt::format("crosstab_{}_{}", options.crosstab_row, options.crosstab_col);
  emit(options, output_name(options, name),
       use_csv(options) ? render_crosstab_csv(tab, render_options)
                        : render_crosstab(tab, render_options));
  return 0;
}

int cmd_fit(const Options& options) {
  auto records = screened_records(options);
  code_quality(records);
  const auto tables = load_normalization_tables(options.rates);
  const auto schema = schema_for(options);
  const auto fit = fit_ols(encode(records, schema, tables));

  save_fit(fit, schema, fs::path(options.out) / "fit.json");
  emit(options, output_name(options, "regression"),
       use_csv(options) ? render_regression_csv(fit) : render_regression(fit));
  return 0;
}

int cmd_predict(const Options& options) {
  const fs::path fit_file =
      options.fit_path.empty() ? fs::path(options.out) / "fit.json" : fs::path(options.fit_path);
  const SavedFit saved = load_fit(fit_file);
  const auto sites = parse_policy_sites(options.sites);
  const BackTransform mode = parse_mode(options.mode);

  std::vector<TransferPrediction> predictions;
  predictions.reserve(sites.size());
  for (const auto& site : sites) {
    predictions.push_back(predict_value(saved.fit, saved.schema, site, mode));
  }
  emit(options, output_name(options, "predictions"),
       use_csv(options) ? render_predictions_csv(predictions)
                        : render_predictions(predictions));
  return 0;
}

int cmd_loocv(const Options& options) {
  auto records = screened_records(options);
  code_quality(records);
  const auto tables = load_normalization_tables(options.rates);
  const auto result =
      loocv(records, schema_for(options), tables, parse_mode(options.mode), options.threads);
  emit(options, output_name(options, "loocv"),
       use_csv(options) ? render_loocv_csv(result) : render_loocv(result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meta-analysis and benefit transfer for wetland ecosystem-service values"};
  app.require_subcommand(1);
  Options options;

  const auto add_common = [&](CLI::App* cmd, bool needs_rates) {
    cmd->add_option("--data", options.data, "valuation dataset (CSV)")->required();
    auto* rates = cmd->add_option(
        "--rates", options.rates, "normalization table of deflators and exchange rates (CSV)");
    if (needs_rates) {
      rates->required();
    }
    cmd->add_option("--out", options.out, "output directory (default: out)");
    cmd->add_option("--format", options.format, "output format: text|csv")
        ->check(CLI::IsMember({"text", "csv"}));
  };

  auto* screen_cmd =
      app.add_subcommand("screen", "run the dropping pipeline and write the audit");
  add_common(screen_cmd, false);

  auto* crosstab_cmd = app.add_subcommand(
      "crosstab", "cross-tabulate two nominal fields of the screened records");
  crosstab_cmd->add_option("row", options.crosstab_row, "row field name")->required();
  crosstab_cmd->add_option("col", options.crosstab_col, "column field name")->required();
  crosstab_cmd->add_flag("--suppress-empty", options.suppress_empty,
                         "drop all-zero rows and columns");
  add_common(crosstab_cmd, false);

  auto* fit_cmd =
      app.add_subcommand("fit", "fit the benefit function and write the fit document");
  add_common(fit_cmd, true);
  fit_cmd->add_option("--schema", options.schema,
                      "encoding schema (JSON); default layout if absent");

  auto* predict_cmd =
      app.add_subcommand("predict", "transfer values to policy sites from a saved fit");
  predict_cmd->add_option("--fit", options.fit_path, "fit document (default: <out>/fit.json)");
  predict_cmd->add_option("--sites", options.sites, "policy sites (CSV)")->required();
  predict_cmd->add_option("--mode", options.mode, "back transform: naive|corrected")
      ->check(CLI::IsMember({"naive", "corrected"}));
  predict_cmd->add_option("--out", options.out, "output directory (default: out)");
  predict_cmd->add_option("--format", options.format, "output format: text|csv")
      ->check(CLI::IsMember({"text", "csv"}));

  auto* loocv_cmd = app.add_subcommand(
      "loocv", "leave-one-out transfer-error evaluation on the screened records");
  add_common(loocv_cmd, true);
  loocv_cmd->add_option("--schema", options.schema,
                        "encoding schema (JSON); default layout if absent");
  loocv_cmd->add_option("--mode", options.mode, "back transform: naive|corrected")
      ->check(CLI::IsMember({"naive", "corrected"}));
  loocv_cmd->add_option("--threads", options.threads, "worker threads for the folds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    // Help requests exit 0 through CLI11; anything else is an input error.
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    if (screen_cmd->parsed()) {
      return cmd_screen(options);
    }
    if (crosstab_cmd->parsed()) {
      return cmd_crosstab(options);
    }
    if (fit_cmd->parsed()) {
      return cmd_fit(options);
    }
    if (predict_cmd->parsed()) {
      return cmd_predict(options);
    }
    return cmd_loocv(options);
  } catch (const InputError& error) {
    fmt::print(stderr, "wetmeta: {}\n", error.what());
    return 2;
  } catch (const NumericError& error) {
    fmt::print(stderr, "wetmeta: {}\n", error.what());
    return 3;
  } catch (const IoError& error) {
    fmt::print(stderr, "wetmeta: {}\n", error.what());
    return 4;
  } catch (const std::exception& error) {
    fmt::print(stderr, "wetmeta: {}\n", error.what());
    return 1;
  }
}
