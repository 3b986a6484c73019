#include <benchmark/benchmark.h>

#include <filesystem>

#include "wetmeta/design.hpp"
#include "wetmeta/ols.hpp"
#include "wetmeta/quality.hpp"
#include "wetmeta/records.hpp"
#include "wetmeta/screening.hpp"
#include "wetmeta/transfer.hpp"

namespace {

using namespace wetmeta;

const std::filesystem::path kDataDir = WETMETA_DATA_DIR;

const std::vector<StudyRecord>& bundled_records() {
  static const auto records = parse_dataset(kDataDir / "teeb_inland_wetlands.csv");
  return records;
}

std::vector<StudyRecord> coded_retained() {
  auto report = screen(bundled_records());
  for (auto& record : report.retained) {
    record.quality_code = assign_quality(record.quality_evidence);
  }
  return std::move(report.retained);
}

const NormalizationTables& tables() {
  static const auto t = load_normalization_tables(kDataDir / "normalization_rates.csv");
  return t;
}

void BM_ParseDataset(benchmark::State& state) {
  const auto path = kDataDir / "teeb_inland_wetlands.csv";
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_dataset(path));
  }
}
BENCHMARK(BM_ParseDataset);

void BM_Screen(benchmark::State& state) {
  const auto& records = bundled_records();
  for (auto _ : state) {
    benchmark::DoNotOptimize(screen(records));
  }
}
BENCHMARK(BM_Screen);

void BM_EncodeDefaultSchema(benchmark::State& state) {
  const auto records = coded_retained();
  const auto schema = default_schema();
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(records, schema, tables()));
  }
}
BENCHMARK(BM_EncodeDefaultSchema);

void BM_FitOls(benchmark::State& state) {
  const auto design = encode(coded_retained(), default_schema(), tables());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_ols(design));
  }
}
BENCHMARK(BM_FitOls);

void BM_Loocv(benchmark::State& state) {
  const auto records = coded_retained();
  const auto schema = default_schema();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        loocv(records, schema, tables(), BackTransform::HalfVarianceCorrected,
              static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_Loocv)->Arg(1)->Arg(4);

void BM_StudentTTail(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 0.001;
    benchmark::DoNotOptimize(t_p_value_two_sided(t, 51));
  }
}
BENCHMARK(BM_StudentTTail);

}  // namespace

BENCHMARK_MAIN();
