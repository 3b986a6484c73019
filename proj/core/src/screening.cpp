#include "wetmeta/screening.hpp"

#include <unordered_set>
#include <utility>

namespace wetmeta {

ScreeningReport screen(const std::vector<StudyRecord>& records) {
  ScreeningReport report;
  report.ingested = records.size();

  std::vector<StudyRecord> current;
  current.reserve(records.size());
  {
    std::unordered_set<std::string> seen;
    seen.reserve(records.size());
    for (const auto& record : records) {
      if (seen.insert(record_field_key(record)).second) {
        current.push_back(record);
      }
    }
    report.stages.push_back(
        {"remove_duplicates", records.size() - current.size(), current.size()});
  }

  const auto apply_stage = [&](std::string name, auto keep) {
    std::vector<StudyRecord> next;
    next.reserve(current.size());
    for (auto& record : current) {
      if (keep(record)) {
        next.push_back(std::move(record));
      }
    }
    report.stages.push_back({std::move(name), current.size() - next.size(), next.size()});
    current = std::move(next);
  };

  apply_stage("keep_per_annum",
              [](const StudyRecord& r) { return r.value_basis == ValueBasis::PerAnnum; });
  apply_stage("remove_benefit_transfer",
              [](const StudyRecord& r) { return r.method != Method::BenefitTransfer; });
  apply_stage("remove_tev_various", [](const StudyRecord& r) {
    return r.service != Service::TEV && r.service != Service::Various;
  });

  std::unordered_set<std::string> articles;
  for (const auto& record : current) {
    articles.insert(record.article_id);
  }
  report.article_count = articles.size();
  report.retained = std::move(current);
  return report;
}

std::vector<std::tuple<std::string, std::size_t, std::size_t>> stage_counts(
    const ScreeningReport& report) {
  std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
  out.reserve(report.stages.size());
  for (const auto& stage : report.stages) {
    out.emplace_back(stage.name, stage.removed, stage.remaining);
  }
  return out;
}

}  // namespace wetmeta
