#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "wetmeta/records.hpp"

namespace wetmeta {

struct ScreeningStage {
  std::string name;
  std::size_t removed = 0;
  std::size_t remaining = 0;

  friend bool operator==(const ScreeningStage&, const ScreeningStage&) = default;
};

/// Audit of the dropping process: per-stage counts plus the surviving
/// records. remaining[i] always equals remaining[i-1] - removed[i].
struct ScreeningReport {
  std::size_t ingested = 0;
  std::vector<ScreeningStage> stages;
  std::vector<StudyRecord> retained;
  std::size_t article_count = 0;  // distinct article_id among retained
};

/// Applies the dropping rules in order: exact duplicates (all fields except
/// record_id; first occurrence kept), non-per-annum bases, values derived by
/// benefit transfer, and TEV/"various" aggregates.
ScreeningReport screen(const std::vector<StudyRecord>& records);

std::vector<std::tuple<std::string, std::size_t, std::size_t>> stage_counts(
    const ScreeningReport& report);

}  // namespace wetmeta
