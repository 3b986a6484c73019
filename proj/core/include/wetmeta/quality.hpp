#pragma once

#include <span>

namespace wetmeta {

/// Pre-extracted boolean evidence about the quality of a wetland site,
/// mirroring the four coding rules applied to the source articles.
struct QualityEvidence {
  bool degradation_described = false;
  bool degrading_activities = false;
  bool market_price_method = false;
  bool ideal_state_assumed = false;

  friend bool operator==(const QualityEvidence&, const QualityEvidence&) = default;
};

/// Two-level quality state. The numeric values match the published coding
/// convention (1 = naturally functioning, 2 = degraded).
enum class QualityState { NaturallyFunctioning = 1, Degraded = 2 };

enum class Confidence { High, Low };

struct QualityCode {
  QualityState state = QualityState::NaturallyFunctioning;
  Confidence confidence = Confidence::Low;

  friend bool operator==(const QualityCode&, const QualityCode&) = default;
};

/// Applies the coding rules in precedence order: an assumed ideal state
/// forces state 1; otherwise described degradation, then degrading human
/// activities, force state 2; otherwise state 1. Market-price evidence only
/// raises confidence for activity-based degradation calls, never the state.
QualityCode assign_quality(const QualityEvidence& evidence) noexcept;

struct WeightedScore {
  double weight = 0.0;
  double score = 0.0;
};

/// Weighted-score quality index: sum of weight*score over all functions
/// divided by the maximum possible score. Result lies in [0, 1].
double quality_index(std::span<const WeightedScore> scores, double max_score);

}  // namespace wetmeta
