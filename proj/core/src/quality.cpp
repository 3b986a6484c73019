#include "wetmeta/quality.hpp"

#include <fmt/format.h>

#include "wetmeta/errors.hpp"

namespace wetmeta {

QualityCode assign_quality(const QualityEvidence& evidence) noexcept {
  if (evidence.ideal_state_assumed) {
    // Typical for restoration projects evaluated at the restored state even
    // though the site is currently threatened or degraded.
    return {QualityState::NaturallyFunctioning, Confidence::High};
  }
  if (evidence.degradation_described) {
    return {QualityState::Degraded, Confidence::High};
  }
  if (evidence.degrading_activities) {
    return {QualityState::Degraded,
            evidence.market_price_method ? Confidence::High : Confidence::Low};
  }
  return {QualityState::NaturallyFunctioning, Confidence::Low};
}

double quality_index(std::span<const WeightedScore> scores, double max_score) {
  if (!(max_score > 0.0)) {
    throw IndexOutOfRange("max_score must be positive");
  }
  double total = 0.0;
  for (const auto& entry : scores) {
    if (!(entry.weight > 0.0)) {
      throw IndexOutOfRange(fmt::format("weight {} must be positive", entry.weight));
    }
    if (entry.score < 0.0) {
      throw IndexOutOfRange(fmt::format("score {} must be non-negative", entry.score));
    }
    total += entry.weight * entry.score;
  }
  const double ratio = total / max_score;
  if (ratio > 1.0) {
    throw IndexOutOfRange(fmt::format("weighted total {} exceeds max score {}", total, max_score));
  }
  return ratio;
}

}  // namespace wetmeta
