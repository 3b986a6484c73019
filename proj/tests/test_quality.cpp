#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "support/fixtures.hpp"
#include "wetmeta/errors.hpp"
#include "wetmeta/quality.hpp"
#include "wetmeta/records.hpp"
#include "wetmeta/screening.hpp"

using namespace wetmeta;

namespace {

struct TruthRow {
  QualityEvidence evidence;
  int state = 0;
  std::string confidence;
};

std::vector<TruthRow> load_truth_table() {
  std::ifstream in(fixtures::data_dir() / "quality_truth_table.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<TruthRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::string cell;
    TruthRow row;
    std::getline(fields, cell, ',');
    row.evidence.degradation_described = cell == "1";
    std::getline(fields, cell, ',');
    row.evidence.degrading_activities = cell == "1";
    std::getline(fields, cell, ',');
    row.evidence.market_price_method = cell == "1";
    std::getline(fields, cell, ',');
    row.evidence.ideal_state_assumed = cell == "1";
    std::getline(fields, cell, ',');
    row.state = std::stoi(cell);
    std::getline(fields, cell, ',');
    row.confidence = cell;
    rows.push_back(row);
  }
  return rows;
}

int evidence_bits(const QualityEvidence& e) {
  return (e.degradation_described << 3) | (e.degrading_activities << 2) |
         (e.market_price_method << 1) | int(e.ideal_state_assumed);
}

}  // namespace

TEST_CASE("the sixteen-row truth table fixture is reproduced exactly") {
  const auto rows = load_truth_table();
  REQUIRE(rows.size() == 16);

  std::set<int> seen;
  for (const auto& row : rows) {
    seen.insert(evidence_bits(row.evidence));
    const QualityCode code = assign_quality(row.evidence);
    CHECK(static_cast<int>(code.state) == row.state);
    CHECK((code.confidence == Confidence::High ? "High" : "Low") == row.confidence);
  }
  CHECK(seen.size() == 16);  // every combination appears once
}

TEST_CASE("coding rules match the published examples") {
  CHECK(assign_quality({}) ==
        QualityCode{QualityState::NaturallyFunctioning, Confidence::Low});

  // Degradation described, market prices used.
  QualityEvidence adekola;
  adekola.degradation_described = true;
  adekola.market_price_method = true;
  CHECK(assign_quality(adekola) == QualityCode{QualityState::Degraded, Confidence::High});

  // Restoration valued at the re-established state overrides the degradation.
  QualityEvidence dubgaard;
  dubgaard.degradation_described = true;
  dubgaard.ideal_state_assumed = true;
  CHECK(assign_quality(dubgaard).state == QualityState::NaturallyFunctioning);

  // Degrading activities alone.
  QualityEvidence karanja;
  karanja.degrading_activities = true;
  CHECK(assign_quality(karanja) == QualityCode{QualityState::Degraded, Confidence::Low});
}

TEST_CASE("an assumed ideal state forces state 1 whatever else is set") {
  for (int bits = 0; bits < 8; ++bits) {
    QualityEvidence evidence;
    evidence.degradation_described = bits & 1;
    evidence.degrading_activities = bits & 2;
    evidence.market_price_method = bits & 4;
    evidence.ideal_state_assumed = true;
    CHECK(assign_quality(evidence).state == QualityState::NaturallyFunctioning);
  }
}

TEST_CASE("market price evidence changes confidence, never the state") {
  for (int bits = 0; bits < 8; ++bits) {
    QualityEvidence evidence;
    evidence.degradation_described = bits & 1;
    evidence.degrading_activities = bits & 2;
    evidence.ideal_state_assumed = bits & 4;
    evidence.market_price_method = false;
    const auto without = assign_quality(evidence);
    evidence.market_price_method = true;
    const auto with = assign_quality(evidence);
    CHECK(without.state == with.state);
  }
}

TEST_CASE("bundled evidence reproduces all 27 article codes") {
  const auto report = screen(parse_dataset(fixtures::dataset_path()));
  std::map<std::string, const StudyRecord*> articles;
  for (const auto& record : report.retained) {
    articles.emplace(record.article_id, &record);
  }
  REQUIRE(articles.size() == 27);

  for (const auto& [article, record] : articles) {
    REQUIRE_MESSAGE(record->quality_code.has_value(), article);
    const auto assigned = assign_quality(record->quality_evidence);
    CHECK_MESSAGE(assigned.state == record->quality_code->state, article);
  }

  // The site converted to rice cultivation is stored as plain state 2.
  REQUIRE(articles.count("Gerrard2004") == 1);
  CHECK(articles["Gerrard2004"]->quality_code->state == QualityState::Degraded);

  // Evidence flags are consistent within an article.
  std::map<std::string, QualityEvidence> evidence;
  for (const auto& record : report.retained) {
    const auto [it, inserted] = evidence.emplace(record.article_id, record.quality_evidence);
    if (!inserted) {
      CHECK(it->second == record.quality_evidence);
    }
  }
}

TEST_CASE("quality_index computes the weighted-score ratio") {
  CHECK(quality_index(std::vector<WeightedScore>{{1.0, 0.0}, {2.0, 0.0}}, 10.0) == 0.0);
  CHECK(quality_index(std::vector<WeightedScore>{{1.0, 7.5}}, 7.5) == doctest::Approx(1.0));
  // (2*3 + 1*4) / 20
  CHECK(quality_index(std::vector<WeightedScore>{{2.0, 3.0}, {1.0, 4.0}}, 20.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("quality_index rejects out-of-range input") {
  CHECK_THROWS_AS(quality_index(std::vector<WeightedScore>{{1.0, 3.0}}, 2.0), IndexOutOfRange);
  CHECK_THROWS_AS(quality_index(std::vector<WeightedScore>{{0.0, 1.0}}, 2.0), IndexOutOfRange);
  CHECK_THROWS_AS(quality_index(std::vector<WeightedScore>{{-1.0, 1.0}}, 2.0), IndexOutOfRange);
  CHECK_THROWS_AS(quality_index(std::vector<WeightedScore>{{1.0, -0.5}}, 2.0), IndexOutOfRange);
  CHECK_THROWS_AS(quality_index(std::vector<WeightedScore>{{1.0, 1.0}}, 0.0), IndexOutOfRange);
}

TEST_CASE("quality_index is linear in each score and scale invariant") {
  const std::vector<WeightedScore> base = {{2.0, 1.5}, {3.0, 0.5}, {0.5, 2.0}};
  const double max_score = 40.0;
  const double value = quality_index(base, max_score);

  // Doubling one score adds exactly weight*score/max.
  auto bumped = base;
  bumped[1].score *= 2.0;
  CHECK(quality_index(bumped, max_score) ==
        doctest::Approx(value + base[1].weight * base[1].score / max_score).epsilon(1e-12));

  for (const double k : {0.25, 3.0, 17.5}) {
    auto weights_scaled = base;
    for (auto& entry : weights_scaled) {
      entry.weight *= k;
    }
    CHECK(quality_index(weights_scaled, max_score * k) == doctest::Approx(value).epsilon(1e-12));

    auto scores_scaled = base;
    for (auto& entry : scores_scaled) {
      entry.score *= k;
    }
    CHECK(quality_index(scores_scaled, max_score * k) == doctest::Approx(value).epsilon(1e-12));
  }
}
