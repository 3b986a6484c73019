#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/fixtures.hpp"
#include "wetmeta/errors.hpp"
#include "wetmeta/records.hpp"

using namespace wetmeta;

namespace {

const std::string kGoodRow =
    "r001,Adekola2008,InlandWetlands,Floodplains,Food,DirectMarketPricing,PerAnnum,"
    "100.0,USD,2007,1200.0,5760.0,39.0,1,0,1,0,2";

}  // namespace

TEST_CASE("bundled dataset parses to 255 records") {
  const auto records = parse_dataset(fixtures::dataset_path());
  CHECK(records.size() == 255);
  CHECK(records.front().record_id == "r001");

  const auto tong = std::find_if(records.begin(), records.end(), [](const StudyRecord& r) {
    return r.article_id == "Tong2007" && r.value_basis == ValueBasis::PerAnnum &&
           r.method != Method::BenefitTransfer && r.service != Service::TEV &&
           r.service != Service::Various;
  });
  REQUIRE(tong != records.end());
  CHECK(tong->raw_value == doctest::Approx(5807.0));
  CHECK(tong->currency_code == "CNY");
  CHECK(tong->value_year == 2007);
  CHECK(tong->quality_code.has_value());
  CHECK(tong->quality_code->state == QualityState::Degraded);
}

TEST_CASE("header-only input yields an empty list") {
  CHECK(parse_dataset_text(fixtures::dataset_csv({})).empty());
}

TEST_CASE("unknown enum label names the column and line") {
  auto row = kGoodRow;
  const auto text = fixtures::dataset_csv({
      kGoodRow,
      "r002,Adekola2008,InlandWetlands,Floodplains,Foo,DirectMarketPricing,PerAnnum,"
      "10.0,USD,2007,1200.0,5760.0,39.0,1,0,1,0,",
      [&] { auto r = row; r[1] = '9'; return r; }(),
  });
  try {
    parse_dataset_text(text);
    FAIL("expected UnknownEnumLabel");
  } catch (const UnknownEnumLabel& error) {
    CHECK(error.column() == "service");
    CHECK(error.value() == "Foo");
    CHECK(error.line() == 3);
  }
}

TEST_CASE("enum labels resolve case-insensitively") {
  const auto records = parse_dataset_text(fixtures::dataset_csv(
      {"r001,A,inlandwetlands,FLOODPLAINS,food,directmarketpricing,perannum,"
       "1.0,USD,2007,1.0,1.0,1.0,0,0,0,0,"}));
  REQUIRE(records.size() == 1);
  CHECK(records[0].wetland_type == WetlandType::Floodplains);
  CHECK(records[0].service == Service::Food);
  CHECK(records[0].value_basis == ValueBasis::PerAnnum);
}

TEST_CASE("validation errors carry the offending column and line") {
  SUBCASE("non-positive raw_value") {
    const auto text = fixtures::dataset_csv(
        {"r001,A,InlandWetlands,Floodplains,Food,DirectMarketPricing,PerAnnum,"
         "0.0,USD,2007,1.0,1.0,1.0,0,0,0,0,"});
    try {
      parse_dataset_text(text);
      FAIL("expected NonPositiveValue");
    } catch (const NonPositiveValue& error) {
      CHECK(error.column() == "raw_value");
      CHECK(std::string(error.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("value_year outside range") {
    const auto text = fixtures::dataset_csv(
        {"r001,A,InlandWetlands,Floodplains,Food,DirectMarketPricing,PerAnnum,"
         "1.0,USD,1949,1.0,1.0,1.0,0,0,0,0,"});
    CHECK_THROWS_AS(parse_dataset_text(text), MalformedRow);
  }
  SUBCASE("duplicate record_id") {
    const auto text = fixtures::dataset_csv({kGoodRow, kGoodRow});
    CHECK_THROWS_AS(parse_dataset_text(text), MalformedRow);
  }
  SUBCASE("wrong field count") {
    CHECK_THROWS_AS(parse_dataset_text(fixtures::dataset_csv({"r001,A,B"})), MalformedRow);
  }
  SUBCASE("wrong header") {
    CHECK_THROWS_AS(parse_dataset_text("record_id,nope\nx,y\n"), MalformedRow);
  }
  SUBCASE("bad boolean") {
    const auto text = fixtures::dataset_csv(
        {"r001,A,InlandWetlands,Floodplains,Food,DirectMarketPricing,PerAnnum,"
         "1.0,USD,2007,1.0,1.0,1.0,yes,0,0,0,"});
    CHECK_THROWS_AS(parse_dataset_text(text), MalformedRow);
  }
  SUBCASE("bad quality code") {
    const auto text = fixtures::dataset_csv(
        {"r001,A,InlandWetlands,Floodplains,Food,DirectMarketPricing,PerAnnum,"
         "1.0,USD,2007,1.0,1.0,1.0,0,0,0,0,3"});
    CHECK_THROWS_AS(parse_dataset_text(text), MalformedRow);
  }
}

TEST_CASE("normalize_value applies fx then the deflator") {
  auto record = fixtures::make_record();

  SUBCASE("identity at the base year") {
    CHECK(normalize_value(record, fixtures::identity_tables()) == doctest::Approx(100.0));
  }
  SUBCASE("deflator of one half doubles the value") {
    auto tables = fixtures::identity_tables();
    record.value_year = 1995;
    tables.deflator[1995] = 0.5;
    CHECK(normalize_value(record, tables) == doctest::Approx(200.0).epsilon(1e-12));
  }
  SUBCASE("bundled Tong record against the hand-multiplied oracle") {
    const auto records = parse_dataset(fixtures::dataset_path());
    const auto tables = load_normalization_tables(fixtures::rates_path());
    const auto tong = std::find_if(records.begin(), records.end(), [](const StudyRecord& r) {
      return r.article_id == "Tong2007" && r.raw_value == 5807.0;
    });
    REQUIRE(tong != records.end());
    // 5807 yuan * 0.1316 US$/yuan / 1.0
    CHECK(normalize_value(*tong, tables) == doctest::Approx(764.2012).epsilon(1e-9));
  }
  SUBCASE("missing rate and deflator") {
    NormalizationTables tables;
    tables.deflator[2007] = 1.0;
    CHECK_THROWS_AS(normalize_value(record, tables), MissingRate);
    tables.fx[{"USD", 2007}] = 1.0;
    record.value_year = 1999;  // no deflator entry
    tables.fx[{"USD", 1999}] = 1.0;
    CHECK_THROWS_AS(normalize_value(record, tables), MissingDeflator);
  }
}

TEST_CASE("normalize_value is homogeneous of degree one in raw_value") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> scale_dist(0.1, 50.0);
  auto tables = fixtures::identity_tables();
  tables.deflator[2003] = 0.9;
  tables.fx[{"EUR", 2003}] = 1.13;
  auto record = fixtures::make_record();
  record.currency_code = "EUR";
  record.value_year = 2003;
  for (int i = 0; i < 50; ++i) {
    const double k = scale_dist(rng);
    auto scaled = record;
    scaled.raw_value = record.raw_value * k;
    CHECK(normalize_value(scaled, tables) ==
          doctest::Approx(k * normalize_value(record, tables)).epsilon(1e-12));
  }
}

TEST_CASE("datasets survive a write/parse round trip") {
  const auto records = parse_dataset(fixtures::dataset_path());
  const auto reparsed = parse_dataset_text(write_dataset(records));
  REQUIRE(reparsed.size() == records.size());
  CHECK(reparsed == records);
}

TEST_CASE("normalization table validation") {
  SUBCASE("bundled file loads") {
    const auto tables = load_normalization_tables(fixtures::rates_path());
    CHECK(tables.deflator.at(2007) == 1.0);
    CHECK(tables.fx.at({"CNY", 2007}) == doctest::Approx(0.1316));
  }
  SUBCASE("unknown kind") {
    CHECK_THROWS_AS(parse_normalization_text("kind,currency_code,year,rate\nppp,USD,2007,1\n"),
                    MalformedRow);
  }
  SUBCASE("deflator rows must not carry a currency") {
    CHECK_THROWS_AS(
        parse_normalization_text("kind,currency_code,year,rate\ndeflator,USD,2007,1\n"),
        MalformedRow);
  }
  SUBCASE("duplicate entries are rejected") {
    CHECK_THROWS_AS(parse_normalization_text("kind,currency_code,year,rate\n"
                                             "deflator,,2007,1\ndeflator,,2007,1\n"),
                    MalformedRow);
  }
  SUBCASE("non-positive rates are rejected") {
    CHECK_THROWS_AS(
        parse_normalization_text("kind,currency_code,year,rate\ndeflator,,2007,0\n"),
        NonPositiveValue);
  }
  SUBCASE("the 2007 anchor is required") {
    CHECK_THROWS_AS(parse_normalization_text("kind,currency_code,year,rate\nfx,USD,2007,1\n"),
                    InputError);
    CHECK_THROWS_AS(
        parse_normalization_text("kind,currency_code,year,rate\ndeflator,,2007,1.1\n"),
        InputError);
  }
}
