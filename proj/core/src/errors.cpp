#include "wetmeta/errors.hpp"

#include <fmt/format.h>

namespace wetmeta {

MalformedRow::MalformedRow(std::size_t line, std::string reason)
    : InputError(fmt::format("records: line {}: {}", line, reason)),
      line_(line),
      reason_(std::move(reason)) {}

UnknownEnumLabel::UnknownEnumLabel(std::string column, std::string value, std::size_t line)
    : InputError(fmt::format("records: line {}: unknown label '{}' in column '{}'", line, value,
                             column)),
      column_(std::move(column)),
      value_(std::move(value)),
      line_(line) {}

NonPositiveValue::NonPositiveValue(std::string column, std::string context)
    : InputError(fmt::format("records: {}: column '{}' must be positive", context, column)),
      column_(std::move(column)) {}

MissingRate::MissingRate(std::string currency, int year)
    : InputError(fmt::format("records: no exchange rate for ({}, {})", currency, year)) {}

MissingDeflator::MissingDeflator(int year)
    : InputError(fmt::format("records: no deflator for year {}", year)) {}

MissingQualityCode::MissingQualityCode(std::string record_id)
    : InputError(fmt::format("design: record '{}' has no quality code", record_id)),
      record_id_(std::move(record_id)) {}

UnknownLevel::UnknownLevel(std::string group, std::string level)
    : InputError(fmt::format("design: group '{}': unknown level '{}'", group, level)) {}

SchemaMismatch::SchemaMismatch(std::string reason)
    : InputError(fmt::format("design: schema mismatch: {}", reason)) {}

NotNominalField::NotNominalField(std::string field)
    : InputError(fmt::format("reporting: '{}' is not a nominal field", field)) {}

IndexOutOfRange::IndexOutOfRange(std::string reason)
    : InputError(fmt::format("quality: index out of range: {}", reason)) {}

EmptySelection::EmptySelection() : InputError("transfer: selection matched no records") {}

NonPositiveObserved::NonPositiveObserved()
    : InputError("transfer: observed value must be positive") {}

RankDeficient::RankDeficient(std::vector<std::string> columns)
    : NumericError(fmt::format("ols: design is rank deficient; dependent columns: {}",
                               fmt::join(columns, ", "))),
      columns_(std::move(columns)) {}

InsufficientObservations::InsufficientObservations(std::size_t n, std::size_t k)
    : NumericError(
          fmt::format("ols: {} observations cannot support {} parameters", n, k + 1)) {}

InvalidDf::InvalidDf(std::string reason) : NumericError(fmt::format("ols: {}", reason)) {}

}  // namespace wetmeta
