#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wetmeta {

// Error categories map onto the CLI exit codes: input 2, numeric 3, io 4.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
  using Error::Error;
};

class NumericError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class MalformedRow : public InputError {
public:
  MalformedRow(std::size_t line, std::string reason);
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t line_;
  std::string reason_;
};

class UnknownEnumLabel : public InputError {
public:
  UnknownEnumLabel(std::string column, std::string value, std::size_t line);
  const std::string& column() const noexcept { return column_; }
  const std::string& value() const noexcept { return value_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string column_;
  std::string value_;
  std::size_t line_;
};

class NonPositiveValue : public InputError {
public:
  // context identifies the offending row, e.g. "line 12" or "record r017".
  NonPositiveValue(std::string column, std::string context);
  const std::string& column() const noexcept { return column_; }

private:
  std::string column_;
};

class MissingRate : public InputError {
public:
  MissingRate(std::string currency, int year);
};

class MissingDeflator : public InputError {
public:
  explicit MissingDeflator(int year);
};

class MissingQualityCode : public InputError {
public:
  explicit MissingQualityCode(std::string record_id);
  const std::string& record_id() const noexcept { return record_id_; }

private:
  std::string record_id_;
};

class UnknownLevel : public InputError {
public:
  UnknownLevel(std::string group, std::string level);
};

class SchemaMismatch : public InputError {
public:
  explicit SchemaMismatch(std::string reason);
};

class NotNominalField : public InputError {
public:
  explicit NotNominalField(std::string field);
};

class IndexOutOfRange : public InputError {
public:
  explicit IndexOutOfRange(std::string reason);
};

class EmptySelection : public InputError {
public:
  EmptySelection();
};

class NonPositiveObserved : public InputError {
public:
  NonPositiveObserved();
};

class RankDeficient : public NumericError {
public:
  explicit RankDeficient(std::vector<std::string> columns);
  const std::vector<std::string>& columns() const noexcept { return columns_; }

private:
  std::vector<std::string> columns_;
};

class InsufficientObservations : public NumericError {
public:
  InsufficientObservations(std::size_t n, std::size_t k);
};

class InvalidDf : public NumericError {
public:
  explicit InvalidDf(std::string reason);
};

}  // namespace wetmeta
