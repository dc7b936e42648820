#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffd {

// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorFamily { kFormat, kContract, kInternal };

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, const std::string& what)
      : std::runtime_error(what), family_(family) {}
  ErrorFamily family() const noexcept { return family_; }

 private:
  ErrorFamily family_;
};

// ---- format / parse family ----------------------------------------------

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(ErrorFamily::kFormat, what) {}
  // `line` is 1-based.
  FormatError(std::size_t line, const std::string& what)
      : Error(ErrorFamily::kFormat,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class TemplateError : public FormatError {
  using FormatError::FormatError;
};

class CsvError : public FormatError {
 public:
  // `row` counts data rows from 0 (the header is row -1 and reported as such);
  // `column` is 0-based.
  CsvError(long row, long column, const std::string& what)
      : FormatError("csv row " + std::to_string(row) + ", column " +
                    std::to_string(column) + ": " + what),
        row_(row),
        column_(column) {}
  long row() const noexcept { return row_; }
  long column() const noexcept { return column_; }

 private:
  long row_;
  long column_;
};

// ---- contract family ----------------------------------------------------

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorFamily::kContract, what) {}
};

#define FFD_CONTRACT_ERROR(Name)                   \
  class Name : public ContractError {              \
   public:                                         \
    explicit Name(const std::string& what)         \
        : ContractError(#Name ": " + what) {}      \
  }

FFD_CONTRACT_ERROR(OutOfRange);
FFD_CONTRACT_ERROR(NotACodeword);
FFD_CONTRACT_ERROR(DuplicateRecordId);
FFD_CONTRACT_ERROR(UnknownRecordId);
FFD_CONTRACT_ERROR(RadiusOutOfRange);
FFD_CONTRACT_ERROR(IndexFrozen);
FFD_CONTRACT_ERROR(InvalidDistribution);
FFD_CONTRACT_ERROR(InvalidProbability);
FFD_CONTRACT_ERROR(LengthMismatch);
FFD_CONTRACT_ERROR(EmptyInput);
FFD_CONTRACT_ERROR(DegenerateColumn);
FFD_CONTRACT_ERROR(DegenerateInput);
FFD_CONTRACT_ERROR(SingularDesign);
FFD_CONTRACT_ERROR(OutcomeNotBinary);
FFD_CONTRACT_ERROR(TooFewRows);
FFD_CONTRACT_ERROR(UnknownField);

#undef FFD_CONTRACT_ERROR

// ---- internal -----------------------------------------------------------

class InvariantBreach : public Error {
 public:
  explicit InvariantBreach(const std::string& what)
      : Error(ErrorFamily::kInternal, "invariant breach: " + what) {}
};

}  // namespace ffd
