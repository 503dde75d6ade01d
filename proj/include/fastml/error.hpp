#ifndef FASTML_ERROR_HPP
#define FASTML_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace fastml {

/// Machine-readable failure category carried by every fastml::Error.
enum class Errc {
  EmptyInput,
  TooFewRows,
  ShapeMismatch,
  NonFinite,
  SingularMatrix,
  NotSymmetric,
  NoConvergence,
  RatioOutOfRange,
  DegreeZero,
  DegenerateX,
  NonBinaryLabels,
  LabelsNotPlusMinusOne,
  SingleClass,
  DivergedToNaN,
  InvalidConfig,
  KOutOfRange,
  ClassTooSmall,
  KZero,
  KTooLarge,
  TooManyComponents,
  AllZeroVariance,
  MoreThanTwoClasses,
  ConstantTarget,
  FileNotFound,
  NonNumericCell,
  MissingTargetColumn,
  SpecInvalid,
  UnsupportedTask,
  IoError,
  KeyMismatch,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the CSV loader; row is the 1-based data row (header excluded),
/// col the 1-based column.
class CellError : public Error {
 public:
  CellError(std::size_t row, std::size_t col, const std::string& cell);

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace fastml

#endif  // FASTML_ERROR_HPP
