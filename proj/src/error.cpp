#include "fastml/error.hpp"

namespace fastml {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::RatioOutOfRange: return "RatioOutOfRange";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::DegenerateX: return "DegenerateX";
    case Errc::NonBinaryLabels: return "NonBinaryLabels";
    case Errc::LabelsNotPlusMinusOne: return "LabelsNotPlusMinusOne";
    case Errc::SingleClass: return "SingleClass";
    case Errc::DivergedToNaN: return "DivergedToNaN";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::KOutOfRange: return "KOutOfRange";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::KZero: return "KZero";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::TooManyComponents: return "TooManyComponents";
    case Errc::AllZeroVariance: return "AllZeroVariance";
    case Errc::MoreThanTwoClasses: return "MoreThanTwoClasses";
    case Errc::ConstantTarget: return "ConstantTarget";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::NonNumericCell: return "NonNumericCell";
    case Errc::MissingTargetColumn: return "MissingTargetColumn";
    case Errc::SpecInvalid: return "SpecInvalid";
    case Errc::UnsupportedTask: return "UnsupportedTask";
    case Errc::IoError: return "IoError";
    case Errc::KeyMismatch: return "KeyMismatch";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

CellError::CellError(std::size_t row, std::size_t col, const std::string& cell)
    : Error(Errc::NonNumericCell, "row " + std::to_string(row) + ", column " +
                                      std::to_string(col) + ": '" + cell + "'"),
      row_(row),
      col_(col) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fastml
