#include "rvcal/error.hpp"

namespace rvcal {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::TooFewDistinctValues: return "TooFewDistinctValues";
    case Errc::NonFiniteTarget: return "NonFiniteTarget";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::MissingClass: return "MissingClass";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DatasetTooShort: return "DatasetTooShort";
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::UnparsableValue: return "UnparsableValue";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::RowCountMismatch: return "RowCountMismatch";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace rvcal
