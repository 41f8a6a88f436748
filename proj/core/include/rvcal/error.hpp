#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rvcal {

enum class Errc {
  TooFewDistinctValues,
  NonFiniteTarget,
  DimensionMismatch,
  MissingClass,
  TooFewSamples,
  EmptyInput,
  LengthMismatch,
  DatasetTooShort,
  MissingColumn,
  UnparsableValue,
  EmptyDataset,
  RowCountMismatch,
  InvalidSpec,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rvcal
