#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alignlab {

enum class ErrorKind {
  InvalidInput,
  NotSymmetric,
  IllConditionedMetric,
  InvalidK,
  DimensionMismatch,
  DegenerateTarget,
  InvalidConfig,
  RequiresStandardized,
  RankDeficient,
  DegenerateSpectrum,
  Io,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; `kind()` is the
// stable, machine-checkable part and `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace alignlab
