#include "alignlab/error.hpp"

namespace alignlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::IllConditionedMetric: return "IllConditionedMetric";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateTarget: return "DegenerateTarget";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::RequiresStandardized: return "RequiresStandardized";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace alignlab
