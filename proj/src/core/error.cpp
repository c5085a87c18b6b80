#include "obsidx/error.hpp"

namespace obsidx {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::DegenerateMetric: return "degenerate-metric";
    case ErrorCode::LinearDependence: return "linear-dependence";
    case ErrorCode::BlowUp: return "blow-up";
    case ErrorCode::SearchFailure: return "search-failure";
    case ErrorCode::SweepFailure: return "sweep-error";
    case ErrorCode::AssemblyError: return "assembly-error";
    case ErrorCode::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace obsidx
