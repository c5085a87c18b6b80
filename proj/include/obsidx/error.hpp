#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace obsidx {

enum class ErrorCode {
  InvalidInput = 1,
  DegenerateMetric,
  LinearDependence,
  BlowUp,
  SearchFailure,
  SweepFailure,
  AssemblyError,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. Carries an
/// optional index (pivot, basis vector, ...) or time where one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt,
        std::optional<double> time = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index), time_(time) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  std::optional<double> time() const noexcept { return time_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
  std::optional<double> time_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidInput, what);
}

}  // namespace obsidx
