#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace obsidx {

/// One resolution of a consistency sweep. A non-empty `error` marks a failed
/// resolution; its numeric fields are NaN.
struct StudyRecord {
  std::size_t n = 0;
  double sigma_min = 0.0;
  double epsilon = 0.0;
  double index = 0.0;
  double wall_time_s = 0.0;
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

struct StudySeries {
  std::string method;
  std::vector<StudyRecord> records;  // ascending n
  std::vector<std::pair<std::string, std::string>> metadata;
};

}  // namespace obsidx
