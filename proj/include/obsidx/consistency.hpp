#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "obsidx/linalg.hpp"
#include "obsidx/observability.hpp"
#include "obsidx/study.hpp"

namespace obsidx {

enum class SweepMethod { Gramian, Empirical, Direct };

const char* to_string(SweepMethod m) noexcept;
SweepMethod parse_sweep_method(const std::string& name);

struct SweepOptions {
  double rho = 0.1;
  DirectSearchOptions direct;
  unsigned threads = 1;
  std::vector<std::pair<std::string, std::string>> metadata;
};

using ProblemFactory = std::function<Problem(std::size_t n)>;

/// epsilon^N and rho/epsilon^N for each n. Resolutions run concurrently;
/// records come back in n order. A failing n is recorded with its cause and
/// the sweep continues; SweepFailure only if every n fails.
StudySeries sweep(const ProblemFactory& factory, std::span<const std::size_t> n_values,
                  SweepMethod method, const SweepOptions& options = {});

/// Evaluates one resolution without the sweep bookkeeping.
IndexResult evaluate_index(const Problem& problem, SweepMethod method, const SweepOptions& options);

struct ConvergenceReport {
  double plateau = 0.0;      // last index
  double last_change = 0.0;  // relative change into the last record
  std::vector<double> changes;  // |I_k - I_{k-1}| / |I_{k-1}|
  Matrix cauchy;                // |I_i - I_j| / |I_j|
  std::size_t trailing_stable = 0;  // trailing consecutive changes below the threshold
  bool converged = false;
};

inline constexpr double kConvergenceThreshold = 0.01;

/// Converged when the final three records differ consecutively by less than
/// 1% (relative to the earlier value). Uses successful records only; needs
/// at least three.
ConvergenceReport convergence_diagnostics(const StudySeries& series);

}  // namespace obsidx
