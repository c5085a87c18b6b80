#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "obsidx/linalg.hpp"

namespace obsidx {

struct SimplexOptions {
  double initial_step = 0.25;
  std::size_t max_iterations = 200;
  double tolerance = 1e-8;  // simplex diameter
};

struct SimplexResult {
  Vector x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Unconstrained Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Converged when the largest vertex distance from the best
/// vertex drops below `tolerance`.
SimplexResult nelder_mead(const Objective& f, Vector x0, const SimplexOptions& options = {});

}  // namespace obsidx
