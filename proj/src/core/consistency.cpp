#include "obsidx/consistency.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "obsidx/error.hpp"
#include "obsidx/parallel.hpp"

namespace obsidx {

const char* to_string(SweepMethod m) noexcept {
  switch (m) {
    case SweepMethod::Gramian: return "gramian";
    case SweepMethod::Empirical: return "empirical";
    case SweepMethod::Direct: return "direct";
  }
  return "unknown";
}

SweepMethod parse_sweep_method(const std::string& name) {
  if (name == "gramian") return SweepMethod::Gramian;
  if (name == "empirical") return SweepMethod::Empirical;
  if (name == "direct" || name == "direct-search") return SweepMethod::Direct;
  throw Error(ErrorCode::InvalidInput, "unknown method '" + name + "'");
}

IndexResult evaluate_index(const Problem& problem, SweepMethod method,
                           const SweepOptions& options) {
  const ObservedSystem& sys = *problem.system;
  switch (method) {
    case SweepMethod::Gramian:
      return unobservability_index(linear_gramian(sys, problem.basis, options.rho),
                                   &problem.basis, IndexMethod::Gramian);
    case SweepMethod::Empirical:
      return unobservability_index(
          empirical_gramian(sys, problem.nominal, problem.basis, options.rho), &problem.basis,
          IndexMethod::Empirical);
    case SweepMethod::Direct: {
      DirectSearchOptions direct = options.direct;
      direct.threads = 1;
      return direct_index_search(sys, problem.nominal, problem.basis, options.rho, direct);
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown method");
}

StudySeries sweep(const ProblemFactory& factory, std::span<const std::size_t> n_values,
                  SweepMethod method, const SweepOptions& options) {
  require(!n_values.empty(), "sweep needs at least one n");
  for (std::size_t i = 1; i < n_values.size(); ++i)
    require(n_values[i] > n_values[i - 1], "sweep: n values must be strictly ascending");
  require(options.rho > 0.0, "sweep: rho must be positive");

  StudySeries series;
  series.method = to_string(method);
  series.metadata = options.metadata;
  series.records.resize(n_values.size());

  parallel_for(n_values.size(), options.threads, [&](std::size_t i) {
    StudyRecord& r = series.records[i];
    r.n = n_values[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      const IndexResult res = evaluate_index(factory(r.n), method, options);
      r.sigma_min = res.sigma_min;
      r.epsilon = res.epsilon;
      r.index = res.index;
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r.sigma_min = r.epsilon = r.index = nan;
      if (const auto* err = dynamic_cast<const Error*>(&e))
        r.error = std::string(to_string(err->code())) + ": " + e.what();
      else
        r.error = e.what();
    }
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  bool any_ok = false;
  for (const StudyRecord& r : series.records) any_ok = any_ok || r.ok();
  if (!any_ok) {
    throw Error(ErrorCode::SweepFailure,
                "every resolution failed; first cause: " + series.records.front().error);
  }
  return series;
}

ConvergenceReport convergence_diagnostics(const StudySeries& series) {
  Vector values;
  for (const StudyRecord& r : series.records)
    if (r.ok() && std::isfinite(r.index)) values.push_back(r.index);
  require(values.size() >= 3, "convergence diagnostics need at least 3 successful records");

  ConvergenceReport rep;
  const std::size_t n = values.size();
  rep.plateau = values.back();
  for (std::size_t k = 1; k < n; ++k)
    rep.changes.push_back(std::abs(values[k] - values[k - 1]) / std::abs(values[k - 1]));
  rep.last_change = rep.changes.back();
  for (auto it = rep.changes.rbegin(); it != rep.changes.rend() && *it < kConvergenceThreshold; ++it)
    ++rep.trailing_stable;
  rep.converged = rep.trailing_stable >= 2;

  rep.cauchy = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rep.cauchy(i, j) = std::abs(values[i] - values[j]) / std::abs(values[j]);
  return rep;
}

}  // namespace obsidx
