#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>

#include "obsidx/linalg.hpp"
#include "obsidx/observability.hpp"
#include "obsidx/study.hpp"

namespace obsidx::heat {

/// u_t = u_xx on [0, L], u(0) = u(L) = 0, observed at a point sensor x0.
/// State: the first `modes` sine coefficients.
struct HeatModel {
  double length = 2.0 * std::numbers::pi;
  double horizon = 10.0;
  double sensor_x = 0.5;
  std::size_t modes = 1;

  void validate() const;
};

struct HeatOperators {
  Vector decay_rates;  // (k pi / L)^2
  Vector output_row;   // sin(k pi x0 / L)
};

HeatOperators assemble(const HeatModel& m);

/// Observability gramian with the time integral evaluated analytically.
SymMatrix gramian_closed_form(const HeatModel& m);

/// Same gramian from modal responses and trapezoid quadrature on nt samples.
SymMatrix gramian_quadrature(const HeatModel& m, std::size_t nt);

/// sigma_min of the closed-form gramian for each n (epsilon and index use rho = 1).
StudySeries sigma_min_series(const HeatModel& base, std::span<const std::size_t> n_values);

/// Worst-case estimation error for sensor error `sensor_error`.
double worst_estimation_error(double sensor_error, double sigma_min);

/// First `modes` sine coefficients (2/L) int v sin(k pi x / L) dx on a
/// uniform trapezoid grid.
Vector project(const HeatModel& m, const std::function<double(double)>& v,
               std::size_t grid_points = 4096);

/// Sine synthesis evaluated at x.
double lift(const HeatModel& m, std::span<const double> coeffs, double x);

/// L2[0, L] norm of the sine synthesis: sqrt(L/2 sum c_k^2).
double l2_norm(const HeatModel& m, std::span<const double> coeffs);

inline constexpr std::size_t kDefaultTimeSamples = 40001;

/// Heat model behind the ObservedSystem interface. Outputs are the sensor
/// series on a uniform time grid, weighted for trapezoid L2(0, T). The state
/// metric is the Euclidean coefficient inner product.
class HeatSystem final : public ObservedSystem {
 public:
  explicit HeatSystem(HeatModel m, std::size_t time_samples = kDefaultTimeSamples);

  std::size_t state_dim() const override { return model_.modes; }
  bool is_linear() const override { return true; }
  Vector outputs(std::span<const double> u0) const override;
  double state_inner(std::span<const double> u, std::span<const double> v) const override;

  const HeatModel& model() const noexcept { return model_; }

 private:
  HeatModel model_;
  std::size_t samples_;
  Matrix response_;  // (mode, time) -> c_k exp(-lambda_k t) sqrt(w_t)
};

/// Basis: the first `basis_size` modes; nominal coefficients 1/k.
Problem make_problem(const HeatModel& m, std::size_t basis_size,
                     std::size_t time_samples = kDefaultTimeSamples);

}  // namespace obsidx::heat
