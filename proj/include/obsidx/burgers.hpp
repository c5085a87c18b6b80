#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "obsidx/linalg.hpp"
#include "obsidx/observability.hpp"
#include "obsidx/ode.hpp"

namespace obsidx::burgers {

/// u_t + u u_x = kappa u_xx on [0, L], u(0) = u(L) = 0, central differences
/// on N intervals (state: the N - 1 interior values), point sensors sampled
/// at t_k = k T / N_t.
struct BurgersModel {
  double length = 2.0 * std::numbers::pi;
  double horizon = 5.0;
  double kappa = 0.14;
  std::size_t intervals = 40;     // N
  std::size_t sensor_steps = 20;  // N_t
  Vector sensor_x = default_sensors(2.0 * std::numbers::pi);
  std::size_t kf = 2;             // Fourier truncation of W

  static Vector default_sensors(double length) {
    return {0.25 * length, 0.5 * length, 0.75 * length};
  }

  void validate() const;
  double spacing() const noexcept { return length / static_cast<double>(intervals); }
  std::size_t state_dim() const noexcept { return intervals - 1; }
  double grid_point(std::size_t j) const noexcept {
    return static_cast<double>(j) * spacing();
  }
};

/// du/dt for the interior state.
void rhs(const BurgersModel& m, std::span<const double> u, std::span<double> dudt);
Vector rhs(const BurgersModel& m, std::span<const double> u);

/// P^N: point samples at x_1..x_{N-1}.
Vector project(const BurgersModel& m, const std::function<double(double)>& v);

/// Discrete Fourier coefficients; a[k] for k = 0..N/2, b[k] for k = 1..N/2-1
/// (b[0] is unused and zero).
struct FourierCoefficients {
  Vector a;
  Vector b;
};

FourierCoefficients fourier_coeffs(const BurgersModel& m, std::span<const double> v);

/// Phi^N(v): trigonometric interpolant through (0, 0), (x_j, v_j).
class TrigInterpolant {
 public:
  TrigInterpolant(double length, FourierCoefficients coeffs)
      : length_(length), coeffs_(std::move(coeffs)) {}

  double operator()(double x) const;
  const FourierCoefficients& coefficients() const noexcept { return coeffs_; }

 private:
  double length_;
  FourierCoefficients coeffs_;
};

TrigInterpolant lift(const BurgersModel& m, std::span<const double> v);

/// <u, v>_N, equal to the L2[0, L] inner product of the interpolants.
double n_inner(const BurgersModel& m, std::span<const double> u, std::span<const double> v);
double n_norm(const BurgersModel& m, std::span<const double> v);

/// Orthonormal (under <.,.>_N) basis of W^N: trigonometric polynomials of
/// degree <= kf with alpha_0/2 + sum alpha_k = 0. coeff_map rows are
/// (alpha_0, alpha_1, beta_1, ..., alpha_kf, beta_kf).
EstimationBasis estimation_basis(const BurgersModel& m);

/// The constrained raw directions before orthonormalization (cos k - 1, sin k).
std::vector<Vector> raw_basis_vectors(const BurgersModel& m);

/// y_i(t_k) = Phi^N(u(t_k))(sensor_x_i).
struct OutputSeries {
  Vector times;
  std::vector<Vector> values;  // per time, one entry per sensor

  double norm() const;  // sqrt(sum_k sum_i y_i(t_k)^2)
};

Vector sensor_times(const BurgersModel& m);
OutputSeries sample_outputs(const BurgersModel& m, const TrajectorySamples& trajectory);

/// -2 + cos x + sin x + cos 2x + sin 2x
double nominal_initial(double x);

/// 0.25 min(dx^2 / (2 kappa), dx / max(1, |u0|_inf)).
double default_time_step(const BurgersModel& m, std::span<const double> u0);

class BurgersSystem final : public ObservedSystem {
 public:
  BurgersSystem(BurgersModel m, double dt);

  std::size_t state_dim() const override { return model_.state_dim(); }
  bool is_linear() const override { return false; }
  Vector outputs(std::span<const double> u0) const override;
  double state_inner(std::span<const double> u, std::span<const double> v) const override;

  TrajectorySamples trajectory(std::span<const double> u0) const;
  const BurgersModel& model() const noexcept { return model_; }
  double time_step() const noexcept { return dt_; }

 private:
  BurgersModel model_;
  double dt_;
  Vector times_;
  Matrix sensor_rows_;  // (sensor, node): Phi^N evaluation functionals
};

struct IntegratorOptions {
  double dt = 0.0;        // 0 selects default_time_step at the nominal state
  double dt_scale = 1.0;
};

/// Nominal state P^N(u0), orthonormal W^N basis, and the RK4-backed system.
Problem make_problem(const BurgersModel& m, const IntegratorOptions& options = {});

}  // namespace obsidx::burgers
