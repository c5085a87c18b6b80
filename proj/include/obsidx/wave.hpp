#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "obsidx/linalg.hpp"
#include "obsidx/ode.hpp"

namespace obsidx::wave {

/// Second-order finite differences for u_tt = u_xx on (0, L) with n interior
/// nodes, h = L / (n + 1), homogeneous Dirichlet ends.
struct WaveModel {
  double length = 1.0;
  double horizon = 2.5;        // must exceed 2L
  std::size_t interior = 10;
  std::size_t initial_mode = 0;  // 0 selects the highest mode (k = n)
  std::size_t quad_factor = 64;  // boundary-energy samples per interior node

  void validate() const;
  double spacing() const noexcept { return length / static_cast<double>(interior + 1); }
  std::size_t resolved_mode() const noexcept { return initial_mode == 0 ? interior : initial_mode; }
};

struct WaveModes {
  Vector frequencies;  // ascending
  Matrix shapes;       // (node j, mode k) = sin(k pi x_j / L)
  Matrix inverse_shapes;
};

WaveModes discrete_modes(const WaveModel& m);

/// Exact per-mode solution of the semi-discrete system.
OscillatorSamples solve_wave(const WaveModel& m, std::span<const double> u0,
                             std::span<const double> v0, std::span<const double> sample_times);

/// E_h = h/2 sum_{j=0}^{n} (|v_j|^2 + |(u_{j+1} - u_j)/h|^2), u_0 = u_{n+1} = 0.
double total_energy(const WaveModel& m, std::span<const double> positions,
                    std::span<const double> velocities);

/// Trapezoid approximation of int_0^T |u_n(t)/h|^2 dt on uniform samples.
double boundary_energy(const WaveModel& m, const OscillatorSamples& trajectory);

/// Uniform sample times 0..T with quad_factor * n points.
Vector boundary_quadrature_times(const WaveModel& m);

struct RatioRecord {
  std::size_t n = 0;
  std::size_t initial_mode = 0;
  double energy = 0.0;
  double boundary_energy = 0.0;
  double ratio = 0.0;
  double wall_time_s = 0.0;
};

/// E_h(0) / boundary energy for each n, starting from the selected discrete
/// eigenmode at rest.
std::vector<RatioRecord> observability_ratio_sweep(const WaveModel& base,
                                                   std::span<const std::size_t> n_values);

}  // namespace obsidx::wave
