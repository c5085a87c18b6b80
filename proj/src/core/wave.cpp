#include "obsidx/wave.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "obsidx/error.hpp"

namespace obsidx::wave {

void WaveModel::validate() const {
  require(length > 0.0, "wave: length must be positive");
  require(horizon > 2.0 * length, "wave: horizon must exceed 2L");
  require(interior >= 1, "wave: need at least one interior node");
  require(initial_mode <= interior, "wave: initial mode must be in [1, n] (0 = highest)");
  require(quad_factor >= 2, "wave: quad_factor must be >= 2");
}

WaveModes discrete_modes(const WaveModel& m) {
  m.validate();
  const std::size_t n = m.interior;
  const double h = m.spacing();
  WaveModes out{Vector(n), Matrix(n, n), Matrix(n, n)};
  for (std::size_t k = 1; k <= n; ++k) {
    const double s = std::sin(static_cast<double>(k) * std::numbers::pi * h / (2.0 * m.length));
    out.frequencies[k - 1] = 2.0 / h * s;
    for (std::size_t j = 1; j <= n; ++j) {
      const double phi = std::sin(static_cast<double>(k * j) * std::numbers::pi * h / m.length);
      out.shapes(j - 1, k - 1) = phi;
      out.inverse_shapes(k - 1, j - 1) = 2.0 * h / m.length * phi;
    }
  }
  return out;
}

OscillatorSamples solve_wave(const WaveModel& m, std::span<const double> u0,
                             std::span<const double> v0, std::span<const double> sample_times) {
  const WaveModes modes = discrete_modes(m);
  return oscillator_solve(modes.frequencies, modes.shapes, modes.inverse_shapes, u0, v0,
                          sample_times);
}

double total_energy(const WaveModel& m, std::span<const double> positions,
                    std::span<const double> velocities) {
  const std::size_t n = m.interior;
  require(positions.size() == n && velocities.size() == n, "wave energy: dimension mismatch");
  const double h = m.spacing();
  double acc = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double uj = j == 0 ? 0.0 : positions[j - 1];
    const double uj1 = j == n ? 0.0 : positions[j];
    const double vj = j == 0 ? 0.0 : velocities[j - 1];
    const double slope = (uj1 - uj) / h;
    acc += vj * vj + slope * slope;
  }
  return 0.5 * h * acc;
}

double boundary_energy(const WaveModel& m, const OscillatorSamples& trajectory) {
  const Vector& t = trajectory.times;
  require(t.size() >= 2, "boundary energy needs at least 2 samples");
  const double dt = t[1] - t[0];
  for (std::size_t k = 1; k < t.size(); ++k)
    require(std::abs((t[k] - t[k - 1]) - dt) <= 1e-9 * std::max(dt, 1.0),
            "boundary energy needs uniform samples");
  const double h = m.spacing();
  Vector integrand(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double edge = trajectory.positions[k].back() / h;
    integrand[k] = edge * edge;
  }
  return trapezoid_quadrature(integrand, dt);
}

Vector boundary_quadrature_times(const WaveModel& m) {
  const std::size_t count = m.quad_factor * m.interior;
  Vector times(count);
  const double dt = m.horizon / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) times[k] = static_cast<double>(k) * dt;
  return times;
}

std::vector<RatioRecord> observability_ratio_sweep(const WaveModel& base,
                                                   std::span<const std::size_t> n_values) {
  require(!n_values.empty(), "wave sweep needs at least one n");
  std::vector<RatioRecord> out;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (i > 0) require(n_values[i] > n_values[i - 1], "wave sweep: n values must ascend");
    const auto start = std::chrono::steady_clock::now();
    WaveModel m = base;
    m.interior = n_values[i];
    m.validate();
    const std::size_t mode = m.resolved_mode();
    const WaveModes modes = discrete_modes(m);
    const Vector u0 = modes.shapes.column(mode - 1);
    const Vector v0(m.interior, 0.0);
    const Vector times = boundary_quadrature_times(m);
    const OscillatorSamples traj = oscillator_solve(modes.frequencies, modes.shapes,
                                                    modes.inverse_shapes, u0, v0, times);
    RatioRecord r;
    r.n = m.interior;
    r.initial_mode = mode;
    r.energy = total_energy(m, u0, v0);
    r.boundary_energy = boundary_energy(m, traj);
    r.ratio = r.energy / r.boundary_energy;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(r);
  }
  return out;
}

}  // namespace obsidx::wave
