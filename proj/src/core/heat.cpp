#include "obsidx/heat.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "obsidx/error.hpp"
#include "obsidx/ode.hpp"

namespace obsidx::heat {

void HeatModel::validate() const {
  require(length > 0.0, "heat: length must be positive");
  require(horizon > 0.0, "heat: horizon must be positive");
  require(sensor_x >= 0.0 && sensor_x <= length, "heat: sensor must lie in [0, L]");
  require(modes >= 1, "heat: need at least one mode");
}

HeatOperators assemble(const HeatModel& m) {
  m.validate();
  HeatOperators ops{Vector(m.modes), Vector(m.modes)};
  for (std::size_t k = 1; k <= m.modes; ++k) {
    const double wave = static_cast<double>(k) * std::numbers::pi / m.length;
    ops.decay_rates[k - 1] = wave * wave;
    ops.output_row[k - 1] = std::sin(wave * m.sensor_x);
  }
  return ops;
}

SymMatrix gramian_closed_form(const HeatModel& m) {
  const HeatOperators ops = assemble(m);
  const std::size_t n = m.modes;
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double rate = ops.decay_rates[i] + ops.decay_rates[j];
      g(i, j) = ops.output_row[i] * ops.output_row[j] * -std::expm1(-rate * m.horizon) / rate;
    }
  return SymMatrix(g);
}

SymMatrix gramian_quadrature(const HeatModel& m, std::size_t nt) {
  require(nt >= 2, "heat quadrature gramian needs nt >= 2");
  const HeatOperators ops = assemble(m);
  const std::size_t n = m.modes;
  const double dt = m.horizon / static_cast<double>(nt - 1);
  Vector times(nt);
  for (std::size_t j = 0; j < nt; ++j) times[j] = static_cast<double>(j) * dt;

  ModalSystem sys;
  for (double lambda : ops.decay_rates) sys.rates.push_back(-lambda);

  std::vector<Vector> outputs(n, Vector(nt));
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    const TrajectorySamples traj = modal_solve(sys, e, times);
    for (std::size_t j = 0; j < nt; ++j) outputs[i][j] = dot(ops.output_row, traj.states[j]);
  }

  Matrix g(n, n);
  Vector integrand(nt);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < nt; ++k) integrand[k] = outputs[i][k] * outputs[j][k];
      g(i, j) = g(j, i) = trapezoid_quadrature(integrand, dt);
    }
  return SymMatrix(g);
}

StudySeries sigma_min_series(const HeatModel& base, std::span<const std::size_t> n_values) {
  require(!n_values.empty(), "heat series needs at least one n");
  StudySeries series;
  series.method = "closed-form";
  series.metadata = {{"model", "heat"},
                     {"length", std::to_string(base.length)},
                     {"horizon", std::to_string(base.horizon)},
                     {"sensor_x", std::to_string(base.sensor_x)}};
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (i > 0) require(n_values[i] > n_values[i - 1], "heat series: n values must ascend");
    const auto start = std::chrono::steady_clock::now();
    HeatModel m = base;
    m.modes = n_values[i];
    const double sigma = sym_eig(gramian_closed_form(m)).values.front();
    StudyRecord r;
    r.n = m.modes;
    r.sigma_min = sigma;
    r.epsilon = std::sqrt(std::max(sigma, 0.0));
    r.index = 1.0 / r.epsilon;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    series.records.push_back(r);
  }
  return series;
}

double worst_estimation_error(double sensor_error, double sigma_min) {
  require(sigma_min > 0.0, "worst estimation error needs sigma_min > 0");
  return sensor_error / std::sqrt(sigma_min);
}

Vector project(const HeatModel& m, const std::function<double(double)>& v,
               std::size_t grid_points) {
  m.validate();
  require(grid_points >= 2, "heat projection needs at least 2 grid points");
  const double dx = m.length / static_cast<double>(grid_points - 1);
  Vector samples(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) samples[i] = v(static_cast<double>(i) * dx);

  Vector coeffs(m.modes);
  Vector integrand(grid_points);
  for (std::size_t k = 1; k <= m.modes; ++k) {
    const double wave = static_cast<double>(k) * std::numbers::pi / m.length;
    for (std::size_t i = 0; i < grid_points; ++i)
      integrand[i] = samples[i] * std::sin(wave * static_cast<double>(i) * dx);
    coeffs[k - 1] = 2.0 / m.length * trapezoid_quadrature(integrand, dx);
  }
  return coeffs;
}

double lift(const HeatModel& m, std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = 1; k <= coeffs.size(); ++k)
    acc += coeffs[k - 1] * std::sin(static_cast<double>(k) * std::numbers::pi * x / m.length);
  return acc;
}

double l2_norm(const HeatModel& m, std::span<const double> coeffs) {
  return std::sqrt(0.5 * m.length * dot(coeffs, coeffs));
}

namespace {

// Composite Simpson weights for an odd sample count, trapezoid otherwise.
double quadrature_weight(std::size_t j, std::size_t count, double dt) {
  const bool end = j == 0 || j + 1 == count;
  if (count % 2 == 0 || count < 3) return end ? 0.5 * dt : dt;
  if (end) return dt / 3.0;
  return (j % 2 == 1 ? 4.0 : 2.0) * dt / 3.0;
}

}  // namespace

HeatSystem::HeatSystem(HeatModel m, std::size_t time_samples)
    : model_(m), samples_(time_samples) {
  model_.validate();
  require(time_samples >= 2, "heat system needs at least 2 time samples");
  const HeatOperators ops = assemble(model_);
  const double dt = model_.horizon / static_cast<double>(samples_ - 1);
  response_ = Matrix(model_.modes, samples_);
  for (std::size_t j = 0; j < samples_; ++j) {
    const double t = static_cast<double>(j) * dt;
    const double w = quadrature_weight(j, samples_, dt);
    const double sw = std::sqrt(w);
    for (std::size_t k = 0; k < model_.modes; ++k)
      response_(k, j) = ops.output_row[k] * std::exp(-ops.decay_rates[k] * t) * sw;
  }
}

Vector HeatSystem::outputs(std::span<const double> u0) const {
  require(u0.size() == model_.modes, "heat: state dimension mismatch");
  Vector y(samples_, 0.0);
  for (std::size_t k = 0; k < model_.modes; ++k) {
    const double c = u0[k];
    if (c == 0.0) continue;
    for (std::size_t j = 0; j < samples_; ++j) y[j] += c * response_(k, j);
  }
  return y;
}

double HeatSystem::state_inner(std::span<const double> u, std::span<const double> v) const {
  return dot(u, v);
}

Problem make_problem(const HeatModel& m, std::size_t basis_size, std::size_t time_samples) {
  require(basis_size >= 1 && basis_size <= m.modes, "heat: basis size must be in [1, modes]");
  auto system = std::make_shared<HeatSystem>(m, time_samples);
  std::vector<Vector> vectors;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis_size; ++i) {
    Vector e(m.modes, 0.0);
    e[i] = 1.0;
    vectors.push_back(std::move(e));
    labels.push_back("mode" + std::to_string(i + 1));
  }
  Vector nominal(m.modes);
  for (std::size_t k = 0; k < m.modes; ++k) nominal[k] = 1.0 / static_cast<double>(k + 1);
  EstimationBasis basis = make_basis(*system, std::move(vectors), std::move(labels));
  return {std::move(system), std::move(basis), std::move(nominal)};
}

}  // namespace obsidx::heat
