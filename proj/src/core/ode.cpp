#include "obsidx/ode.hpp"

#include <cmath>
#include <string>

#include "obsidx/error.hpp"

namespace obsidx {

namespace {

void check_ascending(std::span<const double> times) {
  for (std::size_t k = 1; k < times.size(); ++k)
    require(times[k] > times[k - 1], "sample times must be strictly ascending");
}

bool all_finite(std::span<const double> u) {
  for (double x : u)
    if (!std::isfinite(x)) return false;
  return true;
}

Vector to_modal(const Matrix& inverse_modes, std::span<const double> u) {
  if (inverse_modes.empty()) return Vector(u.begin(), u.end());
  return inverse_modes * u;
}

Vector from_modal(const Matrix& modes, std::span<const double> c) {
  if (modes.empty()) return Vector(c.begin(), c.end());
  return modes * c;
}

}  // namespace

TrajectorySamples rk4_integrate(const RightHandSide& rhs, std::span<const double> u0, double t0,
                                double t1, double dt, std::span<const double> sample_times) {
  require(dt > 0.0 && std::isfinite(dt), "rk4: dt must be positive");
  require(t1 >= t0, "rk4: t1 must not precede t0");
  check_ascending(sample_times);
  for (double t : sample_times) require(t >= t0 && t <= t1, "rk4: sample time outside [t0, t1]");

  const std::size_t n = u0.size();
  Vector u(u0.begin(), u0.end());
  Vector k1(n), k2(n), k3(n), k4(n), tmp(n);

  TrajectorySamples out;
  out.times.assign(sample_times.begin(), sample_times.end());
  out.states.reserve(sample_times.size());

  double t = t0;
  for (double target : sample_times) {
    const double span_len = target - t;
    if (span_len > 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(span_len / dt - 1e-9));
      const double h = span_len / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) {
        const double ts = t + static_cast<double>(s) * h;
        rhs(ts, u, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        rhs(ts + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        rhs(ts + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
        rhs(ts + h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
          u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!all_finite(u)) {
          const double when = ts + h;
          throw Error(ErrorCode::BlowUp,
                      "integration blew up at t = " + std::to_string(when), std::nullopt, when);
        }
      }
      t = target;
    }
    out.states.push_back(u);
  }
  return out;
}

TrajectorySamples modal_solve(const ModalSystem& sys, std::span<const double> u0,
                              std::span<const double> sample_times) {
  const std::size_t n = sys.rates.size();
  require(u0.size() == n, "modal_solve: initial state dimension mismatch");
  require(sys.modes.empty() || (sys.modes.rows() == n && sys.modes.cols() == n),
          "modal_solve: mode matrix dimension mismatch");
  require(sys.inverse_modes.empty() ||
              (sys.inverse_modes.rows() == n && sys.inverse_modes.cols() == n),
          "modal_solve: inverse mode matrix dimension mismatch");
  check_ascending(sample_times);

  const Vector c0 = to_modal(sys.inverse_modes, u0);
  TrajectorySamples out;
  out.times.assign(sample_times.begin(), sample_times.end());
  Vector c(n);
  for (double t : sample_times) {
    for (std::size_t k = 0; k < n; ++k) c[k] = c0[k] * std::exp(sys.rates[k] * t);
    out.states.push_back(from_modal(sys.modes, c));
  }
  return out;
}

OscillatorSamples oscillator_solve(std::span<const double> frequencies, const Matrix& modes,
                                   const Matrix& inverse_modes, std::span<const double> u0,
                                   std::span<const double> v0,
                                   std::span<const double> sample_times) {
  const std::size_t n = frequencies.size();
  require(u0.size() == n && v0.size() == n, "oscillator_solve: initial data dimension mismatch");
  check_ascending(sample_times);
  for (double w : frequencies) require(w > 0.0, "oscillator_solve: frequencies must be positive");

  const Vector p0 = to_modal(inverse_modes, u0);
  const Vector q0 = to_modal(inverse_modes, v0);
  OscillatorSamples out;
  out.times.assign(sample_times.begin(), sample_times.end());
  Vector p(n), q(n);
  for (double t : sample_times) {
    for (std::size_t k = 0; k < n; ++k) {
      const double w = frequencies[k];
      const double cw = std::cos(w * t), sw = std::sin(w * t);
      p[k] = p0[k] * cw + q0[k] * sw / w;
      q[k] = -p0[k] * w * sw + q0[k] * cw;
    }
    out.positions.push_back(from_modal(modes, p));
    out.velocities.push_back(from_modal(modes, q));
  }
  return out;
}

}  // namespace obsidx
