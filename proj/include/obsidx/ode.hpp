#pragma once

#include <functional>
#include <span>
#include <vector>

#include "obsidx/linalg.hpp"

namespace obsidx {

/// States of a trajectory at strictly ascending sample times.
struct TrajectorySamples {
  Vector times;
  std::vector<Vector> states;
};

/// du/dt = rhs(t, u). Must be re-entrant: integrations may run concurrently.
using RightHandSide = std::function<void(double t, std::span<const double> u, std::span<double> dudt)>;

/// Classical fixed-step RK4. Every sample interval is split into equal
/// sub-steps no longer than `dt`, so states land exactly on `sample_times`.
/// Throws BlowUp (with the time) on the first non-finite state.
TrajectorySamples rk4_integrate(const RightHandSide& rhs, std::span<const double> u0, double t0,
                                double t1, double dt, std::span<const double> sample_times);

/// Linear homogeneous system du/dt = V diag(rates) V^-1 u in pre-diagonalized
/// form. Empty transforms mean V = I.
struct ModalSystem {
  Vector rates;
  Matrix modes;          // V
  Matrix inverse_modes;  // V^-1
};

TrajectorySamples modal_solve(const ModalSystem& sys, std::span<const double> u0,
                              std::span<const double> sample_times);

/// Second-order system u'' = -V diag(omega^2) V^-1 u, solved per mode with
/// cos(omega t) and sin(omega t)/omega. Returns positions and velocities.
struct OscillatorSamples {
  Vector times;
  std::vector<Vector> positions;
  std::vector<Vector> velocities;
};

OscillatorSamples oscillator_solve(std::span<const double> frequencies, const Matrix& modes,
                                   const Matrix& inverse_modes, std::span<const double> u0,
                                   std::span<const double> v0,
                                   std::span<const double> sample_times);

}  // namespace obsidx
