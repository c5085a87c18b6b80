#include "obsidx/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "obsidx/error.hpp"

namespace obsidx::burgers {

void BurgersModel::validate() const {
  require(length > 0.0, "burgers: length must be positive");
  require(horizon > 0.0, "burgers: horizon must be positive");
  require(kappa >= 0.0, "burgers: kappa must be non-negative");
  require(intervals >= 4 && intervals % 2 == 0, "burgers: N must be even and >= 4");
  require(sensor_steps >= 1, "burgers: need at least one sensor step");
  require(!sensor_x.empty(), "burgers: need at least one sensor");
  for (double x : sensor_x) require(x > 0.0 && x < length, "burgers: sensors must lie in (0, L)");
  require(kf >= 1, "burgers: kf must be >= 1");
  require(2 * kf + 1 <= intervals - 1, "burgers: 2 kf + 1 must not exceed N - 1");
}

void rhs(const BurgersModel& m, std::span<const double> u, std::span<double> dudt) {
  const std::size_t n = u.size();
  const double dx = m.spacing();
  const double adv = 1.0 / (2.0 * dx);
  const double diff = m.kappa / (dx * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? 0.0 : u[i - 1];
    const double right = i + 1 == n ? 0.0 : u[i + 1];
    dudt[i] = -u[i] * (right - left) * adv + diff * (right + left - 2.0 * u[i]);
  }
}

Vector rhs(const BurgersModel& m, std::span<const double> u) {
  require(u.size() == m.state_dim(), "burgers rhs: state dimension mismatch");
  Vector out(u.size());
  rhs(m, u, out);
  return out;
}

Vector project(const BurgersModel& m, const std::function<double(double)>& v) {
  Vector out(m.state_dim());
  for (std::size_t j = 1; j < m.intervals; ++j) out[j - 1] = v(m.grid_point(j));
  return out;
}

FourierCoefficients fourier_coeffs(const BurgersModel& m, std::span<const double> v) {
  const std::size_t n = m.intervals;
  require(v.size() == n - 1, "fourier_coeffs: state dimension mismatch");
  const std::size_t half = n / 2;
  FourierCoefficients c{Vector(half + 1, 0.0), Vector(half, 0.0)};
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= half; ++k) {
    double ak = 0.0, bk = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      // 2 pi k x_j / L with x_j = j L / N; reduce k j mod N for accuracy
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      ak += v[j - 1] * std::cos(angle);
      bk += v[j - 1] * std::sin(angle);
    }
    c.a[k] = scale * ak;
    if (k >= 1 && k < half) c.b[k] = scale * bk;
  }
  return c;
}

double TrigInterpolant::operator()(double x) const {
  const std::size_t half = coeffs_.a.size() - 1;
  const double base = 2.0 * std::numbers::pi * x / length_;
  double acc = 0.5 * coeffs_.a[0];
  for (std::size_t k = 1; k < half; ++k) {
    const double angle = base * static_cast<double>(k);
    acc += coeffs_.a[k] * std::cos(angle) + coeffs_.b[k] * std::sin(angle);
  }
  acc += 0.5 * coeffs_.a[half] * std::cos(base * static_cast<double>(half));
  return acc;
}

TrigInterpolant lift(const BurgersModel& m, std::span<const double> v) {
  return TrigInterpolant(m.length, fourier_coeffs(m, v));
}

double n_inner(const BurgersModel& m, std::span<const double> u, std::span<const double> v) {
  const FourierCoefficients cu = fourier_coeffs(m, u);
  const FourierCoefficients cv = fourier_coeffs(m, v);
  const std::size_t half = m.intervals / 2;
  double acc = 0.5 * cu.a[0] * cv.a[0];
  for (std::size_t k = 1; k < half; ++k) acc += cu.a[k] * cv.a[k] + cu.b[k] * cv.b[k];
  acc += 0.25 * cu.a[half] * cv.a[half];
  return 0.5 * m.length * acc;
}

double n_norm(const BurgersModel& m, std::span<const double> v) {
  return std::sqrt(std::max(0.0, n_inner(m, v, v)));
}

namespace {

// Raw constrained directions in (alpha_0, alpha_1, beta_1, ...) coordinates.
Matrix raw_coefficients(const BurgersModel& m) {
  const std::size_t dim = 2 * m.kf + 1;
  Matrix r(dim, 2 * m.kf);
  for (std::size_t k = 1; k <= m.kf; ++k) {
    const std::size_t alpha_col = 2 * (k - 1), beta_col = alpha_col + 1;
    r(0, alpha_col) = -2.0;
    r(2 * k - 1, alpha_col) = 1.0;
    r(2 * k, beta_col) = 1.0;
  }
  return r;
}

Vector synthesize(const BurgersModel& m, std::span<const double> coeffs) {
  return project(m, [&](double x) {
    double acc = 0.5 * coeffs[0];
    for (std::size_t k = 1; k <= m.kf; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * x / m.length;
      acc += coeffs[2 * k - 1] * std::cos(angle) + coeffs[2 * k] * std::sin(angle);
    }
    return acc;
  });
}

}  // namespace

std::vector<Vector> raw_basis_vectors(const BurgersModel& m) {
  m.validate();
  const Matrix raw = raw_coefficients(m);
  std::vector<Vector> out;
  for (std::size_t c = 0; c < raw.cols(); ++c) out.push_back(synthesize(m, raw.column(c)));
  return out;
}

EstimationBasis estimation_basis(const BurgersModel& m) {
  const std::vector<Vector> raw = raw_basis_vectors(m);
  const InnerProduct inner = [&](std::span<const double> u, std::span<const double> v) {
    return n_inner(m, u, v);
  };
  std::vector<Vector> ortho = gram_schmidt(raw, inner);

  // e_i = sum_m T(m, i) raw_m  =>  T = S_raw^-1 [<raw_m, e_i>]
  const std::size_t s = raw.size();
  Matrix s_raw(s, s), cross(s, s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      s_raw(a, b) = inner(raw[a], raw[b]);
      cross(a, b) = inner(raw[a], ortho[b]);
    }
  const Matrix l_inv = lower_triangular_inverse(cholesky(SymMatrix(s_raw)));
  const Matrix transform = l_inv.transpose() * (l_inv * cross);
  const Matrix coeff_map = raw_coefficients(m) * transform;

  Matrix gram(s, s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) gram(a, b) = inner(ortho[a], ortho[b]);

  std::vector<std::string> labels;
  for (std::size_t k = 1; k <= m.kf; ++k) {
    labels.push_back("cos" + std::to_string(k) + "-1");
    labels.push_back("sin" + std::to_string(k));
  }
  return {std::move(ortho), SymMatrix(gram), coeff_map, std::move(labels)};
}

double OutputSeries::norm() const {
  double acc = 0.0;
  for (const Vector& y : values) acc += dot(y, y);
  return std::sqrt(acc);
}

Vector sensor_times(const BurgersModel& m) {
  Vector t(m.sensor_steps + 1);
  for (std::size_t k = 0; k <= m.sensor_steps; ++k)
    t[k] = static_cast<double>(k) * m.horizon / static_cast<double>(m.sensor_steps);
  return t;
}

OutputSeries sample_outputs(const BurgersModel& m, const TrajectorySamples& trajectory) {
  const Vector expected = sensor_times(m);
  require(trajectory.times.size() == expected.size(),
          "sample_outputs: trajectory is not sampled at the sensor times");
  for (std::size_t k = 0; k < expected.size(); ++k)
    require(std::abs(trajectory.times[k] - expected[k]) <= 1e-12 * std::max(1.0, m.horizon),
            "sample_outputs: trajectory is not sampled at the sensor times");

  OutputSeries out{trajectory.times, {}};
  for (const Vector& u : trajectory.states) {
    const TrigInterpolant phi = lift(m, u);
    Vector y;
    for (double x : m.sensor_x) y.push_back(phi(x));
    out.values.push_back(std::move(y));
  }
  return out;
}

double nominal_initial(double x) {
  return -2.0 + std::cos(x) + std::sin(x) + std::cos(2.0 * x) + std::sin(2.0 * x);
}

double default_time_step(const BurgersModel& m, std::span<const double> u0) {
  const double dx = m.spacing();
  const double diffusion =
      m.kappa > 0.0 ? dx * dx / (2.0 * m.kappa) : std::numeric_limits<double>::infinity();
  const double advection = dx / std::max(1.0, max_abs(u0));
  return 0.25 * std::min(diffusion, advection);
}

BurgersSystem::BurgersSystem(BurgersModel m, double dt)
    : model_(std::move(m)), dt_(dt), times_(sensor_times(model_)) {
  model_.validate();
  require(dt_ > 0.0 && std::isfinite(dt_), "burgers: dt must be positive");
  const std::size_t dim = model_.state_dim();
  sensor_rows_ = Matrix(model_.sensor_x.size(), dim);
  Vector unit(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    unit[j] = 1.0;
    const TrigInterpolant phi = lift(model_, unit);
    for (std::size_t i = 0; i < model_.sensor_x.size(); ++i)
      sensor_rows_(i, j) = phi(model_.sensor_x[i]);
    unit[j] = 0.0;
  }
}

TrajectorySamples BurgersSystem::trajectory(std::span<const double> u0) const {
  require(u0.size() == model_.state_dim(), "burgers: state dimension mismatch");
  const BurgersModel& m = model_;
  return rk4_integrate(
      [&m](double, std::span<const double> u, std::span<double> du) { rhs(m, u, du); }, u0, 0.0,
      m.horizon, dt_, times_);
}

Vector BurgersSystem::outputs(std::span<const double> u0) const {
  const TrajectorySamples traj = trajectory(u0);
  Vector y;
  y.reserve(traj.states.size() * sensor_rows_.rows());
  for (const Vector& u : traj.states) {
    const Vector readings = sensor_rows_ * u;
    y.insert(y.end(), readings.begin(), readings.end());
  }
  return y;
}

double BurgersSystem::state_inner(std::span<const double> u, std::span<const double> v) const {
  return n_inner(model_, u, v);
}

Problem make_problem(const BurgersModel& m, const IntegratorOptions& options) {
  m.validate();
  require(options.dt >= 0.0, "burgers: dt must be >= 0 (0 = automatic)");
  require(options.dt_scale > 0.0, "burgers: dt_scale must be positive");
  Vector nominal = project(m, nominal_initial);
  const double base_dt = options.dt > 0.0 ? options.dt : default_time_step(m, nominal);
  auto system = std::make_shared<BurgersSystem>(m, base_dt * options.dt_scale);
  return {std::move(system), estimation_basis(m), std::move(nominal)};
}

}  // namespace obsidx::burgers
