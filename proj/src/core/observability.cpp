#include "obsidx/observability.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "obsidx/nelder_mead.hpp"
#include "obsidx/parallel.hpp"

namespace obsidx {

namespace {

constexpr double kNegativeClamp = 1e-10;
constexpr double kUnobservableRatio = 1e-14;

Vector combine(std::span<const double> base, const EstimationBasis& basis,
               std::span<const double> coeffs, double scale) {
  Vector u(base.begin(), base.end());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double c = scale * coeffs[i];
    const Vector& e = basis.vectors[i];
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += c * e[k];
  }
  return u;
}

SymMatrix gram_of(const std::vector<Vector>& responses) {
  const std::size_t s = responses.size();
  Matrix g(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      g(i, j) = dot(responses[i], responses[j]);
      g(j, i) = g(i, j);
    }
  return SymMatrix(g);
}

// Orthonormal basis of the complement of unit vector c in R^s.
Matrix tangent_frame(const Vector& c) {
  const std::size_t s = c.size();
  std::vector<Vector> frame;
  std::vector<Vector> all{c};
  for (std::size_t k = 0; k < s && frame.size() + 1 < s; ++k) {
    Vector w(s, 0.0);
    w[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : all) {
        const double p = dot(w, q);
        for (std::size_t i = 0; i < s; ++i) w[i] -= p * q[i];
      }
    const double nw = norm2(w);
    if (nw < 1e-6) continue;
    for (double& x : w) x /= nw;
    all.push_back(w);
    frame.push_back(w);
  }
  return Matrix::from_columns(frame);
}

Vector unit(Vector v) {
  const double n = norm2(v);
  for (double& x : v) x /= n;
  return v;
}

}  // namespace

const char* to_string(IndexMethod m) noexcept {
  switch (m) {
    case IndexMethod::Gramian: return "gramian";
    case IndexMethod::Empirical: return "empirical";
    case IndexMethod::DirectSearch: return "direct-search";
  }
  return "unknown";
}

EstimationBasis make_basis(const ObservedSystem& system, std::vector<Vector> vectors,
                           std::vector<std::string> labels, Matrix coeff_map) {
  require(!vectors.empty(), "estimation basis must not be empty");
  const std::size_t s = vectors.size();
  for (const Vector& e : vectors)
    require(e.size() == system.state_dim(), "basis vector dimension differs from state dimension");
  Matrix gram(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      gram(i, j) = system.state_inner(vectors[i], vectors[j]);
      gram(j, i) = gram(i, j);
    }
  if (labels.empty())
    for (std::size_t i = 0; i < s; ++i) labels.push_back("e" + std::to_string(i + 1));
  require(labels.size() == s, "basis label count differs from basis size");
  return {std::move(vectors), SymMatrix(gram), std::move(coeff_map), std::move(labels)};
}

GramianPair linear_gramian(const ObservedSystem& system, const EstimationBasis& basis, double rho,
                           unsigned threads) {
  require(system.is_linear(), "linear_gramian requires a linear homogeneous model");
  std::vector<Vector> responses(basis.size());
  parallel_for(basis.size(), threads,
               [&](std::size_t i) { responses[i] = system.outputs(basis.vectors[i]); });
  return {gram_of(responses), basis.s_matrix, rho, basis.labels};
}

GramianPair empirical_gramian(const ObservedSystem& system, std::span<const double> nominal,
                              const EstimationBasis& basis, double rho, unsigned threads) {
  require(rho > 0.0 && std::isfinite(rho), "empirical gramian needs rho > 0");
  require(nominal.size() == system.state_dim(), "nominal state dimension mismatch");

  std::vector<Vector> diffs(basis.size());
  parallel_for(basis.size(), threads, [&](std::size_t i) {
    const Vector& e = basis.vectors[i];
    Vector up(nominal.begin(), nominal.end()), down(nominal.begin(), nominal.end());
    for (std::size_t k = 0; k < e.size(); ++k) {
      up[k] += rho * e[k];
      down[k] -= rho * e[k];
    }
    try {
      const Vector plus = system.outputs(up);
      const Vector minus = system.outputs(down);
      Vector d(plus.size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = (plus[k] - minus[k]) / (2.0 * rho);
      diffs[i] = std::move(d);
    } catch (const Error& err) {
      throw Error(err.code(), "basis direction " + std::to_string(i) + ": " + err.what(), i,
                  err.time());
    }
  });
  return {gram_of(diffs), basis.s_matrix, rho, basis.labels};
}

IndexResult unobservability_index(const GramianPair& pair, const EstimationBasis* basis,
                                  IndexMethod method) {
  const EigResult eig = gen_sym_eig(pair.g, pair.s);
  IndexResult r;
  r.method = method;
  const double sigma_max = eig.values.back();
  double sigma = eig.values.front();

  if (sigma < 0.0) {
    if (sigma >= -kNegativeClamp * std::max(sigma_max, 0.0)) {
      r.warnings.push_back("clamped slightly negative sigma_min " + std::to_string(sigma) + " to 0");
      sigma = 0.0;
    } else {
      throw Error(ErrorCode::AssemblyError,
                  "gramian is not positive semidefinite: sigma_min = " + std::to_string(sigma));
    }
  }

  r.worst_coefficients = eig.vectors.column(0);
  if (basis != nullptr) {
    require(basis->size() == pair.g.dim(), "basis size differs from gramian dimension");
    r.worst_direction = combine(Vector(basis->vectors.front().size(), 0.0), *basis,
                                r.worst_coefficients, 1.0);
  }

  r.sigma_min = sigma;
  if (sigma_max <= 0.0 || sigma <= kUnobservableRatio * sigma_max) {
    r.unobservable = true;
    r.epsilon = 0.0;
    r.index = std::numeric_limits<double>::infinity();
    r.warnings.push_back("sigma_min is negligible relative to sigma_max: the estimation subspace "
                         "contains a practically unobservable direction");
    return r;
  }
  r.epsilon = std::sqrt(sigma) * pair.rho;
  r.index = 1.0 / std::sqrt(sigma);
  return r;
}

double output_discrepancy(const ObservedSystem& system, std::span<const double> reference_outputs,
                          std::span<const double> u) {
  const Vector y = system.outputs(u);
  require(y.size() == reference_outputs.size(), "output series length mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double d = y[k] - reference_outputs[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

IndexResult direct_index_search(const ObservedSystem& system, std::span<const double> nominal,
                                const EstimationBasis& basis, double rho,
                                const DirectSearchOptions& options) {
  require(rho > 0.0 && std::isfinite(rho), "direct search needs rho > 0");
  require(nominal.size() == system.state_dim(), "nominal state dimension mismatch");
  const std::size_t s = basis.size();
  require(s >= 1 && s <= 10, "direct search supports 1 <= s <= 10");
  require(options.restarts >= 1, "direct search needs at least one restart");

  // a = L^-T z keeps a' S a = z' z, so the unit z-sphere is the S-sphere.
  const Matrix whiten = lower_triangular_inverse(cholesky(basis.s_matrix)).transpose();
  const Vector reference = system.outputs(nominal);

  auto evaluate = [&](const Vector& z) {
    const Vector a = whiten * unit(z);
    return output_discrepancy(system, reference, combine(nominal, basis, a, rho));
  };

  std::vector<Vector> centers;
  for (std::size_t k = 0; k < s && centers.size() < options.restarts; ++k) {
    for (double sign : {1.0, -1.0}) {
      if (centers.size() >= options.restarts) break;
      Vector c(s, 0.0);
      c[k] = sign;
      centers.push_back(c);
    }
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  while (centers.size() < options.restarts) {
    Vector c(s);
    for (double& x : c) x = normal(rng);
    if (norm2(c) > 0.0) centers.push_back(unit(c));
  }

  struct Outcome {
    Vector z;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
  };
  std::vector<Outcome> outcomes(centers.size());

  parallel_for(centers.size(), options.threads, [&](std::size_t r) {
    const Vector& c = centers[r];
    if (s == 1) {
      outcomes[r] = {c, evaluate(c), true};
      return;
    }
    const Matrix frame = tangent_frame(c);
    auto chart = [&](std::span<const double> w) {
      Vector z = c;
      const Vector t = frame * w;
      for (std::size_t i = 0; i < s; ++i) z[i] += t[i];
      return z;
    };
    SimplexOptions nm;
    nm.initial_step = options.initial_step;
    nm.max_iterations = options.max_iterations;
    nm.tolerance = options.tolerance;
    const SimplexResult res =
        nelder_mead([&](std::span<const double> w) { return evaluate(chart(w)); }, Vector(s - 1, 0.0), nm);
    outcomes[r] = {unit(chart(res.x)), res.value, res.converged};
  });

  std::size_t best = 0;
  bool any_converged = false;
  std::size_t best_overall = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].value < outcomes[best_overall].value) best_overall = r;
    if (!outcomes[r].converged) continue;
    if (!any_converged || outcomes[r].value < outcomes[best].value) best = r;
    any_converged = true;
  }

  auto to_result = [&](const Outcome& o) {
    IndexResult res;
    res.method = IndexMethod::DirectSearch;
    res.epsilon = o.value;
    res.sigma_min = (o.value / rho) * (o.value / rho);
    res.worst_coefficients = whiten * o.z;
    res.worst_direction = combine(Vector(nominal.size(), 0.0), basis, res.worst_coefficients, 1.0);
    if (o.value > 0.0) {
      res.index = rho / o.value;
    } else {
      res.index = std::numeric_limits<double>::infinity();
      res.unobservable = true;
    }
    return res;
  };

  if (!any_converged) {
    throw SearchFailure("direct search: no restart converged within " +
                            std::to_string(options.max_iterations) + " iterations",
                        to_result(outcomes[best_overall]));
  }
  return to_result(outcomes[best]);
}

}  // namespace obsidx
