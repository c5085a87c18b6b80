#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "obsidx/error.hpp"
#include "obsidx/linalg.hpp"

namespace obsidx {

/// A semi-discrete model seen through its sensors: initial state in, output
/// series out. Output vectors are pre-weighted so that their Euclidean dot
/// product is the output inner product <.,.>_Y.
class ObservedSystem {
 public:
  virtual ~ObservedSystem() = default;

  virtual std::size_t state_dim() const = 0;
  virtual bool is_linear() const = 0;
  virtual Vector outputs(std::span<const double> u0) const = 0;
  /// State inner product <.,.>_N.
  virtual double state_inner(std::span<const double> u, std::span<const double> v) const = 0;
};

/// Basis e_1..e_s of the estimation subspace W^N together with its Gram
/// matrix S under <.,.>_N.
struct EstimationBasis {
  std::vector<Vector> vectors;
  SymMatrix s_matrix;
  Matrix coeff_map;  // column i: e_i in model-specific coefficient coordinates (may be empty)
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return vectors.size(); }
};

EstimationBasis make_basis(const ObservedSystem& system, std::vector<Vector> vectors,
                           std::vector<std::string> labels = {}, Matrix coeff_map = {});

/// Everything a sweep needs at one resolution.
struct Problem {
  std::shared_ptr<const ObservedSystem> system;
  EstimationBasis basis;
  Vector nominal;
};

struct GramianPair {
  SymMatrix g;
  SymMatrix s;
  double rho = 1.0;
  std::vector<std::string> labels;
};

enum class IndexMethod { Gramian, Empirical, DirectSearch };
const char* to_string(IndexMethod m) noexcept;

struct IndexResult {
  double sigma_min = 0.0;
  double epsilon = 0.0;
  double index = 0.0;  // rho / epsilon; +inf when practically unobservable
  Vector worst_coefficients;  // S-normalized, basis coordinates
  Vector worst_direction;     // state space, unit N-norm
  IndexMethod method = IndexMethod::Gramian;
  bool unobservable = false;
  std::vector<std::string> warnings;
};

/// Thrown by direct_index_search when no restart converged.
class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, IndexResult best)
      : Error(ErrorCode::SearchFailure, what), best_(std::move(best)) {}
  const IndexResult& best_so_far() const noexcept { return best_; }

 private:
  IndexResult best_;
};

/// G_ij = <y(e_i), y(e_j)>_Y from homogeneous responses of a linear system.
GramianPair linear_gramian(const ObservedSystem& system, const EstimationBasis& basis,
                           double rho = 1.0, unsigned threads = 1);

/// Central-difference gramian from trajectories started at nominal +- rho e_i.
/// Integrator failures are rethrown carrying the offending basis index.
GramianPair empirical_gramian(const ObservedSystem& system, std::span<const double> nominal,
                              const EstimationBasis& basis, double rho, unsigned threads = 1);

/// sigma_min of G relative to S; epsilon = sqrt(sigma_min) rho, index = 1/sqrt(sigma_min).
/// Pass the basis to have worst_direction mapped into state space.
IndexResult unobservability_index(const GramianPair& pair, const EstimationBasis* basis = nullptr,
                                  IndexMethod method = IndexMethod::Gramian);

struct DirectSearchOptions {
  std::size_t restarts = 8;
  std::size_t max_iterations = 200;
  double tolerance = 1e-8;
  double initial_step = 0.25;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Minimizes the output discrepancy ||y(nominal + d) - y(nominal)||_Y over
/// d in W^N with ||d||_N = rho, by multi-start Nelder-Mead on gnomonic charts
/// of the S-metric sphere. The returned epsilon is an upper bound on the
/// infimum.
IndexResult direct_index_search(const ObservedSystem& system, std::span<const double> nominal,
                                const EstimationBasis& basis, double rho,
                                const DirectSearchOptions& options = {});

/// ||y(u) - y_ref||_Y.
double output_discrepancy(const ObservedSystem& system, std::span<const double> reference_outputs,
                          std::span<const double> u);

}  // namespace obsidx
