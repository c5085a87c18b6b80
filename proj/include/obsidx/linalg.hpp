#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace obsidx {

using Vector = std::vector<double>;

/// Dense row-major matrix. Small sizes only (s <= 10, N <= 200).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_columns(std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Matrix transpose() const;
  double frobenius_norm() const;

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Symmetric matrix. Construction averages the input with its transpose, so
/// entries are exactly symmetric afterwards.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m);
  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Eigenpairs sorted by ascending eigenvalue; column k of `vectors` belongs
/// to `values[k]`.
struct EigResult {
  Vector values;
  Matrix vectors;
};

EigResult sym_eig(const SymMatrix& m);

/// Pencil G xi = sigma S xi. Eigenvectors are S-normalized (xi' S xi = 1).
EigResult gen_sym_eig(const SymMatrix& g, const SymMatrix& s);

/// Lower-triangular L with L L' = s. Throws DegenerateMetric naming the pivot.
Matrix cholesky(const SymMatrix& s);

/// Inverse of a nonsingular lower-triangular matrix.
Matrix lower_triangular_inverse(const Matrix& l);

using InnerProduct = std::function<double(std::span<const double>, std::span<const double>)>;

/// Modified Gram-Schmidt with one re-orthogonalization pass, in input order.
/// Throws LinearDependence with the offending index.
std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const InnerProduct& inner);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double max_abs(std::span<const double> a);

/// Composite trapezoid rule on uniform samples.
double trapezoid_quadrature(std::span<const double> samples, double dt);

/// Flip sign so the first entry of largest magnitude is positive.
void canonicalize_sign(std::span<double> v);

}  // namespace obsidx
