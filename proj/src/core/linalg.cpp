#include "obsidx/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "obsidx/error.hpp"

namespace obsidx {

namespace {

constexpr double kJacobiTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPivotTolerance = 1e-14;
constexpr double kDependenceTolerance = 1e-10;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

Matrix lower_triangular_inverse(const Matrix& l) {
  require(l.rows() == l.cols(), "lower_triangular_inverse: matrix must be square");
  const std::size_t n = l.rows();
  Matrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = col; i < n; ++i) {
      double acc = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = col; k < i; ++k) acc -= l(i, k) * inv(k, col);
      inv(i, col) = acc / l(i, i);
    }
  }
  return inv;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) return {};
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require(columns[j].size() == m.rows(), "from_columns: ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matrix product: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), "matrix-vector product: dimension mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference: dimension mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m.rows(), m.cols()) {
  require(m.rows() >= 1, "symmetric matrix must have dimension >= 1");
  require(m.rows() == m.cols(), "symmetric matrix must be square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m_(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
  }
}

EigResult sym_eig(const SymMatrix& m) {
  const std::size_t n = m.dim();
  Matrix a = m.matrix();
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius_norm();

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiTolerance * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigResult out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    Vector col = v.column(order[k]);
    canonicalize_sign(col);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = col[i];
  }
  return out;
}

Matrix cholesky(const SymMatrix& s) {
  const std::size_t n = s.dim();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, s(i, i));

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > kPivotTolerance * max_diag) || max_diag <= 0.0) {
      throw Error(ErrorCode::DegenerateMetric,
                  "metric is not positive definite: pivot " + std::to_string(j) + " = " +
                      std::to_string(d),
                  j);
    }
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = s(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / l(j, j);
    }
  }
  return l;
}

EigResult gen_sym_eig(const SymMatrix& g, const SymMatrix& s) {
  require(g.dim() == s.dim(), "gen_sym_eig: G and S dimensions differ");
  const Matrix l_inv = lower_triangular_inverse(cholesky(s));
  const Matrix l_inv_t = l_inv.transpose();
  EigResult whitened = sym_eig(SymMatrix(l_inv * g.matrix() * l_inv_t));

  Matrix xi = l_inv_t * whitened.vectors;
  for (std::size_t k = 0; k < xi.cols(); ++k) {
    Vector col = xi.column(k);
    canonicalize_sign(col);
    for (std::size_t i = 0; i < xi.rows(); ++i) xi(i, k) = col[i];
  }
  return {std::move(whitened.values), std::move(xi)};
}

std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const InnerProduct& inner) {
  std::vector<Vector> basis;
  basis.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Vector w = vectors[i];
    const double original = std::sqrt(std::max(0.0, inner(w, w)));
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) {
        const double c = inner(w, q);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * q[k];
      }
    }
    const double remaining = std::sqrt(std::max(0.0, inner(w, w)));
    if (original == 0.0 || remaining < kDependenceTolerance * original) {
      throw Error(ErrorCode::LinearDependence,
                  "vector " + std::to_string(i) + " is linearly dependent on its predecessors", i);
    }
    for (double& x : w) x /= remaining;
    canonicalize_sign(w);
    basis.push_back(std::move(w));
  }
  return basis;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double trapezoid_quadrature(std::span<const double> samples, double dt) {
  require(samples.size() >= 2, "trapezoid quadrature needs at least 2 samples");
  require(dt > 0.0, "trapezoid quadrature needs dt > 0");
  double acc = 0.5 * (samples.front() + samples.back());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += samples[i];
  return acc * dt;
}

void canonicalize_sign(std::span<double> v) {
  if (v.empty()) return;
  const double largest = max_abs(v);
  // entries equal to the maximum up to roundoff count as ties; take the first
  std::size_t best = 0;
  while (std::abs(v[best]) < largest * (1.0 - 1e-9)) ++best;
  if (v[best] < 0.0)
    for (double& x : v) x = -x;
}

}  // namespace obsidx
