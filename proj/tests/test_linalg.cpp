#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "obsidx/error.hpp"
#include "obsidx/linalg.hpp"

using namespace obsidx;

namespace {

Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

double reconstruction_error(const Matrix& m, const EigResult& r) {
  const std::size_t n = m.rows();
  Matrix rec(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += r.vectors(i, k) * r.values[k] * r.vectors(j, k);
      rec(i, j) = s;
    }
  return (m - rec).frobenius_norm() / m.frobenius_norm();
}

// Roots of the characteristic polynomial of a symmetric 3x3 matrix via the
// trigonometric formula for three real roots.
std::vector<double> char_poly_roots3(const Matrix& a) {
  const double c2 = -(a(0, 0) + a(1, 1) + a(2, 2));
  const double c1 = a(0, 0) * a(1, 1) + a(0, 0) * a(2, 2) + a(1, 1) * a(2, 2) - a(0, 1) * a(0, 1) -
                    a(0, 2) * a(0, 2) - a(1, 2) * a(1, 2);
  const double c0 = -(a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(1, 2)) -
                      a(0, 1) * (a(0, 1) * a(2, 2) - a(1, 2) * a(0, 2)) +
                      a(0, 2) * (a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2)));
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  std::vector<double> roots;
  if (std::abs(p) < 1e-300) {
    roots.assign(3, std::cbrt(-q) - c2 / 3.0);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * M_PI * k / 3.0) - c2 / 3.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TEST_CASE("sym_eig examples") {
  const EigResult id = sym_eig(SymMatrix::identity(3));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const double d[] = {4.0, 1.0, 9.0};
  const EigResult diag = sym_eig(SymMatrix(Matrix::diagonal(d)));
  CHECK(diag.values[0] == doctest::Approx(1.0));
  CHECK(diag.values[1] == doctest::Approx(4.0));
  CHECK(diag.values[2] == doctest::Approx(9.0));

  Matrix m(2, 2);
  m(0, 0) = 2; m(0, 1) = 1; m(1, 0) = 1; m(1, 1) = 2;
  const EigResult r = sym_eig(SymMatrix(m));
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  const double s = 1.0 / std::sqrt(2.0);
  // first component of largest magnitude is positive: (1,-1)/sqrt2 and (1,1)/sqrt2
  CHECK(std::abs(r.vectors(0, 0) - s) < 1e-12);
  CHECK(std::abs(r.vectors(1, 0) + s) < 1e-12);
  CHECK(std::abs(r.vectors(0, 1) - s) < 1e-12);
  CHECK(std::abs(r.vectors(1, 1) - s) < 1e-12);
}

TEST_CASE("SymMatrix construction enforces symmetry and dimension") {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 0.3;
  const SymMatrix s(m);
  CHECK(s(0, 1) == s(1, 0));
  CHECK(s(0, 1) == doctest::Approx(0.65));
  CHECK_THROWS_AS(SymMatrix{Matrix()}, Error);
  CHECK_THROWS_AS(SymMatrix{Matrix(2, 3)}, Error);
  CHECK_THROWS_AS(sym_eig(SymMatrix{Matrix()}), Error);
}

TEST_CASE("sym_eig random reconstruction and characteristic-polynomial oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const Matrix m = random_symmetric(rng, n);
    const EigResult r = sym_eig(SymMatrix(m));
    CHECK(reconstruction_error(m, r) <= 1e-10);
    for (std::size_t k = 1; k < n; ++k) CHECK(r.values[k - 1] <= r.values[k]);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(norm2(r.vectors.column(k)) - 1.0) < 1e-12);
    if (n == 1) CHECK(r.values[0] == doctest::Approx(m(0, 0)));
    if (n == 2) {
      const double tr = m(0, 0) + m(1, 1);
      const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
      const double disc = std::sqrt(tr * tr / 4.0 - det);
      CHECK(std::abs(r.values[0] - (tr / 2.0 - disc)) < 1e-9);
      CHECK(std::abs(r.values[1] - (tr / 2.0 + disc)) < 1e-9);
    }
    if (n == 3) {
      const auto roots = char_poly_roots3(m);
      for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r.values[k] - roots[k]) < 1e-9);
    }
  }
}

TEST_CASE("gen_sym_eig examples") {
  std::mt19937_64 rng(3);
  const Matrix g = random_symmetric(rng, 4);
  const EigResult a = gen_sym_eig(SymMatrix(g), SymMatrix::identity(4));
  const EigResult b = sym_eig(SymMatrix(g));
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(a.values[k] - b.values[k]) < 1e-12);

  Matrix g2(2, 2), s2(2, 2);
  g2(0, 0) = 2; g2(1, 1) = 8;
  s2(0, 0) = 1; s2(1, 1) = 4;
  const EigResult p = gen_sym_eig(SymMatrix(g2), SymMatrix(s2));
  CHECK(p.values[0] == doctest::Approx(2.0));
  CHECK(p.values[1] == doctest::Approx(2.0));
  for (std::size_t k = 0; k < 2; ++k) {
    const Vector xi = p.vectors.column(k);
    CHECK(std::abs(dot(xi, SymMatrix(s2).matrix() * std::span<const double>(xi)) - 1.0) < 1e-12);
  }

  Matrix g3(2, 2);
  g3(1, 1) = 1.0;
  CHECK(std::abs(gen_sym_eig(SymMatrix(g3), SymMatrix::identity(2)).values[0]) < 1e-15);
}

TEST_CASE("gen_sym_eig congruence invariance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 6;
    Matrix a(n, n), b(n, n), m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = u(rng);
        b(i, j) = u(rng);
        m(i, j) = u(rng) + (i == j ? 2.0 : 0.0);  // diagonally dominant -> invertible
      }
    const Matrix g = a.transpose() * a;
    Matrix s = b.transpose() * b;
    for (std::size_t i = 0; i < n; ++i) s(i, i) += 0.5;
    const EigResult r1 = gen_sym_eig(SymMatrix(g), SymMatrix(s));
    const EigResult r2 =
        gen_sym_eig(SymMatrix(m.transpose() * g * m), SymMatrix(m.transpose() * s * m));
    const double scale = std::max(std::abs(r1.values.back()), 1e-300);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(r1.values[k] - r2.values[k]) <= 1e-10 * scale);
  }
}

TEST_CASE("cholesky examples and errors") {
  const Matrix l = cholesky(SymMatrix::identity(3));
  CHECK((l - Matrix::identity(3)).frobenius_norm() == 0.0);

  Matrix s(2, 2);
  s(0, 0) = 4; s(0, 1) = 2; s(1, 0) = 2; s(1, 1) = 5;
  const Matrix l2 = cholesky(SymMatrix(s));
  CHECK(l2(0, 0) == doctest::Approx(2.0));
  CHECK(l2(0, 1) == 0.0);
  CHECK(l2(1, 0) == doctest::Approx(1.0));
  CHECK(l2(1, 1) == doctest::Approx(2.0));
  CHECK((l2 * l2.transpose() - s).frobenius_norm() <= 1e-12 * s.frobenius_norm());

  Matrix bad(2, 2);
  bad(0, 0) = 1; bad(0, 1) = 2; bad(1, 0) = 2; bad(1, 1) = 1;
  try {
    cholesky(SymMatrix(bad));
    FAIL("expected degenerate-metric error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMetric);
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
  }
  CHECK_THROWS_AS(gen_sym_eig(SymMatrix::identity(2), SymMatrix(bad)), Error);
}

TEST_CASE("gram_schmidt examples") {
  const InnerProduct euclid = [](std::span<const double> a, std::span<const double> b) { return dot(a, b); };
  const std::vector<Vector> ortho = {{1, 0, 0}, {0, 1, 0}};
  const auto same = gram_schmidt(ortho, euclid);
  CHECK(same[0] == Vector{1, 0, 0});
  CHECK(same[1] == Vector{0, 1, 0});

  const std::vector<Vector> textbook = {{1, 0}, {1, 1}};
  const auto out = gram_schmidt(textbook, euclid);
  CHECK(std::abs(out[0][0] - 1.0) < 1e-15);
  CHECK(std::abs(out[0][1]) < 1e-15);
  CHECK(std::abs(out[1][0]) < 1e-15);
  CHECK(std::abs(out[1][1] - 1.0) < 1e-15);

  const std::vector<Vector> dependent = {{1, 2}, {2, 4}};
  try {
    gram_schmidt(dependent, euclid);
    FAIL("expected linear-dependence error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LinearDependence);
    CHECK(e.index() == std::optional<std::size_t>(1));
  }
}

TEST_CASE("gram_schmidt preserves span under a weighted inner product") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t dim = 7;
  Vector w(dim);
  for (double& x : w) x = 0.5 + std::abs(u(rng));
  const InnerProduct weighted = [&](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
  };
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> in(1 + trial % 5, Vector(dim));
    for (auto& v : in)
      for (double& x : v) x = u(rng);
    const auto out = gram_schmidt(in, weighted);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j)
        CHECK(std::abs(weighted(out[i], out[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
    for (const Vector& v : in) {
      Vector rec(dim, 0.0);
      for (const Vector& q : out) {
        const double c = weighted(v, q);
        for (std::size_t k = 0; k < dim; ++k) rec[k] += c * q[k];
      }
      double err = 0.0;
      for (std::size_t k = 0; k < dim; ++k) err = std::max(err, std::abs(rec[k] - v[k]));
      CHECK(err <= 1e-9 * max_abs(v));
    }
  }
}

TEST_CASE("trapezoid_quadrature examples") {
  const Vector ones(17, 1.0);
  CHECK(trapezoid_quadrature(ones, 1.0 / 16.0) == doctest::Approx(1.0).epsilon(1e-15));
  Vector lin(11);
  for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = i / 10.0;
  CHECK(trapezoid_quadrature(lin, 0.1) == doctest::Approx(0.5).epsilon(1e-15));

  Vector e(2001);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(-0.5 * (i * 10.0 / 2000.0));
  // relative: the absolute trapezoid error here is h^2/12 |f'(10) - f'(0)| = 1.03e-6
  const double exact = 2.0 * (1.0 - std::exp(-5.0));
  CHECK(std::abs(trapezoid_quadrature(e, 10.0 / 2000.0) - exact) < 1e-6 * exact);

  CHECK_THROWS_AS(trapezoid_quadrature(Vector{1.0}, 0.1), Error);
  CHECK_THROWS_AS(trapezoid_quadrature(Vector{1.0, 2.0}, 0.0), Error);
}
