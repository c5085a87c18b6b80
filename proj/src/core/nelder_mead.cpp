#include "obsidx/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "obsidx/error.hpp"

namespace obsidx {

namespace {

struct Vertex {
  Vector x;
  double f;
};

double diameter(const std::vector<Vertex>& simplex) {
  double d = 0.0;
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < simplex[0].x.size(); ++k) {
      const double diff = simplex[i].x[k] - simplex[0].x[k];
      acc += diff * diff;
    }
    d = std::max(d, std::sqrt(acc));
  }
  return d;
}

Vector affine(const Vector& base, const Vector& toward, double t) {
  Vector out(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) out[k] = base[k] + t * (toward[k] - base[k]);
  return out;
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, Vector x0, const SimplexOptions& options) {
  const std::size_t dim = x0.size();
  require(dim >= 1, "nelder_mead: dimension must be >= 1");
  require(options.initial_step > 0.0, "nelder_mead: initial step must be positive");

  SimplexResult result;
  auto eval = [&](const Vector& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({x0, eval(x0)});
  for (std::size_t k = 0; k < dim; ++k) {
    Vector x = x0;
    x[k] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  for (; result.iterations < options.max_iterations; ++result.iterations) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (diameter(simplex) < options.tolerance) {
      result.converged = true;
      break;
    }

    Vector centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(dim);

    Vertex& worst = simplex.back();
    const Vector reflected = affine(centroid, worst.x, -1.0);
    const double fr = eval(reflected);

    if (fr < simplex.front().f) {
      const Vector expanded = affine(centroid, worst.x, -2.0);
      const double fe = eval(expanded);
      worst = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
      continue;
    }
    if (fr < simplex[dim - 1].f) {
      worst = {reflected, fr};
      continue;
    }
    if (fr < worst.f) {
      const Vector outside = affine(centroid, worst.x, -0.5);
      const double fo = eval(outside);
      if (fo <= fr) {
        worst = {outside, fo};
        continue;
      }
    } else {
      const Vector inside = affine(centroid, worst.x, 0.5);
      const double fi = eval(inside);
      if (fi < worst.f) {
        worst = {inside, fi};
        continue;
      }
    }
    for (std::size_t i = 1; i <= dim; ++i) {
      simplex[i].x = affine(simplex[0].x, simplex[i].x, 0.5);
      simplex[i].f = eval(simplex[i].x);
    }
  }

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  if (!result.converged && diameter(simplex) < options.tolerance) result.converged = true;
  result.x = simplex.front().x;
  result.value = simplex.front().f;
  return result;
}

}  // namespace obsidx
