#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace bds::optimize {

struct NelderMeadOptions {
  double tolerance = 1e-8;  // stop when the simplex value spread drops below this
  int max_iterations = 2000;
};

template <std::size_t N>
struct Minimum {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Downhill simplex with the standard coefficients (reflection 1, expansion
/// 2, contraction 1/2, shrink 1/2). The initial simplex is `start` plus one
/// vertex per axis offset by `step[i]`.
template <std::size_t N, typename F>
Minimum<N> nelder_mead(F&& f, const std::array<double, N>& start,
                       const std::array<double, N>& step, const NelderMeadOptions& opts = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> simplex;
  std::array<double, N + 1> values;
  simplex[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= N; ++i) values[i] = f(simplex[i]);

  std::array<std::size_t, N + 1> order;
  Minimum<N> result;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[N - 1];
    if (std::abs(values[worst] - values[best]) <= opts.tolerance) {
      result.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t v = 0; v <= N; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < N; ++i) centroid[i] += simplex[v][i] / static_cast<double>(N);
    }
    auto along = [&](double t) {
      Point p;
      for (std::size_t i = 0; i < N; ++i) p[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return p;
    };

    const Point reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      const Point expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Point contracted = along(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t v = 0; v <= N; ++v) {
      if (v == best) continue;
      for (std::size_t i = 0; i < N; ++i) {
        simplex[v][i] = simplex[best][i] + 0.5 * (simplex[v][i] - simplex[best][i]);
      }
      values[v] = f(simplex[v]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best_index = static_cast<std::size_t>(best_it - values.begin());
  result.x = simplex[best_index];
  result.value = *best_it;
  result.iterations = iter;
  return result;
}

}  // namespace bds::optimize
