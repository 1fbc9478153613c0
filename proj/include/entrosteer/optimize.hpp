#pragma once

// Derivative-free local minimizers over R^n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace entrosteer {

using Objective = std::function<double(const std::vector<double>&)>;

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with the dimension-adaptive coefficients of Gao & Han.
/// Stops when the spread of simplex values drops below `ftol` (converged)
/// or after `max_iterations` iterations.
inline LocalResult nelder_mead(const Objective& f, std::vector<double> x0, double step, int max_iterations,
                               double ftol = 1e-12) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 1.0 / (2.0 * dn), delta = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(n + 1);
  long evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (values[worst] - values[best] < ftol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / dn;

    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return p;
    };

    const auto reflected = along(-alpha);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const auto expanded = along(-alpha * beta);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const auto contracted = along(outside ? -alpha * gamma : gamma);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      auto& p = simplex[order[k]];
      for (std::size_t i = 0; i < n; ++i) p[i] = simplex[best][i] + delta * (p[i] - simplex[best][i]);
      values[order[k]] = eval(p);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], evals, converged};
}

/// Repeated Nelder-Mead from the running best point with a shrinking
/// initial simplex; rebuilding the simplex recovers from premature
/// collapse near non-smooth minima.
inline LocalResult polish(const Objective& f, std::vector<double> x0, double step, int max_iterations,
                          double ftol = 1e-12, int rounds = 4) {
  LocalResult best = nelder_mead(f, std::move(x0), step, max_iterations, ftol);
  for (int r = 1; r < rounds; ++r) {
    step *= 0.25;
    LocalResult next = nelder_mead(f, best.x, step, max_iterations, ftol);
    next.evaluations += best.evaluations;
    const bool improved = next.value < best.value - ftol;
    if (next.value <= best.value) best = std::move(next);
    else best.evaluations = next.evaluations;
    if (!improved && best.converged) break;
  }
  return best;
}

/// Compass (coordinate pattern) search: poll +-step along every axis,
/// move on improvement, halve the step otherwise.
inline LocalResult pattern_search(const Objective& f, std::vector<double> x, double step, int max_iterations,
                                  double min_step = 1e-7) {
  double fx = f(x);
  long evals = 1;
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        x[i] += sign * step;
        const double fy = f(x);
        ++evals;
        if (fy < fx) {
          fx = fy;
          moved = true;
          break;
        }
        x[i] -= sign * step;
      }
    }
    if (!moved) {
      step *= 0.5;
      if (step < min_step) {
        converged = true;
        break;
      }
    }
  }
  return {std::move(x), fx, evals, converged};
}

}  // namespace entrosteer
