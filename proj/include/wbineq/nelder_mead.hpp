#pragma once

// Derivative-free Nelder-Mead simplex minimizer with a multi-start driver.
// Both fitting modules run it over log-transformed coordinates, so no
// bound handling is needed here. Fully deterministic: vertex ordering ties
// resolve by index, and the multi-start scan is sequential.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wbineq {

struct SimplexOptions {
  double diameter_tol = 1e-10;  // max coordinate distance to the best vertex
  int max_iterations = 5000;
  double initial_step = 0.5;  // displacement used to build the start simplex
};

struct SimplexResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

namespace detail {

// NaN-proof objective wrapper: invalid evaluations rank worst.
inline double eval_guarded(const ObjectiveFn& f, const std::vector<double>& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

inline double simplex_diameter(const std::vector<std::vector<double>>& pts, std::size_t best) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == best) continue;
    for (std::size_t j = 0; j < pts[i].size(); ++j)
      d = std::max(d, std::fabs(pts[i][j] - pts[best][j]));
  }
  return d;
}

}  // namespace detail

inline SimplexResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& start,
                                 const SimplexOptions& opt = {}) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = detail::eval_guarded(f, pts[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexResult res;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

    res.iterations = iter;
    if (detail::simplex_diameter(pts, best) < opt.diameter_tol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (pts[worst][j] - centroid[j]);
      return p;
    };

    std::vector<double> reflected = blend(-1.0);
    const double fr = detail::eval_guarded(f, reflected);
    if (fr < fv[order[0]]) {
      std::vector<double> expanded = blend(-2.0);
      const double fe = detail::eval_guarded(f, expanded);
      if (fe < fr) {
        pts[worst] = std::move(expanded);
        fv[worst] = fe;
      } else {
        pts[worst] = std::move(reflected);
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second_worst]) {
      pts[worst] = std::move(reflected);
      fv[worst] = fr;
      continue;
    }
    // Contract toward the better of the worst vertex and its reflection.
    const bool outside = fr < fv[worst];
    std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
    const double fc = detail::eval_guarded(f, contracted);
    if (fc < std::min(fr, fv[worst])) {
      pts[worst] = std::move(contracted);
      fv[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j)
        pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      fv[i] = detail::eval_guarded(f, pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  res.x = pts[best];
  res.value = fv[best];
  return res;
}

struct MultiStartResult {
  SimplexResult best;
  int best_start = -1;
  std::vector<double> start_values;  // objective at every start point
  bool any_converged = false;
};

// Runs every start to completion, keeps the lowest minimum, then polishes
// it with one restart from a small fresh simplex. The returned value is
// never above any start-point objective.
inline MultiStartResult multi_start_minimize(const ObjectiveFn& f,
                                             const std::vector<std::vector<double>>& starts,
                                             const SimplexOptions& opt = {}) {
  if (starts.empty()) throw std::invalid_argument("multi_start_minimize: no start points");
  MultiStartResult out;
  out.start_values.reserve(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) {
    out.start_values.push_back(detail::eval_guarded(f, starts[s]));
    SimplexResult r = nelder_mead(f, starts[s], opt);
    out.any_converged = out.any_converged || r.converged;
    if (r.value < out.best.value) {
      out.best = std::move(r);
      out.best_start = static_cast<int>(s);
    }
  }
  if (out.best.x.empty()) {  // every start evaluated to infinity
    out.best.x = starts.front();
    return out;
  }
  SimplexOptions polish = opt;
  polish.initial_step = std::max(opt.initial_step * 0.02, 1e-4);
  SimplexResult r = nelder_mead(f, out.best.x, polish);
  out.any_converged = out.any_converged || r.converged;
  if (r.value < out.best.value) {
    const int keep = out.best_start;
    out.best = std::move(r);
    out.best_start = keep;
  }
  return out;
}

}  // namespace wbineq
