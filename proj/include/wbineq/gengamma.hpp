#pragma once

// Generalized gamma distribution of completed schooling years: density,
// cdf, quantile, censored minimum-distance fitting from attainment rates,
// and inverse-transform sampling.
//
// Attainment data arrive as cumulative probabilities of reaching at most
// each education level's duration, except the top level, which is a
// right-censored upper-tail mass and enters the fit through the survival
// function.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wbineq/errors.hpp"
#include "wbineq/nelder_mead.hpp"
#include "wbineq/rng.hpp"
#include "wbineq/special_functions.hpp"

namespace wbineq {

struct GgParams {
  double a = 1.0;  // power shape
  double b = 8.0;  // scale, years of schooling
  double p = 1.0;  // gamma shape

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(p > 0.0))
      throw std::invalid_argument("GgParams: a, b, p must be positive");
  }
  // Density unbounded (mode at zero) when a*p <= 1; the regime of high
  // illiteracy.
  bool zero_mode() const { return a * p <= 1.0; }
};

// Canonical attainment levels: none, primary/secondary/tertiary split into
// incomplete and complete.
enum class EduLevel { NS, PI, PC, SI, SC, TI, TC };

inline const char* to_string(EduLevel level) {
  switch (level) {
    case EduLevel::NS: return "NS";
    case EduLevel::PI: return "PI";
    case EduLevel::PC: return "PC";
    case EduLevel::SI: return "SI";
    case EduLevel::SC: return "SC";
    case EduLevel::TI: return "TI";
    case EduLevel::TC: return "TC";
  }
  return "?";
}

struct AttainmentRow {
  EduLevel level;
  double years = 0.0;  // official duration d_j in years of schooling
  double rate = 0.0;   // cumulative Pr[X <= d_j]; for the last row, the
                       // censored upper-tail mass Pr[X > d_j] instead
};

struct AttainmentData {
  std::vector<AttainmentRow> rows;

  void validate() const {
    if (rows.size() < 2)
      throw std::invalid_argument("AttainmentData: need at least 2 levels");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!(rows[j].rate >= 0.0 && rows[j].rate <= 1.0))
        throw std::invalid_argument("AttainmentData: rates must lie in [0, 1]");
      if (!(rows[j].years > 0.0))
        throw std::invalid_argument("AttainmentData: durations must be positive");
      if (j > 0) {
        if (!(rows[j].years > rows[j - 1].years))
          throw std::invalid_argument("AttainmentData: durations must be strictly increasing");
        if (static_cast<int>(rows[j].level) <= static_cast<int>(rows[j - 1].level))
          throw std::invalid_argument("AttainmentData: levels out of order");
        if (j + 1 < rows.size() && rows[j].rate < rows[j - 1].rate - 1e-12)
          throw std::invalid_argument("AttainmentData: cumulative rates must be nondecreasing");
      }
    }
  }

  // Interval mass per level: differences of the cumulative rates plus the
  // censored tail.
  std::vector<double> interval_masses() const {
    std::vector<double> m;
    double prev = 0.0;
    for (std::size_t j = 0; j + 1 < rows.size(); ++j) {
      m.push_back(rows[j].rate - prev);
      prev = rows[j].rate;
    }
    m.push_back(rows.back().rate);
    return m;
  }
};

inline double gg_pdf(double x, const GgParams& params) {
  params.validate();
  if (!(x >= 0.0)) throw std::domain_error("gg_pdf: requires x >= 0");
  const double a = params.a, b = params.b, p = params.p;
  if (x == 0.0) {
    if (a * p > 1.0) return 0.0;
    if (a * p == 1.0) return a / (b * std::exp(ln_gamma(p)));
    return std::numeric_limits<double>::infinity();
  }
  const double lf = std::log(a) + (a * p - 1.0) * std::log(x) -
                    std::pow(x / b, a) - a * p * std::log(b) - ln_gamma(p);
  return std::exp(lf);
}

inline double gg_cdf(double x, const GgParams& params) {
  params.validate();
  if (!(x >= 0.0)) throw std::domain_error("gg_cdf: requires x >= 0");
  if (x == 0.0) return 0.0;
  return reg_inc_gamma(params.p, std::pow(x / params.b, params.a));
}

inline double gg_quantile(double u, const GgParams& params) {
  params.validate();
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("gg_quantile: requires 0 < u < 1");
  return params.b * std::pow(detail::inv_reg_inc_gamma(params.p, u), 1.0 / params.a);
}

struct GgFitDiagnostics {
  double objective = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  int best_start = -1;
  std::vector<double> start_objectives;
  bool zero_mode = false;  // fitted shape sits in the mode-at-zero regime
};

struct GgFit {
  GgParams params;
  GgFitDiagnostics diagnostics;
};

namespace detail {

inline GgParams gg_params_from_coords(const std::vector<double>& x) {
  return {std::exp(x[0]), std::exp(x[1]), std::exp(x[2])};
}

inline double gg_fit_objective(const std::vector<double>& x, const AttainmentData& data) {
  for (double c : x)
    if (!(c > -14.0 && c < 14.0)) return std::numeric_limits<double>::infinity();
  const GgParams params = gg_params_from_coords(x);
  double ss = 0.0;
  for (std::size_t j = 0; j + 1 < data.rows.size(); ++j) {
    const double r = gg_cdf(data.rows[j].years, params) - data.rows[j].rate;
    ss += r * r;
  }
  const double tail =
      (1.0 - gg_cdf(data.rows.back().years, params)) - data.rows.back().rate;
  return ss + tail * tail;
}

}  // namespace detail

// Censored minimum-distance fit: cdf terms for all levels but the last,
// survival term for the censored top level.
inline GgFit fit_gg(const AttainmentData& data) {
  data.validate();
  if (data.rows.size() < 4)
    throw std::invalid_argument("fit_gg: need at least 4 levels for 3 parameters");
  const std::vector<double> masses = data.interval_masses();
  for (double m : masses)
    if (m >= 1.0 - 1e-12)
      throw std::invalid_argument("fit_gg: all attainment mass at a single level");

  std::vector<std::vector<double>> starts;
  for (double a : {0.7, 1.5, 3.0})
    for (double b : {4.0, 8.0, 12.0})
      for (double p : {0.5, 1.0, 2.0})
        starts.push_back({std::log(a), std::log(b), std::log(p)});

  const ObjectiveFn objective = [&](const std::vector<double>& x) {
    return detail::gg_fit_objective(x, data);
  };
  SimplexOptions options;
  const MultiStartResult ms = multi_start_minimize(objective, starts, options);

  GgFit fit;
  fit.params = detail::gg_params_from_coords(ms.best.x);
  fit.diagnostics.objective = ms.best.value;
  fit.diagnostics.converged = ms.any_converged;
  fit.diagnostics.iterations = ms.best.iterations;
  fit.diagnostics.best_start = ms.best_start;
  fit.diagnostics.start_objectives = ms.start_values;
  fit.diagnostics.zero_mode = fit.params.zero_mode();

  if (!ms.any_converged)
    throw FitError("fit_gg: no multi-start run converged", ms.best.x, ms.best.value);
  return fit;
}

inline std::vector<double> gg_sample(std::size_t n, const GgParams& params,
                                     std::uint64_t seed) {
  params.validate();
  if (n < 1) throw std::invalid_argument("gg_sample: requires n >= 1");
  UniformStream stream(seed);
  std::vector<double> out(n);
  for (double& x : out) x = gg_quantile(stream.next(), params);
  return out;
}

}  // namespace wbineq
