#pragma once

// Population-weighted mixture of fitted national marginals with cdf,
// quantile, and two-stage sampling. The quantile inverts the mixture cdf by
// bisection inside [min_c q_c(u), max_c q_c(u)], which brackets the root
// because a convex combination of cdfs lies between its extremes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wbineq/rng.hpp"

namespace wbineq {

enum class Dimension { income, lifespan, schooling };

struct MixtureComponent {
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;
  double weight = 0.0;
};

class GlobalMixture {
 public:
  GlobalMixture(std::vector<MixtureComponent> components, Dimension dimension)
      : components_(std::move(components)), dimension_(dimension) {
    if (components_.empty())
      throw std::invalid_argument("GlobalMixture: need at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
      if (!(c.weight >= 0.0)) throw std::invalid_argument("GlobalMixture: negative weight");
      if (!c.cdf || !c.quantile)
        throw std::invalid_argument("GlobalMixture: component missing cdf or quantile");
      total += c.weight;
    }
    if (std::fabs(total - 1.0) > 1e-9)
      throw std::invalid_argument("GlobalMixture: weights must sum to 1");
  }

  Dimension dimension() const { return dimension_; }
  std::size_t component_count() const { return components_.size(); }

  double cdf(double x) const {
    double f = 0.0;
    for (const auto& c : components_) f += c.weight * c.cdf(x);
    return f;
  }

  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
      throw std::domain_error("GlobalMixture::quantile: requires 0 < u < 1");
    double lo = components_.front().quantile(u);
    double hi = lo;
    for (std::size_t c = 1; c < components_.size(); ++c) {
      const double q = components_[c].quantile(u);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    if (lo == hi) return lo;
    if (cdf(lo) > u + 1e-9 || cdf(hi) < u - 1e-9)
      throw std::runtime_error("GlobalMixture::quantile: component quantiles fail to bracket");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      x = 0.5 * (lo + hi);
      const double f = cdf(x);
      if (std::fabs(f - u) <= 1e-10) return x;
      (f < u ? lo : hi) = x;
    }
    return x;
  }

  // Two-stage draw: country by population weight, then its national inverse
  // transform. Consumes two uniforms per draw from a single stream; with a
  // single component it degenerates to the national sampler, same stream.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("GlobalMixture::sample: requires n >= 1");
    UniformStream stream(seed);
    std::vector<double> out(n);
    if (components_.size() == 1) {
      for (double& x : out) x = components_.front().quantile(stream.next());
      return out;
    }
    for (double& x : out) {
      const double pick = stream.next();
      double cum = 0.0;
      std::size_t chosen = components_.size() - 1;
      for (std::size_t c = 0; c < components_.size(); ++c) {
        cum += components_[c].weight;
        if (pick < cum) {
          chosen = c;
          break;
        }
      }
      x = components_[chosen].quantile(stream.next());
    }
    return out;
  }

 private:
  std::vector<MixtureComponent> components_;
  Dimension dimension_;
};

}  // namespace wbineq
