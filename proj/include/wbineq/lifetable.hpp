#pragma once

// Nonparametric distribution of length of life from period life tables:
// interval death probabilities from survivor counts of a synthetic cohort
// of 100,000, population-weighted mixtures over countries, and sampling
// under the uniform-within-interval assumption.
//
// Survivors at the last tabulated age are assigned to a closing interval of
// the same width as the preceding one, so mass always sums to one.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbineq/rng.hpp"

namespace wbineq {

inline constexpr double kLifeTableCohort = 100000.0;

struct LifeTable {
  std::vector<double> ages;       // strictly increasing interval starts
  std::vector<double> survivors;  // cohort members alive at each age
  std::string country;
  int period_start = 0;
  int period_end = 0;

  void validate() const {
    if (ages.size() != survivors.size())
      throw std::invalid_argument("LifeTable: ages and survivors lengths differ");
    if (ages.size() < 2) throw std::invalid_argument("LifeTable: need at least 2 ages");
    if (survivors.front() != kLifeTableCohort)
      throw std::invalid_argument("LifeTable: cohort must start at 100000");
    for (std::size_t k = 0; k < ages.size(); ++k) {
      if (k > 0 && !(ages[k] > ages[k - 1]))
        throw std::invalid_argument("LifeTable: ages must be strictly increasing");
      if (!(survivors[k] >= 0.0))
        throw std::invalid_argument("LifeTable: survivors must be nonnegative");
      if (k > 0 && survivors[k] > survivors[k - 1])
        throw std::invalid_argument("LifeTable: survivors must be nonincreasing");
    }
  }
};

// Probability of death per age interval; bounds has one more entry than mass.
struct LifespanPdf {
  std::vector<double> bounds;
  std::vector<double> mass;

  void validate() const {
    if (bounds.size() != mass.size() + 1 || mass.empty())
      throw std::invalid_argument("LifespanPdf: bounds must have mass size + 1 entries");
    double total = 0.0;
    for (std::size_t k = 0; k < mass.size(); ++k) {
      if (!(bounds[k + 1] > bounds[k]))
        throw std::invalid_argument("LifespanPdf: bounds must be strictly increasing");
      if (!(mass[k] >= 0.0)) throw std::invalid_argument("LifespanPdf: negative mass");
      total += mass[k];
    }
    if (std::fabs(total - 1.0) > 1e-9)
      throw std::invalid_argument("LifespanPdf: mass must sum to 1");
  }
};

inline LifespanPdf table_to_pdf(const LifeTable& table) {
  table.validate();
  const std::size_t K = table.ages.size();
  LifespanPdf pdf;
  pdf.bounds = table.ages;
  pdf.bounds.push_back(table.ages[K - 1] + (table.ages[K - 1] - table.ages[K - 2]));
  pdf.mass.reserve(K);
  for (std::size_t k = 1; k < K; ++k)
    pdf.mass.push_back((table.survivors[k - 1] - table.survivors[k]) / kLifeTableCohort);
  pdf.mass.push_back(table.survivors[K - 1] / kLifeTableCohort);
  return pdf;
}

// Pointwise convex combination over an identical interval grid. Weights are
// validated to sum to 1 within 1e-9 and then normalized exactly, so the
// output mass sums to 1 at full precision.
inline LifespanPdf mix_pdfs(const std::vector<LifespanPdf>& pdfs,
                            const std::vector<double>& weights) {
  if (pdfs.empty() || pdfs.size() != weights.size())
    throw std::invalid_argument("mix_pdfs: need matching nonempty pdfs and weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("mix_pdfs: negative weight");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mix_pdfs: weights must sum to 1");
  for (const LifespanPdf& p : pdfs) {
    p.validate();
    if (p.bounds != pdfs.front().bounds)
      throw std::invalid_argument("mix_pdfs: interval grids differ");
  }
  LifespanPdf out;
  out.bounds = pdfs.front().bounds;
  out.mass.assign(pdfs.front().mass.size(), 0.0);
  for (std::size_t c = 0; c < pdfs.size(); ++c)
    for (std::size_t k = 0; k < out.mass.size(); ++k)
      out.mass[k] += (weights[c] / total) * pdfs[c].mass[k];
  return out;
}

inline double lifespan_cdf(const LifespanPdf& pdf, double age) {
  if (age <= pdf.bounds.front()) return 0.0;
  if (age >= pdf.bounds.back()) return 1.0;
  double cum = 0.0;
  for (std::size_t k = 0; k < pdf.mass.size(); ++k) {
    if (age < pdf.bounds[k + 1])
      return cum + pdf.mass[k] * (age - pdf.bounds[k]) / (pdf.bounds[k + 1] - pdf.bounds[k]);
    cum += pdf.mass[k];
  }
  return 1.0;
}

// Inverse of the piecewise-linear cdf implied by uniform deaths within
// intervals.
inline double lifespan_quantile(const LifespanPdf& pdf, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("lifespan_quantile: requires 0 < u < 1");
  double cum = 0.0;
  for (std::size_t k = 0; k < pdf.mass.size(); ++k) {
    if (u < cum + pdf.mass[k]) {
      const double frac = (u - cum) / pdf.mass[k];
      return pdf.bounds[k] + frac * (pdf.bounds[k + 1] - pdf.bounds[k]);
    }
    cum += pdf.mass[k];
  }
  return pdf.bounds.back();
}

inline std::vector<double> lifespan_sample(const LifespanPdf& pdf, std::size_t n,
                                           std::uint64_t seed) {
  pdf.validate();
  if (n < 1) throw std::invalid_argument("lifespan_sample: requires n >= 1");
  UniformStream stream(seed);
  std::vector<double> out(n);
  for (double& h : out) h = lifespan_quantile(pdf, stream.next());
  return out;
}

}  // namespace wbineq
