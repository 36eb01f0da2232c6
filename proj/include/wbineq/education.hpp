#pragma once

// Conversion of over-15 conditional attainment rates into whole-population
// unconditional rates by the law of total probability over four age groups
// (0-4, 5-9, 10-14, 15+). The child groups are classified from enrollment
// ratios:
//   0-4   all unschooled;
//   5-9   enrolled (primary ratio) have begun primary, the rest none;
//   10-14 split at entry_age + primary_duration with uniform ages: the
//         younger sub-group can only be in primary (primary ratio), the
//         older may have begun secondary (secondary ratio, remainder
//         classified by the primary ratio).
// Only the 15+ group contributes mass above the censored top level.

#include <array>
#include <cmath>
#include <stdexcept>

#include "wbineq/gengamma.hpp"

namespace wbineq {

struct AgeAdjustInputs {
  AttainmentData conditional_rates;  // 15+ population, cumulative + tail
  std::array<double, 4> age_shares{0.0, 0.0, 0.0, 1.0};  // 0-4, 5-9, 10-14, 15+
  double primary_enrollment = 0.0;
  double secondary_enrollment = 0.0;
  double school_entry_age = 6.0;
  double primary_duration = 6.0;

  void validate() const {
    conditional_rates.validate();
    double total = 0.0;
    for (double s : age_shares) {
      if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("AgeAdjustInputs: age shares must lie in [0, 1]");
      total += s;
    }
    if (std::fabs(total - 1.0) > 1e-9)
      throw std::invalid_argument("AgeAdjustInputs: age shares must sum to 1");
    if (!(primary_enrollment >= 0.0 && primary_enrollment <= 1.0) ||
        !(secondary_enrollment >= 0.0 && secondary_enrollment <= 1.0))
      throw std::invalid_argument("AgeAdjustInputs: enrollment ratios must lie in [0, 1]");
    if (!(school_entry_age > 0.0) || !(primary_duration > 0.0))
      throw std::invalid_argument("AgeAdjustInputs: entry age and primary duration must be positive");
    if (school_entry_age + primary_duration > 15.0)
      throw std::invalid_argument(
          "AgeAdjustInputs: entry age plus primary duration exceeds 15; "
          "the 10-14 split is undefined");
  }
};

inline AttainmentData unconditional_rates(const AgeAdjustInputs& inputs) {
  inputs.validate();
  const auto& rows = inputs.conditional_rates.rows;
  const std::size_t n_levels = rows.size();

  // Positions of the child-relevant levels.
  std::size_t i_ns = n_levels, i_pi = n_levels, i_si = n_levels;
  for (std::size_t j = 0; j < n_levels; ++j) {
    if (rows[j].level == EduLevel::NS) i_ns = j;
    if (rows[j].level == EduLevel::PI) i_pi = j;
    if (rows[j].level == EduLevel::SI) i_si = j;
  }
  if (i_ns == n_levels || i_pi == n_levels || i_si == n_levels)
    throw std::invalid_argument("unconditional_rates: table must contain NS, PI, and SI levels");

  const double e_p = inputs.primary_enrollment;
  const double e_s = inputs.secondary_enrollment;
  // Uniform ages within 10-14: fraction still below the secondary entry age.
  const double cutoff = inputs.school_entry_age + inputs.primary_duration;
  const double w_young = std::min(1.0, std::max(0.0, (cutoff - 10.0) / 5.0));
  const double w_old = 1.0 - w_young;

  // Per-level interval masses for each child group.
  std::array<double, 3> mass_ns{1.0, 1.0 - e_p,
                                w_young * (1.0 - e_p) + w_old * (1.0 - e_s) * (1.0 - e_p)};
  std::array<double, 3> mass_pi{0.0, e_p, w_young * e_p + w_old * (1.0 - e_s) * e_p};
  std::array<double, 3> mass_si{0.0, 0.0, w_old * e_s};

  AttainmentData out;
  out.rows.reserve(n_levels);
  for (std::size_t j = 0; j + 1 < n_levels; ++j) {
    double rate = inputs.age_shares[3] * rows[j].rate;
    for (int g = 0; g < 3; ++g) {
      double cum = mass_ns[g];
      if (j >= i_pi) cum += mass_pi[g];
      if (j >= i_si) cum += mass_si[g];
      rate += inputs.age_shares[g] * cum;
    }
    out.rows.push_back({rows[j].level, rows[j].years, std::min(rate, 1.0)});
  }
  // Censored tail: children cannot exceed the top level.
  out.rows.push_back(
      {rows.back().level, rows.back().years, inputs.age_shares[3] * rows.back().rate});
  return out;
}

}  // namespace wbineq
