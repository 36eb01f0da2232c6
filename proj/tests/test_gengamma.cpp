#include "wbineq/gengamma.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "support/quadrature.hpp"
#include "support/stats.hpp"

using namespace wbineq;

namespace {

const GgParams kRef{1.8, 9.0, 0.9};
const double kDurations[7] = {1.0, 4.0, 6.0, 9.0, 12.0, 14.0, 16.0};
const EduLevel kLevels[7] = {EduLevel::NS, EduLevel::PI, EduLevel::PC, EduLevel::SI,
                             EduLevel::SC, EduLevel::TI, EduLevel::TC};

AttainmentData rates_from_params(const GgParams& params) {
  AttainmentData data;
  for (int j = 0; j < 7; ++j) {
    const double d = kDurations[j];
    const double rate = (j < 6) ? gg_cdf(d, params) : 1.0 - gg_cdf(d, params);
    data.rows.push_back({kLevels[j], d, rate});
  }
  return data;
}

}  // namespace

TEST_CASE("gg_pdf reductions") {
  const GgParams expo{1.0, 5.0, 1.0};
  for (double x : {0.1, 1.0, 4.0, 20.0})
    CHECK_THAT(gg_pdf(x, expo), Catch::Matchers::WithinRel(std::exp(-x / 5.0) / 5.0, 1e-12));

  // a = 1 is a gamma(p, scale b) density.
  const GgParams gam{1.0, 3.0, 2.4};
  for (double x : {0.5, 2.0, 8.0}) {
    const double ref = std::exp((gam.p - 1.0) * std::log(x) - x / gam.b -
                                gam.p * std::log(gam.b) - ln_gamma(gam.p));
    CHECK_THAT(gg_pdf(x, gam), Catch::Matchers::WithinRel(ref, 1e-12));
  }
}

TEST_CASE("gg_pdf integrates to one") {
  const double total = testsup::integrate_half_line(
      [&](double x) { return gg_pdf(x, kRef); }, kRef.b, 1e-12);
  CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-6));
}

TEST_CASE("gg_cdf values and limits") {
  const GgParams expo{1.0, 7.0, 1.0};
  for (double x : {0.2, 3.0, 10.0})
    CHECK_THAT(gg_cdf(x, expo), Catch::Matchers::WithinAbs(-std::expm1(-x / 7.0), 1e-12));
  CHECK(gg_cdf(0.0, kRef) == 0.0);

  const double oracle = testsup::tanh_sinh(
      [&](double x) { return gg_pdf(x, kRef); }, 0.0, 6.0, 1e-12);
  CHECK_THAT(oracle, Catch::Matchers::WithinAbs(0.43332965926600259, 1e-9));  // frozen
  CHECK_THAT(gg_cdf(6.0, kRef), Catch::Matchers::WithinAbs(oracle, 1e-8));

  double prev = 0.0;
  for (double x = 0.0; x < 80.0; x += 0.5) {
    const double cur = gg_cdf(x, kRef);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(prev > 1.0 - 1e-10);
}

TEST_CASE("reduction identities hold to tight tolerance") {
  const GgParams gam{1.0, 2.5, 3.2};
  for (double x : {0.4, 2.0, 7.0, 15.0})
    CHECK_THAT(gg_cdf(x, gam),
               Catch::Matchers::WithinAbs(reg_inc_gamma(gam.p, x / gam.b), 1e-10));
  const GgParams expo{1.0, 4.0, 1.0};
  for (double x : {0.3, 1.0, 9.0})
    CHECK_THAT(gg_cdf(x, expo), Catch::Matchers::WithinAbs(-std::expm1(-x / 4.0), 1e-10));
}

TEST_CASE("fit_gg recovers generating parameters' cdf") {
  const GgParams truth{2.0, 8.0, 1.2};
  const AttainmentData data = rates_from_params(truth);
  const GgFit fit = fit_gg(data);
  CHECK(fit.diagnostics.objective <= 1e-9);
  for (int j = 0; j < 7; ++j)
    CHECK_THAT(gg_cdf(kDurations[j], fit.params),
               Catch::Matchers::WithinAbs(gg_cdf(kDurations[j], truth), 1e-6));
  for (double sv : fit.diagnostics.start_objectives)
    CHECK(fit.diagnostics.objective <= sv);
}

TEST_CASE("fit_gg perfect fit reaches zero objective") {
  const AttainmentData data = rates_from_params(GgParams{1.4, 10.0, 0.8});
  const GgFit fit = fit_gg(data);
  CHECK(fit.diagnostics.objective <= 1e-12);
}

TEST_CASE("fit_gg flags the zero-mode regime for mostly unschooled data") {
  // Nearly all mass below one year of schooling.
  AttainmentData data;
  const double rates[7] = {0.96, 0.975, 0.985, 0.99, 0.995, 0.998, 0.002};
  for (int j = 0; j < 7; ++j) data.rows.push_back({kLevels[j], kDurations[j], rates[j]});
  const GgFit fit = fit_gg(data);
  CHECK(fit.diagnostics.zero_mode);
  CHECK(fit.params.a * fit.params.p < 1.0);
}

TEST_CASE("fit_gg rejects degenerate and undersized data") {
  AttainmentData one_level;
  const double rates[7] = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0};
  for (int j = 0; j < 7; ++j)
    one_level.rows.push_back({kLevels[j], kDurations[j], rates[j]});
  CHECK_THROWS_AS(fit_gg(one_level), std::invalid_argument);

  AttainmentData three;
  three.rows = {{EduLevel::NS, 1.0, 0.3}, {EduLevel::PC, 6.0, 0.7}, {EduLevel::TC, 16.0, 0.1}};
  CHECK_THROWS_AS(fit_gg(three), std::invalid_argument);
}

TEST_CASE("AttainmentData validation") {
  AttainmentData bad;
  bad.rows = {{EduLevel::NS, 1.0, 0.5}, {EduLevel::PI, 4.0, 0.4},  // decreasing cumulative
              {EduLevel::PC, 6.0, 0.6}, {EduLevel::TC, 16.0, 0.1}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  AttainmentData unordered;
  unordered.rows = {{EduLevel::PI, 1.0, 0.2}, {EduLevel::NS, 4.0, 0.4},
                    {EduLevel::PC, 6.0, 0.6}, {EduLevel::TC, 16.0, 0.1}};
  CHECK_THROWS_AS(unordered.validate(), std::invalid_argument);
}

TEST_CASE("gg_sample determinism and distribution fit") {
  const auto s1 = gg_sample(500, kRef, 99);
  const auto s2 = gg_sample(500, kRef, 99);
  CHECK(s1 == s2);

  const std::size_t n = 100000;
  const auto draws = gg_sample(n, kRef, 4321);
  for (int j = 0; j < 7; ++j) {
    const double d = kDurations[j];
    const double expected = gg_cdf(d, kRef);
    std::size_t count = 0;
    for (double x : draws) count += (x <= d);
    const double freq = static_cast<double>(count) / static_cast<double>(n);
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
    CHECK(std::fabs(freq - expected) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("gg_sample exponential case matches the analytic inverse") {
  const GgParams expo{1.0, 6.0, 1.0};
  const std::uint64_t seed = 31415;
  const auto draws = gg_sample(64, expo, seed);
  UniformStream stream(seed);
  for (double x : draws) {
    const double u = stream.next();
    CHECK_THAT(x, Catch::Matchers::WithinRel(-expo.b * std::log1p(-u), 1e-10));
  }
}
