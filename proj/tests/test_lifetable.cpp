#include "wbineq/lifetable.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numeric>

#include "support/stats.hpp"

using namespace wbineq;

namespace {

LifeTable simple_table(std::vector<double> ages, std::vector<double> survivors) {
  LifeTable t;
  t.ages = std::move(ages);
  t.survivors = std::move(survivors);
  return t;
}

// A coarse table with an infant-mortality spike.
LifeTable spiky_table() {
  return simple_table({0.0, 1.0, 5.0, 40.0, 70.0, 90.0},
                      {100000.0, 94000.0, 93000.0, 88000.0, 55000.0, 9000.0});
}

}  // namespace

TEST_CASE("table_to_pdf basic differencing and closure") {
  const LifespanPdf pdf = table_to_pdf(simple_table({0.0, 50.0}, {100000.0, 40000.0}));
  REQUIRE(pdf.mass.size() == 2);
  CHECK(pdf.bounds == std::vector<double>{0.0, 50.0, 100.0});
  CHECK_THAT(pdf.mass[0], Catch::Matchers::WithinAbs(0.6, 1e-15));
  CHECK_THAT(pdf.mass[1], Catch::Matchers::WithinAbs(0.4, 1e-15));
}

TEST_CASE("constant survivors give zero mass in the middle") {
  const LifespanPdf pdf =
      table_to_pdf(simple_table({0.0, 10.0, 20.0, 30.0}, {100000.0, 60000.0, 60000.0, 60000.0}));
  CHECK(pdf.mass[1] == 0.0);
  CHECK(pdf.mass[2] == 0.0);
  CHECK_THAT(pdf.mass[3], Catch::Matchers::WithinAbs(0.6, 1e-15));
}

TEST_CASE("spiky table matches hand-computed differences and sums to one") {
  const LifespanPdf pdf = table_to_pdf(spiky_table());
  const double expected[6] = {0.06, 0.01, 0.05, 0.33, 0.46, 0.09};
  REQUIRE(pdf.mass.size() == 6);
  for (int k = 0; k < 6; ++k)
    CHECK_THAT(pdf.mass[k], Catch::Matchers::WithinAbs(expected[k], 1e-15));
  const double total = std::accumulate(pdf.mass.begin(), pdf.mass.end(), 0.0);
  CHECK(std::fabs(total - 1.0) <= 1e-12);
  CHECK(pdf.bounds.back() == 110.0);  // closing width equals the last tabulated width
}

TEST_CASE("life table validation") {
  CHECK_THROWS_AS(table_to_pdf(simple_table({0.0, 10.0}, {100000.0, 100001.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(table_to_pdf(simple_table({0.0, 10.0}, {99999.0, 90000.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(table_to_pdf(simple_table({0.0}, {100000.0})), std::invalid_argument);
  CHECK_THROWS_AS(table_to_pdf(simple_table({0.0, 0.0}, {100000.0, 90000.0})),
                  std::invalid_argument);
}

TEST_CASE("mix_pdfs identity cases") {
  const LifespanPdf a = table_to_pdf(spiky_table());
  CHECK(mix_pdfs({a}, {1.0}).mass == a.mass);

  const LifespanPdf same = mix_pdfs({a, a}, {0.25, 0.75});
  for (std::size_t k = 0; k < a.mass.size(); ++k)
    CHECK_THAT(same.mass[k], Catch::Matchers::WithinAbs(a.mass[k], 1e-15));
}

TEST_CASE("mix_pdfs hand-computed combination") {
  const LifespanPdf a =
      table_to_pdf(simple_table({0.0, 40.0, 80.0}, {100000.0, 70000.0, 20000.0}));
  const LifespanPdf b =
      table_to_pdf(simple_table({0.0, 40.0, 80.0}, {100000.0, 90000.0, 50000.0}));
  const LifespanPdf mixed = mix_pdfs({a, b}, {0.3, 0.7});
  // a: (0.3, 0.5, 0.2); b: (0.1, 0.4, 0.5); 0.3*a + 0.7*b:
  CHECK_THAT(mixed.mass[0], Catch::Matchers::WithinAbs(0.16, 1e-15));
  CHECK_THAT(mixed.mass[1], Catch::Matchers::WithinAbs(0.43, 1e-15));
  CHECK_THAT(mixed.mass[2], Catch::Matchers::WithinAbs(0.41, 1e-15));
}

TEST_CASE("mix_pdfs rejects mismatched grids and bad weights") {
  const LifespanPdf a =
      table_to_pdf(simple_table({0.0, 40.0, 80.0}, {100000.0, 70000.0, 20000.0}));
  const LifespanPdf b =
      table_to_pdf(simple_table({0.0, 50.0, 80.0}, {100000.0, 70000.0, 20000.0}));
  CHECK_THROWS_AS(mix_pdfs({a, b}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(mix_pdfs({a, a}, {0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("single-interval sampling stays inside the interval") {
  LifespanPdf pdf;
  pdf.bounds = {20.0, 30.0};
  pdf.mass = {1.0};
  for (double h : lifespan_sample(pdf, 1000, 7)) {
    CHECK(h >= 20.0);
    CHECK(h < 30.0);
  }
}

TEST_CASE("sampled interval frequencies match the pdf") {
  const LifespanPdf pdf = table_to_pdf(spiky_table());
  const std::size_t n = 1000000;
  const auto draws = lifespan_sample(pdf, n, 20240511);
  for (std::size_t k = 0; k < pdf.mass.size(); ++k) {
    std::size_t count = 0;
    for (double h : draws) count += (h >= pdf.bounds[k] && h < pdf.bounds[k + 1]);
    const double freq = static_cast<double>(count) / static_cast<double>(n);
    const double se = std::sqrt(pdf.mass[k] * (1.0 - pdf.mass[k]) / static_cast<double>(n));
    CHECK(std::fabs(freq - pdf.mass[k]) <= 4.0 * se + 1e-12);
  }
  CHECK(lifespan_sample(pdf, 100, 5) == lifespan_sample(pdf, 100, 5));
}

TEST_CASE("sample mean matches the midpoint expectation") {
  const LifespanPdf pdf = table_to_pdf(spiky_table());
  double expectation = 0.0;
  for (std::size_t k = 0; k < pdf.mass.size(); ++k)
    expectation += pdf.mass[k] * 0.5 * (pdf.bounds[k] + pdf.bounds[k + 1]);
  const auto draws = lifespan_sample(pdf, 200000, 99);
  CHECK_THAT(testsup::mean_of(draws), Catch::Matchers::WithinAbs(expectation, 0.2));
}

TEST_CASE("two-stage country sampling agrees with the direct mixture") {
  const LifespanPdf a = table_to_pdf(spiky_table());
  const LifespanPdf b =
      table_to_pdf(simple_table({0.0, 1.0, 5.0, 40.0, 70.0, 90.0},
                                {100000.0, 99000.0, 98500.0, 95000.0, 75000.0, 25000.0}));
  const std::vector<double> eta = {0.35, 0.65};
  const LifespanPdf mixed = mix_pdfs({a, b}, eta);

  const std::size_t n = 100000;
  const auto direct = lifespan_sample(mixed, n, 31);

  // Two-stage: pick the country by weight, then draw within it.
  UniformStream pick(derive_seed(17, "country"));
  UniformStream within(derive_seed(17, "lifespan"));
  std::vector<double> two_stage(n);
  for (double& h : two_stage) {
    const LifespanPdf& src = (pick.next() < eta[0]) ? a : b;
    h = lifespan_quantile(src, within.next());
  }

  const double d = testsup::ks_two_sample(direct, two_stage);
  CHECK(d <= 1.95 / std::sqrt(static_cast<double>(n)));

  // And both against the analytic mixture cdf.
  const double d2 = testsup::ks_statistic(two_stage, [&](double h) { return lifespan_cdf(mixed, h); });
  CHECK(d2 <= 1.95 / std::sqrt(static_cast<double>(n)));
}
