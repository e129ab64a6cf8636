#include <cmath>
#include <limits>
#include <numbers>

#include "selberg/density.hpp"
#include "selberg/hermite.hpp"
#include "selberg/oracles.hpp"
#include "test_util.hpp"

using namespace selberg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

const DensityModel& model() {
  static const DensityModel m = DensityModel::build(ExpansionParams::make(0.3, 1e6, 8));
  return m;
}

DensityModel gaussian_model() {
  return DensityModel(ExpansionParams::make(0.3, 1e6, 0), d_table(0));
}
}  // namespace

TEST_CASE("rectangle validation") {
  CHECK_FAILS_WITH(Rectangle::make(1, 0, 0, 1), ErrorKind::order);
  CHECK_FAILS_WITH(Rectangle::make(0, 1, std::nan(""), 1), ErrorKind::domain);
  const auto p = Rectangle::plane();
  CHECK(p.a == -kInf);
  CHECK(p.d == kInf);
  CHECK_NOTHROW(Rectangle::make(0.5, 0.5, 0, 1));
}

TEST_CASE("coordinate maps invert each other") {
  const double psi = model().params().psi;
  const auto r = Rectangle::make(-1, 0.5, -kInf, 2);
  const auto raw = normalized_to_raw(r, psi);
  CHECK(raw.a == doctest::Approx(-std::sqrt(std::numbers::pi * psi)));
  CHECK(raw.c == -kInf);
  const auto back = raw_to_normalized(raw, psi);
  CHECK(back.a == doctest::Approx(r.a));
  CHECK(back.b == doctest::Approx(r.b));
  CHECK(back.d == doctest::Approx(r.d));
}

TEST_CASE("gaussian model") {
  const auto g = gaussian_model();
  const double psi = g.params().psi;
  CHECK(density_F(g, 0, 0) == doctest::Approx(1 / (std::numbers::pi * psi)));
  CHECK(rect_probability(g, Rectangle::plane()) == doctest::Approx(1.0).epsilon(1e-15));
  const auto q = Rectangle::make(0, kInf, 0, kInf);
  CHECK(rect_probability(g, q) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gaussian_leading_term(q) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(correction_budget(g, q) == 0.0);
}

TEST_CASE("full plane has unit mass at every degree") {
  const auto parts = rect_probability_by_degree(model(), Rectangle::plane());
  REQUIRE(parts.size() == 9);
  CHECK(parts[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t m = 1; m < parts.size(); ++m) CHECK(std::abs(parts[m]) <= 1e-15);
}

TEST_CASE("d entries and degree") {
  CHECK(model().degree() == 8);
  CHECK(model().d(0, 0) == 1.0);
  CHECK(std::abs(model().d(1, 2) - 0.038942157306) <= 1e-11);
  CHECK(model().d(9, 0) == 0.0);
}

TEST_CASE("density is even in y") {
  for (double x : {-0.6, 0.0, 0.9})
    for (double y : {0.2, 0.7}) CHECK(density_F(model(), x, y) == doctest::Approx(density_F(model(), x, -y)).epsilon(1e-14));
}

TEST_CASE("rectangle probability matches quadrature of the density") {
  const double psi = model().params().psi;
  const auto r = Rectangle::make(-0.4, 0.3, 0.1, 0.8);
  const auto raw = normalized_to_raw(r, psi);
  const double q = oracle::integrate2([&](double x, double y) { return density_F(model(), x, y); },
                                      raw.a, raw.b, raw.c, raw.d, 1e-12);
  CHECK(std::abs(rect_probability(model(), r) - q) <= 1e-9);
}

TEST_CASE("degenerate and additive rectangles") {
  CHECK(rect_probability(model(), Rectangle::make(0.3, 0.3, -1, 1)) == 0.0);
  const double left = rect_probability(model(), Rectangle::make(-1, 0, 0, 1));
  const double right = rect_probability(model(), Rectangle::make(0, 1, 0, 1));
  const double both = rect_probability(model(), Rectangle::make(-1, 1, 0, 1));
  CHECK(std::abs(left + right - both) <= 1e-14);
}

TEST_CASE("correction budget bounds the correction") {
  for (const auto& r : {Rectangle::make(0, 1, 0, 1), Rectangle::make(-2, 0.5, -0.3, 1.1)}) {
    const double corr = std::abs(rect_probability(model(), r) - gaussian_leading_term(r));
    CHECK(corr <= correction_budget(model(), r) * (1 + 1e-12));
  }
}

TEST_CASE("truncation estimate") {
  CHECK(truncation_estimate({1.0, 0.0, 0.0, 0.25, -0.5}) == doctest::Approx(0.75));
  CHECK(truncation_estimate({1.0}) == 0.0);
}
