#include <cmath>
#include <limits>
#include <numbers>

#include "selberg/hermite.hpp"
#include "selberg/oracles.hpp"
#include "test_util.hpp"

using namespace selberg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("hermite values") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, -0.4) == -0.8);
  CHECK(hermite(5, 1.0) == -8.0);
  CHECK(hermite(2, 0.5) == -1.0);
  for (int n = 0; n <= 12; ++n) CHECK(hermite(n, -0.7) == doctest::Approx((n % 2 ? -1 : 1) * hermite(n, 0.7)));
  CHECK_FAILS_WITH(hermite(-1, 0.0), ErrorKind::domain);
  CHECK_FAILS_WITH(hermite(kMaxHermiteOrder + 1, 0.0), ErrorKind::domain);
  CHECK_FAILS_WITH(hermite(200, 1e300), ErrorKind::range);
}

TEST_CASE("hermite against Rodrigues") {
  for (int n = 0; n <= 6; ++n)
    for (double x : {-1.0, 0.3, 2.0})
      CHECK(std::abs(hermite(n, x) - oracle::hermite_rodrigues(n, x)) <= 1e-6 * std::max(1.0, std::abs(hermite(n, x))));
}

TEST_CASE("gauss phi") {
  CHECK(gauss_phi(0.0) == 0.0);
  CHECK(std::abs(gauss_phi(9.0) - 0.5) <= 1e-15);
  CHECK(gauss_phi(kInf) == 0.5);
  CHECK(gauss_phi(-kInf) == -0.5);
  const double q = oracle::integrate([](double u) { return std::exp(-std::numbers::pi * u * u); }, 0, 1, 1e-15);
  CHECK(std::abs(gauss_phi(1.0) - q) <= 1e-13);
}

TEST_CASE("weighted hermite at infinity") {
  CHECK(weighted_hermite(7, kInf) == 0.0);
  CHECK(weighted_hermite(0, 0.0) == 1.0);
}

TEST_CASE("rectangle integrals") {
  CHECK(hermite_rect_integral(0, -kInf, kInf) == 1.0);
  for (int n = 1; n <= 30; ++n) CHECK(hermite_rect_integral(n, -kInf, kInf) == 0.0);
  const double pi = std::numbers::pi;
  const double closed = (std::exp(-pi * 0.49) - std::exp(-pi * 1.69)) / std::sqrt(pi);
  CHECK(std::abs(hermite_rect_integral(1, -0.7, 1.3) - closed) <= 1e-15);
  for (int n = 0; n <= 10; ++n) {
    const double q = oracle::integrate([n](double x) { return weighted_hermite(n, x); }, -0.7, 1.3, 1e-12);
    CHECK(std::abs(hermite_rect_integral(n, -0.7, 1.3) - q) <= 1e-10);
  }
  CHECK(hermite_rect_integral(4, 0.3, 0.3) == 0.0);
  CHECK_FAILS_WITH(hermite_rect_integral(2, 1.0, 0.0), ErrorKind::order);
  CHECK_FAILS_WITH(hermite_rect_integral(2, std::nan(""), 0.0), ErrorKind::domain);
}
