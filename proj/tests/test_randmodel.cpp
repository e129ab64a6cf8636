#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "selberg/primes.hpp"
#include "selberg/randmodel.hpp"
#include "test_util.hpp"

using namespace selberg;

TEST_CASE("J at the origin and its modulus") {
  CHECK(std::abs(J_quadrature(0, 0, 0.5) - 1.0) <= 1e-15);
  CHECK(std::abs(J_quadrature(1.3, -0.4, 0.0) - 1.0) <= 1e-15);
  for (double w : {0.1, 0.5, 0.9})
    for (double u : {0.2, 1.0, 3.0}) CHECK(std::abs(J_quadrature(u, 0.7 * u, w)) <= 1 + 1e-13);
  CHECK_FAILS_WITH(J_quadrature(1, 1, 1.0), ErrorKind::domain);
  CHECK_FAILS_WITH(J_quadrature(1, 1, 0.5, 16), ErrorKind::domain);
}

TEST_CASE("J small-argument expansion") {
  // J = 1 - (u^2 + v^2) b_{1,1}(w) + O(|u|^3) for w = 0.3.
  const double w = 0.3, h = 1e-3;
  double b11 = 0;
  for (int n = 1; n < 60; ++n) b11 += std::pow(w * w, n) / (n * n);
  const auto j = J_quadrature(h, 0, w);
  CHECK(std::abs((1.0 - j.real()) / (h * h) - b11) <= 1e-3);
}

TEST_CASE("characteristic function of the truncated product") {
  CHECK(characteristic_truncated(0.4, 0.2, 0.8, 1) == std::complex<double>(1.0, 0.0));
  const auto a = characteristic_truncated(0.4, 0.2, 0.8, 100);
  const auto b = characteristic_truncated(0.4, 0.2, 0.8, 200);
  CHECK(std::abs(a - b) <= std::abs(a) * truncation_change_bound(0.4, 0.2, 0.8, 100));
  CHECK_FAILS_WITH(characteristic_truncated(0.4, 0.2, 0.5, 100), ErrorKind::divergent);
}

TEST_CASE("omitted tail") {
  CHECK(omitted_tail_std(0.9, 1000) > omitted_tail_std(0.9, 10000));
  CHECK(omitted_tail_std(0.7, 1000) > omitted_tail_std(0.9, 1000));
  CHECK_FAILS_WITH(omitted_tail_std(0.5, 1000), ErrorKind::divergent);
}

TEST_CASE("random model sampling") {
  RandomEulerConfig cfg;
  cfg.sigma = 0.9;
  cfg.prime_limit = 1000;
  cfg.sample_count = 20000;
  const auto m1 = sample_log_zeta_random(cfg);
  const auto m2 = sample_log_zeta_random(cfg);
  REQUIRE(m1.samples.size() == 20000);
  CHECK(m1.samples == m2.samples);
  cfg.seed += 1;
  CHECK(sample_log_zeta_random(cfg).samples != m1.samples);

  std::complex<double> mean = 0;
  double var_re = 0;
  for (const auto& z : m1.samples) mean += z;
  mean /= double(m1.samples.size());
  for (const auto& z : m1.samples) var_re += std::norm(z.real() - mean.real());
  var_re /= double(m1.samples.size());
  const auto table = sieve_primes(1000);
  const double expect = psi_restricted(table.primes, 0.9, 60) / 2;
  CHECK(std::abs(mean) <= 5 * std::sqrt(2 * expect / 20000));
  CHECK(std::abs(var_re - expect) <= 0.05 * expect);

  cfg.sample_count = 0;
  CHECK_FAILS_WITH(sample_log_zeta_random(cfg), ErrorKind::empty);
  cfg.sample_count = 10;
  cfg.sigma = 0.5;
  CHECK_FAILS_WITH(sample_log_zeta_random(cfg), ErrorKind::divergent);
}

TEST_CASE("empirical rectangle probability") {
  EmpiricalMeasure m;
  m.samples = {{0.0, 0.0}, {1.0, 1.0}, {-1.0, 0.5}, {0.5, -0.5}};
  m.count = 4;
  const double psi = 1 / std::numbers::pi;  // sqrt(pi psi) = 1
  const auto e = empirical_rect_probability(m, Rectangle::make(0, 1, 0, 1), psi);
  CHECK(e.value == 0.25);  // half-open: (1, 1) is outside
  CHECK(empirical_rect_probability(m, Rectangle::plane(), psi).value == 1.0);
  CHECK(empirical_rect_probability(m, Rectangle::make(0, 0, -1, 1), psi).value == 0.0);
  CHECK_FAILS_WITH(empirical_rect_probability(EmpiricalMeasure{}, Rectangle::plane(), psi), ErrorKind::domain);
}

TEST_CASE("measure CSV round trip") {
  RandomEulerConfig cfg;
  cfg.sigma = 0.8;
  cfg.prime_limit = 100;
  cfg.sample_count = 50;
  const auto m = sample_log_zeta_random(cfg);
  std::stringstream ss;
  write_measure(m, ss);
  const auto back = read_measure(ss);
  CHECK(back.samples == m.samples);
  CHECK(back.seed == m.seed);
  CHECK(back.sigma == m.sigma);
  CHECK(back.prime_limit == m.prime_limit);
  std::stringstream bad("re,im\n1,2\n");
  CHECK_FAILS_WITH(read_measure(bad), ErrorKind::domain);
}

TEST_CASE("log J tail series leading term") {
  const double sigma = 0.9;
  const auto s = log_J_tail_series(sigma, 1000, 4);
  // coefficient of |z|^2 is -sum_{p > P} b_{1,1}(p^{-sigma})
  const double tail = omitted_tail_std(sigma, 1000);
  CHECK(s(1, 1).real() == doctest::Approx(-tail * tail).epsilon(1e-10));
  CHECK(std::abs(s(1, 1).imag()) <= 1e-18);
  CHECK(s(0, 0) == std::complex<double>(0, 0));
}

TEST_CASE("log J expansion error is cubic at small arguments") {
  // The quadratic term uses psi(sigma) exactly; the cubic terms carry
  // half-line coefficients, so the residual at sigma = 0.9 shrinks like |u|^3.
  const double r1 = log_J_vs_expansion(0.02, 0.008, 0.9, 1000, 6);
  const double r2 = log_J_vs_expansion(0.01, 0.004, 0.9, 1000, 6);
  CHECK(r2 / r1 == doctest::Approx(0.125).epsilon(0.05));
  CHECK_FAILS_WITH(log_J_vs_expansion(0.05, 0.02, 0.9, 1000, 1), ErrorKind::domain);
}
