#include <cmath>
#include <complex>

#include "selberg/oracles.hpp"
#include "selberg/series.hpp"
#include "test_util.hpp"

using namespace selberg;
using cplx = std::complex<double>;

TEST_CASE("truncated series arithmetic") {
  TruncatedSeries a(std::vector<double>{1, 2, 3});
  TruncatedSeries b(std::vector<double>{0, 1});
  const auto p = a * b;
  CHECK(p.order() == 1);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 1.0);
  const auto e = TruncatedSeries::exp(TruncatedSeries(std::vector<double>{0, 1, 0, 0, 0, 0}));
  for (int n = 0; n <= 5; ++n) CHECK(e[n] == doctest::Approx(1.0 / std::tgamma(n + 1.0)).epsilon(1e-15));
  const auto back = TruncatedSeries::log(e);
  CHECK(std::abs(back[1] - 1.0) <= 1e-15);
  for (int n = 2; n <= 5; ++n) CHECK(std::abs(back[n]) <= 1e-15);
  CHECK(a.evaluate(0.5) == 1 + 1 + 0.75);
}

TEST_CASE("neglog power coefficients") {
  const auto c1 = neglog_power_coeffs(1, 30);
  for (int n = 1; n <= 30; ++n) CHECK(c1[n] == 1.0 / n);
  CHECK(neglog_power_coeffs(2, 5)[3] == 1.0);
  const auto c3 = neglog_power_coeffs(3, 12);
  CHECK(c3[2] == 0.0);
  for (int n = 3; n <= 12; ++n) CHECK(std::abs(c3[n] - oracle::composition_sum(3, n)) <= 1e-13);
  CHECK_FAILS_WITH(neglog_power_coeffs(0, 5), ErrorKind::domain);
  CHECK_FAILS_WITH(neglog_power_coeffs(3, 2), ErrorKind::domain);
}

TEST_CASE("a and b series examples") {
  const auto a11 = a_series(1, 1, 20);
  for (int n = 1; n <= 20; ++n) CHECK(a11[n] == 1.0 / (double(n) * n));
  CHECK(a_series(2, 1, 4)[2] == 0.5);
  CHECK(a_series(2, 1, 4)[1] == 0.0);
  const auto b21 = b_series(2, 1, 20), a21 = a_series(2, 1, 20);
  for (int n = 0; n <= 20; ++n) CHECK(b21[n] == a21[n]);
  const auto b22 = b_series(2, 2, 20);
  const auto hand = a_series(2, 2, 20) - 2.0 * (a11 * a11);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(b22[n] - hand[n]) <= 1e-15);
  CHECK(b22[2] == -1.0);
  CHECK(b22[3] == 0.0);
  CHECK_FAILS_WITH(a_series(3, 1, 2), ErrorKind::domain);
  CHECK_FAILS_WITH(b_series(0, 1, 5), ErrorKind::domain);
}

TEST_CASE("b series routes agree") {
  for (int k = 1; k <= 4; ++k)
    for (int l = 1; l <= 4; ++l) {
      const auto direct = b_series(k, l, 16);
      const auto logged = b_series_log_route(k, l, 16);
      for (int n = 0; n <= 16; ++n) CHECK(std::abs(direct[n] - logged[n]) <= 1e-12 * std::max(1.0, std::abs(direct[n])));
    }
}

TEST_CASE("b symmetric and majorized") {
  for (int k = 1; k <= 5; ++k)
    for (int l = 1; l <= 5; ++l) {
      const auto b = b_series(k, l, 24), bt = b_series(l, k, 24), m = b_majorant_series(k, l, 24);
      for (int n = 0; n <= 24; ++n) {
        CHECK(b[n] == bt[n]);
        CHECK(std::abs(b[n]) <= m[n] * (1 + 1e-14));
        CHECK(m[n] <= coefficient_bound(k, l, n, 0.75, true));
      }
    }
}

TEST_CASE("multinomials and surjections") {
  const int parts[] = {2, 1, 1};
  CHECK(multinomial(parts) == 12.0);
  CHECK(surjections(3, 2) == 6.0);
  CHECK(surjections(4, 4) == 24.0);
  CHECK(surjections(2, 3) == 0.0);
}

TEST_CASE("conjugate series exp and log") {
  ConjugateSeries s(6, cplx(0));
  s(1, 2) = cplx(0.2, 0.1);
  s(2, 1) = cplx(0.2, -0.1);
  s(2, 2) = cplx(-0.05, 0);
  const auto e = conj_exp(s);
  CHECK(is_conjugate_symmetric(e, 1e-15));
  const auto back = conj_log(e);
  for (int t = 0; t <= 6; ++t)
    for (int k = 0; k <= t; ++k) CHECK(std::abs(back(k, t - k) - s(k, t - k)) <= 1e-15);
  const cplx direct = std::exp(evaluate(s, 0.1, -0.2));
  CHECK(std::abs(evaluate(e, 0.1, -0.2) - direct) <= 1e-7);  // degree 7 terms are cut
  ConjugateSeries bad(3, cplx(0));
  bad(0, 0) = 1.0;
  CHECK_FAILS_WITH(conj_exp(bad), ErrorKind::domain);
}

TEST_CASE("xy basis of a real series is real") {
  ConjugateSeries s(4, cplx(0));
  s(1, 2) = 0.3;
  s(2, 1) = 0.3;
  const auto xy = to_xy_basis(s);
  CHECK(std::abs(xy(3, 0) - cplx(0.6)) <= 1e-15);
  CHECK(std::abs(xy(1, 2) - cplx(0.6)) <= 1e-15);
  CHECK(std::abs(xy(2, 1)) <= 1e-15);
  CHECK(std::abs(xy(0, 3)) <= 1e-15);
}

TEST_CASE("log J series recovers b") {
  const auto b = b_values_complex_route(0.4, 8, 60);
  for (int k = 1; k <= 4; ++k)
    for (int l = 1; k + l <= 8; ++l) {
      const double ref = b_series(k, l, 60).evaluate(0.16);
      CHECK(std::abs(b(k, l) - cplx(ref)) <= 1e-13);
    }
}

TEST_CASE("bound parameters") {
  CHECK(make_bound_params(0.5).C_r == doctest::Approx(2 * std::log(2.0)));
  CHECK_FAILS_WITH(make_bound_params(0.0), ErrorKind::domain);
  CHECK_FAILS_WITH(make_bound_params(1.0), ErrorKind::domain);
}
