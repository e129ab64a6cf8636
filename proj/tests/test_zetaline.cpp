#include <cmath>
#include <complex>
#include <numbers>

#include "selberg/oracles.hpp"
#include "selberg/zetaline.hpp"
#include "test_util.hpp"

using namespace selberg;
using cplx = std::complex<double>;

TEST_CASE("zeta at even integers") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(zeta_em(cplx(2, 0)) - pi * pi / 6) <= 1e-13);
  CHECK(std::abs(zeta_em(cplx(4, 0)) - std::pow(pi, 4) / 90) <= 1e-13);
  CHECK_FAILS_WITH(zeta_em(cplx(1, 0)), ErrorKind::pole);
  CHECK_FAILS_WITH(zeta_em(cplx(-0.5, 3)), ErrorKind::domain);
  CHECK_FAILS_WITH(zeta_em(cplx(0.7, 2e8)), ErrorKind::domain);
}

TEST_CASE("zeta agrees with the eta oracle") {
  for (cplx s : {cplx(0.5, 20.0), cplx(0.8, 100.0), cplx(0.95, 1234.5), cplx(2.5, -7.0)}) {
    const cplx a = zeta_em(s), b = oracle::zeta_eta(s);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("zeta commutes with conjugation") {
  const cplx s(0.9, 321.0);
  CHECK(std::abs(zeta_em(std::conj(s)) - std::conj(zeta_em(s))) <= 1e-12 * std::abs(zeta_em(s)));
}

TEST_CASE("config validation") {
  ZetaEvalConfig cfg;
  cfg.bernoulli_order = 13;
  CHECK_FAILS_WITH(validate(cfg), ErrorKind::domain);
  cfg = {};
  cfg.sigma_path_step = 0.5;
  CHECK_FAILS_WITH(validate(cfg), ErrorKind::domain);
  cfg = {};
  cfg.euler_maclaurin_N = -3;
  CHECK_FAILS_WITH(validate(cfg), ErrorKind::domain);
}

TEST_CASE("log zeta on the line") {
  const auto s = log_zeta_line(0.95, 1000.0);
  CHECK(std::abs(std::exp(s.value) - zeta_em(cplx(0.95, 1000.0))) <= 1e-10 * std::abs(std::exp(s.value)));
  CHECK(s.max_increment < 1.0);
  CHECK(s.increments > 0);
  const auto c = log_zeta_line(0.95, -1000.0);
  CHECK(std::abs(c.value - std::conj(s.value)) <= 1e-10);
  CHECK_FAILS_WITH(log_zeta_line(0.5, 100.0), ErrorKind::domain);
  CHECK_FAILS_WITH(log_zeta_line(0.9, 1.0), ErrorKind::domain);
}

TEST_CASE("path evaluator agrees with the direct evaluation") {
  const ZetaPathEvaluator ev(0.95, 5000.0);
  for (double t : {2.5, 777.7, 4999.0}) {
    const auto a = ev.evaluate(t);
    const auto b = log_zeta_line(0.95, t);
    CHECK(std::abs(a.value - b.value) <= 1e-9);
  }
  CHECK_FAILS_WITH(ev.evaluate(6000.0), ErrorKind::domain);
}

TEST_CASE("empirical zeta measure") {
  const auto m = empirical_zeta_measure(0.3, 1000.0, 40, 7);
  CHECK(m.samples.size() + m.exclusions == 40);
  CHECK(m.source != "random-model");
  CHECK(m.theta == 0.3);
  CHECK(m.T == 1000.0);
  CHECK(empirical_zeta_measure(0.3, 1000.0, 40, 7).samples == m.samples);
  CHECK_FAILS_WITH(empirical_zeta_measure(0.3, 1000.0, 0), ErrorKind::domain);
  CHECK_FAILS_WITH(empirical_zeta_measure(0.3, 1e8, 10), ErrorKind::domain);
}
