#include <cmath>
#include <complex>
#include <numbers>

#include "selberg/coeffs.hpp"
#include "selberg/series.hpp"
#include "test_util.hpp"

using namespace selberg;

TEST_CASE("expansion parameters") {
  const auto p = ExpansionParams::make(0.3, 1e6);
  CHECK(p.sigma_T == doctest::Approx(0.95487275).epsilon(1e-8));
  CHECK(p.psi == doctest::Approx(0.5249027713).epsilon(1e-9));
  CHECK(p.degree == 8);
  CHECK_FAILS_WITH(ExpansionParams::make(0.0, 1e6), ErrorKind::domain);
  CHECK_FAILS_WITH(ExpansionParams::make(0.6, 1e6), ErrorKind::domain);
  CHECK_FAILS_WITH(ExpansionParams::make(0.3, 50.0), ErrorKind::domain);
  CHECK_FAILS_WITH(ExpansionParams::make(0.3, 1e6, -1), ErrorKind::domain);
}

TEST_CASE("family names") {
  for (Family f : {Family::a, Family::b, Family::b_tilde, Family::b_prime, Family::d})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK_FAILS_WITH(family_from_string("c"), ErrorKind::domain);
}

TEST_CASE("series tables") {
  const auto a = a_table(4, 6);
  CHECK(a.family == Family::a);
  const auto* e = a.find(2, 1, 2);
  REQUIRE(e != nullptr);
  CHECK(e->value == 0.5);
  const auto b = b_table(4, 6);
  const auto* b11 = b.find(1, 1, 3);
  REQUIRE(b11 != nullptr);
  CHECK(b11->value == 1.0 / 9.0);
}

TEST_CASE("b prime table") {
  const auto t = b_prime_table(6, 1e-12);
  CHECK(t.family == Family::b_prime);
  CHECK_FALSE(t.value(1, 1).has_value());
  REQUIRE(t.value(1, 2).has_value());
  CHECK(std::abs(*t.value(1, 2) - 0.019471078652907) <= 1e-13);
  CHECK(*t.value(1, 2) == *t.value(2, 1));
  for (const auto& e : t.entries) {
    CHECK(e.k + e.l >= 3);
    CHECK(e.bound <= 1e-12);
  }
}

TEST_CASE("b tilde scales by (2 pi i)^(k+l)") {
  const auto bp = b_prime_table(5, 1e-12);
  const auto bt = b_tilde_table(bp);
  CHECK(bt.family == Family::b_tilde);
  for (const auto& e : bt.entries) {
    const std::complex<double> expect =
        std::pow(std::complex<double>(0, 2 * std::numbers::pi), e.k + e.l) * *bp.value(e.k, e.l);
    CHECK(std::abs(std::complex<double>(e.value, e.imag) - expect) <= 1e-12 * std::abs(expect));
  }
  CHECK_FAILS_WITH(b_tilde_table(bt), ErrorKind::domain);
}

TEST_CASE("d table structure") {
  const auto trivial = d_table(0);
  REQUIRE(trivial.entries.size() == 1);
  CHECK(trivial.value(0, 0) == 1.0);
  const auto two = d_table(2);
  for (const auto& e : two.entries) CHECK(e.value == (e.k == 0 && e.l == 0 ? 1.0 : 0.0));
  const auto bp = b_prime_table(10, 1e-12);
  const auto d = d_table(bp);
  CHECK(d.value(0, 0) == 1.0);
  const double b12 = *bp.value(1, 2);
  CHECK(std::abs(*d.value(3, 0) - 2 * b12) <= 1e-12);
  CHECK(std::abs(*d.value(1, 2) - 2 * b12) <= 1e-12);
  CHECK(std::abs(*d.value(2, 1)) <= 1e-13);
  CHECK(std::abs(*d.value(0, 3)) <= 1e-13);
  for (const auto& e : d.entries)
    if (e.l % 2 == 1 || e.k + e.l == 1 || e.k + e.l == 2) CHECK(std::abs(e.value) <= 1e-13);
}

TEST_CASE("d decay report") {
  const auto r = d_decay_check(d_table(12), 0.3);
  CHECK(r.bounded);
  CHECK(r.rows.size() == 13);
  CHECK(r.rows[1] == 0.0);
  CHECK(r.rows[2] == 0.0);
  CHECK(r.rows[0] == 1.0);
  CHECK_FAILS_WITH(d_decay_check(b_prime_table(4, 1e-12), 0.3), ErrorKind::domain);
  CHECK_FAILS_WITH(d_decay_check(d_table(4), 0.0), ErrorKind::domain);
}

TEST_CASE("default delta3 is just below its supremum") {
  const double r = 1 / std::numbers::sqrt2;
  const double sup = std::numbers::sqrt2 / (std::numbers::e * make_bound_params(r).C_r);
  CHECK(default_delta3() < sup);
  CHECK(std::nextafter(default_delta3(), 1.0) == doctest::Approx(sup).epsilon(1e-15));
}
