#include <cmath>
#include <numbers>

#include "selberg/oracles.hpp"
#include "selberg/primes.hpp"
#include "test_util.hpp"

using namespace selberg;

TEST_CASE("sieve small limits") {
  CHECK(sieve_primes(10).primes == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(sieve_primes(2).primes == std::vector<std::uint32_t>{2});
  CHECK_FAILS_WITH(sieve_primes(1), ErrorKind::empty);
  CHECK_FAILS_WITH(sieve_primes(kMaxSieveLimit + 1), ErrorKind::capacity);
}

TEST_CASE("sieve count against trial division") {
  const auto table = sieve_primes(1'000'000);
  CHECK(table.primes.size() == 78498);
  CHECK(oracle::count_primes_trial(1'000'000) == 78498);
  CHECK(table.limit == 1'000'000);
}

TEST_CASE("segmented sieve matches the plain sieve") {
  const auto plain = sieve_primes(3'000'000);
  CHECK(segmented_sieve(3'000'000, 1 << 14).primes == plain.primes);
  CHECK(segmented_sieve(3'000'003, 1 << 12).primes == plain.primes);
}

TEST_CASE("shared tables are reused") {
  CHECK(shared_primes(5000).get() == shared_primes(5000).get());
}

TEST_CASE("moebius") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(2) == -1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  CHECK_FAILS_WITH(moebius(0), ErrorKind::domain);
}

TEST_CASE("real zeta") {
  CHECK(zeta_real(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));
  CHECK(zeta_real_minus_one(40.0) == doctest::Approx(std::pow(2.0, -40) + std::pow(3.0, -40)).epsilon(1e-12));
  CHECK_FAILS_WITH(zeta_real(1.0), ErrorKind::pole);
  CHECK_FAILS_WITH(zeta_real(0.5), ErrorKind::domain);
}

TEST_CASE("prime zeta values") {
  const auto p2 = prime_zeta(2.0, 1e-12);
  CHECK(std::abs(p2.value - 0.4522474200410656) <= 1e-12);
  CHECK(p2.tail_bound <= 1e-12);
  const auto p20 = prime_zeta(20.0, 1e-15);
  const double head = std::pow(2.0, -20) + std::pow(3.0, -20) + std::pow(5.0, -20);
  CHECK(p20.value == doctest::Approx(head).epsilon(1e-6));
  CHECK_FAILS_WITH(prime_zeta(1.0, 1e-12), ErrorKind::divergent);
  CHECK_FAILS_WITH(prime_zeta(2.0, 0.0), ErrorKind::domain);
}

TEST_CASE("prime zeta tail plus head is the whole sum") {
  const auto table = shared_primes(1000);
  for (double s : {1.7, 2.5, 4.0}) {
    const double whole = prime_zeta(s, 1e-13).value;
    const double split = direct_prime_sum(*table, s).value + prime_zeta_tail(s, *table, 1e-13).value;
    CHECK(std::abs(whole - split) <= 1e-12);
  }
}

TEST_CASE("tail bound dominates the actual tail") {
  const auto small = shared_primes(10000);
  const auto big = shared_primes(1'000'000);
  for (double s : {1.5, 2.0, 3.0}) {
    const double between = direct_prime_sum(*big, s).value - direct_prime_sum(*small, s).value;
    CHECK(between <= prime_power_tail_bound(s, 10000.0));
  }
  CHECK_FAILS_WITH(prime_power_tail_bound(1.0, 100.0), ErrorKind::divergent);
}

TEST_CASE("sigma_T and psi") {
  CHECK(sigma_T(0.3, 1e6) == doctest::Approx(0.95487275).epsilon(1e-8));
  const std::uint32_t two[] = {2};
  CHECK(psi_restricted(two, 1.0, 2) == 0.265625);
  const auto psi = psi_T(0.3, 1e6);
  CHECK(std::abs(psi.value - 0.5249027713) <= 1e-9);
  CHECK(std::abs(psi.value - 0.3 * std::log(std::log(1e6))) <= 2.0);
  CHECK_FAILS_WITH(sigma_T(0.3, 1.0), ErrorKind::domain);
  CHECK_FAILS_WITH(psi_sigma(0.5), ErrorKind::domain);
}
