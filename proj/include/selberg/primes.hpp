#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace selberg {

struct PrimeTable {
  std::uint64_t limit = 0;            // inclusive sieve bound
  std::vector<std::uint32_t> primes;  // ascending, all primes <= limit
};

/// Value of a truncated prime sum together with a bound on everything the
/// truncation (and accumulated rounding) left out.
struct PrimeSumResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
};

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;
inline constexpr std::uint64_t kPlainSieveLimit = 10'000'000;

// Plain sieve up to kPlainSieveLimit, segmented above it.
PrimeTable sieve_primes(std::uint64_t limit);
PrimeTable segmented_sieve(std::uint64_t limit, std::size_t segment_bytes = 1 << 18);

// Process-wide cache so repeated callers share one immutable table.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

// Riemann zeta for real s > 1 (Euler-Maclaurin, 50 terms, B_2..B_10), and
// zeta(s) - 1 without cancellation for large s.
double zeta_real(double s);
double zeta_real_minus_one(double s);

int moebius(std::uint64_t n);

// Upper bound for sum_{p > x} p^{-s} from pi(t) <= 1.3 t / log t and partial
// summation. Requires s > 1, x >= 2.
double prime_power_tail_bound(double s, double x);

// sum_{p <= table.limit} p^{-s}; tail_bound covers the primes above the limit.
PrimeSumResult direct_prime_sum(const PrimeTable& table, double s);

struct PrimeZetaOptions {
  std::uint64_t direct_limit = 1000;  // primes up to here are summed directly
};

// P(s) = sum_p p^{-s}. Primes above the direct limit are handled by
// P_M(s) = sum_n mu(n)/n log zeta_M(ns), zeta_M = zeta * prod_{p<=M}(1-p^{-s}).
PrimeSumResult prime_zeta(double s, double tol, const PrimeZetaOptions& opts = {});

// sum_{p > table.limit} p^{-s} via the Moebius route alone.
PrimeSumResult prime_zeta_tail(double s, const PrimeTable& table, double tol);

double sigma_T(double theta, double T);

// sum_p sum_{k>=1} k^{-2} p^{-2k sigma}, sigma > 1/2.
PrimeSumResult psi_sigma(double sigma, double tol = 1e-13,
                         const PrimeZetaOptions& opts = {});
PrimeSumResult psi_T(double theta, double T, const PrimeZetaOptions& opts = {});

// Same double sum restricted to the given primes and k <= kmax.
double psi_restricted(std::span<const std::uint32_t> primes, double sigma, int kmax);

}  // namespace selberg
