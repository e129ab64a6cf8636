#include "selberg/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "selberg/detail/compensated.hpp"
#include "selberg/errors.hpp"

namespace selberg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_limit(std::uint64_t limit) {
  if (limit < 2) fail(ErrorKind::empty, "sieve limit " + std::to_string(limit) + " < 2");
  if (limit > kMaxSieveLimit)
    fail(ErrorKind::capacity, "sieve limit " + std::to_string(limit) + " exceeds 1e9");
}

std::vector<std::uint32_t> plain_sieve(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(1.3 * limit / std::log(double(limit)) + 16));
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

// Euler-Maclaurin tail of sum_{n>=N} n^{-s}, excluding nothing: returns
// N^{1-s}/(s-1) + N^{-s}/2 + sum_{j=1}^{5} B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1}.
double em_tail(double s, double N) {
  static constexpr std::array<double, 5> kB = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                               5.0 / 66};
  const double Ns = std::pow(N, -s);
  double result = N * Ns / (s - 1.0) + 0.5 * Ns;
  double rising = s;  // (s)_{2j-1}
  double fact = 2.0;  // (2j)!
  double power = Ns / N;
  for (std::size_t j = 1; j <= kB.size(); ++j) {
    result += kB[j - 1] / fact * rising * power;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2.0 * j + 1) * (2.0 * j + 2);
    power /= N * N;
  }
  return result;
}

constexpr int kZetaTerms = 50;

// sum_{n > M} n^{-sigma} <= (M+1)^{-sigma} (1 + (M+1)/(sigma-1)).
double rough_tail(double sigma, double M) {
  const double m1 = M + 1.0;
  return std::pow(m1, -sigma) * (1.0 + m1 / (sigma - 1.0));
}

}  // namespace

PrimeTable sieve_primes(std::uint64_t limit) {
  check_limit(limit);
  if (limit > kPlainSieveLimit) return segmented_sieve(limit);
  return PrimeTable{limit, plain_sieve(limit)};
}

PrimeTable segmented_sieve(std::uint64_t limit, std::size_t segment_bytes) {
  check_limit(limit);
  const auto root = static_cast<std::uint64_t>(std::sqrt(double(limit))) + 1;
  const std::vector<std::uint32_t> base = plain_sieve(std::max<std::uint64_t>(root, 2));

  PrimeTable table{limit, {}};
  table.primes.reserve(static_cast<std::size_t>(1.26 * limit / std::log(double(limit)) + 16));
  table.primes.push_back(2);

  // Odd numbers only: segment byte i stands for low + 2i.
  const std::size_t seg = std::max<std::size_t>(segment_bytes, 64);
  std::vector<char> sieve(seg);
  std::vector<std::uint64_t> next;  // next odd multiple per base prime
  std::size_t active = 1;           // base[0] == 2 is skipped
  for (std::uint64_t low = 3; low <= limit; low += 2 * seg) {
    std::fill(sieve.begin(), sieve.end(), 1);
    const std::uint64_t high = std::min<std::uint64_t>(low + 2 * seg - 2, limit);
    while (active < base.size() && std::uint64_t(base[active]) * base[active] <= high) {
      const std::uint64_t p = base[active];
      next.push_back(p * p);
      ++active;
    }
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::uint64_t p = base[i + 1];
      std::uint64_t m = next[i];
      if (m < low) {
        m = ((low + p - 1) / p) * p;
        if (m % 2 == 0) m += p;
      }
      for (; m <= high; m += 2 * p) sieve[(m - low) / 2] = 0;
      next[i] = m;
    }
    for (std::uint64_t n = low; n <= high; n += 2)
      if (sieve[(n - low) / 2]) table.primes.push_back(static_cast<std::uint32_t>(n));
  }
  return table;
}

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const PrimeTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[limit];
  if (!slot) slot = std::make_shared<const PrimeTable>(sieve_primes(limit));
  return slot;
}

double zeta_real_minus_one(double s) {
  if (s == 1.0) fail(ErrorKind::pole, "zeta(s) at s = 1");
  if (!(s > 1.0)) fail(ErrorKind::domain, "zeta_real requires s > 1");
  double sum = 0.0;
  // small terms first
  for (int n = kZetaTerms - 1; n >= 2; --n) sum += std::pow(double(n), -s);
  return sum + em_tail(s, kZetaTerms);
}

double zeta_real(double s) { return 1.0 + zeta_real_minus_one(s); }

int moebius(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::domain, "moebius(0)");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

double prime_power_tail_bound(double s, double x) {
  if (!(s > 1.0)) fail(ErrorKind::divergent, "prime tail bound needs s > 1");
  x = std::max(x, 2.0);
  return 1.3 * s * std::pow(x, 1.0 - s) / ((s - 1.0) * std::log(x));
}

PrimeSumResult direct_prime_sum(const PrimeTable& table, double s) {
  if (!(s > 1.0)) fail(ErrorKind::divergent, "sum of p^-s diverges for s <= 1");
  detail::CompensatedSum<double> acc;
  for (auto it = table.primes.rbegin(); it != table.primes.rend(); ++it)
    acc.add(std::pow(double(*it), -s));
  PrimeSumResult r;
  r.value = acc.value();
  r.terms_used = static_cast<std::int64_t>(table.primes.size());
  r.tail_bound = prime_power_tail_bound(s, double(table.limit)) + 6 * kEps * acc.magnitude();
  return r;
}

namespace {

PrimeSumResult moebius_tail(double s, std::span<const std::uint32_t> primes,
                            double limit, double tol) {
  if (!(s > 1.0)) fail(ErrorKind::divergent, "sum of p^-s diverges for s <= 1");
  detail::CompensatedSum<double> acc;
  double rounding = 0.0;
  PrimeSumResult r;
  const double ratio = std::pow(limit + 1.0, -s);
  for (std::uint64_t n = 1;; ++n) {
    const double sigma = double(n) * s;
    const double remainder = rough_tail(sigma, limit) / double(n) / (1.0 - ratio);
    if (remainder <= 0.25 * tol || remainder < 1e-300) {
      r.tail_bound = remainder;
      break;
    }
    if (n > 100000) fail(ErrorKind::precision, "Moebius series for P(s) did not converge");
    const int mu = moebius(n);
    if (mu == 0) continue;
    // log zeta_M(sigma) = log zeta(sigma) + sum_{p<=M} log(1 - p^-sigma)
    const double zm1 = zeta_real_minus_one(sigma);
    detail::CompensatedSum<double> lz;
    lz.add(std::log1p(zm1));
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
      const double q = std::pow(double(*it), -sigma);
      if (q == 0.0) continue;
      lz.add(std::log1p(-q));
    }
    const double term = mu * lz.value() / double(n);
    acc.add(term);
    rounding += (8 * kEps * lz.magnitude() + 1e-15 * std::log1p(zm1)) / double(n);
    ++r.terms_used;
  }
  r.value = acc.value();
  r.tail_bound += rounding + 4 * kEps * acc.magnitude();
  return r;
}

}  // namespace

PrimeSumResult prime_zeta_tail(double s, const PrimeTable& table, double tol) {
  if (!(tol > 0)) fail(ErrorKind::domain, "tolerance must be positive");
  return moebius_tail(s, table.primes, double(table.limit), tol);
}

PrimeSumResult prime_zeta(double s, double tol, const PrimeZetaOptions& opts) {
  if (!(s > 1.0)) fail(ErrorKind::divergent, "P(s) diverges for s <= 1");
  if (!(tol > 0)) fail(ErrorKind::domain, "tolerance must be positive");
  const std::uint64_t M = std::max<std::uint64_t>(opts.direct_limit, 2);
  const auto table = shared_primes(M);

  // Past x0 every remaining prime together is below 1e-40; no need to pow them.
  const double x0 = std::max(3.0, std::pow(1e-40 * (s - 1.0), 1.0 / (1.0 - s)));
  double cut = double(M);
  std::span<const std::uint32_t> used(table->primes);
  if (x0 < cut) {
    cut = x0;
    const auto end = std::upper_bound(used.begin(), used.end(), static_cast<std::uint32_t>(x0));
    used = used.first(static_cast<std::size_t>(end - used.begin()));
  }

  detail::CompensatedSum<double> direct;
  for (auto it = used.rbegin(); it != used.rend(); ++it) direct.add(std::pow(double(*it), -s));
  const double direct_err = 6 * kEps * direct.magnitude();

  const PrimeSumResult tail = moebius_tail(s, used, cut, std::max(tol - direct_err, 0.5 * tol));
  PrimeSumResult r;
  r.value = direct.value() + tail.value;
  r.tail_bound = tail.tail_bound + direct_err + kEps * std::abs(r.value);
  r.terms_used = static_cast<std::int64_t>(used.size()) + tail.terms_used;
  if (r.tail_bound > tol)
    fail(ErrorKind::precision, "P(" + std::to_string(s) + ") error bound " +
                                   std::to_string(r.tail_bound) + " exceeds tolerance");
  return r;
}

double sigma_T(double theta, double T) {
  if (!(T > 1.0)) fail(ErrorKind::domain, "T must exceed 1");
  return 0.5 + std::pow(std::log(T), -theta);
}

PrimeSumResult psi_sigma(double sigma, double tol, const PrimeZetaOptions& opts) {
  if (!(sigma > 0.5)) fail(ErrorKind::domain, "psi needs sigma > 1/2");
  PrimeSumResult r;
  double bounds = 0.0;
  for (int k = 1;; ++k) {
    const PrimeSumResult pk = prime_zeta(2.0 * k * sigma, 0.1 * tol, opts);
    const double term = pk.value / (double(k) * k);
    r.value += term;
    bounds += pk.tail_bound / (double(k) * k);
    r.terms_used += pk.terms_used;
    if (term < 1e-18 * r.value) {
      // sum_{j>k} P(2j sigma)/j^2 <= P(2(k+1) sigma) / (1 - 2^{-2 sigma}),
      // and P(2(k+1) sigma) <= 2^{-2 sigma} P(2k sigma).
      const double next = (pk.value + pk.tail_bound) * std::pow(2.0, -2.0 * sigma);
      r.tail_bound = bounds + next / (1.0 - std::pow(2.0, -2.0 * sigma));
      break;
    }
    if (k > 10000) fail(ErrorKind::precision, "psi series did not converge");
  }
  return r;
}

PrimeSumResult psi_T(double theta, double T, const PrimeZetaOptions& opts) {
  if (!(theta > 0.0 && theta < 0.5)) fail(ErrorKind::domain, "theta must lie in (0, 1/2)");
  if (!(T >= 100.0)) fail(ErrorKind::domain, "T must be >= 100");
  const double sigma = sigma_T(theta, T);
  if (!(sigma > 0.5)) fail(ErrorKind::domain, "sigma_T collapsed onto 1/2");
  return psi_sigma(sigma, 1e-13, opts);
}

double psi_restricted(std::span<const std::uint32_t> primes, double sigma, int kmax) {
  double total = 0.0;
  for (const auto p : primes)
    for (int k = 1; k <= kmax; ++k) total += std::pow(double(p), -2.0 * k * sigma) / (double(k) * k);
  return total;
}

}  // namespace selberg
