#include "selberg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "selberg/errors.hpp"
#include "selberg/primes.hpp"
#include "selberg/series.hpp"

namespace selberg::oracle {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Every composition of total into parts positive integers.
void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int slots) -> void {
    if (slots == 1) {
      current.push_back(remaining);
      visit(current);
      current.pop_back();
      return;
    }
    for (int first = 1; first <= remaining - (slots - 1); ++first) {
      current.push_back(first);
      self(self, remaining - first, slots - 1);
      current.pop_back();
    }
  };
  if (parts >= 1 && total >= parts) recurse(recurse, total, parts);
}

// Compositions are enumerated outright while their number stays small;
// larger cases split on the first part and memoize the remainder.
double composition_sum_memo(int k, int n) {
  static std::mutex lock;
  static std::map<std::pair<int, int>, double> memo;
  if (k == 1) return 1.0 / n;
  if (n < k) return 0.0;
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = memo.find({k, n});
    if (it != memo.end()) return it->second;
  }
  double total = 0.0;
  for (int first = 1; first <= n - k + 1; ++first) total += composition_sum_memo(k - 1, n - first) / first;
  std::lock_guard<std::mutex> guard(lock);
  memo[{k, n}] = total;
  return total;
}

double multinomial_exact(int total, const std::vector<int>& parts) {
  double result = factorial(total);
  for (int p : parts) result /= factorial(p);
  return std::round(result);
}

}  // namespace

double composition_sum(int k, int n) {
  if (k < 1 || n < 1) fail(ErrorKind::domain, "composition_sum needs k, n >= 1");
  if (n <= 16) {
    double total = 0.0;
    for_each_composition(n, k, [&](const std::vector<int>& parts) {
      double prod = 1.0;
      for (int p : parts) prod *= p;
      total += 1.0 / prod;
    });
    return total;
  }
  return composition_sum_memo(k, n);
}

double a_coefficient(int k, int l, int n) {
  if (n < std::max(k, l)) return 0.0;
  return composition_sum(k, n) * composition_sum(l, n);
}

double b_coefficient(int k, int l, int m) {
  if (k < 1 || l < 1) fail(ErrorKind::domain, "b_coefficient needs k, l >= 1");
  double total = 0.0;
  for (int n = 1; n <= std::min(k, l); ++n) {
    const double sign = (n % 2 == 1 ? 1.0 : -1.0) / n;
    for_each_composition(k, n, [&](const std::vector<int>& ks) {
      for_each_composition(l, n, [&](const std::vector<int>& ls) {
        const double weight = multinomial_exact(k, ks) * multinomial_exact(l, ls);
        // [q^m] prod_i a_{k_i, l_i}(q): distribute m over the n factors.
        std::vector<double> poly(m + 1, 0.0);
        poly[0] = 1.0;
        for (int i = 0; i < n; ++i) {
          std::vector<double> next(m + 1, 0.0);
          for (int have = 0; have <= m; ++have) {
            if (poly[have] == 0.0) continue;
            for (int add = std::max(ks[i], ls[i]); have + add <= m; ++add)
              next[have + add] += poly[have] * a_coefficient(ks[i], ls[i], add);
          }
          poly.swap(next);
        }
        total += sign * weight * poly[m];
      });
    });
  }
  return total;
}

std::uint64_t count_primes_trial(std::uint64_t limit) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) ++count;
  }
  return count;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, tol, &error);
  return value;
}

double integrate2(const std::function<double(double, double)>& f, double a, double b, double c,
                  double d, double tol) {
  return integrate(
      [&](double x) { return integrate([&](double y) { return f(x, y); }, c, d, tol); }, a, b, tol);
}

double zeta_direct(double s, std::uint64_t M) {
  if (!(s > 1.0)) fail(ErrorKind::domain, "zeta_direct needs s > 1");
  long double total = 0.0L;
  for (std::uint64_t n = M - 1; n >= 1; --n) total += std::pow(static_cast<long double>(n), -s);
  const long double m = static_cast<long double>(M);
  total += 0.5L * std::pow(m, -s) + std::pow(m, 1.0L - s) / (s - 1.0L);
  return static_cast<double>(total);
}

std::complex<double> zeta_eta(std::complex<double> s) {
  using lc = std::complex<long double>;
  // Boole summation: sum_{n >= N} (-1)^{n-N} f(n) = (1/2 - D/4 + D^3/48 - ...) f(N),
  // the operator series of 1 / (1 + e^D).
  static constexpr long double kBoole[] = {
      1.0L / 2.0L,          -1.0L / 4.0L,          1.0L / 48.0L,
      -1.0L / 480.0L,       17.0L / 80640.0L,      -31.0L / 1451520.0L,
      691.0L / 319334400.0L, -5461.0L / 24908083200.0L};
  const lc z(s.real(), s.imag());
  const long double t = std::abs(s.imag());
  const std::uint64_t N = static_cast<std::uint64_t>(std::ceil(std::max(40.0L, 2.0L * (t + 40.0L))));
  lc eta = 0.0L;
  for (std::uint64_t n = 1; n < N; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    const lc term = std::exp(-z * ln);
    eta += (n % 2 == 1) ? term : -term;
  }
  // f(x) = x^{-s}; f^{(j)}(N) = (-1)^j s (s+1) ... (s+j-1) N^{-s-j}.
  const long double nN = static_cast<long double>(N);
  lc tail = 0.0L;
  lc deriv = std::exp(-z * std::log(nN));
  int order = 0;
  for (long double c : kBoole) {
    const int j = order == 0 ? 0 : 2 * order - 1;
    lc dj = deriv;
    for (int i = 0; i < j; ++i) dj *= -(z + static_cast<long double>(i)) / nN;
    tail += c * dj;
    ++order;
  }
  eta += (N % 2 == 1) ? tail : -tail;
  const lc denom = 1.0L - std::exp((1.0L - z) * std::log(2.0L));
  const lc zeta = eta / denom;
  return {static_cast<double>(zeta.real()), static_cast<double>(zeta.imag())};
}

double hermite_rodrigues(int n, double x) {
  using ld = long double;
  auto diff = [&](ld h) {
    ld total = 0.0L, binom = 1.0L;
    for (int j = 0; j <= n; ++j) {
      const ld y = x + (n / 2.0L - j) * h;
      total += (j % 2 ? -1.0L : 1.0L) * binom * std::exp(-y * y);
      binom = binom * (n - j) / (j + 1);
    }
    return total / std::pow(h, n);
  };
  // Central differences carry an even error series in h; Richardson tableau.
  constexpr int kLevels = 4;
  ld table[kLevels][kLevels];
  ld h = 0.2L;
  for (int i = 0; i < kLevels; ++i, h /= 2) {
    table[i][0] = diff(h);
    ld factor = 4.0L;
    for (int j = 1; j <= i; ++j, factor *= 4.0L)
      table[i][j] = (factor * table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0L);
  }
  const ld derivative = table[kLevels - 1][kLevels - 1];
  return static_cast<double>((n % 2 ? -1.0L : 1.0L) * std::exp(ld(x) * x) * derivative);
}

double hermite_explicit(int n, double x) {
  double total = 0.0;
  for (int m = 0; 2 * m <= n; ++m)
    total += (m % 2 ? -1.0 : 1.0) * std::pow(2 * x, n - 2 * m) / (factorial(m) * factorial(n - 2 * m));
  return factorial(n) * total;
}

DirectPrimeSum b_prime_direct(int k, int l, std::uint64_t limit) {
  constexpr int kTerms = 160;
  const int first = std::max(k, l);
  std::vector<double> beta(kTerms + 1, 0.0);
  for (int m = first; m <= kTerms; ++m) beta[m] = b_coefficient(k, l, m);

  DirectPrimeSum out;
  long double total = 0.0L;
  for (auto p : shared_primes(limit)->primes) {
    const double q = 1.0 / double(p);
    long double value = 0.0L, qm = std::pow(static_cast<long double>(q), first);
    for (int m = first; m <= kTerms; ++m) {
      const long double term = beta[m] * qm;
      value += term;
      if (std::abs(term) < 1e-22L * std::abs(value) && m > first + 2) break;
      qm *= q;
    }
    total += value;
  }
  // Series truncation: |beta_m| <= L^{k+l} S rho^{-m} with rho = 0.75, and
  // sum_p p^{-m} <= 2^{1-m} for the powers left out.
  const double series_tail = coefficient_bound(k, l, kTerms + 1, 0.75, true) *
                             std::pow(0.5 / 0.75, kTerms + 1) * 2.0 / (1.0 - 0.5 / 0.75);
  double prime_tail = 0.0;
  for (int m = first; m <= kTerms; ++m) {
    const double piece = std::abs(beta[m]) * prime_power_tail_bound(m, double(limit));
    prime_tail += piece;
    if (piece < 1e-30) break;
  }
  const double scale = std::pow(2.0, k + l) * factorial(k) * factorial(l);
  out.value = static_cast<double>(total) / scale;
  out.tail_bound = (prime_tail + series_tail + 1e-15 * std::abs(double(total))) / scale;
  return out;
}

}  // namespace selberg::oracle
