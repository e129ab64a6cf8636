#include "selberg/hermite.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxHermiteOrder)
    fail(ErrorKind::domain, "Hermite order " + std::to_string(n) + " outside [0, 200]");
}

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

double hermite(int n, double x) {
  check_order(n);
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur))
    fail(ErrorKind::range, "H_" + std::to_string(n) + "(" + std::to_string(x) + ") overflows");
  return cur;
}

double gauss_phi(double x) { return 0.5 * std::erf(kSqrtPi * x); }

double weighted_hermite(int n, double x) {
  check_order(n);
  if (std::isinf(x)) return 0.0;
  // long double keeps H_n finite and e^{-t^2} above underflow for every
  // t where the product is representable.
  const long double t = static_cast<long double>(kSqrtPi) * x;
  if (t * t > 11000.0L) return 0.0;
  const long double weight = std::exp(-t * t);
  long double prev = weight, cur = 2.0L * t * weight;
  if (n == 0) return static_cast<double>(prev);
  for (int k = 1; k < n; ++k) {
    const long double next = 2.0L * t * cur - 2.0L * k * prev;
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

double hermite_rect_integral(int n, double x1, double x2) {
  check_order(n);
  if (std::isnan(x1) || std::isnan(x2)) fail(ErrorKind::domain, "NaN endpoint");
  if (x1 > x2) fail(ErrorKind::order, "integration bounds out of order");
  if (n == 0) {
    // Same-sign tails through erfc to avoid cancellation.
    if (x1 >= 0.0) return 0.5 * (std::erfc(kSqrtPi * x1) - std::erfc(kSqrtPi * x2));
    if (x2 <= 0.0) return 0.5 * (std::erfc(-kSqrtPi * x2) - std::erfc(-kSqrtPi * x1));
    return gauss_phi(x2) - gauss_phi(x1);
  }
  // sqrt(pi) int e^{-pi x^2} H_n(sqrt(pi) x) = [-e^{-pi x^2} H_{n-1}(sqrt(pi) x)]
  return (weighted_hermite(n - 1, x1) - weighted_hermite(n - 1, x2)) / kSqrtPi;
}

}  // namespace selberg
