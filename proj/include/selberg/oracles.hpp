#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

// Independent reference computations used by the verification suites. None of
// these share code paths with the production routines they check.
namespace selberg::oracle {

// sum over compositions n = n_1 + ... + n_k (n_i >= 1) of 1 / (n_1 ... n_k),
// by explicit enumeration.
double composition_sum(int k, int n);

// Coefficient of w^{2n} in a_{k,l}(w) and b_{k,l}(w) by enumeration: the
// b-coefficient expands the alternating multinomial sum over splittings of
// k and l into n parts, with a-products convolved term by term.
double a_coefficient(int k, int l, int n);
double b_coefficient(int k, int l, int n);

// Number of primes <= limit by trial division.
std::uint64_t count_primes_trial(std::uint64_t limit);

// Adaptive Gauss-Kronrod (15 point) on [a, b]; infinite limits allowed.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

// Nested adaptive quadrature over [a, b] x [c, d].
double integrate2(const std::function<double(double, double)>& f, double a, double b, double c,
                  double d, double tol = 1e-11);

// zeta(s), real s > 1: sum_{n < M} n^{-s} + M^{-s}/2 + M^{1-s}/(s-1).
double zeta_direct(double s, std::uint64_t M = 1000000);

// zeta(s) = eta(s) / (1 - 2^{1-s}), eta summed directly up to N and the
// alternating remainder closed by Boole summation.
std::complex<double> zeta_eta(std::complex<double> s);

// (-1)^n e^{x^2} (d/dx)^n e^{-x^2} from central differences, Richardson-extrapolated.
double hermite_rodrigues(int n, double x);

// H_n by the explicit sum n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!).
double hermite_explicit(int n, double x);

struct DirectPrimeSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

// sum_{p <= limit} b_{k,l}(p^{-1/2}) / (2^{k+l} k! l!) with b_{k,l} summed
// from the enumerated coefficients; the bound covers primes above limit and
// the series truncation.
DirectPrimeSum b_prime_direct(int k, int l, std::uint64_t limit);

}  // namespace selberg::oracle
