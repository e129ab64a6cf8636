#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "selberg/errors.hpp"

namespace selberg {

/// Real power series truncated after z^N. Every operation is exact
/// truncation: coefficient n of a result only reads coefficients <= n of the
/// operands. Mixed-order operands produce a result of the smaller order.
class TruncatedSeries {
 public:
  TruncatedSeries() : c_(1, 0.0) {}
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, 0.0) {}
  explicit TruncatedSeries(std::vector<double> coeffs);

  std::size_t order() const { return c_.size() - 1; }
  double operator[](std::size_t n) const { return n < c_.size() ? c_[n] : 0.0; }
  double& operator[](std::size_t n) { return c_.at(n); }
  std::span<const double> coeffs() const { return c_; }

  double evaluate(double z) const;
  bool is_zero() const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(double scale);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, double s) { return a *= s; }
  friend TruncatedSeries operator*(double s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  static TruncatedSeries exp(const TruncatedSeries& s);  // requires s[0] == 0
  static TruncatedSeries log(const TruncatedSeries& s);  // requires s[0] > 0

 private:
  std::vector<double> c_;
};

inline bool is_zero(const TruncatedSeries& s) { return s.is_zero(); }
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }
inline bool is_zero(double x) { return x == 0.0; }

/// Bivariate series in two formal variables truncated at total degree D,
/// coefficient (k, l) multiplying X^k Y^l. The coefficient ring R only needs
/// +, R * R and R * double.
template <class R>
class BivariateSeries {
 public:
  BivariateSeries(int degree, R zero)
      : degree_(degree), zero_(zero),
        c_(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), zero) {
    if (degree < 0) fail(ErrorKind::domain, "negative series degree");
  }

  int degree() const { return degree_; }
  const R& zero() const { return zero_; }
  bool contains(int k, int l) const { return k >= 0 && l >= 0 && k + l <= degree_; }

  const R& operator()(int k, int l) const {
    return contains(k, l) ? c_[index(k, l)] : zero_;
  }
  R& operator()(int k, int l) {
    if (!contains(k, l)) fail(ErrorKind::domain, "coefficient outside truncation");
    return c_[index(k, l)];
  }

  friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
    BivariateSeries out(std::min(a.degree_, b.degree_), a.zero_);
    for (int t = 0; t <= out.degree_; ++t)
      for (int k = 0; k <= t; ++k) {
        out(k, t - k) = a(k, t - k);
        out(k, t - k) += b(k, t - k);
      }
    return out;
  }

  BivariateSeries& operator*=(double scale) {
    for (auto& c : c_) c *= scale;
    return *this;
  }

  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    BivariateSeries out(std::min(a.degree_, b.degree_), a.zero_);
    for (int t1 = 0; t1 <= out.degree_; ++t1)
      for (int k1 = 0; k1 <= t1; ++k1) {
        const R& x = a(k1, t1 - k1);
        if (is_zero(x)) continue;
        for (int t2 = 0; t1 + t2 <= out.degree_; ++t2)
          for (int k2 = 0; k2 <= t2; ++k2) {
            const R& y = b(k2, t2 - k2);
            if (is_zero(y)) continue;
            out(k1 + k2, t1 - k1 + t2 - k2) += x * y;
          }
      }
    return out;
  }

 private:
  static std::size_t index(int k, int l) {
    const int t = k + l;
    return static_cast<std::size_t>(t * (t + 1) / 2 + l);
  }

  int degree_;
  R zero_;
  std::vector<R> c_;
};

namespace detail {

// Sum over j of j * a_j * b_{m-j} restricted to the degree-m component, where
// a_j, b_i denote homogeneous components.
template <class R>
R euler_convolution(const BivariateSeries<R>& a, const BivariateSeries<R>& b, int k, int l,
                    int jmax) {
  const int m = k + l;
  R acc = a.zero();
  for (int j = 1; j <= jmax; ++j)
    for (int k1 = std::max(0, k - (m - j)); k1 <= std::min(k, j); ++k1) {
      const int l1 = j - k1;
      if (l1 > l) continue;
      const R& x = a(k1, l1);
      const R& y = b(k - k1, l - l1);
      if (is_zero(x) || is_zero(y)) continue;
      acc += (x * y) * double(j);
    }
  return acc;
}

}  // namespace detail

// exp via the degree operator E = X d/dX + Y d/dY: E(e^g) = E(g) e^g, solved
// one homogeneous degree at a time. Requires a zero constant term.
template <class R>
BivariateSeries<R> series_exp(const BivariateSeries<R>& g, R one) {
  if (!is_zero(g(0, 0))) fail(ErrorKind::domain, "exp needs a zero constant term");
  BivariateSeries<R> h(g.degree(), g.zero());
  h(0, 0) = one;
  for (int m = 1; m <= g.degree(); ++m)
    for (int k = 0; k <= m; ++k)
      h(k, m - k) = detail::euler_convolution(g, h, k, m - k, m) * (1.0 / m);
  return h;
}

// log of a series with unit constant term: m G_m = m H_m - sum_{j<m} j G_j H_{m-j}.
template <class R>
BivariateSeries<R> series_log_unit(const BivariateSeries<R>& h) {
  BivariateSeries<R> g(h.degree(), h.zero());
  for (int m = 1; m <= h.degree(); ++m)
    for (int k = 0; k <= m; ++k) {
      const int l = m - k;
      R acc = h(k, l) * double(m);
      R conv = detail::euler_convolution(g, h, k, l, m - 1);
      conv *= -1.0;
      acc += conv;
      g(k, l) = acc * (1.0 / m);
    }
  return g;
}

/// Series in the conjugate coordinates z = x + iy, zbar = x - iy: coefficient
/// (k, l) multiplies z^k zbar^l.
using ConjugateSeries = BivariateSeries<std::complex<double>>;

ConjugateSeries conj_exp(const ConjugateSeries& s);
ConjugateSeries conj_log(const ConjugateSeries& s);
ConjugateSeries conj_mul(const ConjugateSeries& a, const ConjugateSeries& b);

// coeff(k,l) == conj(coeff(l,k)) within tol: the series is real on (x, y).
bool is_conjugate_symmetric(const ConjugateSeries& s, double tol);

// Re-expands in monomials x^k y^l (complex coefficients; real when the input
// is conjugate symmetric).
BivariateSeries<std::complex<double>> to_xy_basis(const ConjugateSeries& s);

std::complex<double> evaluate(const ConjugateSeries& s, double x, double y);

struct BoundParams {
  double r = 0.5;
  double C_r = 0.0;  // -log(1 - r) / r
};
BoundParams make_bound_params(double r);

/// [z^n] (-log(1-z))^k for n <= N: the sum over compositions of n into k
/// positive parts of 1/(n_1 ... n_k).
TruncatedSeries neglog_power_coeffs(int k, int N);

// a_{k,l}(w) as a series in q = w^2: coefficient n is c_k(n) c_l(n).
TruncatedSeries a_series(int k, int l, int N);

// b_{k,l}(w) in q = w^2 via the multinomial sum over products of a-series.
TruncatedSeries b_series(int k, int l, int N);

// Coefficientwise majorant of b_series: the same sum with every sign made
// positive. Bounds |b coefficient| and the rounding scale of b_series.
TruncatedSeries b_majorant_series(int k, int l, int N);

// Second route: b_{k,l} / (k! l!) = [X^k Y^l] log(1 + sum a_{k,l} X^k Y^l/(k! l!)),
// with series-valued coefficients. Entry (k, l) of the result is b_{k,l}.
BivariateSeries<TruncatedSeries> b_series_table_log_route(int D, int N);
TruncatedSeries b_series_log_route(int k, int l, int N);

// log J(u, v, w) in powers of (u+iv), (u-iv) at a fixed w, via conj_log of the
// a-expansion of J. Entry (k, l) is i^{k+l} b_{k,l}(w) / (k! l!).
ConjugateSeries log_J_series(double w, int D, int N);
// b_{k,l}(w) for k + l <= D recovered from log_J_series; complex so the
// imaginary residue can be inspected.
BivariateSeries<std::complex<double>> b_values_complex_route(double w, int D, int N);

// Number of surjections from a k-set onto an n-set.
double surjections(int k, int n);
// k! / (k_1! ... k_n!), exact below 21, log-gamma above.
double multinomial(std::span<const int> parts);

// Upper bound on sum_{n > N} |coeff_n| q^n for the a (majorant=false) or b
// family, from the majorant L(rho)^{k+l} * S_{k,l} / rho^n, rho in (q, 1),
// L(rho) = -log(1 - sqrt(rho)).
double coefficient_tail_bound(int k, int l, int N, double q, bool b_family);
// Bound on |coeff_n| valid for all n: L(rho)^{k+l} S_{k,l} rho^{-n}.
double coefficient_bound(int k, int l, int n, double rho, bool b_family);

}  // namespace selberg
