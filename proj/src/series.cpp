#include "selberg/series.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace selberg {

namespace {

using cplx = std::complex<double>;

std::size_t leading_index(std::span<const double> c) {
  std::size_t i = 0;
  while (i < c.size() && c[i] == 0.0) ++i;
  return i;
}

void check_indices(int k, int l, int N) {
  if (k < 1 || l < 1)
    fail(ErrorKind::domain, "coefficient indices must be >= 1");
  if (N < std::max(k, l))
    fail(ErrorKind::domain, "truncation N=" + std::to_string(N) + " below max(k,l)");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx i_power(int n) {
  static constexpr cplx kUnit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kUnit[((n % 4) + 4) % 4];
}

// All compositions of total into exactly parts positive integers.
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int slots) -> void {
    if (slots == 1) {
      current.push_back(remaining);
      out.push_back(current);
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
  return out;
}

TruncatedSeries b_series_impl(int k, int l, int N, bool majorant) {
  check_indices(k, l, N);
  // Term (kc, lc) of b_{k,l} equals term (lc, kc) of b_{l,k}; one loop order
  // for both keeps the rounding identical.
  if (k > l) return b_series_impl(l, k, N, majorant);
  std::map<std::pair<int, int>, TruncatedSeries> a_cache;
  auto a_of = [&](int ki, int li) -> const TruncatedSeries& {
    auto [it, inserted] = a_cache.try_emplace({ki, li});
    if (inserted) it->second = a_series(ki, li, N);
    return it->second;
  };
  TruncatedSeries result(static_cast<std::size_t>(N));
  for (int n = 1; n <= std::min(k, l); ++n) {
    const double weight = (majorant || n % 2 == 1 ? 1.0 : -1.0) / n;
    const auto ks = compositions(k, n);
    const auto ls = compositions(l, n);
    for (const auto& kc : ks) {
      const double mk = multinomial(kc);
      for (const auto& lc : ls) {
        TruncatedSeries prod = a_of(kc[0], lc[0]);
        for (int j = 1; j < n; ++j) prod = prod * a_of(kc[j], lc[j]);
        result += prod * (weight * mk * multinomial(lc));
      }
    }
  }
  return result;
}

// log of the a-majorant L(rho) = -log(1 - sqrt(rho)) times S_{k,l}.
double log_majorant(int k, int l, double rho, bool b_family) {
  double s = 1.0;
  if (b_family) {
    s = 0.0;
    for (int n = 1; n <= std::min(k, l); ++n) s += surjections(k, n) * surjections(l, n) / n;
  }
  return (k + l) * std::log(-std::log1p(-std::sqrt(rho))) + std::log(s);
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
}

double TruncatedSeries::evaluate(double z) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

bool TruncatedSeries::is_zero() const {
  for (double c : c_)
    if (c != 0.0) return false;
  return true;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  if (other.c_.size() < c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  if (other.c_.size() < c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(double scale) {
  for (double& c : c_) c *= scale;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t size = std::min(a.c_.size(), b.c_.size());
  TruncatedSeries out(size - 1);
  const std::size_t la = leading_index(a.c_), lb = leading_index(b.c_);
  for (std::size_t i = la; i < size; ++i) {
    if (a.c_[i] == 0.0) continue;
    for (std::size_t j = lb; i + j < size; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

TruncatedSeries TruncatedSeries::exp(const TruncatedSeries& s) {
  if (s[0] != 0.0) fail(ErrorKind::domain, "series exp needs a zero constant term");
  const std::size_t N = s.order();
  TruncatedSeries h(N);
  h.c_[0] = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) acc += double(j) * s.c_[j] * h.c_[n - j];
    h.c_[n] = acc / double(n);
  }
  return h;
}

TruncatedSeries TruncatedSeries::log(const TruncatedSeries& s) {
  if (!(s[0] > 0.0)) fail(ErrorKind::domain, "series log needs a positive constant term");
  const std::size_t N = s.order();
  TruncatedSeries h = s * (1.0 / s[0]);
  TruncatedSeries g(N);
  g.c_[0] = std::log(s[0]);
  for (std::size_t n = 1; n <= N; ++n) {
    double acc = double(n) * h.c_[n];
    for (std::size_t j = 1; j < n; ++j) acc -= double(j) * g.c_[j] * h.c_[n - j];
    g.c_[n] = acc / double(n);
  }
  return g;
}

ConjugateSeries conj_exp(const ConjugateSeries& s) { return series_exp(s, cplx(1.0)); }

ConjugateSeries conj_log(const ConjugateSeries& s) {
  const cplx c0 = s(0, 0);
  if (c0 == 0.0) fail(ErrorKind::domain, "log of a series with zero constant term");
  ConjugateSeries unit = s;
  if (c0 != 1.0) {
    const cplx inv = 1.0 / c0;
    for (int t = 0; t <= unit.degree(); ++t)
      for (int k = 0; k <= t; ++k) unit(k, t - k) *= inv;
  }
  ConjugateSeries g = series_log_unit(unit);
  g(0, 0) = std::log(c0);
  return g;
}

ConjugateSeries conj_mul(const ConjugateSeries& a, const ConjugateSeries& b) { return a * b; }

bool is_conjugate_symmetric(const ConjugateSeries& s, double tol) {
  for (int t = 0; t <= s.degree(); ++t)
    for (int k = 0; k <= t; ++k)
      if (std::abs(s(k, t - k) - std::conj(s(t - k, k))) > tol) return false;
  return true;
}

BivariateSeries<cplx> to_xy_basis(const ConjugateSeries& s) {
  const int D = s.degree();
  std::vector<std::vector<double>> binom(D + 1, std::vector<double>(D + 1, 0.0));
  for (int n = 0; n <= D; ++n) {
    binom[n][0] = 1.0;
    for (int r = 1; r <= n; ++r) binom[n][r] = binom[n - 1][r - 1] + (r <= n - 1 ? binom[n - 1][r] : 0.0);
  }
  BivariateSeries<cplx> out(D, cplx(0.0));
  for (int t = 0; t <= D; ++t)
    for (int k = 0; k <= t; ++k) {
      const int l = t - k;
      const cplx c = s(k, l);
      if (c == 0.0) continue;
      // (x+iy)^k (x-iy)^l = sum C(k,i) C(l,j) x^{i+j} (iy)^{k-i} (-iy)^{l-j}
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= l; ++j) {
          const cplx phase = i_power(k - i) * i_power(3 * (l - j));
          out(i + j, t - i - j) += c * (binom[k][i] * binom[l][j]) * phase;
        }
    }
  return out;
}

cplx evaluate(const ConjugateSeries& s, double x, double y) {
  const cplx z(x, y), zb(x, -y);
  cplx total = 0.0;
  for (int t = 0; t <= s.degree(); ++t)
    for (int k = 0; k <= t; ++k) {
      const cplx c = s(k, t - k);
      if (c != 0.0) total += c * std::pow(z, k) * std::pow(zb, t - k);
    }
  return total;
}

BoundParams make_bound_params(double r) {
  if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::domain, "bound parameter r must lie in (0,1)");
  return BoundParams{r, -std::log1p(-r) / r};
}

TruncatedSeries neglog_power_coeffs(int k, int N) {
  if (k < 1) fail(ErrorKind::domain, "power k must be >= 1");
  if (N < k) fail(ErrorKind::domain, "truncation N must be >= k");
  TruncatedSeries base(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) base[n] = 1.0 / n;
  TruncatedSeries out = base;
  for (int j = 1; j < k; ++j) out = out * base;
  return out;
}

TruncatedSeries a_series(int k, int l, int N) {
  check_indices(k, l, N);
  const TruncatedSeries ck = neglog_power_coeffs(k, N);
  const TruncatedSeries cl = k == l ? ck : neglog_power_coeffs(l, N);
  TruncatedSeries out(static_cast<std::size_t>(N));
  for (int n = std::max(k, l); n <= N; ++n)
    out[n] = (k == 1 && l == 1) ? 1.0 / (double(n) * n) : ck[n] * cl[n];
  return out;
}

TruncatedSeries b_series(int k, int l, int N) { return b_series_impl(k, l, N, false); }

TruncatedSeries b_majorant_series(int k, int l, int N) { return b_series_impl(k, l, N, true); }

BivariateSeries<TruncatedSeries> b_series_table_log_route(int D, int N) {
  if (D < 2) fail(ErrorKind::domain, "log route needs degree >= 2");
  const TruncatedSeries zero(static_cast<std::size_t>(N));
  BivariateSeries<TruncatedSeries> h(D, zero);
  TruncatedSeries one = zero;
  one[0] = 1.0;
  h(0, 0) = one;
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l)
      if (N >= std::max(k, l)) h(k, l) = a_series(k, l, N) * (1.0 / (factorial(k) * factorial(l)));
  BivariateSeries<TruncatedSeries> g = series_log_unit(h);
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l) g(k, l) *= factorial(k) * factorial(l);
  return g;
}

TruncatedSeries b_series_log_route(int k, int l, int N) {
  check_indices(k, l, N);
  return b_series_table_log_route(k + l, N)(k, l);
}

ConjugateSeries log_J_series(double w, int D, int N) {
  if (!(w >= 0.0 && w < 1.0)) fail(ErrorKind::domain, "w must lie in [0,1)");
  ConjugateSeries h(D, cplx(0.0));
  h(0, 0) = 1.0;
  const double q = w * w;
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l) {
      if (N < std::max(k, l)) continue;
      const double a = a_series(k, l, N).evaluate(q);
      h(k, l) = i_power(k + l) * (a / (factorial(k) * factorial(l)));
    }
  return conj_log(h);
}

BivariateSeries<cplx> b_values_complex_route(double w, int D, int N) {
  const ConjugateSeries g = log_J_series(w, D, N);
  BivariateSeries<cplx> out(D, cplx(0.0));
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l)
      out(k, l) = g(k, l) * (factorial(k) * factorial(l)) / i_power(k + l);
  return out;
}

double surjections(int k, int n) {
  if (n < 0 || k < 0) return 0.0;
  double total = 0.0, binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    total += (j % 2 ? -1.0 : 1.0) * binom * std::pow(double(n - j), k);
    binom = binom * (n - j) / (j + 1);
  }
  return std::round(total);
}

double multinomial(std::span<const int> parts) {
  int total = 0;
  for (int p : parts) total += p;
  if (total <= 20) {
    // exact: product of binomials C(running, part)
    unsigned __int128 result = 1;
    int running = 0;
    for (int p : parts) {
      for (int i = 1; i <= p; ++i) {
        ++running;
        result = result * static_cast<unsigned>(running) / static_cast<unsigned>(i);
      }
    }
    return double(result);
  }
  double lg = std::lgamma(total + 1.0);
  for (int p : parts) lg -= std::lgamma(p + 1.0);
  return std::round(std::exp(lg));
}

double coefficient_bound(int k, int l, int n, double rho, bool b_family) {
  if (!(rho > 0.0 && rho < 1.0)) fail(ErrorKind::domain, "rho must lie in (0,1)");
  return std::exp(log_majorant(k, l, rho, b_family) - n * std::log(rho));
}

double coefficient_tail_bound(int k, int l, int N, double q, bool b_family) {
  if (!(q >= 0.0 && q < 1.0)) fail(ErrorKind::domain, "q must lie in [0,1)");
  if (q == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 400; ++i) {
    const double rho = q + (1.0 - q) * i / 400.0;
    const double x = q / rho;
    const double lb = log_majorant(k, l, rho, b_family) + (N + 1) * std::log(x) - std::log1p(-x);
    best = std::min(best, std::exp(lb));
  }
  return best;
}

}  // namespace selberg
