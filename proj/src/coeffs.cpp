#include "selberg/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "selberg/detail/compensated.hpp"
#include "selberg/errors.hpp"
#include "selberg/parallel.hpp"
#include "selberg/primes.hpp"
#include "selberg/series.hpp"

namespace selberg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// P(n) <= 1.81 * 2^{-n} for n >= 2 (1 + 4 (P(2) - 1/4) < 1.81).
constexpr double kPrimeZetaRatio = 1.81;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Cell {
  int k, l;
};

std::vector<Cell> exponent_cells(int D) {
  std::vector<Cell> cells;
  for (int t = 3; t <= D; ++t)
    for (int k = 1; k < t; ++k) cells.push_back({k, t - k});
  return cells;
}

CoeffTable series_table(Family family, int D, int N) {
  if (D < 2) fail(ErrorKind::domain, "series tables need degree >= 2");
  CoeffTable table;
  table.family = family;
  table.degree = D;
  table.series_order = N;
  for (int t = 2; t <= D; ++t)
    for (int k = 1; k < t; ++k) {
      const int l = t - k;
      if (N < std::max(k, l)) continue;
      const TruncatedSeries s = family == Family::a ? a_series(k, l, N) : b_series(k, l, N);
      for (int n = std::max(k, l); n <= N; ++n) table.entries.push_back({k, l, n, s[n], 0.0, 0.0});
    }
  return table;
}

}  // namespace

ExpansionParams ExpansionParams::make(double theta, double T, int degree,
                                      std::uint64_t prime_limit) {
  if (!(theta > 0.0 && theta < 0.5)) fail(ErrorKind::domain, "theta must lie in (0, 1/2)");
  if (!(T >= 100.0)) fail(ErrorKind::domain, "T must be >= 100");
  if (degree < 0) fail(ErrorKind::domain, "degree must be >= 0");
  ExpansionParams p;
  p.theta = theta;
  p.T = T;
  p.degree = degree;
  p.prime_limit = prime_limit;
  p.sigma_T = selberg::sigma_T(theta, T);
  if (!(p.sigma_T > 0.5 && p.sigma_T < 1.0))
    fail(ErrorKind::domain, "sigma_T = " + std::to_string(p.sigma_T) + " outside (1/2, 1)");
  p.psi = psi_T(theta, T).value;
  return p;
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::a: return "a";
    case Family::b: return "b";
    case Family::b_tilde: return "b_tilde";
    case Family::b_prime: return "b_prime";
    case Family::d: return "d";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::a, Family::b, Family::b_tilde, Family::b_prime, Family::d})
    if (to_string(f) == name) return f;
  fail(ErrorKind::domain, "unknown coefficient family '" + std::string(name) + "'");
}

const CoeffEntry* CoeffTable::find(int k, int l, int n) const {
  for (const auto& e : entries)
    if (e.k == k && e.l == l && e.n == n) return &e;
  return nullptr;
}

std::optional<double> CoeffTable::value(int k, int l) const {
  if (const CoeffEntry* e = find(k, l)) return e->value;
  return std::nullopt;
}

CoeffTable a_table(int D, int N) { return series_table(Family::a, D, N); }
CoeffTable b_table(int D, int N) { return series_table(Family::b, D, N); }

CoeffTable b_prime_table(int D, double tol, const CoeffOptions& opts) {
  if (D < 3) fail(ErrorKind::domain, "b' table needs degree >= 3");
  if (!(tol > 0)) fail(ErrorKind::domain, "tolerance must be positive");
  const PrimeZetaOptions pz{opts.prime_limit};
  const std::vector<Cell> cells = exponent_cells(D);

  for (int N = std::max(opts.series_order, D); N <= opts.max_series_order; N *= 2) {
    // P(n) for every power we will touch.
    std::vector<PrimeSumResult> P(static_cast<std::size_t>(N) + 1);
    for (int n = 2; n <= N; ++n) P[n] = prime_zeta(double(n), 1e-13, pz);

    std::vector<CoeffEntry> entries(cells.size());
    parallel_for(cells.size(), 1, [&](std::size_t begin, std::size_t end) {
      for (std::size_t c = begin; c < end; ++c) {
        const auto [k, l] = cells[c];
        const TruncatedSeries beta = b_series(k, l, N);
        const TruncatedSeries major = b_majorant_series(k, l, N);
        detail::CompensatedSum<double> sum;
        double err = 0.0, scale = 0.0;
        for (int n = std::max(k, l); n <= N; ++n) {
          sum.add(beta[n] * P[n].value);
          err += std::abs(beta[n]) * P[n].tail_bound;
          scale += major[n] * P[n].value;
        }
        err += 32 * kEps * scale + 4 * kEps * sum.magnitude();
        err += kPrimeZetaRatio * coefficient_tail_bound(k, l, N, 0.5, true);
        const double norm = std::ldexp(1.0, k + l) * factorial(k) * factorial(l);
        entries[c] = CoeffEntry{k, l, -1, sum.value() / norm, 0.0, err / norm};
      }
    });

    double worst = 0.0;
    for (const auto& e : entries) worst = std::max(worst, e.bound);
    if (worst <= tol) {
      CoeffTable table;
      table.family = Family::b_prime;
      table.degree = D;
      table.prime_limit = opts.prime_limit;
      table.series_order = N;
      table.tail_bound = worst;
      table.entries = std::move(entries);
      return table;
    }
    if (N * 2 > opts.max_series_order)
      fail(ErrorKind::precision, "b' error bound " + std::to_string(worst) +
                                     " above tolerance at series truncation N=" + std::to_string(N) +
                                     " (max_series_order reached)");
  }
  fail(ErrorKind::precision, "series truncation below degree");
}

CoeffTable b_tilde_table(const CoeffTable& b_prime) {
  if (b_prime.family != Family::b_prime) fail(ErrorKind::domain, "expected a b' table");
  CoeffTable out = b_prime;
  out.family = Family::b_tilde;
  double worst = 0.0;
  for (auto& e : out.entries) {
    const int m = e.k + e.l;
    // (2 pi i)^m is purely real or purely imaginary
    const double mag = std::pow(2.0 * std::numbers::pi, m);
    const double re = (m % 2 == 0) ? (m % 4 == 0 ? mag : -mag) : 0.0;
    const double im = (m % 2 == 1) ? (m % 4 == 1 ? mag : -mag) : 0.0;
    const double v = e.value;
    e.value = re * v;
    e.imag = im * v;
    e.bound *= mag;
    worst = std::max(worst, e.bound);
  }
  out.tail_bound = worst;
  return out;
}

CoeffTable d_table(const CoeffTable& b_prime) {
  if (b_prime.family != Family::b_prime) fail(ErrorKind::domain, "expected a b' table");
  const int D = b_prime.degree;
  ConjugateSeries exponent(D, 0.0);
  // Majorants per total degree for error propagation: sum of |xy-coefficients|
  // of (x+iy)^k (x-iy)^l is at most 2^{k+l}.
  TruncatedSeries major(static_cast<std::size_t>(D));
  TruncatedSeries perturbed(static_cast<std::size_t>(D));
  for (const auto& e : b_prime.entries) {
    if (e.k < 1 || e.l < 1 || e.k + e.l < 3 || e.k + e.l > D) continue;
    exponent(e.k, e.l) = e.value;
    const double w = std::ldexp(1.0, e.k + e.l);
    major[e.k + e.l] += w * std::abs(e.value);
    perturbed[e.k + e.l] += w * (std::abs(e.value) + e.bound);
  }
  const BivariateSeries<std::complex<double>> xy = to_xy_basis(conj_exp(exponent));
  const TruncatedSeries exp_major = TruncatedSeries::exp(major);
  const TruncatedSeries exp_perturbed = TruncatedSeries::exp(perturbed);

  CoeffTable table;
  table.family = Family::d;
  table.degree = D;
  table.prime_limit = b_prime.prime_limit;
  table.series_order = b_prime.series_order;
  table.params = b_prime.params;
  for (int t = 0; t <= D; ++t) {
    const double bound =
        (exp_perturbed[t] - exp_major[t]) + 64 * kEps * (1 << std::min(t, 30)) * exp_major[t];
    for (int k = t; k >= 0; --k) {
      const std::complex<double> c = xy(k, t - k);
      if (std::abs(c.imag()) > 1e-13)
        fail(ErrorKind::precision, "d coefficient (" + std::to_string(k) + "," +
                                       std::to_string(t - k) + ") has imaginary residue " +
                                       std::to_string(c.imag()));
      double v = c.real();
      if (t == 0) v = 1.0;
      table.entries.push_back({k, t - k, -1, v, 0.0, t == 0 ? 0.0 : bound});
      table.tail_bound = std::max(table.tail_bound, t == 0 ? 0.0 : bound);
    }
  }
  return table;
}

CoeffTable d_table(int D, double tol, const CoeffOptions& opts) {
  if (D < 0) fail(ErrorKind::domain, "degree must be >= 0");
  if (D < 3) {
    CoeffTable table;
    table.family = Family::d;
    table.degree = D;
    table.prime_limit = opts.prime_limit;
    for (int t = 0; t <= D; ++t)
      for (int k = t; k >= 0; --k) table.entries.push_back({k, t - k, -1, t == 0 ? 1.0 : 0.0, 0.0, 0.0});
    return table;
  }
  return d_table(b_prime_table(D, tol, opts));
}

DecayReport d_decay_check(const CoeffTable& table, double delta3) {
  if (table.family != Family::d) fail(ErrorKind::domain, "decay check needs a d table");
  if (!(delta3 > 0)) fail(ErrorKind::domain, "delta3 must be positive");
  DecayReport report;
  report.delta3 = delta3;
  report.rows.assign(static_cast<std::size_t>(table.degree) + 1, 0.0);
  for (const auto& e : table.entries) {
    const int m = e.k + e.l;
    if (m < 0 || m > table.degree) continue;
    report.rows[m] = std::max(report.rows[m], std::abs(e.value) * std::pow(delta3, m));
  }
  if (table.degree >= 3) {
    const double ref = report.rows[3];
    for (int m = 4; m <= table.degree; ++m)
      if (report.rows[m] > 10.0 * ref) report.bounded = false;
  }
  return report;
}

double default_delta3() {
  const double r = 1.0 / std::numbers::sqrt2;
  const double c = -std::log1p(-r) / r;
  return std::nextafter(std::numbers::sqrt2 / (std::numbers::e * c), 0.0);
}

}  // namespace selberg
