#include "selberg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "selberg/coeffs.hpp"
#include "selberg/density.hpp"
#include "selberg/detail/counter_rng.hpp"
#include "selberg/errors.hpp"
#include "selberg/hermite.hpp"
#include "selberg/oracles.hpp"
#include "selberg/primes.hpp"
#include "selberg/randmodel.hpp"
#include "selberg/series.hpp"
#include "selberg/zetaline.hpp"

namespace selberg {

namespace {

using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Headline configuration.
constexpr double kTheta = 0.3;
constexpr double kHeight = 1e6;
constexpr int kDegree = 8;

// Pinned tolerances of the acceptance criteria.
constexpr double kCoefficientTol = 1e-12;    // 1
constexpr double kRealnessTol = 1e-14;       // 2
constexpr double kDilogTol = 1e-9;           // 3
constexpr double kDilogHalf = 0.5822405265;  // 3
constexpr double kDTableTol = 1e-13;         // 4
constexpr double kDSliceTol = 1e-12;         // 4
constexpr std::uint64_t kSieveOracleLimit = 10'000'000;  // 5
constexpr double kJSeriesTol = 1e-10;        // 6
constexpr double kDensityFloor = 1e-6;       // 7
constexpr double kHermiteQuadTol = 1e-10;    // 8
constexpr double kStderrMultiple = 4.0;      // 9
constexpr std::uint64_t kMonteCarloPrimes = 10000;
constexpr double kZetaTolerance = 0.05;      // 10
constexpr double kExclusionLimit = 0.01;     // 10

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string format(const char* f, ...) {
  char buf[1024];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

std::string rect_label(const Rectangle& r) {
  auto g = [](double x) { return std::isinf(x) ? std::string(x < 0 ? "-inf" : "inf") : format("%g", x); };
  return "[" + g(r.a) + "," + g(r.b) + "]x[" + g(r.c) + "," + g(r.d) + "]";
}

double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, double lo, double hi) {
  return lo + (hi - lo) * detail::counter_uniform(seed, stream, i);
}

const std::vector<Rectangle>& quadrant_panel() {
  static const std::vector<Rectangle> panel = {
      Rectangle::make(0, 1, 0, 1), Rectangle::make(-1, 0, 0, 1),
      Rectangle::make(-1, 0, -1, 0), Rectangle::make(0, 1, -1, 0)};
  return panel;
}

double finite_perimeter(const Rectangle& r) {
  auto len = [](double lo, double hi) { return std::isfinite(lo) && std::isfinite(hi) ? hi - lo : 0.0; };
  double total = 0.0;
  if (std::isfinite(r.a)) total += len(r.c, r.d);
  if (std::isfinite(r.b)) total += len(r.c, r.d);
  if (std::isfinite(r.c)) total += len(r.a, r.b);
  if (std::isfinite(r.d)) total += len(r.a, r.b);
  return total;
}

/// Fixtures shared by the checks of one run; each is built on first use.
class Context {
 public:
  explicit Context(const VerifyOptions& opts) : opts(opts) {}

  const DensityModel& model() {
    if (!model_) model_.emplace(DensityModel::build(ExpansionParams::make(kTheta, kHeight, kDegree)));
    return *model_;
  }
  const EmpiricalMeasure& monte_carlo() {
    if (!mc_) {
      RandomEulerConfig cfg;
      cfg.sigma = model().params().sigma_T;
      cfg.prime_limit = kMonteCarloPrimes;
      cfg.sample_count = opts.quick ? 100'000 : 1'000'000;
      cfg.seed = opts.seed;
      mc_.emplace(sample_log_zeta_random(cfg));
    }
    return *mc_;
  }
  const EmpiricalMeasure& zeta_line() {
    if (!zeta_) zeta_.emplace(empirical_zeta_measure(kTheta, kHeight, opts.quick ? 1000 : 10000, opts.seed));
    return *zeta_;
  }
  const FourierInversionOracle& inversion() {
    if (!oracle_) oracle_.emplace(model().params());
    return *oracle_;
  }

  VerifyOptions opts;

 private:
  std::optional<DensityModel> model_;
  std::optional<EmpiricalMeasure> mc_;
  std::optional<EmpiricalMeasure> zeta_;
  std::optional<FourierInversionOracle> oracle_;
};

class Recorder {
 public:
  Recorder(std::string suite, Context& ctx) : suite_(std::move(suite)), ctx_(ctx) {}

  void check(const std::string& name, int criterion, const std::function<Outcome(Context&)>& body) {
    CheckResult r;
    r.suite = suite_;
    r.name = name;
    r.criterion = criterion;
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body(ctx_);
      r.passed = o.passed;
      r.detail = std::move(o.detail);
    } catch (const Error& e) {
      r.passed = false;
      r.detail = e.what();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("internal error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }
  Context& context() { return ctx_; }

 private:
  std::string suite_;
  Context& ctx_;
  std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------- criteria

Outcome criterion_1(Context&) {
  double worst_a = 0.0, worst_b = 0.0;
  for (int N = 4; N <= 12; ++N)
    for (int k = 1; k <= 4; ++k)
      for (int l = 1; l <= 4; ++l) {
        if (N < std::max(k, l)) continue;
        const auto a = a_series(k, l, N);
        const auto b = b_series(k, l, N);
        for (int n = 0; n <= N; ++n) {
          worst_a = std::max(worst_a, std::abs(a[n] - oracle::a_coefficient(k, l, n)));
          worst_b = std::max(worst_b, std::abs(b[n] - oracle::b_coefficient(k, l, n)));
        }
      }
  return {worst_a <= kCoefficientTol && worst_b <= kCoefficientTol,
          format("max |a - oracle| = %.2e, max |b - oracle| = %.2e (tol %.0e)", worst_a, worst_b,
                 kCoefficientTol)};
}

Outcome criterion_2(Context&) {
  constexpr int kMax = 6, kOrder = 60;
  bool symmetric = true;
  for (int k = 1; k <= kMax; ++k)
    for (int l = k + 1; l <= kMax; ++l) {
      const auto akl = a_series(k, l, kOrder), alk = a_series(l, k, kOrder);
      const auto bkl = b_series(k, l, kOrder), blk = b_series(l, k, kOrder);
      for (int n = 0; n <= kOrder; ++n)
        if (akl[n] != alk[n] || bkl[n] != blk[n]) symmetric = false;
    }
  double log_route_asymmetry = 0.0;
  const auto log_route = b_series_table_log_route(2 * kMax, kOrder);
  for (int k = 1; k <= kMax; ++k)
    for (int l = 1; l <= kMax; ++l)
      for (int n = 0; n <= kOrder; ++n)
        log_route_asymmetry = std::max(log_route_asymmetry, std::abs(log_route(k, l)[n] - log_route(l, k)[n]) /
                                                                std::max(1.0, std::abs(log_route(k, l)[n])));

  double residue = 0.0;
  for (double w : {0.2, 0.5}) {
    const auto b = b_values_complex_route(w, 2 * kMax, kOrder);
    for (int k = 1; k <= kMax; ++k)
      for (int l = 1; l <= kMax; ++l) residue = std::max(residue, std::abs(b(k, l).imag()));
  }

  int violations = 0;
  for (double r : {0.3, 1.0 / std::numbers::sqrt2}) {
    const double C = make_bound_params(r).C_r;
    for (double w : {r / 2, r}) {
      const double q = w * w;
      for (int k = 1; k <= kMax; ++k)
        for (int l = 1; l <= kMax; ++l) {
          const double a = a_series(k, l, kOrder).evaluate(q);
          const double b = b_series(k, l, kOrder).evaluate(q);
          const double ta = coefficient_tail_bound(k, l, kOrder, q, false);
          const double tb = coefficient_tail_bound(k, l, kOrder, q, true);
          const double scale = std::pow(C * w, k + l);
          if (!(a - ta > 0.0) || a + ta > scale) ++violations;
          if (std::abs(b) + tb > scale * std::pow(double(std::min(k, l)), k + l)) ++violations;
        }
    }
  }
  return {symmetric && log_route_asymmetry <= kCoefficientTol && residue <= kRealnessTol && violations == 0,
          format("symmetry %s (log route %.1e), imaginary residue %.1e (tol %.0e), bound violations %d",
                 symmetric ? "exact" : "broken", log_route_asymmetry, residue, kRealnessTol, violations)};
}

Outcome criterion_3(Context&) {
  const auto b = b_series(1, 1, 60);
  bool exact = true;
  for (int m = 1; m <= 60; ++m)
    if (b[m] != 1.0 / (double(m) * m)) exact = false;
  const double value = b.evaluate(0.5);
  // Oracle: direct summation and the closed form pi^2/12 - log(2)^2/2.
  double direct = 0.0;
  for (int m = 200; m >= 1; --m) direct += std::ldexp(1.0, -m) / (double(m) * m);
  const double closed = kPi * kPi / 12.0 - std::log(2.0) * std::log(2.0) / 2.0;
  const double err = std::max({std::abs(value - kDilogHalf), std::abs(value - direct),
                               std::abs(value - closed)});
  return {exact && err <= kDilogTol,
          format("coefficients %s, b_11(2^-1/2) = %.12f, max deviation %.1e (tol %.0e)",
                 exact ? "exactly 1/m^2" : "not exact", value, err, kDilogTol)};
}

Outcome criterion_4(Context&) {
  constexpr int D = 12;
  const auto bp = b_prime_table(D, 1e-12);
  const auto d = d_table(bp);
  double low = 0.0, odd = 0.0;
  for (const auto& e : d.entries) {
    const int m = e.k + e.l;
    if (m == 1 || m == 2) low = std::max(low, std::abs(e.value));
    if (e.l % 2 == 1) odd = std::max(odd, std::abs(e.value));
  }
  const double b12 = bp.value(1, 2).value();
  const double d00 = d.value(0, 0).value_or(NAN);
  const double slice = std::max({std::abs(d.value(3, 0).value_or(NAN) - 2 * b12),
                                 std::abs(d.value(1, 2).value_or(NAN) - 2 * b12),
                                 std::abs(d.value(2, 1).value_or(NAN)),
                                 std::abs(d.value(0, 3).value_or(NAN))});
  return {d00 == 1.0 && low <= kDTableTol && odd <= kDTableTol && slice <= kDSliceTol,
          format("d00 = %.17g, max |d| at degree 1-2 = %.1e, odd l = %.1e, degree-3 slice "
                 "deviation %.1e (2b'12 = %.12f)",
                 d00, low, odd, slice, 2 * b12)};
}

Outcome criterion_5(Context&) {
  const auto table = b_prime_table(8, 1e-12);
  double worst_ratio = 0.0;
  int failures = 0, pairs = 0;
  std::string worst;
  for (int m = 3; m <= 8; ++m)
    for (int k = 1; k < m; ++k) {
      const int l = m - k;
      const auto* e = table.find(k, l);
      if (!e) fail(ErrorKind::domain, format("missing b' entry (%d,%d)", k, l));
      const auto direct = oracle::b_prime_direct(k, l, kSieveOracleLimit);
      const double diff = std::abs(e->value - direct.value);
      const double budget = e->bound + direct.tail_bound;
      ++pairs;
      if (diff > budget) ++failures;
      if (diff / budget > worst_ratio) {
        worst_ratio = diff / budget;
        worst = format("(%d,%d): |diff| %.1e vs budget %.1e", k, l, diff, budget);
      }
    }
  return {failures == 0, format("%d of %d outside budget; tightest %s", failures, pairs, worst.c_str())};
}

cplx a_series_J(double u, double v, double w) {
  constexpr int K = 16, N = 60;
  const cplx z(u, v);
  const double q = w * w;
  cplx total = 1.0;
  for (int k = 1; k <= K; ++k)
    for (int l = 1; l <= K; ++l) {
      const double a = a_series(k, l, std::max(N, std::max(k, l))).evaluate(q);
      total += std::pow(cplx(0, 1), k + l) * a * std::pow(z, k) * std::pow(std::conj(z), l) /
               (std::tgamma(k + 1.0) * std::tgamma(l + 1.0));
    }
  return total;
}

Outcome criterion_6(Context& ctx) {
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const double r = 0.2 * std::sqrt(uniform(ctx.opts.seed, 6, 3 * i, 0, 1));
    const double phi = uniform(ctx.opts.seed, 6, 3 * i + 1, 0, 2 * kPi);
    const double w = uniform(ctx.opts.seed, 6, 3 * i + 2, 0.01, 0.5);
    const double u = r * std::cos(phi), v = r * std::sin(phi);
    worst = std::max(worst, std::abs(J_quadrature(u, v, w) - a_series_J(u, v, w)));
  }
  std::vector<double> residuals;
  for (double T : {1e4, 1e8, 1e16})
    residuals.push_back(log_J_vs_expansion(0.05, 0.05, sigma_T(kTheta, T), kMonteCarloPrimes, kDegree));
  const bool decreasing = residuals[1] < residuals[0] && residuals[2] < residuals[1];
  return {worst <= kJSeriesTol && decreasing,
          format("max |J - series| = %.1e (tol %.0e); log J residual at T = 1e4, 1e8, 1e16: "
                 "%.3e, %.3e, %.3e",
                 worst, kJSeriesTol, residuals[0], residuals[1], residuals[2])};
}

Outcome criterion_7(Context& ctx) {
  const auto& model = ctx.model();
  const auto& oracle = ctx.inversion();
  int failures = 0;
  double worst_excess = 0.0;
  std::string worst;
  for (double x : {-0.6, 0.0, 0.6})
    for (double y : {-0.6, 0.0, 0.6}) {
      const double F = density_F(model, x, y);
      const double ref = oracle.density(x, y);
      const double budget = std::max(kDensityFloor, truncation_estimate(density_by_degree(model, x, y)));
      const double diff = std::abs(F - ref);
      if (diff > budget) ++failures;
      if (diff - budget > worst_excess || worst.empty()) {
        worst_excess = std::max(worst_excess, diff - budget);
        worst = format("(%g,%g): F = %.4f, oracle = %.4f, budget %.2e", x, y, F, ref, budget);
      }
    }
  return {failures == 0, format("%d of 9 points outside budget; worst %s", failures, worst.c_str())};
}

Outcome criterion_8(Context&) {
  bool plane_exact = true;
  for (int D : {0, 3, 8}) {
    const auto params = ExpansionParams::make(kTheta, kHeight, D);
    const DensityModel model(params, d_table(D));
    if (rect_probability(model, Rectangle::plane()) != 1.0) plane_exact = false;
  }
  const auto p0 = ExpansionParams::make(kTheta, kHeight, 0);
  const double quadrant =
      rect_probability(DensityModel(p0, d_table(0)), Rectangle::make(0, kInf, 0, kInf));

  double worst = 0.0;
  const std::pair<double, double> intervals[] = {{-0.7, 1.3}, {0.0, kInf}, {-kInf, -0.4},
                                                 {0.2, 0.25}, {-2.0, 2.0}, {-kInf, kInf}};
  for (int n = 0; n <= 10; ++n)
    for (auto [x1, x2] : intervals) {
      const double q = oracle::integrate([n](double x) { return weighted_hermite(n, x); }, x1, x2, 1e-12);
      worst = std::max(worst, std::abs(hermite_rect_integral(n, x1, x2) - q));
    }
  return {plane_exact && quadrant == 0.25 && worst <= kHermiteQuadTol,
          format("full plane %s for D = 0, 3, 8; D = 0 quadrant = %.17g; max Hermite integral "
                 "deviation %.1e (tol %.0e)",
                 plane_exact ? "exactly 1" : "not 1", quadrant, worst, kHermiteQuadTol)};
}

Outcome criterion_9(Context& ctx) {
  const auto& model = ctx.model();
  const auto& mc = ctx.monte_carlo();
  const double psi = model.params().psi;
  const double s_norm = mc.omitted_tail_std / std::sqrt(kPi * psi);
  auto panel = quadrant_panel();
  panel.push_back(Rectangle::make(-1, 1, -1, 1));
  int failures = 0;
  std::string lines;
  for (const auto& r : panel) {
    const double expansion = rect_probability(model, r);
    const auto est = empirical_rect_probability(mc, r, psi);
    const double tail = s_norm * std::sqrt(2.0 / kPi) * finite_perimeter(r) +
                        truncation_estimate(rect_probability_by_degree(model, r));
    const double budget = kStderrMultiple * est.stderr_ + tail;
    const double diff = std::abs(expansion - est.value);
    if (diff > budget) ++failures;
    lines += format("; %s: expansion %.4f, MC %.4f, |diff| %.4f vs %.4f", rect_label(r).c_str(),
                    expansion, est.value, diff, budget);
  }
  return {failures == 0, format("N = %llu, %d of %zu outside budget", (unsigned long long)mc.count,
                                failures, panel.size()) + lines};
}

Outcome criterion_10(Context& ctx) {
  const auto& model = ctx.model();
  const auto& zm = ctx.zeta_line();
  const double psi = model.params().psi;
  const double excluded = double(zm.exclusions) / double(zm.requested);
  int failures = 0;
  std::string lines;
  for (const auto& r : quadrant_panel()) {
    const double expansion = rect_probability(model, r);
    const double empirical = empirical_rect_probability(zm, r, psi).value;
    if (std::abs(expansion - empirical) > kZetaTolerance) ++failures;
    lines += format("; %s: expansion %.4f, zeta %.4f", rect_label(r).c_str(), expansion, empirical);
  }
  return {failures == 0 && excluded <= kExclusionLimit,
          format("%llu samples, exclusion rate %.4f, %d of 4 quadrants beyond %.2f",
                 (unsigned long long)zm.requested, excluded, failures, kZetaTolerance) + lines};
}

Outcome run_numbered(int id, Context& ctx) {
  switch (id) {
    case 1: return criterion_1(ctx);
    case 2: return criterion_2(ctx);
    case 3: return criterion_3(ctx);
    case 4: return criterion_4(ctx);
    case 5: return criterion_5(ctx);
    case 6: return criterion_6(ctx);
    case 7: return criterion_7(ctx);
    case 8: return criterion_8(ctx);
    case 9: return criterion_9(ctx);
    case 10: return criterion_10(ctx);
  }
  fail(ErrorKind::domain, format("no criterion %d", id));
}

const char* criterion_name(int id) {
  static const char* names[] = {"",
                                "coefficient exactness",
                                "coefficient properties",
                                "b11 closed form",
                                "d-table structure",
                                "prime-zeta acceleration",
                                "J oracle and log J trend",
                                "density oracle equivalence",
                                "normalization and reduction",
                                "Monte-Carlo headline",
                                "zeta-line structural check"};
  return names[id];
}

const char* criterion_suite(int id) {
  switch (id) {
    case 1: case 2: case 3: return "series";
    case 4: case 5: return "coeffs";
    case 7: case 8: return "density";
    case 6: case 9: return "randmodel";
    default: return "zetaline";
  }
}

void add_criteria(Recorder& rec, const std::string& suite) {
  if (!rec.context().opts.include_criteria) return;
  for (int id = 1; id <= kCriterionCount; ++id)
    if (suite == criterion_suite(id))
      rec.check(criterion_name(id), id, [id](Context& c) { return run_numbered(id, c); });
}

// ------------------------------------------------------------------ suites

void series_suite(Recorder& rec) {
  rec.check("neglog power examples", 0, [](Context&) {
    const auto c1 = neglog_power_coeffs(1, 40);
    const auto c2 = neglog_power_coeffs(2, 10);
    const auto c3 = neglog_power_coeffs(3, 12);
    bool ok = c2[3] == 1.0;
    for (int n = 1; n <= 40; ++n) ok = ok && c1[n] == 1.0 / n;
    double worst = 0.0;
    for (int n = 1; n <= 12; ++n) worst = std::max(worst, std::abs(c3[n] - oracle::composition_sum(3, n)));
    return Outcome{ok && c3[0] == 0.0 && worst <= 1e-13, format("c_1 and c_2(3) %s; k = 3 deviation %.1e",
                                                ok ? "exact" : "wrong", worst)};
  });
  rec.check("a and b hand examples", 0, [](Context&) {
    const auto a22 = a_series(2, 2, 40);
    double brute = 0.0;
    for (int n = 40; n >= 2; --n)
      brute += oracle::composition_sum(2, n) * oracle::composition_sum(2, n) * std::pow(0.25, n);
    const double e1 = std::abs(a22.evaluate(0.25) - brute);
    const auto b21 = b_series(2, 1, 30), a21 = a_series(2, 1, 30);
    const auto b22 = b_series(2, 2, 30), a11 = a_series(1, 1, 30);
    const auto hand = a_series(2, 2, 30) - 2.0 * (a11 * a11);
    double e2 = 0.0, e3 = 0.0;
    for (int n = 0; n <= 30; ++n) {
      e2 = std::max(e2, std::abs(b21[n] - a21[n]));
      e3 = std::max(e3, std::abs(b22[n] - hand[n]));
    }
    return Outcome{e1 <= 1e-12 && e2 == 0.0 && e3 <= 1e-14 && a21[2] == 0.5,
                   format("a22(0.5) vs brute force %.1e; b21 - a21 %.1e; b22 - (a22 - 2 a11^2) %.1e", e1,
                          e2, e3)};
  });
  rec.check("b by multinomial and log routes", 0, [](Context&) {
    constexpr int D = 12, N = 30;
    const auto table = b_series_table_log_route(D, N);
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k)
      for (int l = 1; l <= 6; ++l) {
        const auto direct = b_series(k, l, N);
        const auto major = b_majorant_series(k, l, N);
        for (int n = 0; n <= N; ++n)
          worst = std::max(worst, std::abs(direct[n] - table(k, l)[n]) / std::max(1.0, major[n]));
      }
    return Outcome{worst <= 1e-12, format("max scaled difference %.1e", worst)};
  });
  rec.check("growth near w = 0", 0, [](Context&) {
    bool ok = true;
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k)
      for (int l = 1; l <= 4; ++l) {
        const int m = std::max(k, l);
        const auto a = a_series(k, l, 60);
        const double lead = a[m];
        for (double w : {0.1, 0.05, 0.01}) {
          const double ratio = a.evaluate(w * w) / std::pow(w, 2 * m);
          worst = std::max(worst, ratio / lead);
          if (!(ratio >= lead && ratio <= 1.5 * lead)) ok = false;
        }
      }
    return Outcome{ok, format("max a(w) / (leading coefficient w^2max) = %.4f", worst)};
  });
  rec.check("conjugate exp examples", 0, [](Context&) {
    const ConjugateSeries zero(8, cplx(0));
    const auto one = conj_exp(zero);
    bool ok = one(0, 0) == cplx(1);
    for (int t = 1; t <= 8; ++t)
      for (int k = 0; k <= t; ++k) ok = ok && one(k, t - k) == cplx(0);
    ConjugateSeries single(8, cplx(0));
    const cplx c(0.3, -0.7);
    single(1, 1) = c;
    const auto e = conj_exp(single);
    double worst = 0.0;
    for (int t = 0; t <= 8; ++t)
      for (int k = 0; k <= t; ++k) {
        const int l = t - k;
        const cplx expect = k == l ? std::pow(c, k) / std::tgamma(k + 1.0) : cplx(0);
        worst = std::max(worst, std::abs(e(k, l) - expect));
      }
    return Outcome{ok && worst <= 1e-15, format("exp(0) %s; single-term deviation %.1e",
                                                ok ? "exact" : "wrong", worst)};
  });
  rec.check("exp/log round trip of the b' exponent", 0, [](Context&) {
    constexpr int D = 6;
    const auto bp = b_prime_table(D, 1e-12);
    ConjugateSeries s(D, cplx(0));
    for (const auto& e : bp.entries) s(e.k, e.l) = e.value;
    const auto back = conj_log(conj_exp(s));
    double worst = 0.0;
    for (int t = 0; t <= D; ++t)
      for (int k = 0; k <= t; ++k) worst = std::max(worst, std::abs(back(k, t - k) - s(k, t - k)));
    return Outcome{worst <= 1e-12, format("max deviation %.1e", worst)};
  });
  rec.check("product against brute-force convolution", 0, [](Context& ctx) {
    double worst = 0.0;
    std::uint64_t idx = 0;
    for (int D = 0; D <= 6; ++D) {
      ConjugateSeries a(D, cplx(0)), b(D, cplx(0));
      for (int t = 0; t <= D; ++t)
        for (int k = 0; k <= t; ++k) {
          auto draw = [&] { return uniform(ctx.opts.seed, 21, idx++, -1, 1); };
          a(k, t - k) = cplx(draw(), draw());
          b(k, t - k) = cplx(draw(), draw());
        }
      const auto p = conj_mul(a, b);
      for (int t = 0; t <= D; ++t)
        for (int k = 0; k <= t; ++k) {
          const int l = t - k;
          cplx ref = 0;
          for (int k1 = 0; k1 <= k; ++k1)
            for (int l1 = 0; l1 <= l; ++l1) ref += a(k1, l1) * b(k - k1, l - l1);
          worst = std::max(worst, std::abs(p(k, l) - ref));
        }
    }
    return Outcome{worst <= 1e-13, format("max deviation %.1e over D <= 6", worst)};
  });
  rec.check("bound parameters", 0, [](Context&) {
    double prev = 1.0;
    bool ok = true;
    for (double r = 0.05; r < 1.0; r += 0.05) {
      const double C = make_bound_params(r).C_r;
      ok = ok && C > 1.0 && C > prev;
      prev = C;
    }
    bool rejects = false;
    try {
      make_bound_params(1.0);
    } catch (const Error& e) {
      rejects = e.kind() == ErrorKind::domain;
    }
    return Outcome{ok && rejects, ok ? "C_r > 1 and increasing" : "C_r not monotone"};
  });
}

PrimeSumResult sieve_psi(double sigma, const PrimeTable& table) {
  PrimeSumResult r;
  for (int k = 60; k >= 1; --k) {
    const auto part = direct_prime_sum(table, 2 * k * sigma);
    r.value += part.value / (double(k) * k);
    r.tail_bound += part.tail_bound / (double(k) * k);
  }
  return r;
}

void coeffs_suite(Recorder& rec) {
  rec.check("sieve examples", 0, [](Context&) {
    const auto small = sieve_primes(10);
    const auto two = sieve_primes(2);
    const auto big = sieve_primes(1'000'000);
    const auto trial = oracle::count_primes_trial(1'000'000);
    const bool ok = small.primes == std::vector<std::uint32_t>{2, 3, 5, 7} &&
                    two.primes == std::vector<std::uint32_t>{2} && big.primes.size() == 78498 &&
                    trial == 78498;
    return Outcome{ok, format("pi(1e6) = %zu, trial division %llu", big.primes.size(),
                              (unsigned long long)trial)};
  });
  rec.check("prime zeta examples", 0, [](Context& ctx) {
    const auto p2 = prime_zeta(2.0, 1e-12);
    const std::uint64_t limit = ctx.opts.quick ? 10'000'000 : kMaxSieveLimit;
    const auto direct2 = direct_prime_sum(*shared_primes(limit), 2.0);
    const double e2 = std::abs(p2.value - direct2.value);
    const double b2 = p2.tail_bound + direct2.tail_bound + 1e-12;
    const auto p20 = prime_zeta(20.0, 1e-15);
    const auto direct20 = direct_prime_sum(*shared_primes(1000), 20.0);
    const double e20 = std::abs(p20.value - direct20.value);
    bool divergent = false;
    try {
      prime_zeta(1.0, 1e-12);
    } catch (const Error& e) {
      divergent = e.kind() == ErrorKind::divergent;
    }
    return Outcome{e2 <= b2 && e20 <= 1e-15 + direct20.tail_bound && divergent,
                   format("P(2) = %.16f, sieve to %.0e differs by %.1e (bound %.1e); P(20) = %.10e; "
                          "P(1) %s",
                          p2.value, double(limit), e2, b2, p20.value,
                          divergent ? "divergent" : "accepted")};
  });
  rec.check("prime zeta decreasing", 0, [](Context&) {
    double prev = kInf;
    bool ok = true;
    for (double s = 1.5; s <= 30.0; s += 0.5) {
      const double v = prime_zeta(s, 1e-13).value;
      ok = ok && v < prev;
      prev = v;
    }
    return Outcome{ok, ok ? "strictly decreasing on [1.5, 30]" : "not monotone"};
  });
  rec.check("prime zeta against sieve", 0, [](Context&) {
    const auto table = shared_primes(kSieveOracleLimit);
    int failures = 0;
    std::string detail;
    for (double s : {1.6, 2.0, 3.0, 5.0}) {
      const auto fast = prime_zeta(s, 1e-13);
      const auto slow = direct_prime_sum(*table, s);
      const double diff = std::abs(fast.value - slow.value);
      const double budget = fast.tail_bound + slow.tail_bound;
      if (diff > budget) ++failures;
      detail += format("%ss = %g: %.1e vs %.1e", detail.empty() ? "" : "; ", s, diff, budget);
    }
    return Outcome{failures == 0, detail};
  });
  rec.check("psi examples", 0, [](Context&) {
    const std::uint32_t two[] = {2};
    const double restricted = psi_restricted(two, 1.0, 2);
    const auto psi = psi_T(kTheta, kHeight);
    const auto sieve = sieve_psi(sigma_T(kTheta, kHeight), *shared_primes(kSieveOracleLimit));
    const double diff = std::abs(psi.value - sieve.value);
    const double budget = psi.tail_bound + sieve.tail_bound;
    const double envelope = std::abs(psi.value - kTheta * std::log(std::log(kHeight)));
    return Outcome{restricted == 0.265625 && diff <= budget && envelope <= 2.0,
                   format("restricted %.6f; psi_T = %.10f, sieve differs by %.1e (bound %.1e); "
                          "|psi - theta log log T| = %.3f",
                          restricted, psi.value, diff, budget, envelope)};
  });
  rec.check("psi monotone", 0, [](Context&) {
    bool ok = true;
    for (double theta : {0.1, 0.2, 0.3, 0.4, 0.45}) {
      double prev = -kInf;
      for (double T : {1e3, 1e4, 1e5, 1e6, 1e7, 1e8}) {
        const double v = psi_T(theta, T).value;
        ok = ok && v > prev + 1e-12;
        prev = v;
      }
    }
    // sigma_T falls as theta grows once log T > 1, so psi_T rises with theta.
    for (double T : {1e3, 1e6, 1e9}) {
      double prev = -kInf;
      for (double theta : {0.1, 0.2, 0.3, 0.4, 0.45}) {
        const double v = psi_T(theta, T).value;
        ok = ok && v > prev + 1e-12;
        prev = v;
      }
    }
    return Outcome{ok, ok ? "increasing in T and in theta" : "monotonicity broken"};
  });
  rec.check("b' symmetry and exclusions", 0, [](Context&) {
    const auto t = b_prime_table(8, 1e-12);
    bool ok = true;
    for (const auto& e : t.entries) {
      ok = ok && e.k + e.l >= 3;
      const auto mirror = t.value(e.l, e.k);
      ok = ok && mirror && *mirror == e.value;
    }
    return Outcome{ok, format("%zu entries, b'12 = %.15f", t.entries.size(), t.value(1, 2).value_or(NAN))};
  });
  rec.check("d decay check", 0, [](Context&) {
    const auto d = d_table(12);
    const auto report = d_decay_check(d, 0.3);
    const auto trivial = d_decay_check(d_table(0), 0.3);
    const bool ok = report.bounded && report.rows[1] == 0.0 && report.rows[2] == 0.0 &&
                    trivial.rows.size() == 1 && trivial.rows[0] == 1.0;
    double worst = 0.0;
    for (std::size_t m = 4; m < report.rows.size(); ++m) worst = std::max(worst, report.rows[m] / report.rows[3]);
    return Outcome{ok, format("max row / row 3 = %.3f at delta3 = 0.3", worst)};
  });
  rec.check("d stable under 10x prime limit", 0, [](Context&) {
    CoeffOptions lo, hi;
    lo.prime_limit = 100000;
    hi.prime_limit = 1000000;
    const auto a = d_table(kDegree, 1e-12, lo);
    const auto b = d_table(kDegree, 1e-12, hi);
    double worst = 0.0;
    int failures = 0;
    for (const auto& e : a.entries) {
      const auto* f = b.find(e.k, e.l);
      if (!f) {
        ++failures;
        continue;
      }
      const double diff = std::abs(e.value - f->value);
      if (diff > a.tail_bound) ++failures;
      worst = std::max(worst, diff);
    }
    return Outcome{failures == 0, format("max change %.1e, reported tail bound %.1e", worst, a.tail_bound)};
  });
}

void hermite_suite(Recorder& rec) {
  rec.check("hermite examples", 0, [](Context&) {
    const bool ok = hermite(0, 0.37) == 1.0 && hermite(1, 0.37) == 0.74 && hermite(5, 1.0) == -8.0;
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (double x : {-2.5, -1.0, 0.0, 0.3, 1.7, 3.0}) {
        // The explicit sum alternates; its rounding scales with the sum of |terms|.
        double scale = 0.0;
        for (int m = 0; 2 * m <= n; ++m)
          scale += std::tgamma(n + 1.0) * std::pow(2 * std::abs(x), n - 2 * m) /
                   (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
        worst = std::max(worst, std::abs(hermite(n, x) - oracle::hermite_explicit(n, x)) / scale);
      }
    return Outcome{ok && worst <= 1e-13, format("H_5(1) = %g; explicit-sum deviation %.1e of term scale",
                                                hermite(5, 1.0), worst)};
  });
  rec.check("Rodrigues formula", 0, [](Context&) {
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n)
      for (double x : {-1.0, 0.3, 2.0}) {
        const double h = hermite(n, x);
        worst = std::max(worst, std::abs(h - oracle::hermite_rodrigues(n, x)) / std::max(1.0, std::abs(h)));
      }
    return Outcome{worst <= 1e-6, format("max relative deviation %.1e", worst)};
  });
  rec.check("orthogonality", 0, [](Context&) {
    double worst = 0.0;
    for (int m = 0; m <= 12; ++m)
      for (int n = 0; n < m && m + n <= 12; ++n) {
        const double q = oracle::integrate(
            [m, n](double x) {
              const double s = std::sqrt(kPi) * x;
              return std::exp(-kPi * x * x) * hermite(m, s) * hermite(n, s);
            },
            -kInf, kInf, 1e-12);
        worst = std::max(worst, std::abs(q));
      }
    return Outcome{worst <= 1e-10, format("max |inner product| %.1e", worst)};
  });
  rec.check("gauss phi", 0, [](Context&) {
    const double q = oracle::integrate([](double u) { return std::exp(-kPi * u * u); }, 0.0, 1.0, 1e-15);
    const double e1 = std::abs(gauss_phi(1.0) - q);
    const double e9 = std::abs(gauss_phi(9.0) - 0.5);
    const bool ok = gauss_phi(0.0) == 0.0 && e9 <= 1e-15 && e1 <= 1e-13 &&
                    gauss_phi(-0.8) == -gauss_phi(0.8);
    return Outcome{ok, format("Phi(1) - quadrature %.1e, Phi(9) - 1/2 %.1e", e1, e9)};
  });
  rec.check("rectangle integrals", 0, [](Context&) {
    bool vanish = true;
    for (int n = 1; n <= 40; ++n) vanish = vanish && hermite_rect_integral(n, -kInf, kInf) == 0.0;
    const double x1 = -0.4, x2 = 0.9;
    const double closed = (std::exp(-kPi * x1 * x1) - std::exp(-kPi * x2 * x2)) / std::sqrt(kPi);
    const double e1 = std::abs(hermite_rect_integral(1, x1, x2) - closed);
    bool ordered = false;
    try {
      hermite_rect_integral(2, 1.0, 0.0);
    } catch (const Error& e) {
      ordered = e.kind() == ErrorKind::order;
    }
    return Outcome{vanish && hermite_rect_integral(0, -kInf, kInf) == 1.0 && e1 <= 1e-15 && ordered,
                   format("full line %s; n = 1 closed form deviation %.1e",
                          vanish ? "vanishes for n >= 1" : "nonzero", e1)};
  });
}

void density_suite(Recorder& rec) {
  rec.check("leading Gaussian examples", 0, [](Context&) {
    ExpansionParams p = ExpansionParams::make(kTheta, kHeight, 0);
    p.psi = 1.0;
    const DensityModel unit(p, d_table(0));
    const double at0 = density_F(unit, 0.0, 0.0);
    const double at1 = density_F(unit, 0.6, -0.3);
    const double ref1 = std::exp(-(0.36 + 0.09)) / kPi;
    return Outcome{std::abs(at0 - 1.0 / kPi) <= 1e-16 && std::abs(at1 - ref1) <= 1e-15,
                   format("F(0,0) = %.16f", at0)};
  });
  rec.check("coordinate maps", 0, [](Context& ctx) {
    const auto unit = Rectangle::make(0, 1, 0, 1);
    const auto same = normalized_to_raw(unit, 1.0 / kPi);
    const auto wide = normalized_to_raw(unit, 1.0);
    const double s = std::sqrt(kPi);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      double v[4];
      for (int j = 0; j < 4; ++j) v[j] = uniform(ctx.opts.seed, 31, 4 * i + j, -3, 3);
      const auto r = Rectangle::make(std::min(v[0], v[1]), std::max(v[0], v[1]), std::min(v[2], v[3]),
                                     std::max(v[2], v[3]));
      const auto back = normalized_to_raw(raw_to_normalized(r, 0.52), 0.52);
      worst = std::max({worst, std::abs(back.a - r.a), std::abs(back.b - r.b), std::abs(back.c - r.c),
                        std::abs(back.d - r.d)});
    }
    const bool ok = same.b == 1.0 && same.d == 1.0 && std::abs(wide.b - s) <= 1e-15 &&
                    std::abs(wide.d - s) <= 1e-15 && worst <= 1e-15;
    return Outcome{ok, format("round trip deviation %.1e", worst)};
  });
  add_criteria(rec, "density");
  rec.check("rectangle probability against density quadrature", 0, [](Context& ctx) {
    const auto& model = ctx.model();
    const double scale = std::sqrt(kPi * model.params().psi);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      double v[4];
      for (int j = 0; j < 4; ++j) v[j] = uniform(ctx.opts.seed, 32, 4 * i + j, -1.5, 1.5);
      const auto r = Rectangle::make(std::min(v[0], v[1]), std::max(v[0], v[1]), std::min(v[2], v[3]),
                                     std::max(v[2], v[3]));
      const double q = oracle::integrate2([&](double x, double y) { return density_F(model, x, y); },
                                          scale * r.a, scale * r.b, scale * r.c, scale * r.d, 1e-11);
      worst = std::max(worst, std::abs(rect_probability(model, r) - q));
    }
    return Outcome{worst <= 1e-8, format("max deviation %.1e over 5 rectangles", worst)};
  });
  rec.check("symmetry in y", 0, [](Context& ctx) {
    const auto& model = ctx.model();
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      double v[4];
      for (int j = 0; j < 4; ++j) v[j] = uniform(ctx.opts.seed, 33, 4 * i + j, -2, 2);
      const double a = std::min(v[0], v[1]), b = std::max(v[0], v[1]);
      const double c = std::min(v[2], v[3]), d = std::max(v[2], v[3]);
      worst = std::max(worst, std::abs(rect_probability(model, Rectangle::make(a, b, c, d)) -
                                       rect_probability(model, Rectangle::make(a, b, -d, -c))));
    }
    return Outcome{worst <= 1e-12, format("max mirror difference %.1e", worst)};
  });
  rec.check("degree refinement envelope", 0, [](Context& ctx) {
    const auto& model = ctx.model();
    int failures = 0;
    std::string detail;
    for (const auto& r : quadrant_panel()) {
      const auto parts = rect_probability_by_degree(model, r);
      double change = 0.0;
      for (std::size_t m = 4; m < parts.size(); ++m) change += parts[m];
      const double envelope = 2.0 * std::abs(parts[3]);
      if (std::abs(change) >= envelope) ++failures;
      detail += format("%s%s: %.4f vs %.4f", detail.empty() ? "" : "; ", rect_label(r).c_str(),
                       std::abs(change), envelope);
    }
    return Outcome{failures == 0, detail};
  });
  rec.check("correction budget", 0, [](Context& ctx) {
    const auto& model = ctx.model();
    int failures = 0;
    for (const auto& r : quadrant_panel()) {
      const double gap = std::abs(rect_probability(model, r) - gaussian_leading_term(r));
      if (gap > correction_budget(model, r) * (1 + 1e-12) + 1e-15) ++failures;
    }
    return Outcome{failures == 0, format("%d rectangles exceed the triangle-inequality budget", failures)};
  });
  rec.check("degenerate rectangles", 0, [](Context& ctx) {
    const auto& model = ctx.model();
    const auto r = Rectangle::make(0.3, 0.3, -1, 1);
    const auto& mc = ctx.monte_carlo();
    const double raw = std::sqrt(kPi * model.params().psi);
    const double values[] = {rect_probability(model, r),
                             empirical_rect_probability(mc, r, model.params().psi).value,
                             ctx.inversion().box_probability(Rectangle::make(0.3 * raw, 0.3 * raw, -raw, raw))};
    const bool ok = values[0] == 0.0 && values[1] == 0.0 && values[2] == 0.0;
    return Outcome{ok, format("expansion %g, Monte-Carlo %g, inversion %g", values[0], values[1], values[2])};
  });
}

void randmodel_suite(Recorder& rec) {
  rec.check("J trivial values and bound", 0, [](Context&) {
    bool ok = J_quadrature(0, 0, 0.4) == cplx(1) && J_quadrature(0.7, -0.2, 0) == cplx(1);
    double worst = 0.0;
    for (double u : {-3.0, -0.5, 0.1, 1.2, 4.0})
      for (double v : {-2.0, 0.0, 0.3, 2.5})
        for (double w : {0.1, 0.5, 0.7, 0.9}) worst = std::max(worst, std::abs(J_quadrature(u, v, w)));
    return Outcome{ok && worst <= 1.0 + 1e-14, format("max |J| = %.15f", worst)};
  });
  add_criteria(rec, "randmodel");
  rec.check("characteristic function Hermitian", 0, [](Context& ctx) {
    const double sigma = ctx.model().params().sigma_T;
    double worst = 0.0;
    for (auto [u, v] : {std::pair{0.3, 0.1}, {-0.8, 0.4}, {1.5, -1.1}, {0.05, 2.0}})
      worst = std::max(worst, std::abs(characteristic_truncated(-u, -v, sigma, 1000) -
                                       std::conj(characteristic_truncated(u, v, sigma, 1000))));
    return Outcome{worst <= 1e-10, format("max asymmetry %.1e", worst)};
  });
  rec.check("product truncation stability", 0, [](Context& ctx) {
    const double sigma = ctx.model().params().sigma_T;
    int failures = 0;
    double tightest = 0.0;
    for (auto [u, v] : {std::pair{0.3, 0.1}, {-0.8, 0.4}, {1.5, -1.1}, {0.05, 2.0}}) {
      const cplx lo = characteristic_truncated(u, v, sigma, 1000);
      const cplx hi = characteristic_truncated(u, v, sigma, 10000);
      const double bound = std::abs(lo) * truncation_change_bound(u, v, sigma, 1000) + 1e-12;
      if (std::abs(hi - lo) > bound) ++failures;
      tightest = std::max(tightest, std::abs(hi - lo) / bound);
    }
    return Outcome{failures == 0, format("max change / bound = %.3f", tightest)};
  });
  rec.check("Monte-Carlo moments", 0, [](Context& ctx) {
    const auto& mc = ctx.monte_carlo();
    const double n = double(mc.count);
    double mean[2] = {0, 0};
    for (const auto& z : mc.samples) {
      mean[0] += z.real();
      mean[1] += z.imag();
    }
    mean[0] /= n;
    mean[1] /= n;
    double m2[2] = {0, 0}, m4[2] = {0, 0};
    for (const auto& z : mc.samples) {
      const double d[2] = {z.real() - mean[0], z.imag() - mean[1]};
      for (int c = 0; c < 2; ++c) {
        m2[c] += d[c] * d[c];
        m4[c] += d[c] * d[c] * d[c] * d[c];
      }
    }
    double target = 0.0;
    for (auto p : shared_primes(mc.prime_limit)->primes) {
      const double q = std::pow(double(p), -2 * mc.sigma);
      double b = 0.0;
      double qm = q;
      for (int m = 1; qm > 1e-19; ++m, qm *= q) b += qm / (double(m) * m);
      target += b;
    }
    target /= 2.0;
    bool ok = true;
    std::string detail;
    for (int c = 0; c < 2; ++c) {
      const double var = m2[c] / (n - 1);
      const double mean_err = std::sqrt(var / n);
      const double var_err = std::sqrt(std::max(0.0, m4[c] / n - var * var) / n);
      ok = ok && std::abs(mean[c]) <= 4 * mean_err && std::abs(var - target) <= 4 * var_err;
      detail += format("%s%s: mean %.2e (4se %.1e), variance %.5f vs %.5f (4se %.1e)", c ? "; " : "",
                       c ? "im" : "re", mean[c], 4 * mean_err, var, target, 4 * var_err);
    }
    return Outcome{ok, detail};
  });
  rec.check("empty product and full plane", 0, [](Context&) {
    RandomEulerConfig cfg;
    cfg.prime_limit = 0;
    cfg.sample_count = 1000;
    const auto m = sample_log_zeta_random(cfg);
    bool zeros = true;
    for (const auto& z : m.samples) zeros = zeros && z == cplx(0);
    const auto full = empirical_rect_probability(m, Rectangle::plane(), 1.0);
    return Outcome{zeros && full.value == 1.0 && full.stderr_ == 0.0,
                   zeros ? "all samples zero; plane probability 1" : "nonzero sample"};
  });
  rec.check("seed reproducibility", 0, [](Context& ctx) {
    RandomEulerConfig cfg;
    cfg.sigma = ctx.model().params().sigma_T;
    cfg.prime_limit = 1000;
    cfg.sample_count = 50000;
    cfg.seed = ctx.opts.seed;
    const auto first = sample_log_zeta_random(cfg);
    const auto again = sample_log_zeta_random(cfg);
    cfg.seed = ctx.opts.seed + 1;
    const auto other = sample_log_zeta_random(cfg);
    const bool identical = first.samples == again.samples;
    const double psi = ctx.model().params().psi;
    int failures = 0;
    auto panel = quadrant_panel();
    panel.push_back(Rectangle::make(-1, 1, -1, 1));
    for (const auto& r : panel) {
      const auto a = empirical_rect_probability(first, r, psi);
      const auto b = empirical_rect_probability(other, r, psi);
      if (std::abs(a.value - b.value) > 6 * std::hypot(a.stderr_, b.stderr_)) ++failures;
      const auto mirror = empirical_rect_probability(first, Rectangle::make(r.a, r.b, -r.d, -r.c), psi);
      if (std::abs(a.value - mirror.value) > 4 * std::hypot(a.stderr_, mirror.stderr_)) ++failures;
    }
    return Outcome{identical && failures == 0,
                   format("same seed %s; %d seed or mirror comparisons outside envelope",
                          identical ? "bitwise identical" : "differs", failures)};
  });
  rec.check("log J residual behaviour", 0, [](Context& ctx) {
    const double sigma = ctx.model().params().sigma_T;
    const double zero = log_J_vs_expansion(0, 0, sigma, 1000, kDegree);
    double prev = kInf;
    bool ok = zero == 0.0;
    std::string detail = format("origin %.1e", zero);
    for (int D : {4, 6, 8}) {
      const double r = log_J_vs_expansion(0.05, 0.05, sigma, 1000, D);
      ok = ok && r <= prev + 1e-12;
      prev = r;
      detail += format("; D = %d: %.4e", D, r);
    }
    return Outcome{ok, detail};
  });
  rec.check("log J Taylor series at sigma shrinks with degree", 0, [](Context& ctx) {
    // The same left side against its own Taylor series at p^{-sigma}: what
    // remains is the series tail alone.
    const double sigma = ctx.model().params().sigma_T;
    const cplx lhs = log_J_vs_expansion_detail(0.05, 0.05, sigma, 1000, 12).lhs;
    double prev = kInf;
    bool ok = true;
    std::string detail;
    for (int D : {4, 6, 8}) {
      const double r = std::abs(lhs - evaluate(log_J_tail_series(sigma, 0, D), kPi * 0.05, kPi * 0.05));
      ok = ok && r <= prev;
      prev = r;
      detail += format("%sD = %d: %.3e", detail.empty() ? "" : "; ", D, r);
    }
    return Outcome{ok, detail};
  });
  rec.check("inversion oracle sanity", 0, [](Context& ctx) {
    const auto& oracle = ctx.inversion();
    const cplx origin = oracle.characteristic(0, 0);
    const double mass = oracle.box_probability(Rectangle::make(-5, 5, -5, 5));
    const bool ok = std::abs(origin - 1.0) <= 1e-14 && std::abs(mass - 1.0) <= 1e-4 &&
                    oracle.imag_residue() <= 1e-10;
    return Outcome{ok, format("Phi(0) = %.15f, box mass %.8f, radius %.1f, %zu nodes, imaginary "
                              "residue %.1e",
                              origin.real(), mass, oracle.radius(), oracle.nodes(), oracle.imag_residue())};
  });
}

void zetaline_suite(Recorder& rec) {
  rec.check("zeta at integers", 0, [](Context&) {
    const double z2 = zeta_em(2.0).real(), z3 = zeta_em(3.0).real();
    const double e2 = std::max(std::abs(z2 - kPi * kPi / 6), std::abs(z2 - oracle::zeta_direct(2.0)));
    const double e3 = std::max(std::abs(z3 - 1.2020569032), std::abs(z3 - oracle::zeta_direct(3.0)));
    bool pole = false;
    try {
      zeta_em(1.0);
    } catch (const Error& e) {
      pole = e.kind() == ErrorKind::pole;
    }
    return Outcome{e2 <= 1e-12 && e3 <= 1e-10 && pole,
                   format("zeta(2) deviation %.1e, zeta(3) deviation %.1e, s = 1 %s", e2, e3,
                          pole ? "pole" : "accepted")};
  });
  rec.check("Euler-Maclaurin against eta", 0, [](Context& ctx) {
    double worst = 0.0;
    int skipped = 0;
    for (int i = 0; i < 50; ++i) {
      const cplx s(uniform(ctx.opts.seed, 41, 2 * i, 0.7, 3.0), uniform(ctx.opts.seed, 41, 2 * i + 1, -1e4, 1e4));
      try {
        const cplx a = zeta_em(s), b = oracle::zeta_eta(s);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::precision) throw;
        ++skipped;
      }
    }
    return Outcome{worst <= 1e-9 && skipped == 0, format("max relative deviation %.1e, %d skipped", worst, skipped)};
  });
  rec.check("log zeta consistency", 0, [](Context& ctx) {
    double worst = 0.0, widest = 0.0;
    int skipped = 0;
    for (int i = 0; i < 100; ++i) {
      const double sigma = uniform(ctx.opts.seed, 42, 2 * i, 0.7, 1.0);
      const double t = uniform(ctx.opts.seed, 42, 2 * i + 1, 1e3, 1e4);
      try {
        const auto s = log_zeta_line(sigma, t);
        const cplx z = zeta_em(cplx(sigma, t));
        worst = std::max(worst, std::abs(std::exp(s.value) - z) / std::abs(z));
        widest = std::max(widest, s.max_increment);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::precision && e.kind() != ErrorKind::branch) throw;
        ++skipped;
      }
    }
    const double log3 = std::log(zeta_em(3.0).real());
    const bool real3 = std::abs(log3 - std::log(1.2020569031595942)) <= 1e-12;
    return Outcome{worst <= 1e-9 && widest < kPi && skipped <= 1 && real3,
                   format("max relative deviation %.1e, largest increment %.3f, %d skipped", worst,
                          widest, skipped)};
  });
  rec.check("conjugation symmetry", 0, [](Context&) {
    double worst = 0.0;
    for (double t : {15.0, 1234.5, 98765.4}) {
      const auto up = log_zeta_line(0.8, t), down = log_zeta_line(0.8, -t);
      worst = std::max(worst, std::abs(down.value - std::conj(up.value)));
    }
    return Outcome{worst <= 1e-12, format("max deviation %.1e", worst)};
  });
  rec.check("path evaluator agreement", 0, [](Context& ctx) {
    const double sigma = ctx.model().params().sigma_T;
    const ZetaPathEvaluator eval(sigma, 2 * kHeight);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double t = kHeight * (1 + uniform(ctx.opts.seed, 43, i, 0, 1));
      worst = std::max(worst, std::abs(eval.evaluate(t).value - log_zeta_line(sigma, t).value));
    }
    return Outcome{worst <= 1e-9, format("max deviation %.1e, cutoff %d", worst, eval.cutoff())};
  });
  add_criteria(rec, "zetaline");
  rec.check("zeta-line sample mean", 0, [](Context& ctx) {
    const auto& zm = ctx.zeta_line();
    const double n = double(zm.count);
    cplx mean = 0;
    for (const auto& z : zm.samples) mean += z;
    mean /= n;
    double vr = 0, vi = 0;
    for (const auto& z : zm.samples) {
      vr += (z.real() - mean.real()) * (z.real() - mean.real());
      vi += (z.imag() - mean.imag()) * (z.imag() - mean.imag());
    }
    const double se_r = std::sqrt(vr / (n - 1) / n), se_i = std::sqrt(vi / (n - 1) / n);
    const auto full = empirical_rect_probability(zm, Rectangle::plane(), 1.0);
    const bool ok = std::abs(mean.real()) <= 4 * se_r && std::abs(mean.imag()) <= 4 * se_i &&
                    full.value == 1.0 && zm.count + zm.exclusions == zm.requested;
    return Outcome{ok, format("mean (%.4f, %.4f), 4se (%.4f, %.4f), %llu kept", mean.real(), mean.imag(),
                              4 * se_r, 4 * se_i, (unsigned long long)zm.count)};
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"series",  "coeffs",    "hermite", "density",
                                                 "randmodel", "zetaline", "all"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool known_unattainable(int id) { return id == 7 || id == 9 || id == 10; }

CheckResult run_criterion(int id, const VerifyOptions& opts) {
  if (id < 1 || id > kCriterionCount) fail(ErrorKind::domain, format("no criterion %d", id));
  Context ctx(opts);
  Recorder rec(criterion_suite(id), ctx);
  rec.check(criterion_name(id), id, [id](Context& c) { return run_numbered(id, c); });
  return rec.take().front();
}

std::vector<CheckResult> run_criteria(const VerifyOptions& opts) {
  Context ctx(opts);
  std::vector<CheckResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    Recorder rec(criterion_suite(id), ctx);
    rec.check(criterion_name(id), id, [id](Context& c) { return run_numbered(id, c); });
    out.push_back(rec.take().front());
  }
  return out;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  if (!is_suite(suite)) fail(ErrorKind::domain, "unknown suite '" + suite + "'");
  Context ctx(opts);
  std::vector<CheckResult> out;
  const std::pair<const char*, void (*)(Recorder&)> suites[] = {
      {"series", series_suite},       {"coeffs", coeffs_suite},       {"hermite", hermite_suite},
      {"density", density_suite},     {"randmodel", randmodel_suite}, {"zetaline", zetaline_suite}};
  for (auto [name, body] : suites) {
    if (suite != "all" && suite != name) continue;
    Recorder rec(name, ctx);
    if (std::string(name) == "series" || std::string(name) == "coeffs") add_criteria(rec, name);
    body(rec);
    auto part = rec.take();
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace selberg
