#include "selberg/randmodel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "selberg/detail/counter_rng.hpp"
#include "selberg/errors.hpp"
#include "selberg/parallel.hpp"
#include "selberg/primes.hpp"

namespace selberg {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx i_power(int n) {
  static constexpr cplx kUnit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kUnit[((n % 4) + 4) % 4];
}

// sum_{p > P} p^{-s}; P < 2 means every prime.
double prime_tail(double s, std::uint64_t P) {
  constexpr double kTol = 1e-13;
  if (P < 2) return prime_zeta(s, kTol).value;
  return prime_zeta_tail(s, *shared_primes(P), kTol).value;
}

// Per-prime -log(1 - z) for |z| = w: std::log for large w, otherwise the
// Taylor polynomial with enough terms for double precision.
struct NegLog {
  double w;
  int terms;  // 0: use std::log

  explicit NegLog(double w_) : w(w_), terms(0) {
    if (w > 0.1) return;
    terms = 1;
    while (std::pow(w, terms + 1) / ((terms + 1) * (1.0 - w)) > 1e-17) ++terms;
  }

  cplx operator()(cplx x) const {
    const cplx z = w * x;
    if (terms == 0) return -std::log(1.0 - z);
    cplx acc = 1.0 / terms;
    for (int m = terms - 1; m >= 1; --m) acc = 1.0 / m + z * acc;
    return z * acc;
  }
};

cplx J_sum(double u, double v, double w, int n, int offset, int stride) {
  cplx total = 0.0;
  for (int j = offset; j < n; j += stride) {
    const double angle = kTwoPi * j / n;
    const cplx L = std::log(1.0 - w * std::polar(1.0, angle));
    const double phase = -2.0 * (u * L.real() + v * L.imag());
    total += std::polar(1.0, phase);
  }
  return total;
}

cplx rectangle_transform(double u, double lo, double hi) {
  if (u == 0.0) return hi - lo;
  const cplx e_hi = std::polar(1.0, -kTwoPi * u * hi);
  const cplx e_lo = std::polar(1.0, -kTwoPi * u * lo);
  return (e_hi - e_lo) / cplx(0.0, -kTwoPi * u);
}

}  // namespace

double omitted_tail_std(double sigma, std::uint64_t prime_limit) {
  if (!(sigma > 0.5)) fail(ErrorKind::divergent, "the Euler product needs sigma > 1/2");
  double total = 0.0;
  for (int m = 1; m < 400; ++m) {
    const double term = prime_tail(2.0 * m * sigma, prime_limit) / (double(m) * m);
    total += term;
    if (term <= 1e-18 * total) break;
  }
  return std::sqrt(total);
}

EmpiricalMeasure sample_log_zeta_random(const RandomEulerConfig& cfg) {
  if (!(cfg.sigma > 0.5)) fail(ErrorKind::divergent, "sampling needs sigma > 1/2");
  if (cfg.sigma > 1.0) fail(ErrorKind::domain, "sampling supports sigma <= 1");
  if (cfg.sample_count == 0) fail(ErrorKind::empty, "sample_count must be positive");

  EmpiricalMeasure m;
  m.seed = cfg.seed;
  m.sigma = cfg.sigma;
  m.prime_limit = cfg.prime_limit;
  m.count = cfg.sample_count;
  m.requested = cfg.sample_count;
  m.samples.assign(cfg.sample_count, cplx(0.0));
  if (cfg.prime_limit < 2) {
    m.omitted_tail_std = omitted_tail_std(cfg.sigma, 0);
    return m;
  }

  const auto table = shared_primes(cfg.prime_limit);
  std::vector<NegLog> factors;
  factors.reserve(table->primes.size());
  for (auto p : table->primes) factors.emplace_back(std::pow(double(p), -cfg.sigma));

  parallel_for(cfg.sample_count, 1024, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      cplx total = 0.0;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        const double angle = kTwoPi * detail::counter_uniform(cfg.seed, i, j);
        total += factors[j](cplx(std::cos(angle), std::sin(angle)));
      }
      m.samples[i] = total;
    }
  });
  m.omitted_tail_std = omitted_tail_std(cfg.sigma, cfg.prime_limit);
  return m;
}

RectEstimate empirical_rect_probability(const EmpiricalMeasure& m, const Rectangle& rect,
                                        double psi) {
  if (m.samples.empty()) fail(ErrorKind::domain, "empirical measure is empty");
  const Rectangle raw = normalized_to_raw(rect, psi);
  std::size_t hits = 0;
  for (const cplx& s : m.samples)
    if (s.real() >= raw.a && s.real() < raw.b && s.imag() >= raw.c && s.imag() < raw.d) ++hits;
  const double n = double(m.samples.size());
  RectEstimate r;
  r.value = double(hits) / n;
  r.stderr_ = std::sqrt(r.value * (1.0 - r.value) / n);
  return r;
}

cplx J_quadrature(double u, double v, double w, int nodes) {
  if (!(w >= 0.0 && w < 1.0)) fail(ErrorKind::domain, "J needs 0 <= w < 1");
  if (nodes < 64) fail(ErrorKind::domain, "J quadrature needs at least 64 nodes");
  if (w == 0.0 || (u == 0.0 && v == 0.0)) return 1.0;
  int n = nodes;
  cplx sum = J_sum(u, v, w, n, 0, 1);
  cplx value = sum / double(n);
  while (n < (1 << 24)) {
    sum += J_sum(u, v, w, 2 * n, 1, 2);
    n *= 2;
    const cplx next = sum / double(n);
    if (std::abs(next - value) < 1e-12) return next;
    value = next;
  }
  fail(ErrorKind::precision, "J quadrature did not settle below 1e-12 with 2^24 nodes");
}

cplx characteristic_truncated(double u, double v, double sigma, std::uint64_t prime_limit) {
  if (!(sigma > 0.5)) fail(ErrorKind::divergent, "the Euler product needs sigma > 1/2");
  cplx product = 1.0;
  if (prime_limit < 2) return product;
  for (auto p : shared_primes(prime_limit)->primes)
    product *= J_quadrature(std::numbers::pi * u, std::numbers::pi * v, std::pow(double(p), -sigma));
  return product;
}

double truncation_change_bound(double u, double v, double sigma, std::uint64_t prime_limit) {
  const double tail = omitted_tail_std(sigma, prime_limit);
  return 2.0 * std::numbers::pi * std::numbers::pi * (u * u + v * v) * tail * tail;
}

ConjugateSeries log_J_tail_series(double sigma, std::uint64_t prime_limit, int D) {
  if (!(sigma > 0.5)) fail(ErrorKind::divergent, "prime tail needs sigma > 1/2");
  constexpr int kOrder = 80;
  ConjugateSeries out(D, cplx(0.0));
  std::vector<double> tails;  // tails[n] = sum_{p > P} p^{-2 n sigma}
  tails.push_back(0.0);
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l) {
      const TruncatedSeries beta = b_series(k, l, kOrder);
      double total = 0.0;
      for (int n = std::max(k, l); n <= kOrder; ++n) {
        while (int(tails.size()) <= n) tails.push_back(prime_tail(2.0 * double(tails.size()) * sigma, prime_limit));
        // beta[n] can vanish at isolated n, so only an exhausted tail stops the sum.
        if (tails[n] < 1e-300) break;
        total += beta[n] * tails[n];
      }
      out(k, l) = i_power(k + l) * (total / (factorial(k) * factorial(l)));
    }
  return out;
}

LogJResidual log_J_vs_expansion_detail(double u, double v, double sigma,
                                       std::uint64_t prime_limit, int D) {
  if (!(sigma > 0.5)) fail(ErrorKind::domain, "sigma must exceed 1/2");
  if (D < 2) fail(ErrorKind::domain, "expansion degree must be >= 2");
  LogJResidual r;
  if (u == 0.0 && v == 0.0) return r;

  const double pu = std::numbers::pi * u, pv = std::numbers::pi * v;
  if (prime_limit >= 2) {
    for (auto p : shared_primes(prime_limit)->primes) {
      const cplx J = J_quadrature(pu, pv, std::pow(double(p), -sigma));
      if (!(J.real() > 0.0))
        fail(ErrorKind::branch, "Re J <= 0 at p=" + std::to_string(p) + ": log leaves the principal branch");
      r.lhs += std::log(J);
    }
  }
  r.lhs += evaluate(log_J_tail_series(sigma, prime_limit, D), pu, pv);

  const double psi = psi_sigma(sigma).value;
  r.rhs = -std::numbers::pi * std::numbers::pi * (u * u + v * v) * psi;
  if (D >= 3) {
    const CoeffTable tilde = b_tilde_table(b_prime_table(D, 1e-12));
    const cplx z(u, v), zb(u, -v);
    for (const auto& e : tilde.entries)
      r.rhs += cplx(e.value, e.imag) * std::pow(z, e.k) * std::pow(zb, e.l);
  }
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

double log_J_vs_expansion(double u, double v, double sigma, std::uint64_t prime_limit, int D) {
  return log_J_vs_expansion_detail(u, v, sigma, prime_limit, D).residual;
}

FourierInversionOracle::FourierInversionOracle(const ExpansionParams& params,
                                               const InversionGrid& grid)
    : params_(params), grid_(grid), tail_(0, cplx(0.0)) {
  if (!(grid.step > 0.0)) fail(ErrorKind::domain, "grid step must be positive");
  const double sigma = params.sigma_T;
  tail_ = log_J_tail_series(sigma, grid.prime_limit, grid.tail_degree);
  std::vector<double> ws;
  if (grid.prime_limit >= 2)
    for (auto p : shared_primes(grid.prime_limit)->primes) ws.push_back(std::pow(double(p), -sigma));

  auto exact = [&](double u, double v) {
    cplx total = std::exp(evaluate(tail_, std::numbers::pi * u, std::numbers::pi * v));
    for (double w : ws) total *= J_quadrature(std::numbers::pi * u, std::numbers::pi * v, w);
    return total;
  };
  auto circle_max = [&](double r) {
    double worst = 0.0;
    for (int j = 0; j < 32; ++j) {
      const double a = kTwoPi * j / 32;
      worst = std::max(worst, std::abs(exact(r * std::cos(a), r * std::sin(a))));
    }
    return worst;
  };

  radius_ = grid.radius;
  if (radius_ <= 0.0) {
    for (double r = 2.0;; r += 0.5) {
      if (r > grid.max_radius)
        fail(ErrorKind::accuracy, "characteristic function still above " + std::to_string(grid.cutoff) +
                                      " at radius " + std::to_string(grid.max_radius) +
                                      "; a larger max_radius is required");
      if (circle_max(r) < grid.cutoff && circle_max(r + 0.5) < grid.cutoff) {
        radius_ = r;
        break;
      }
    }
  } else if (circle_max(radius_) >= grid.cutoff) {
    double need = radius_;
    while (need <= grid.max_radius && circle_max(need) >= grid.cutoff) need += 0.5;
    fail(ErrorKind::accuracy, "grid radius " + std::to_string(radius_) + " too small; need about " +
                                  std::to_string(need));
  }

  // Fixed node counts per prime, settled at the boundary where the integrand
  // oscillates fastest.
  for (double w : ws) {
    int n = 64;
    for (;; n *= 2) {
      double diff = 0.0;
      for (int j = 0; j < 8; ++j) {
        const double a = kTwoPi * j / 8;
        const double u = std::numbers::pi * radius_ * std::cos(a), v = std::numbers::pi * radius_ * std::sin(a);
        diff = std::max(diff, std::abs(J_sum(u, v, w, n, 0, 1) / double(n) -
                                       J_sum(u, v, w, 2 * n, 0, 1) / double(2 * n)));
      }
      if (diff < 1e-13) break;
      if (n > (1 << 16)) fail(ErrorKind::precision, "factor quadrature did not settle");
    }
    Factor f;
    f.re.resize(n);
    f.im.resize(n);
    for (int j = 0; j < n; ++j) {
      const cplx L = std::log(1.0 - w * std::polar(1.0, kTwoPi * j / n));
      f.re[j] = L.real();
      f.im[j] = L.imag();
    }
    factors_.push_back(std::move(f));
  }

  const int half = int(std::floor(radius_ / grid.step));
  for (int i = -half; i <= half; ++i)
    for (int j = 0; j <= half; ++j) {
      if (j == 0 && i < 0) continue;
      const double u = i * grid.step, v = j * grid.step;
      if (u * u + v * v > radius_ * radius_) continue;
      us_.push_back(u);
      vs_.push_back(v);
    }
  values_.assign(us_.size(), cplx(0.0));
  parallel_for(us_.size(), 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values_[i] = characteristic(us_[i], vs_[i]);
  });

  double asymmetry = 0.0;
  const std::size_t probes = std::min<std::size_t>(values_.size(), 16);
  for (std::size_t k = 0; k < probes; ++k) {
    const std::size_t i = k * values_.size() / probes;
    asymmetry = std::max(asymmetry, std::abs(characteristic(-us_[i], -vs_[i]) - std::conj(values_[i])));
  }
  imag_residue_ = asymmetry * double(values_.size()) * grid.step * grid.step;
  if (imag_residue_ > 1e-10)
    fail(ErrorKind::accuracy, "inversion imaginary residue " + std::to_string(imag_residue_) + " exceeds 1e-10");
}

cplx FourierInversionOracle::factor_product(double u, double v) const {
  const double pu = std::numbers::pi * u, pv = std::numbers::pi * v;
  cplx product = 1.0;
  for (const Factor& f : factors_) {
    cplx sum = 0.0;
    const std::size_t n = f.re.size();
    for (std::size_t j = 0; j < n; ++j) sum += std::polar(1.0, -2.0 * (pu * f.re[j] + pv * f.im[j]));
    product *= sum / double(n);
  }
  return product;
}

cplx FourierInversionOracle::characteristic(double u, double v) const {
  return factor_product(u, v) * std::exp(evaluate(tail_, std::numbers::pi * u, std::numbers::pi * v));
}

// Only the half plane v > 0 (plus v = 0, u >= 0) is stored; the other half is
// the complex conjugate, so the imaginary part of the full sum is bounded by
// the measured asymmetry times the grid weight.
double FourierInversionOracle::density(double x, double y) const {
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const cplx term = values_[i] * std::polar(1.0, -kTwoPi * (us_[i] * x + vs_[i] * y));
    const bool origin = us_[i] == 0.0 && vs_[i] == 0.0;
    total += origin ? term.real() : 2.0 * term.real();
  }
  return total * grid_.step * grid_.step;
}

double FourierInversionOracle::box_probability(const Rectangle& raw) const {
  if (!std::isfinite(raw.a) || !std::isfinite(raw.b) || !std::isfinite(raw.c) || !std::isfinite(raw.d))
    fail(ErrorKind::domain, "oracle box must be finite");
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const cplx term = values_[i] * rectangle_transform(us_[i], raw.a, raw.b) *
                      rectangle_transform(vs_[i], raw.c, raw.d);
    const bool origin = us_[i] == 0.0 && vs_[i] == 0.0;
    total += origin ? term.real() : 2.0 * term.real();
  }
  return total * grid_.step * grid_.step;
}

double fourier_invert_density(const ExpansionParams& params, double x, double y,
                              const InversionGrid& grid) {
  return FourierInversionOracle(params, grid).density(x, y);
}

void write_measure(const EmpiricalMeasure& m, std::ostream& out) {
  nlohmann::json header = {{"source", m.source},
                           {"sigma", m.sigma},
                           {"prime_limit", m.prime_limit},
                           {"count", m.count},
                           {"seed", m.seed},
                           {"requested", m.requested},
                           {"exclusions", m.exclusions},
                           {"omitted_tail_std", m.omitted_tail_std}};
  if (m.source == "zeta-line") {
    header["theta"] = m.theta;
    header["T"] = m.T;
  }
  out << "# " << header.dump() << "\nre,im\n";
  char buf[64];
  for (const cplx& s : m.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.real(), s.imag());
    out << buf;
  }
}

EmpiricalMeasure read_measure(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    fail(ErrorKind::domain, "measure file lacks its '# {json}' header line");
  const nlohmann::json header = nlohmann::json::parse(line.substr(2));
  EmpiricalMeasure m;
  m.source = header.value("source", "random-model");
  m.sigma = header.at("sigma").get<double>();
  m.prime_limit = header.at("prime_limit").get<std::uint64_t>();
  m.count = header.at("count").get<std::uint64_t>();
  m.seed = header.at("seed").get<std::uint64_t>();
  m.requested = header.value("requested", m.count);
  m.exclusions = header.value("exclusions", std::uint64_t{0});
  m.omitted_tail_std = header.value("omitted_tail_std", 0.0);
  m.theta = header.value("theta", 0.0);
  m.T = header.value("T", 0.0);
  if (!std::getline(in, line) || line != "re,im") fail(ErrorKind::domain, "measure file lacks the re,im row");
  m.samples.reserve(m.count);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorKind::domain, "malformed measure row: " + line);
    m.samples.emplace_back(std::strtod(line.c_str(), nullptr), std::strtod(line.c_str() + comma + 1, nullptr));
  }
  if (m.samples.size() != m.count)
    fail(ErrorKind::domain, "measure header count disagrees with the number of rows");
  return m;
}

}  // namespace selberg
