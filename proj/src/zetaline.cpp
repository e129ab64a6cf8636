#include "selberg/zetaline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "selberg/detail/counter_rng.hpp"
#include "selberg/errors.hpp"
#include "selberg/parallel.hpp"
#include "selberg/primes.hpp"

namespace selberg {

namespace {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

constexpr double kSigmaStart = 3.0;
constexpr int kMaxHalvings = 20;
constexpr double kRelativeRemainder = 1e-10;
constexpr double kAbsoluteTarget = 1e-12;

// B_{2k} / (2k)! for k = 1..7.
constexpr double kBernoulliRatio[8] = {
    0.0,
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
    (5.0 / 66.0) / 3628800.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
};

// Bound on the Euler-Maclaurin remainder after B_{order}, as a function of N:
// |s+2K+1| / (sigma+2K+1) |B_{2K+2}/(2K+2)!| |s (s+1) ... (s+2K)| N^{-sigma-2K-1}.
double remainder_bound(cplx s, int order, double N) {
  const int K = order / 2;
  double log_rising = 0.0;
  for (int m = 0; m <= 2 * K; ++m) log_rising += std::log(std::abs(s + double(m)));
  const double log_bound = std::log(std::abs(s + double(2 * K + 1)) / (s.real() + 2 * K + 1)) +
                           std::log(std::abs(kBernoulliRatio[K + 1])) + log_rising -
                           (s.real() + 2 * K + 1) * std::log(N);
  return std::exp(log_bound);
}

// Smallest N (at least 32) whose remainder bound is below kAbsoluteTarget.
int auto_cutoff(cplx s, int order) {
  const int K = order / 2;
  const double at_one = remainder_bound(s, order, 1.0);
  const double n = std::pow(at_one / kAbsoluteTarget, 1.0 / (s.real() + 2 * K + 1));
  if (!(n < 2e9)) fail(ErrorKind::capacity, "Euler-Maclaurin cutoff beyond 2e9 terms");
  return std::max(32, static_cast<int>(std::ceil(n)));
}

// partial = sum_{n < N} n^{-s}; n_pow = N^{-s}. Adds the Euler-Maclaurin
// boundary terms through B_{order} and checks the next term.
cplx em_finish(cplx s, lcplx partial, cplx n_pow, int N, int order) {
  const double n = N;
  lcplx value = partial;
  value += lcplx(n_pow * n / (s - 1.0));
  value += lcplx(0.5 * n_pow);
  cplx rising = s;
  cplx npow = n_pow / n;
  const int K = order / 2;
  for (int k = 1; k <= K; ++k) {
    value += lcplx(kBernoulliRatio[k] * rising * npow);
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    npow /= n * n;
  }
  const cplx result(static_cast<double>(value.real()), static_cast<double>(value.imag()));
  const double remainder = remainder_bound(s, order, n);
  if (!(remainder <= kRelativeRemainder * std::abs(result)))
    fail(ErrorKind::precision, "Euler-Maclaurin remainder " + std::to_string(remainder) +
                                   " too large at N=" + std::to_string(N) + "; raise euler_maclaurin_N");
  return result;
}

std::vector<double> sigma_path(double sigma, double step) {
  std::vector<double> out;
  for (int j = 0;; ++j) {
    const double s = kSigmaStart - j * step;
    if (s <= sigma) break;
    out.push_back(s);
  }
  out.push_back(sigma);
  return out;
}

template <class ZetaFn>
LogZetaSample continue_log(double sigma, double t, double step, ZetaFn&& zeta) {
  LogZetaSample out;
  out.t = t;
  const std::vector<double> path = sigma_path(sigma, step);
  cplx z = zeta(path.front());
  cplx total = std::log(z);
  if (!(std::abs(total) < 0.2))
    fail(ErrorKind::branch, "log zeta at sigma=3 is not small at t=" + std::to_string(t));

  auto advance = [&](auto&& self, double from, cplx z_from, double to, int depth) -> cplx {
    const cplx z_to = zeta(to);
    const cplx delta = std::log(z_to / z_from);
    if (std::abs(delta) < 1.0) {
      total += delta;
      ++out.increments;
      out.max_increment = std::max(out.max_increment, std::abs(delta));
      return z_to;
    }
    if (depth >= kMaxHalvings)
      fail(ErrorKind::branch, "sigma path step floor reached at t=" + std::to_string(t));
    ++out.halvings;
    const double mid = 0.5 * (from + to);
    const cplx z_mid = self(self, from, z_from, mid, depth + 1);
    return self(self, mid, z_mid, to, depth + 1);
  };
  for (std::size_t j = 1; j < path.size(); ++j) z = advance(advance, path[j - 1], z, path[j], 0);
  out.value = total;
  return out;
}

}  // namespace

void validate(const ZetaEvalConfig& cfg) {
  if (cfg.euler_maclaurin_N < 0) fail(ErrorKind::domain, "euler_maclaurin_N must be >= 0");
  if (cfg.bernoulli_order < 2 || cfg.bernoulli_order > 12 || cfg.bernoulli_order % 2 != 0)
    fail(ErrorKind::domain, "bernoulli_order must be even and within [2, 12]");
  if (!(cfg.sigma_path_step > 0.0 && cfg.sigma_path_step <= 0.25))
    fail(ErrorKind::domain, "sigma_path_step must lie in (0, 0.25]");
}

cplx zeta_em(cplx s, const ZetaEvalConfig& cfg) {
  validate(cfg);
  if (s == cplx(1.0, 0.0)) fail(ErrorKind::pole, "zeta has a pole at s = 1");
  if (!(s.real() > 0.0)) fail(ErrorKind::domain, "zeta_em needs Re s > 0");
  if (!(std::abs(s.imag()) <= 1e8)) fail(ErrorKind::domain, "zeta_em needs |Im s| <= 1e8");
  const int N = cfg.euler_maclaurin_N > 0 ? cfg.euler_maclaurin_N : auto_cutoff(s, cfg.bernoulli_order);
  const long double sigma = s.real(), t = s.imag();
  lcplx partial = 0.0L;
  for (int n = 1; n < N; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    partial += std::polar(std::exp(-sigma * ln), -t * ln);
  }
  const long double lnN = std::log(static_cast<long double>(N));
  const lcplx npow = std::polar(std::exp(-sigma * lnN), -t * lnN);
  return em_finish(s, partial, cplx(double(npow.real()), double(npow.imag())), N, cfg.bernoulli_order);
}

LogZetaSample log_zeta_line(double sigma, double t, const ZetaEvalConfig& cfg) {
  validate(cfg);
  if (!(sigma > 0.5)) fail(ErrorKind::domain, "log_zeta_line needs sigma > 1/2");
  if (!(std::abs(t) >= 2.0)) fail(ErrorKind::domain, "log_zeta_line needs |t| >= 2");
  return continue_log(sigma, t, cfg.sigma_path_step,
                      [&](double s) { return zeta_em(cplx(s, t), cfg); });
}

ZetaPathEvaluator::ZetaPathEvaluator(double sigma, double t_max, const ZetaEvalConfig& cfg)
    : sigma_(sigma), t_max_(t_max), cfg_(cfg), N_(0) {
  validate(cfg);
  if (!(sigma > 0.5)) fail(ErrorKind::domain, "the sigma path needs sigma > 1/2");
  if (!(t_max >= 2.0 && t_max <= 1e8)) fail(ErrorKind::domain, "t_max must lie in [2, 1e8]");
  levels_ = sigma_path(sigma, cfg.sigma_path_step);
  for (double level : levels_)
    cutoffs_.push_back(cfg.euler_maclaurin_N > 0 ? cfg.euler_maclaurin_N
                                                 : auto_cutoff(cplx(level, t_max), cfg.bernoulli_order));
  N_ = *std::max_element(cutoffs_.begin(), cutoffs_.end());

  log_n_.assign(N_ + 1, 0.0);
  for (int n = 1; n <= N_; ++n) log_n_[n] = std::log(double(n));
  // Grid level j is 3 - j step, so n^{-level} for the grid comes from the
  // lowest grid level times powers of n^{-step}; the target level is separate.
  last_.assign(N_ + 1, 0.0);
  for (int n = 1; n <= N_; ++n) last_[n] = std::exp(-sigma * log_n_[n]);
  if (levels_.size() >= 2) {
    const double lowest = levels_[levels_.size() - 2];
    base_.assign(N_ + 1, 0.0);
    ratio_.assign(N_ + 1, 0.0);
    for (int n = 1; n <= N_; ++n) {
      base_[n] = std::exp(-lowest * log_n_[n]);
      ratio_[n] = std::exp(-cfg.sigma_path_step * log_n_[n]);
    }
  }

  smallest_factor_.assign(N_ + 1, 0);
  for (std::uint32_t i = 2; i <= std::uint32_t(N_); ++i) {
    if (smallest_factor_[i] != 0) continue;
    primes_.push_back(i);
    prime_log_.push_back(std::log(static_cast<long double>(i)));
    for (std::uint64_t m = i; m <= std::uint64_t(N_); m += i)
      if (smallest_factor_[m] == 0) smallest_factor_[m] = i;
  }
}

cplx ZetaPathEvaluator::zeta_at(double sigma, double t, const std::vector<cplx>& phase) const {
  const int N = cfg_.euler_maclaurin_N > 0
                    ? cfg_.euler_maclaurin_N
                    : std::min(N_, auto_cutoff(cplx(sigma, t_max_), cfg_.bernoulli_order));
  lcplx partial = 0.0L;
  for (int start = 1; start < N; start += 1024) {
    const int stop = std::min(N, start + 1024);
    cplx block = 0.0;
    for (int n = start; n < stop; ++n) block += std::exp(-sigma * log_n_[n]) * phase[n];
    partial += lcplx(block);
  }
  return em_finish(cplx(sigma, t), partial, std::exp(-sigma * log_n_[N]) * phase[N], N,
                   cfg_.bernoulli_order);
}

// All path levels in one sweep over n, in blocks of 1024 terms combined in
// long double.
std::vector<cplx> ZetaPathEvaluator::level_values(double t, const std::vector<cplx>& phase) const {
  const int L = int(levels_.size());
  const int top_grid = L - 2;
  std::vector<lcplx> partial(L, 0.0L);
  std::vector<cplx> block(L);
  for (int start = 1; start < N_; start += 1024) {
    const int stop = std::min(N_, start + 1024);
    std::fill(block.begin(), block.end(), cplx(0.0));
    for (int n = start; n < stop; ++n) {
      const cplx ph = phase[n];
      if (n < cutoffs_[L - 1]) block[L - 1] += last_[n] * ph;
      double mag = top_grid >= 0 ? base_[n] : 0.0;
      for (int j = top_grid; j >= 0 && n < cutoffs_[j]; --j) {
        block[j] += mag * ph;
        mag *= ratio_[n];
      }
    }
    for (int j = 0; j < L; ++j) partial[j] += lcplx(block[j]);
  }
  std::vector<cplx> out(L);
  for (int j = 0; j < L; ++j) {
    const int N = cutoffs_[j];
    const double magN = std::exp(-levels_[j] * log_n_[N]);
    out[j] = em_finish(cplx(levels_[j], t), partial[j], magN * phase[N], N, cfg_.bernoulli_order);
  }
  return out;
}

LogZetaSample ZetaPathEvaluator::evaluate(double t) const {
  if (!(std::abs(t) >= 2.0 && std::abs(t) <= t_max_))
    fail(ErrorKind::domain, "t outside the evaluator range [2, t_max]");
  thread_local std::vector<cplx> phase;
  phase.assign(N_ + 1, cplx(0.0));
  phase[1] = 1.0;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    long double angle = static_cast<long double>(t) * prime_log_[i];
    angle -= two_pi * std::floor(angle / two_pi);
    phase[primes_[i]] = std::polar(1.0, -static_cast<double>(angle));
  }
  for (int n = 4; n <= N_; ++n) {
    const std::uint32_t p = smallest_factor_[n];
    if (p != std::uint32_t(n)) phase[n] = phase[p] * phase[n / p];
  }
  const std::vector<cplx> grid = level_values(t, phase);
  return continue_log(sigma_, t, cfg_.sigma_path_step, [&](double s) {
    for (std::size_t j = 0; j < levels_.size(); ++j)
      if (levels_[j] == s) return grid[j];
    return zeta_at(s, t, phase);
  });
}

EmpiricalMeasure empirical_zeta_measure(double theta, double T, std::uint64_t samples,
                                        std::uint64_t seed, const ZetaEvalConfig& cfg) {
  if (!(theta > 0.0 && theta < 0.5)) fail(ErrorKind::domain, "theta must lie in (0, 1/2)");
  if (!(T >= 100.0 && T <= 1e7)) fail(ErrorKind::domain, "T must lie in [100, 1e7]");
  if (samples == 0 || samples > 100000) fail(ErrorKind::domain, "samples must lie in [1, 1e5]");
  const double sigma = sigma_T(theta, T);
  const ZetaPathEvaluator evaluator(sigma, 2.0 * T, cfg);

  std::vector<std::optional<cplx>> values(samples);
  parallel_for(samples, 8, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double t = T * (1.0 + detail::counter_uniform(seed, i, 0));
      try {
        values[i] = evaluator.evaluate(t).value;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::branch) throw;
      }
    }
  });

  EmpiricalMeasure m;
  m.source = "zeta-line";
  m.theta = theta;
  m.T = T;
  m.sigma = sigma;
  m.seed = seed;
  m.requested = samples;
  for (const auto& v : values) {
    if (v) m.samples.push_back(*v);
    else ++m.exclusions;
  }
  m.count = m.samples.size();
  if (double(m.exclusions) > 0.01 * double(samples))
    fail(ErrorKind::quality, std::to_string(m.exclusions) + " of " + std::to_string(samples) +
                                 " samples excluded (more than 1%)");
  return m;
}

}  // namespace selberg
