#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "selberg/randmodel.hpp"

namespace selberg {

struct ZetaEvalConfig {
  int euler_maclaurin_N = 0;    // 0: smallest N meeting the remainder target
  int bernoulli_order = 12;     // highest B_{2k} used; even, <= 12
  double sigma_path_step = 0.25;
};

void validate(const ZetaEvalConfig& cfg);

// Euler-Maclaurin summation for Re s > 0, s != 1, |Im s| <= 1e8. Fails with a
// precision error when the remainder estimate exceeds 1e-11 |zeta|.
std::complex<double> zeta_em(std::complex<double> s, const ZetaEvalConfig& cfg = {});

struct LogZetaSample {
  double t = 0.0;
  std::complex<double> value;  // continuous branch of log zeta(sigma + it)
  int increments = 0;
  int halvings = 0;
  double max_increment = 0.0;  // largest |delta log zeta| along the sigma path
};

// log zeta(sigma + it) continued along sigma from 3, where the Dirichlet series
// for log zeta is principal. Steps halve until each increment has
// |delta| < 1; reaching the floor raises a branch error naming t.
LogZetaSample log_zeta_line(double sigma, double t, const ZetaEvalConfig& cfg = {});

/// log_zeta_line for many t at a fixed sigma. n^{-sigma} tables are built once
/// for the sigma path; n^{-it} is computed at primes and filled in
/// multiplicatively.
class ZetaPathEvaluator {
 public:
  ZetaPathEvaluator(double sigma, double t_max, const ZetaEvalConfig& cfg = {});

  LogZetaSample evaluate(double t) const;
  int cutoff() const { return N_; }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<int>& cutoffs() const { return cutoffs_; }

 private:
  std::complex<double> zeta_at(double sigma, double t,
                               const std::vector<std::complex<double>>& phase) const;
  std::vector<std::complex<double>> level_values(double t,
                                                 const std::vector<std::complex<double>>& phase) const;

  double sigma_;
  double t_max_;
  ZetaEvalConfig cfg_;
  int N_;
  std::vector<double> levels_;
  std::vector<int> cutoffs_;
  std::vector<double> base_;   // n^{-lowest grid level}
  std::vector<double> ratio_;  // n^{-step}
  std::vector<double> last_;   // n^{-sigma}
  std::vector<double> log_n_;
  std::vector<std::uint32_t> smallest_factor_;
  std::vector<std::uint32_t> primes_;
  std::vector<long double> prime_log_;
};

// t uniform on [T, 2T] (counter-hashed from seed); values log zeta(sigma_T + it).
// Samples whose branch cannot be tracked are dropped and counted; more than 1%
// dropped is a quality error.
EmpiricalMeasure empirical_zeta_measure(double theta, double T, std::uint64_t samples,
                                        std::uint64_t seed = kDefaultSeed,
                                        const ZetaEvalConfig& cfg = {});

}  // namespace selberg
