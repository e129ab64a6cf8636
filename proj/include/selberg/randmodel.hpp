#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "selberg/coeffs.hpp"
#include "selberg/density.hpp"
#include "selberg/series.hpp"

namespace selberg {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RandomEulerConfig {
  double sigma = 0.75;
  std::uint64_t prime_limit = 10000;
  std::uint64_t sample_count = 100000;
  std::uint64_t seed = kDefaultSeed;
};

/// Cloud of log zeta draws (raw coordinates, re + i im) with provenance.
struct EmpiricalMeasure {
  std::vector<std::complex<double>> samples;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  std::uint64_t prime_limit = 0;
  std::string source = "random-model";
  double theta = 0.0;  // zeta-line only
  double T = 0.0;      // zeta-line only
  std::uint64_t requested = 0;
  std::uint64_t exclusions = 0;
  double omitted_tail_std = 0.0;  // per coordinate, raw units
};

// log zeta(sigma, X) = -sum_{p <= P} log(1 - X(p) p^{-sigma}), X(p) = e^{2 pi i U}.
// U is a hash of (seed, sample index, prime index), so results do not depend
// on the thread count.
EmpiricalMeasure sample_log_zeta_random(const RandomEulerConfig& cfg);

// sqrt(sum_{p > P} b_{1,1}(p^{-sigma})): the per-coordinate standard
// deviation of the factors left out of a product truncated at P.
double omitted_tail_std(double sigma, std::uint64_t prime_limit);

struct RectEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Fraction of samples with sample / sqrt(pi psi) in [a, b) x [c, d).
RectEstimate empirical_rect_probability(const EmpiricalMeasure& m, const Rectangle& rect,
                                        double psi);

// E exp(-2i (u Re L + v Im L)), L = log(1 - w X), by the trapezoid rule on the
// circle. Node count doubles from `nodes` until successive values agree to 1e-12.
std::complex<double> J_quadrature(double u, double v, double w, int nodes = 64);

// Series of sum_{p > P} log J(u', v', p^{-sigma}) in powers of (u'+iv'), (u'-iv')
// up to total degree D, summed through the prime zeta tail. Evaluate at
// (pi u, pi v).
ConjugateSeries log_J_tail_series(double sigma, std::uint64_t prime_limit, int D);

// prod_{p <= P} J(pi u, pi v, p^{-sigma}).
std::complex<double> characteristic_truncated(double u, double v, double sigma,
                                              std::uint64_t prime_limit);

// Bound on |prod_{p in S} J(pi u, pi v, p^{-sigma}) - 1| for any set S of primes
// above P: each factor satisfies |J - 1| <= 2 pi^2 (u^2+v^2) b_{1,1}(p^{-sigma}).
double truncation_change_bound(double u, double v, double sigma, std::uint64_t prime_limit);

struct LogJResidual {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double residual = 0.0;
};

// |sum_p log J(pi u, pi v, p^{-sigma}) - (-pi^2 (u^2+v^2) psi(sigma)
//   + sum_{3 <= k+l <= D} b~_{k,l} (u+iv)^k (u-iv)^l)|, the left side over
// p <= P by quadrature plus the prime-zeta tail series for p > P.
LogJResidual log_J_vs_expansion_detail(double u, double v, double sigma,
                                       std::uint64_t prime_limit, int D);
double log_J_vs_expansion(double u, double v, double sigma, std::uint64_t prime_limit, int D);

struct InversionGrid {
  double step = 0.1;            // trapezoid spacing in (u, v)
  double radius = 0.0;          // 0: grow until |Phi^| < cutoff on the boundary
  double max_radius = 24.0;
  double cutoff = 1e-12;
  std::uint64_t prime_limit = 1000;  // factors by quadrature; the rest by tail series
  int tail_degree = 6;
};

/// Density of log zeta(sigma_T, X) by numerical Fourier inversion of the
/// characteristic function prod_p J(pi u, pi v, p^{-sigma_T}).
class FourierInversionOracle {
 public:
  FourierInversionOracle(const ExpansionParams& params, const InversionGrid& grid = {});

  std::complex<double> characteristic(double u, double v) const;
  double density(double x, double y) const;
  double box_probability(const Rectangle& raw) const;
  double radius() const { return radius_; }
  std::size_t nodes() const { return values_.size(); }
  double imag_residue() const { return imag_residue_; }

 private:
  struct Factor {
    std::vector<double> re, im;  // Re L, Im L at the trapezoid nodes
  };

  std::complex<double> factor_product(double u, double v) const;

  ExpansionParams params_;
  InversionGrid grid_;
  std::vector<Factor> factors_;
  ConjugateSeries tail_;
  double radius_ = 0.0;
  double imag_residue_ = 0.0;
  std::vector<double> us_, vs_;
  std::vector<std::complex<double>> values_;
};

double fourier_invert_density(const ExpansionParams& params, double x, double y,
                              const InversionGrid& grid = {});

// CSV: a "# {json header}" line, a "re,im" header row, one sample per row.
void write_measure(const EmpiricalMeasure& m, std::ostream& out);
EmpiricalMeasure read_measure(std::istream& in);

}  // namespace selberg
