#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selberg {

/// Ambient parameters of the expansion at height T.
struct ExpansionParams {
  double theta = 0.3;
  double T = 1e6;
  double sigma_T = 0.0;  // 1/2 + (log T)^{-theta}
  double psi = 0.0;      // psi_T
  int degree = 8;        // max k + l retained
  std::uint64_t prime_limit = 100000;

  // Validates theta in (0, 1/2), T >= 100, sigma_T in (1/2, 1), degree >= 0
  // and fills sigma_T and psi.
  static ExpansionParams make(double theta, double T, int degree = 8,
                              std::uint64_t prime_limit = 100000);
};

enum class Family { a, b, b_tilde, b_prime, d };

std::string_view to_string(Family f);
Family family_from_string(std::string_view name);

struct CoeffEntry {
  int k = 0;
  int l = 0;
  int n = -1;          // power of w^2 for the a/b series families, else -1
  double value = 0.0;  // real part
  double imag = 0.0;   // only b_tilde is complex
  double bound = 0.0;  // error bound of this entry
};

struct CoeffTable {
  Family family = Family::d;
  int degree = 0;
  std::uint64_t prime_limit = 0;
  int series_order = 0;
  double tail_bound = 0.0;
  std::optional<ExpansionParams> params;
  std::vector<CoeffEntry> entries;

  // Entry (k, l) of a non-series family, if present.
  std::optional<double> value(int k, int l) const;
  const CoeffEntry* find(int k, int l, int n = -1) const;
};

struct CoeffOptions {
  std::uint64_t prime_limit = 100000;  // direct-summation cutoff inside P(s)
  int series_order = 60;               // initial truncation in powers of w^2
  int max_series_order = 480;
};

// Series coefficient tables of a_{k,l}(w) and b_{k,l}(w) in powers of w^2,
// for 1 <= k, l and k + l <= D.
CoeffTable a_table(int D, int N);
CoeffTable b_table(int D, int N);

// b'_{k,l} = (2^{k+l} k! l!)^{-1} sum_p b_{k,l}(p^{-1/2}) for 3 <= k + l <= D,
// summed as sum_n beta_n P(n) with beta_n the w^{2n} coefficients of b_{k,l}.
CoeffTable b_prime_table(int D, double tol, const CoeffOptions& opts = {});

// b~_{k,l} = (2 pi i)^{k+l} b'_{k,l}.
CoeffTable b_tilde_table(const CoeffTable& b_prime);

// exp(sum b'_{k,l} (x+iy)^k (x-iy)^l) re-expanded as sum d_{k,l} x^k y^l.
CoeffTable d_table(const CoeffTable& b_prime);
CoeffTable d_table(int D, double tol = 1e-12, const CoeffOptions& opts = {});

struct DecayReport {
  double delta3 = 0.0;
  std::vector<double> rows;  // max_{k+l=m} |d_{k,l}| delta3^m
  bool bounded = true;       // no row past m = 3 exceeds 10x the m = 3 row
};

DecayReport d_decay_check(const CoeffTable& table, double delta3);

// Supremum sqrt(2) / (e C_{1/sqrt 2}) of the admissible delta_3, nudged one
// ulp down to keep the inequality strict.
double default_delta3();

}  // namespace selberg
