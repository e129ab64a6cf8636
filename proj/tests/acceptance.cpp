// Runs the ten acceptance criteria and prints one line per criterion. Exits
// non-zero when a criterion fails that is expected to hold.
#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "selberg/density.hpp"
#include "selberg/randmodel.hpp"
#include "selberg/verify.hpp"

using namespace selberg;

namespace {

// d table built from the cumulants of the model at sigma_T itself rather than
// at the half line, so the expansion describes the finite-T distribution.
CoeffTable sigma_matched_d(double sigma, int D) {
  const auto c = log_J_tail_series(sigma, 0, D);
  CoeffTable bp;
  bp.family = Family::b_prime;
  bp.degree = D;
  for (int t = 3; t <= D; ++t)
    for (int k = 1; k < t; ++k) {
      const std::complex<double> it = std::pow(std::complex<double>(0, 1), t);
      CoeffEntry e;
      e.k = k;
      e.l = t - k;
      e.value = (c(k, t - k) / it).real() / std::pow(2.0, t);
      bp.entries.push_back(e);
    }
  return d_table(bp);
}

void sigma_matched_report() {
  const auto params = ExpansionParams::make(0.3, 1e6, 8);
  const DensityModel literal = DensityModel::build(params);
  const DensityModel matched(params, sigma_matched_d(params.sigma_T, params.degree));
  const FourierInversionOracle oracle(params);

  std::printf("\nexpansion with cumulants at sigma_T (diagnostic, D = 8):\n");
  std::printf("  %-18s %12s %12s %12s\n", "quantity", "half-line d", "sigma_T d", "inversion");
  const Rectangle rects[] = {Rectangle::make(0, 1, 0, 1), Rectangle::make(-1, 0, 0, 1),
                             Rectangle::make(-1, 1, -1, 1)};
  const char* labels[] = {"P [0,1]x[0,1]", "P [-1,0]x[0,1]", "P [-1,1]x[-1,1]"};
  for (int i = 0; i < 3; ++i) {
    const auto raw = normalized_to_raw(rects[i], params.psi);
    std::printf("  %-18s %12.5f %12.5f %12.5f\n", labels[i], rect_probability(literal, rects[i]),
                rect_probability(matched, rects[i]), oracle.box_probability(raw));
  }
  for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{0.6, 0.0}, std::pair{-0.6, 0.6}})
    std::printf("  F(%4.1f,%4.1f)        %12.5f %12.5f %12.5f\n", x, y, density_F(literal, x, y),
                density_F(matched, x, y), oracle.density(x, y));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  VerifyOptions opts;
  bool diagnostic = true;
  app.add_flag("--quick", opts.quick, "fewer Monte-Carlo and zeta-line samples");
  app.add_option("--seed", opts.seed, "sampling seed");
  app.add_flag("!--no-diagnostic", diagnostic, "skip the sigma_T cumulant comparison");
  CLI11_PARSE(app, argc, argv);

  int unexpected_failures = 0;
  try {
    for (const auto& r : run_criteria(opts)) {
      const bool expected_fail = known_unattainable(r.criterion);
      const char* tag = r.passed ? "PASS" : (expected_fail ? "FAIL (known)" : "FAIL");
      std::printf("[%-12s] criterion %2d  %-52s %7.1fs  %s\n", tag, r.criterion, r.name.c_str(),
                  r.seconds, r.detail.c_str());
      if (!r.passed && !expected_fail) ++unexpected_failures;
      if (r.passed && expected_fail)
        std::printf("               criterion %d passed although it is listed as unattainable\n",
                    r.criterion);
      std::fflush(stdout);
    }
    if (diagnostic) sigma_matched_report();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 4;
  }
  std::printf("\n%d unexpected failure(s)\n", unexpected_failures);
  return unexpected_failures == 0 ? 0 : 1;
}
