#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "selberg/coeffs.hpp"
#include "selberg/density.hpp"
#include "selberg/errors.hpp"
#include "selberg/io.hpp"
#include "selberg/primes.hpp"
#include "selberg/randmodel.hpp"
#include "selberg/series.hpp"
#include "selberg/verify.hpp"
#include "selberg/zetaline.hpp"

using namespace selberg;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitQuality = 3;
constexpr int kExitInternal = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::precision:
    case ErrorKind::accuracy:
    case ErrorKind::branch:
    case ErrorKind::range:
    case ErrorKind::quality:
      return kExitQuality;
    default:
      return kExitUsage;
  }
}

struct Common {
  double theta = 0.3;
  double T = 1e6;
  int degree = 8;
  std::uint64_t prime_limit = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void add_expansion_flags(CLI::App* app, Common& c) {
  app->add_option("--theta", c.theta, "exponent in sigma_T = 1/2 + (log T)^-theta")->capture_default_str();
  app->add_option("--T", c.T, "height")->capture_default_str();
  app->add_option("--degree", c.degree, "truncation degree D")->capture_default_str();
  app->add_option("--prime-limit", c.prime_limit, "direct summation cutoff")->capture_default_str();
}

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) fail(ErrorKind::domain, "cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<Rectangle> default_panel() {
  return {Rectangle::make(0, 1, 0, 1), Rectangle::make(-1, 0, 0, 1), Rectangle::make(-1, 0, -1, 0),
          Rectangle::make(0, 1, -1, 0), Rectangle::make(-1, 1, -1, 1)};
}

std::vector<Rectangle> parse_rectangles(const std::vector<std::string>& texts) {
  if (texts.empty()) return default_panel();
  std::vector<Rectangle> out;
  for (const auto& t : texts) out.push_back(parse_rectangle(t));
  return out;
}

EmpiricalMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::domain, "cannot open '" + path + "'");
  return read_measure(in);
}

json estimate_json(const RectEstimate& e) { return {{"value", e.value}, {"stderr", e.stderr_}}; }

// ------------------------------------------------------------------ commands

int cmd_coeffs(const Common& c, const std::string& family, int series_order, double tol) {
  const Family f = family_from_string(family);
  CoeffOptions opts;
  opts.prime_limit = c.prime_limit;
  CoeffTable table;
  switch (f) {
    case Family::a: table = a_table(c.degree, series_order); break;
    case Family::b: table = b_table(c.degree, series_order); break;
    case Family::b_prime: table = b_prime_table(c.degree, tol, opts); break;
    case Family::b_tilde: table = b_tilde_table(b_prime_table(c.degree, tol, opts)); break;
    case Family::d: table = d_table(c.degree, tol, opts); break;
  }
  Output out(c.out);
  write_table(table, out.stream());
  return 0;
}

int cmd_density(const Common& c, double lo, double hi, int points) {
  if (points < 1) fail(ErrorKind::domain, "need at least one grid point per axis");
  if (!(lo <= hi)) fail(ErrorKind::order, "grid bounds out of order");
  const auto model = DensityModel::build(ExpansionParams::make(c.theta, c.T, c.degree, c.prime_limit));
  Output out(c.out);
  auto& s = out.stream();
  s << "x,y,F,negative\n";
  char line[128];
  int negative = 0;
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
      const double y = points == 1 ? lo : lo + (hi - lo) * j / (points - 1);
      const double F = density_F(model, x, y);
      negative += F < 0;
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", x, y, F, F < 0 ? 1 : 0);
      s << line;
    }
  if (negative > 0) std::cerr << "note: truncated density negative at " << negative << " grid points\n";
  return 0;
}

int cmd_prob(const Common& c, const std::string& rect_text) {
  const Rectangle rect = parse_rectangle(rect_text);
  const auto model = DensityModel::build(ExpansionParams::make(c.theta, c.T, c.degree, c.prime_limit));
  const double value = rect_probability(model, rect);
  json flags = json::array();
  if (value < 0.0) flags.push_back("negative");
  if (value > 1.0) flags.push_back("above_one");
  const json report = {{"rect", to_json(rect)},
                       {"D", model.degree()},
                       {"theta", c.theta},
                       {"T", c.T},
                       {"psi", model.params().psi},
                       {"value", value},
                       {"gaussian_leading_term", gaussian_leading_term(rect)},
                       {"correction_budget", correction_budget(model, rect)},
                       {"flags", flags}};
  Output out(c.out);
  out.stream() << report.dump(1) << '\n';
  return 0;
}

int emit_measure(const Common& c, const EmpiricalMeasure& m, const std::vector<std::string>& rects) {
  Output out(c.out);
  if (rects.empty()) {
    write_measure(m, out.stream());
    return 0;
  }
  const double psi = ExpansionParams::make(c.theta, c.T, 0, c.prime_limit).psi;
  json rows = json::array();
  for (const auto& r : parse_rectangles(rects)) {
    json row = estimate_json(empirical_rect_probability(m, r, psi));
    row["rect"] = to_json(r);
    rows.push_back(std::move(row));
  }
  out.stream() << json{{"source", m.source}, {"count", m.count}, {"psi", psi}, {"rectangles", rows}}.dump(1)
               << '\n';
  return 0;
}

int cmd_mc(const Common& c, std::optional<double> sigma, std::uint64_t primes, std::uint64_t samples,
           const std::vector<std::string>& rects) {
  RandomEulerConfig cfg;
  cfg.sigma = sigma ? *sigma : sigma_T(c.theta, c.T);
  cfg.prime_limit = primes;
  cfg.sample_count = samples;
  cfg.seed = c.seed;
  return emit_measure(c, sample_log_zeta_random(cfg), rects);
}

int cmd_zeta(const Common& c, std::uint64_t samples, const std::vector<std::string>& rects) {
  return emit_measure(c, empirical_zeta_measure(c.theta, c.T, samples, c.seed), rects);
}

int cmd_verify(const std::string& suite, bool quick, std::uint64_t seed, const std::string& json_path) {
  if (!is_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "'\n";
    return kExitUsage;
  }
  VerifyOptions opts;
  opts.quick = quick;
  opts.seed = seed;
  const auto results = run_suite(suite, opts);
  json report = json::array();
  int failures = 0;
  for (const auto& r : results) {
    failures += !r.passed;
    std::string tag = r.criterion ? "[C" + std::to_string(r.criterion) + "] " : "";
    std::printf("%s %-9s %s%s (%.1f s)\n    %s\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(), tag.c_str(),
                r.name.c_str(), r.seconds, r.detail.c_str());
    report.push_back({{"suite", r.suite},
                      {"name", r.name},
                      {"criterion", r.criterion},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
  }
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  if (!json_path.empty()) {
    Output out(json_path);
    out.stream() << report.dump(1) << '\n';
  }
  return failures ? kExitQuality : 0;
}

struct CompareFlags {
  std::uint64_t mc_samples = 1000000;
  std::uint64_t mc_primes = 10000;
  std::uint64_t zeta_samples = 10000;
  std::string mc_in, zeta_in;
  std::vector<std::string> rects;
};

int cmd_compare(const Common& c, const CompareFlags& f) {
  const auto model = DensityModel::build(ExpansionParams::make(c.theta, c.T, c.degree, c.prime_limit));
  const double psi = model.params().psi;
  const double sigma = model.params().sigma_T;

  std::optional<EmpiricalMeasure> mc, zeta;
  if (!f.mc_in.empty()) {
    mc = load_measure(f.mc_in);
  } else if (f.mc_samples > 0) {
    RandomEulerConfig cfg;
    cfg.sigma = sigma;
    cfg.prime_limit = f.mc_primes;
    cfg.sample_count = f.mc_samples;
    cfg.seed = c.seed;
    mc = sample_log_zeta_random(cfg);
  }
  if (!f.zeta_in.empty()) {
    zeta = load_measure(f.zeta_in);
  } else if (f.zeta_samples > 0) {
    zeta = empirical_zeta_measure(c.theta, c.T, f.zeta_samples, c.seed);
  }

  const double s_norm = mc ? mc->omitted_tail_std / std::sqrt(std::numbers::pi * psi) : 0.0;
  json rows = json::array();
  int flagged = 0;
  std::printf("%-22s %10s %18s %10s %10s  flags\n", "rectangle", "expansion", "monte-carlo", "mc budget",
              "zeta-line");
  for (const auto& r : parse_rectangles(f.rects)) {
    const double expansion = rect_probability(model, r);
    const double trunc = truncation_estimate(rect_probability_by_degree(model, r));
    json row = {{"rect", to_json(r)}, {"expansion", expansion}, {"truncation_estimate", trunc}};
    json flags = json::array();
    std::string mc_col = "-", budget_col = "-", zeta_col = "-";
    if (mc) {
      const auto e = empirical_rect_probability(*mc, r, psi);
      double edges = 0.0;
      auto len = [](double lo, double hi) { return std::isfinite(lo) && std::isfinite(hi) ? hi - lo : 0.0; };
      if (std::isfinite(r.a)) edges += len(r.c, r.d);
      if (std::isfinite(r.b)) edges += len(r.c, r.d);
      if (std::isfinite(r.c)) edges += len(r.a, r.b);
      if (std::isfinite(r.d)) edges += len(r.a, r.b);
      const double budget = 4 * e.stderr_ + s_norm * std::sqrt(2 / std::numbers::pi) * edges + trunc;
      row["monte_carlo"] = estimate_json(e);
      row["monte_carlo_budget"] = budget;
      if (std::abs(e.value - expansion) > budget) flags.push_back("expansion_vs_monte_carlo");
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f +- %.4f", e.value, e.stderr_);
      mc_col = buf;
      std::snprintf(buf, sizeof buf, "%.4f", budget);
      budget_col = buf;
    }
    if (zeta) {
      const auto e = empirical_rect_probability(*zeta, r, psi);
      row["zeta_line"] = estimate_json(e);
      if (std::abs(e.value - expansion) > 0.05) flags.push_back("expansion_vs_zeta_line");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", e.value);
      zeta_col = buf;
    }
    row["flags"] = flags;
    flagged += !flags.empty();
    std::string label = to_json(r).dump();
    std::string flag_text;
    for (const auto& fl : flags) flag_text += fl.get<std::string>() + " ";
    std::printf("%-22s %10.4f %18s %10s %10s  %s\n", label.c_str(), expansion, mc_col.c_str(), budget_col.c_str(),
                zeta_col.c_str(), flag_text.c_str());
    rows.push_back(std::move(row));
  }
  json report = {{"theta", c.theta}, {"T", c.T}, {"D", model.degree()}, {"psi", psi}, {"sigma_T", sigma},
                 {"rectangles", rows}};
  if (mc) report["monte_carlo"] = {{"count", mc->count}, {"seed", mc->seed}, {"prime_limit", mc->prime_limit},
                                   {"omitted_tail_std", mc->omitted_tail_std}};
  if (zeta) report["zeta_line"] = {{"count", zeta->count}, {"requested", zeta->requested},
                                   {"exclusions", zeta->exclusions}, {"seed", zeta->seed}};
  if (!c.out.empty()) {
    Output out(c.out);
    out.stream() << report.dump(1) << '\n';
  }
  return flagged ? kExitQuality : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite expansion of the joint distribution of log zeta"};
  app.require_subcommand(1);

  Common common;

  auto* coeffs = app.add_subcommand("coeffs", "export a coefficient table as JSON");
  std::string family = "d";
  int series_order = 12;
  double tol = 1e-12;
  add_expansion_flags(coeffs, common);
  coeffs->add_option("--family", family, "a, b, b_prime, b_tilde or d")->capture_default_str();
  coeffs->add_option("--series-order", series_order, "powers of w^2 kept for a and b")->capture_default_str();
  coeffs->add_option("--tol", tol, "error target for prime sums")->capture_default_str();
  coeffs->add_option("--out", common.out, "output file (default stdout)");

  auto* density = app.add_subcommand("density", "density grid as CSV in raw coordinates");
  double lo = -1.0, hi = 1.0;
  int points = 21;
  add_expansion_flags(density, common);
  density->add_option("--min", lo, "lower grid bound on both axes")->capture_default_str();
  density->add_option("--max", hi, "upper grid bound on both axes")->capture_default_str();
  density->add_option("--points", points, "grid points per axis")->capture_default_str();
  density->add_option("--out", common.out, "output file (default stdout)");

  auto* prob = app.add_subcommand("prob", "rectangle probability in the normalized plane");
  std::string rect;
  add_expansion_flags(prob, common);
  prob->add_option("--rect", rect, "a,b,c,d with inf/-inf allowed")->required();
  prob->add_option("--out", common.out, "output file (default stdout)");

  auto* mc = app.add_subcommand("mc", "random Euler product samples");
  std::optional<double> sigma;
  std::uint64_t mc_primes = 10000, mc_samples = 100000;
  std::vector<std::string> rects;
  add_expansion_flags(mc, common);
  mc->add_option("--sigma", sigma, "real part (default sigma_T)");
  mc->add_option("--primes", mc_primes, "largest prime in the product")->capture_default_str();
  mc->add_option("--samples", mc_samples, "sample count")->capture_default_str();
  mc->add_option("--seed", common.seed, "random seed")->capture_default_str();
  mc->add_option("--rect", rects, "report rectangle frequencies instead of samples");
  mc->add_option("--out", common.out, "output file (default stdout)");

  auto* zeta = app.add_subcommand("zeta-empirical", "log zeta(sigma_T + it) for t uniform on [T, 2T]");
  std::uint64_t zeta_samples = 10000;
  add_expansion_flags(zeta, common);
  zeta->add_option("--samples", zeta_samples, "sample count")->capture_default_str();
  zeta->add_option("--seed", common.seed, "random seed")->capture_default_str();
  zeta->add_option("--rect", rects, "report rectangle frequencies instead of samples");
  zeta->add_option("--out", common.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run property and acceptance suites");
  std::string suite = "all";
  bool quick = false;
  std::string report_path;
  verify->add_option("--suite", suite, "series, coeffs, hermite, density, randmodel, zetaline or all")
      ->capture_default_str();
  verify->add_flag("--quick", quick, "fewer Monte-Carlo and zeta-line samples");
  verify->add_option("--seed", common.seed, "random seed")->capture_default_str();
  verify->add_option("--json", report_path, "also write a JSON report here");

  auto* compare = app.add_subcommand("compare", "expansion vs random model vs zeta line");
  CompareFlags cf;
  add_expansion_flags(compare, common);
  compare->add_option("--samples", cf.mc_samples, "Monte-Carlo samples (0 skips)")->capture_default_str();
  compare->add_option("--primes", cf.mc_primes, "largest prime in the random product")->capture_default_str();
  compare->add_option("--zeta-samples", cf.zeta_samples, "zeta-line samples (0 skips)")->capture_default_str();
  compare->add_option("--mc-in", cf.mc_in, "reuse a saved random-model measure");
  compare->add_option("--zeta-in", cf.zeta_in, "reuse a saved zeta-line measure");
  compare->add_option("--rect", cf.rects, "rectangles (default: unit quadrants and [-1,1]^2)");
  compare->add_option("--seed", common.seed, "random seed")->capture_default_str();
  compare->add_option("--out", common.out, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(common, family, series_order, tol);
    if (*density) return cmd_density(common, lo, hi, points);
    if (*prob) return cmd_prob(common, rect);
    if (*mc) return cmd_mc(common, sigma, mc_primes, mc_samples, rects);
    if (*zeta) return cmd_zeta(common, zeta_samples, rects);
    if (*verify) return cmd_verify(suite, quick, common.seed, report_path);
    if (*compare) return cmd_compare(common, cf);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
