#include "selberg/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "selberg/errors.hpp"
#include "selberg/hermite.hpp"

namespace selberg {

namespace {

bool valid_coordinate(double v) { return !std::isnan(v); }

std::vector<double> rect_factors(int D, double lo, double hi) {
  std::vector<double> out(static_cast<std::size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) out[n] = hermite_rect_integral(n, lo, hi);
  return out;
}

}  // namespace

Rectangle Rectangle::make(double a, double b, double c, double d) {
  if (!valid_coordinate(a) || !valid_coordinate(b) || !valid_coordinate(c) || !valid_coordinate(d))
    fail(ErrorKind::domain, "rectangle coordinate is NaN");
  if (a > b || c > d) fail(ErrorKind::order, "rectangle needs a <= b and c <= d");
  return Rectangle{a, b, c, d};
}

Rectangle Rectangle::plane() {
  const double inf = std::numeric_limits<double>::infinity();
  return Rectangle{-inf, inf, -inf, inf};
}

Rectangle normalized_to_raw(const Rectangle& r, double psi) {
  if (!(psi > 0)) fail(ErrorKind::domain, "psi must be positive");
  const double s = std::sqrt(std::numbers::pi * psi);
  return Rectangle{r.a * s, r.b * s, r.c * s, r.d * s};
}

Rectangle raw_to_normalized(const Rectangle& r, double psi) {
  if (!(psi > 0)) fail(ErrorKind::domain, "psi must be positive");
  const double s = std::sqrt(std::numbers::pi * psi);
  return Rectangle{r.a / s, r.b / s, r.c / s, r.d / s};
}

DensityModel::DensityModel(ExpansionParams params, const CoeffTable& d)
    : params_(params), degree_(0), table_bound_(d.tail_bound) {
  if (d.family != Family::d) fail(ErrorKind::domain, "density model needs a d table");
  if (!(params_.psi > 0)) fail(ErrorKind::domain, "psi must be positive");
  degree_ = std::min(params_.degree, d.degree);
  d_.assign(static_cast<std::size_t>((degree_ + 1) * (degree_ + 1)), 0.0);
  for (const auto& e : d.entries)
    if (e.k + e.l <= degree_ && e.k >= 0 && e.l >= 0) d_[e.k * (degree_ + 1) + e.l] = e.value;
}

DensityModel DensityModel::build(const ExpansionParams& params, double tol) {
  CoeffOptions opts;
  opts.prime_limit = params.prime_limit;
  CoeffTable table = d_table(params.degree, tol, opts);
  table.params = params;
  return DensityModel(params, table);
}

double DensityModel::d(int k, int l) const {
  if (k < 0 || l < 0 || k + l > degree_) return 0.0;
  return d_[k * (degree_ + 1) + l];
}

std::vector<double> density_by_degree(const DensityModel& model, double x, double y) {
  const double psi = model.params().psi;
  const double root = std::sqrt(psi);
  const int D = model.degree();
  std::vector<double> hx(D + 1), hy(D + 1);
  for (int n = 0; n <= D; ++n) {
    hx[n] = hermite(n, x / root);
    hy[n] = hermite(n, y / root);
  }
  const double gauss = std::exp(-(x * x + y * y) / psi) / (std::numbers::pi * psi);
  std::vector<double> out(D + 1, 0.0);
  for (int m = 0; m <= D; ++m) {
    const double scale = gauss * std::pow(root, -m);
    for (int k = 0; k <= m; ++k) {
      const double c = model.d(k, m - k);
      if (c != 0.0) out[m] += c * scale * hx[k] * hy[m - k];
    }
  }
  return out;
}

double density_F(const DensityModel& model, double x, double y) {
  double total = 0.0;
  for (double v : density_by_degree(model, x, y)) total += v;
  return total;
}

std::vector<double> rect_probability_by_degree(const DensityModel& model, const Rectangle& rect) {
  const int D = model.degree();
  const std::vector<double> ix = rect_factors(D, rect.a, rect.b);
  const std::vector<double> iy = rect_factors(D, rect.c, rect.d);
  const double root = std::sqrt(model.params().psi);
  std::vector<double> out(D + 1, 0.0);
  for (int m = 0; m <= D; ++m) {
    const double scale = std::pow(root, -m);
    for (int k = 0; k <= m; ++k) {
      const double c = model.d(k, m - k);
      if (c != 0.0) out[m] += c * scale * ix[k] * iy[m - k];
    }
  }
  return out;
}

double rect_probability(const DensityModel& model, const Rectangle& rect) {
  double total = 0.0;
  for (double v : rect_probability_by_degree(model, rect)) total += v;
  return total;
}

double gaussian_leading_term(const Rectangle& rect) {
  return hermite_rect_integral(0, rect.a, rect.b) * hermite_rect_integral(0, rect.c, rect.d);
}

double correction_budget(const DensityModel& model, const Rectangle& rect) {
  const int D = model.degree();
  const std::vector<double> ix = rect_factors(D, rect.a, rect.b);
  const std::vector<double> iy = rect_factors(D, rect.c, rect.d);
  const double root = std::sqrt(model.params().psi);
  double budget = 0.0;
  for (int m = 3; m <= D; ++m)
    for (int k = 0; k <= m; ++k)
      budget += std::abs(model.d(k, m - k)) * std::pow(root, -m) * std::abs(ix[k] * iy[m - k]);
  return budget;
}

double truncation_estimate(const std::vector<double>& by_degree) {
  const std::size_t n = by_degree.size();
  if (n <= 3) return 0.0;
  return std::abs(by_degree[n - 1]) + std::abs(by_degree[n - 2]);
}

}  // namespace selberg
