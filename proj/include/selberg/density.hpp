#pragma once

#include <vector>

#include "selberg/coeffs.hpp"

namespace selberg {

/// [a, b] x [c, d]; endpoints may be +-infinity. a == b or c == d gives a
/// measure-zero rectangle.
struct Rectangle {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  static Rectangle make(double a, double b, double c, double d);
  static Rectangle plane();
};

// Scales every coordinate by sqrt(pi psi), mapping the normalized plane of
// log zeta / sqrt(pi psi) onto raw log zeta values.
Rectangle normalized_to_raw(const Rectangle& r, double psi);
Rectangle raw_to_normalized(const Rectangle& r, double psi);

class DensityModel {
 public:
  DensityModel(ExpansionParams params, const CoeffTable& d);

  // Builds the d table for params.degree (prime-zeta route) and wraps it.
  static DensityModel build(const ExpansionParams& params, double tol = 1e-12);

  const ExpansionParams& params() const { return params_; }
  int degree() const { return degree_; }
  double d(int k, int l) const;
  double table_bound() const { return table_bound_; }

 private:
  ExpansionParams params_;
  int degree_;
  double table_bound_;
  std::vector<double> d_;  // dense (degree+1)^2, row k
};

// e^{-(x^2+y^2)/psi} sum_{k+l<=D} d_{k,l} / (pi psi^{(k+l+2)/2}) H_k(x/sqrt psi) H_l(y/sqrt psi).
// Signed: the truncated expansion may dip below zero in the tails.
double density_F(const DensityModel& model, double x, double y);

// sum_{k+l<=D} d_{k,l} psi^{-(k+l)/2} I_k(a,b) I_l(c,d), I_n the Hermite
// rectangle integral, for a rectangle in the normalized plane.
double rect_probability(const DensityModel& model, const Rectangle& rect);

// Contribution of each total degree m = 0..D to rect_probability / density_F.
std::vector<double> rect_probability_by_degree(const DensityModel& model, const Rectangle& rect);
std::vector<double> density_by_degree(const DensityModel& model, double x, double y);

double gaussian_leading_term(const Rectangle& rect);

// Triangle-inequality bound on |rect_probability - gaussian_leading_term|.
double correction_budget(const DensityModel& model, const Rectangle& rect);

// Size of the two highest retained degrees: the truncation estimate used as
// the budget when comparing against an independent oracle.
double truncation_estimate(const std::vector<double>& by_degree);

}  // namespace selberg
