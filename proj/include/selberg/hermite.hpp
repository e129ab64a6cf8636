#pragma once

namespace selberg {

inline constexpr int kMaxHermiteOrder = 200;

// Physicists' Hermite polynomial H_n(x) = (-1)^n e^{x^2} d^n/dx^n e^{-x^2},
// by forward recurrence. Throws a range error if the value overflows.
double hermite(int n, double x);

// Phi(x) = int_0^x e^{-pi u^2} du = erf(sqrt(pi) x) / 2.
double gauss_phi(double x);

// e^{-pi x^2} H_n(sqrt(pi) x); exactly 0 at x = +-infinity.
double weighted_hermite(int n, double x);

// int_{x1}^{x2} e^{-pi x^2} H_n(sqrt(pi) x) dx in closed form. Endpoints may
// be +-infinity. Throws an order error if x1 > x2.
double hermite_rect_integral(int n, double x1, double x2);

}  // namespace selberg
