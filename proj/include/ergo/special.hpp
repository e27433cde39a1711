#pragma once

namespace ergo {

/// Error function evaluated without platform libm special functions:
/// Maclaurin series for small arguments, Laplace continued fraction for the
/// tail. Relative accuracy is better than 1e-13 across the real line, which
/// keeps the closed-form oracles bit-stable across platforms.
double erf(double x);

/// Complementary error function, accurate in the far tail (relative sense).
double erfc(double x);

/// Standard normal cumulative distribution function.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

}  // namespace ergo
