#pragma once

// Double-precision Gamma and hypergeometric functions for real parameters.
// The hypergeometric functions are implemented for z <= 0 only.

namespace mcfrac {

/// Gamma(x). Lanczos approximation (g = 7) with reflection for x < 1/2.
/// Throws DomainError at the poles 0, -1, -2, ... and NumericError on
/// overflow.
double gamma_fn(double x);

/// 1 / Gamma(x); zero at the poles.
double rgamma(double x);

/// |z| at which hyp1f1 switches from the Kummer-transformed power series to
/// the large-argument expansion.
inline constexpr double kHyp1f1AsymptoticSwitch = 60.0;

/// Kummer's function 1F1(a; b; z), z <= 0. For |z| <= 60 it sums
/// e^z 1F1(b-a; b; -z), whose terms have a fixed sign past the first few;
/// beyond that it uses Gamma(b)/Gamma(b-a) (-z)^{-a} sum_k (a)_k (a-b+1)_k /
/// k! (-z)^{-k}, truncated at the smallest term, falling back to the series
/// when that truncation is not accurate to double precision.
double hyp1f1(double a, double b, double z);

/// Gauss' function 2F1(a, b; c; z), z <= 0. On (-1, 0] the Pfaff transform
/// maps the argument to z/(z-1) in [0, 1/2); for z <= -1 the connection
/// formula in 1/(1-z) is used. When a - b is an integer (the logarithmic
/// case) the Pfaff series is summed directly and NumericError is raised if
/// it fails to converge.
double hyp2f1(double a, double b, double c, double z);

}  // namespace mcfrac
