#pragma once

// Closed-form fractional Laplacians of e^{-|x|^2} and (1+|x|^2)^{-r} on R^d,
// the matching right-hand sides, and a brute-force 1-D Fourier oracle.

#include <functional>
#include <span>

namespace mcfrac {

/// C_{d,s} = 2^{2s} s Gamma(s + d/2) / (pi^{d/2} Gamma(1 - s)), s in (0, 1).
double norm_constant(int d, double s);

double gaussian_profile(std::span<const double> x);
double rational_profile(std::span<const double> x, double r);

/// (-Delta)^s e^{-|x|^2} = 2^{2s} Gamma(s+d/2)/Gamma(d/2) 1F1(s+d/2; d/2; -|x|^2),
/// with d = x.size() and s >= 0.
double fraclap_gaussian(std::span<const double> x, double s);

/// (-Delta)^s (1+|x|^2)^{-r} = 2^{2s} Gamma(s+r) Gamma(s+d/2) / (Gamma(r) Gamma(d/2))
///   2F1(s+r, s+d/2; d/2; -|x|^2), s >= 0, r > 0.
double fraclap_rational(std::span<const double> x, double s, double r);

/// gamma e^{-|x|^2} + (-Delta)^s e^{-|x|^2}.
double rhs_exponential(std::span<const double> x, double s, double gamma);
/// gamma (1+|x|^2)^{-r} + (-Delta)^s (1+|x|^2)^{-r}.
double rhs_algebraic(std::span<const double> x, double s, double r, double gamma);

/// (2/pi) int_0^inf xi^{2s} cos(x xi) c(xi) dxi for an even function whose
/// cosine transform int_0^inf u(y) cos(xi y) dy is c.
double fraclap_fourier_1d(const std::function<double(double)>& cosine_transform, double x, double s);

/// Same, computing the cosine transform of u numerically. Slow; for tests.
/// u must be even. Throws NumericError if a quadrature fails.
double fraclap_quadrature_1d(const std::function<double(double)>& u, double x, double s);

}  // namespace mcfrac
