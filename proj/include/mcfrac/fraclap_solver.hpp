#pragma once

// Diagonal solves for (-Delta)^s on the Fourier-like basis. Mode p carries
// the multiplier |lambda_p|_1^s.

#include <cstddef>
#include <vector>

#include "mcfrac/cheb_core.hpp"
#include "mcfrac/tensor.hpp"
#include "mcfrac/transforms.hpp"

namespace mcfrac {

struct FracTerm {
  double rho = 1.0;
  double s = 0.5;
};

/// gamma + sum_j rho_j (-Delta)^{s_j}.
struct FracOperatorSpec {
  std::vector<FracTerm> terms;
  double gamma = 0.0;
};

/// Gauss-Jacobi rule with M nodes for the t-integral after t = (1+y)/(1-y).
struct DtQuadratureSpec {
  std::size_t num_nodes = 400;
};

/// C_s = 2 sin(pi s) / pi.
double dunford_constant(double s);

/// Gauss-Jacobi rule for weight (1-y)^alpha (1+y)^beta on (-1, 1),
/// alpha, beta > -1. Nodes ascend.
GaussRule gauss_jacobi(std::size_t num_nodes, double alpha, double beta);

/// C_s int_0^inf t^{1-2s} lambda / (1 + t^2 lambda) dt by the M-node rule,
/// an approximation of lambda^s. s in (0, 1) and lambda > 0.
double dt_multiplier(double lambda, double s, const DtQuadratureSpec& q = {});

/// gamma + sum_j rho_j lambda^{s_j}. Throws SingularOperator if lambda <= 0.
double spectral_multiplier(const FracOperatorSpec& spec, double lambda);

/// u_p = f_p / (gamma + |lambda_p|_1^s), s in [0, 1].
Expansion solve_fractional(const Expansion& f, double s, double gamma);
Expansion solve_fractional(const GridField& f, double s, double gamma);
Expansion solve_fractional(const PointFunction& f, double s, double gamma, const TensorBasisPtr& basis);

/// u_p = f_p / (gamma + sum_j rho_j |lambda_p|_1^{s_j}). Throws
/// SingularOperator naming the first mode where the multiplier is <= 0.
Expansion solve_multiterm(const Expansion& f, const FracOperatorSpec& spec);
Expansion solve_multiterm(const GridField& f, const FracOperatorSpec& spec);

/// u_p = f_p / (gamma_in + |lambda_p|_1)^s, gamma_in > 0, s in (0, 1].
Expansion solve_shifted(const Expansion& f, double s, double gamma_in);
Expansion solve_shifted(const GridField& f, double s, double gamma_in);

/// Multiplies mode p by |lambda_p|_1^s, s in [0, 1].
Expansion apply_fraclap(const Expansion& u, double s);
ComplexExpansion apply_fraclap(const ComplexExpansion& u, double s);

/// apply_fraclap with the multiplier from the Gauss-Jacobi quadrature of
/// the Dunford-Taylor integral. Validation only; s in (0, 1).
Expansion dt_quadrature_apply(const Expansion& u, double s, const DtQuadratureSpec& q = {});

}  // namespace mcfrac
