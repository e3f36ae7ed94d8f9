#include "mcfrac/fraclap_solver.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

#include "mcfrac/error.hpp"
#include "mcfrac/special_functions.hpp"

namespace mcfrac {
namespace {

std::string mode_name(const TensorBasis& b, std::size_t flat) {
  std::string s = "(";
  const auto idx = b.unravel(flat);
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
  return s + ")";
}

void check_order(double s, const char* where) {
  if (!(s >= 0.0 && s <= 1.0))
    throw InvalidArgument(std::string(where) + ": order s must lie in [0, 1] (got " + std::to_string(s) + ")");
}

void check_finite_coeffs(const Expansion& f, const char* where) {
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    if (!std::isfinite(f.coeffs[i]))
      throw DataError(std::string(where) + ": non-finite coefficient at mode " + mode_name(*f.basis, i));
}

template <class Multiplier>
Expansion divide_by(const Expansion& f, const char* where, Multiplier&& mult) {
  check_shape(f, where);
  Expansion u = to_representation(f, Representation::fourier_like);
  check_finite_coeffs(u, where);
  const auto lam = u.basis->eigen_sums();
  for (std::size_t p = 0; p < u.coeffs.size(); ++p) {
    const double m = mult(lam[p]);
    if (!(m > 0.0) || !std::isfinite(m))
      throw SingularOperator(std::string(where) + ": multiplier " + std::to_string(m) + " at mode " +
                             mode_name(*u.basis, p) + " is not positive");
    u.coeffs[p] /= m;
  }
  return u;
}

double checked_lambda(double lambda) {
  if (!(lambda > 0.0)) throw SingularOperator("eigenvalue sum " + std::to_string(lambda) + " is not positive");
  return lambda;
}

double dt_sum(const GaussRule& rule, double lambda, double s) {
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double y = rule.nodes[j];
    const double a = 1.0 - y, b = 1.0 + y;
    acc += rule.weights[j] * 2.0 * lambda / (a * a + lambda * b * b);
  }
  return dunford_constant(s) * acc;
}

void check_dt(double s, const DtQuadratureSpec& q) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError("Dunford-Taylor quadrature needs 0 < s < 1 (got " + std::to_string(s) + ")");
  if (q.num_nodes < 1) throw InvalidArgument("Dunford-Taylor quadrature needs at least one node");
}

}  // namespace

double dunford_constant(double s) { return 2.0 * std::sin(std::numbers::pi * s) / std::numbers::pi; }

GaussRule gauss_jacobi(std::size_t num_nodes, double alpha, double beta) {
  if (num_nodes < 1) throw InvalidArgument("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi: alpha and beta must exceed -1");
  const auto m = static_cast<Eigen::Index>(num_nodes);
  const double ab = alpha + beta;
  Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 1));
  for (Eigen::Index k = 0; k < m; ++k) {
    const double dk = static_cast<double>(k);
    const double t = 2.0 * dk + ab;
    diag(k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (t * (t + 2.0));
  }
  for (Eigen::Index k = 1; k < m; ++k) {
    const double dk = static_cast<double>(k);
    const double t = 2.0 * dk + ab;
    const double b2 = k == 1 ? 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                             : 4.0 * dk * (dk + alpha) * (dk + beta) * (dk + ab) / (t * t * (t + 1.0) * (t - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * gamma_fn(alpha + 1.0) * gamma_fn(beta + 1.0) / gamma_fn(ab + 2.0);

  GaussRule rule;
  rule.nodes.resize(num_nodes);
  rule.weights.resize(num_nodes);
  if (num_nodes == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericError("gauss_jacobi: Jacobi matrix eigensolver failed");
  for (Eigen::Index k = 0; k < m; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    rule.nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    rule.weights[static_cast<std::size_t>(k)] = mu0 * v0 * v0;
  }
  return rule;
}

double dt_multiplier(double lambda, double s, const DtQuadratureSpec& q) {
  check_dt(s, q);
  checked_lambda(lambda);
  return dt_sum(gauss_jacobi(q.num_nodes, 2.0 * s - 1.0, 1.0 - 2.0 * s), lambda, s);
}

double spectral_multiplier(const FracOperatorSpec& spec, double lambda) {
  checked_lambda(lambda);
  double m = spec.gamma;
  for (const auto& t : spec.terms) m += t.rho * std::pow(lambda, t.s);
  return m;
}

Expansion solve_multiterm(const Expansion& f, const FracOperatorSpec& spec) {
  if (spec.terms.empty()) throw InvalidArgument("solve_multiterm: operator has no terms");
  if (!std::isfinite(spec.gamma)) throw InvalidArgument("solve_multiterm: shift must be finite");
  for (const auto& t : spec.terms) {
    check_order(t.s, "solve_multiterm");
    if (!std::isfinite(t.rho)) throw InvalidArgument("solve_multiterm: coefficient must be finite");
  }
  return divide_by(f, "solve_multiterm", [&](double lam) { return spectral_multiplier(spec, lam); });
}

Expansion solve_multiterm(const GridField& f, const FracOperatorSpec& spec) {
  return solve_multiterm(analyze(f), spec);
}

Expansion solve_fractional(const Expansion& f, double s, double gamma) {
  check_order(s, "solve_fractional");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw InvalidArgument("solve_fractional: gamma must be finite and >= 0 (got " + std::to_string(gamma) + ")");
  return solve_multiterm(f, FracOperatorSpec{{FracTerm{1.0, s}}, gamma});
}

Expansion solve_fractional(const GridField& f, double s, double gamma) {
  return solve_fractional(analyze(f), s, gamma);
}

Expansion solve_fractional(const PointFunction& f, double s, double gamma, const TensorBasisPtr& basis) {
  return solve_fractional(interpolate(f, basis), s, gamma);
}

Expansion solve_shifted(const Expansion& f, double s, double gamma_in) {
  if (!(s > 0.0 && s <= 1.0))
    throw InvalidArgument("solve_shifted: order s must lie in (0, 1] (got " + std::to_string(s) + ")");
  if (!(gamma_in > 0.0) || !std::isfinite(gamma_in))
    throw InvalidArgument("solve_shifted: inner shift must be positive (got " + std::to_string(gamma_in) + ")");
  return divide_by(f, "solve_shifted", [&](double lam) { return std::pow(gamma_in + checked_lambda(lam), s); });
}

Expansion solve_shifted(const GridField& f, double s, double gamma_in) {
  return solve_shifted(analyze(f), s, gamma_in);
}

Expansion apply_fraclap(const Expansion& u, double s) {
  check_order(s, "apply_fraclap");
  check_shape(u, "apply_fraclap");
  Expansion v = to_representation(u, Representation::fourier_like);
  const auto lam = v.basis->eigen_sums();
  for (std::size_t p = 0; p < v.coeffs.size(); ++p) v.coeffs[p] *= std::pow(checked_lambda(lam[p]), s);
  return v;
}

ComplexExpansion apply_fraclap(const ComplexExpansion& u, double s) {
  check_order(s, "apply_fraclap");
  check_shape(u, "apply_fraclap");
  ComplexExpansion v = to_representation(u, Representation::fourier_like);
  const auto lam = v.basis->eigen_sums();
  for (std::size_t p = 0; p < v.coeffs.size(); ++p) v.coeffs[p] *= std::pow(checked_lambda(lam[p]), s);
  return v;
}

Expansion dt_quadrature_apply(const Expansion& u, double s, const DtQuadratureSpec& q) {
  check_dt(s, q);
  check_shape(u, "dt_quadrature_apply");
  const GaussRule rule = gauss_jacobi(q.num_nodes, 2.0 * s - 1.0, 1.0 - 2.0 * s);
  Expansion v = to_representation(u, Representation::fourier_like);
  const auto lam = v.basis->eigen_sums();
  for (std::size_t p = 0; p < v.coeffs.size(); ++p) v.coeffs[p] *= dt_sum(rule, checked_lambda(lam[p]), s);
  return v;
}

}  // namespace mcfrac
