#pragma once

// Mapped Chebyshev functions (MCFs) on the real line with scaling factor nu:
//
//   T^nu_n(x) = nu^{-1/2} (c_n pi / 2)^{-1/2} sqrt(1 - y^2) T_n(y),
//   y = x / sqrt(nu^2 + x^2),
//
// which are orthonormal in L^2(R).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mcfrac {

/// Algebraic map x = nu y / sqrt(1 - y^2) between (-1, 1) and R.
class Mapping {
 public:
  explicit Mapping(double nu);

  double nu() const { return nu_; }
  /// Throws DomainError unless |y| < 1.
  double forward(double y) const;
  /// Throws DomainError for non-finite x.
  double backward(double x) const;

 private:
  double nu_;
};

double map_forward(double y, double nu);
double map_backward(double x, double nu);

/// sqrt(c_n pi / 2): the factor between Chebyshev coefficients of u/g and
/// MCF coefficients of u.
double mcf_norm_factor(std::size_t n);

/// T^nu_n(x). Throws InvalidArgument for n < 0.
double mcf_eval(int n, double x, double nu);
/// d/dx T^nu_n(x), from the analytic chain rule.
double mcf_deriv(int n, double x, double nu);

/// T^nu_0(x) .. T^nu_N(x) into out (size N+1), by the three-term recurrence.
void mcf_eval_all(double x, double nu, std::span<double> out);
/// Derivatives of T^nu_0 .. T^nu_N at x into out.
void mcf_deriv_all(double x, double nu, std::span<double> out);

/// Symmetric banded H^1 stiffness matrix S_mn = int T'_n T'_m dx. Only the
/// diagonals |m - n| in {0, 2, 4} are stored; all other entries vanish.
class StiffnessMatrix {
 public:
  StiffnessMatrix(std::size_t degree, double nu);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return degree_ + 1; }
  double nu() const { return nu_; }

  double operator()(std::size_t m, std::size_t n) const;
  /// Adds delta to (m, n) and (n, m); the offset must lie inside the band.
  /// Used by sensitivity checks.
  void perturb(std::size_t m, std::size_t n, double delta);
  /// Row-major dense copy.
  std::vector<double> dense() const;

 private:
  std::size_t degree_;
  double nu_;
  // band_[k][n] holds S(n, n + 2k)
  std::array<std::vector<double>, 3> band_;
};

StiffnessMatrix stiffness_matrix(std::size_t degree, double nu);

/// Mapped Chebyshev-Gauss rule with N+1 points, exact for int u v dx
/// whenever u v lies in V_{2N+1}.
struct MappedRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

MappedRule mapped_quadrature(std::size_t degree, double nu);

}  // namespace mcfrac
