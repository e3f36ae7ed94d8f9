#pragma once

// Fourier-like basis: T^_p = sum_j e_jp T_j, where S e_p = lambda_p e_p and
// E is orthonormal. The T^_p are orthonormal in L^2 and their derivatives
// are orthogonal with (T^_p', T^_q') = lambda_p delta_pq.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mcfrac/mcf_basis.hpp"

namespace mcfrac {

class FourierLikeBasis1d {
 public:
  /// `vectors` is row-major (N+1) x (N+1) with column p holding e_p.
  FourierLikeBasis1d(std::size_t degree, double nu, std::vector<double> eigenvalues,
                     std::vector<double> vectors);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return degree_ + 1; }
  double nu() const { return nu_; }

  std::span<const double> eigenvalues() const { return lambda_; }
  double eigenvalue(std::size_t p) const { return lambda_.at(p); }
  /// Row-major E.
  std::span<const double> vectors() const { return e_; }
  double vector_entry(std::size_t j, std::size_t p) const { return e_[j * order() + p]; }

  const MappedRule& rule() const { return rule_; }

 private:
  std::size_t degree_;
  double nu_;
  std::vector<double> lambda_;
  std::vector<double> e_;
  MappedRule rule_;
};

/// Eigenpairs of S, computed blockwise on the even and odd index sets.
/// Eigenvalues ascend (ties keep even-block first); each eigenvector has its
/// largest-magnitude entry positive. Throws NumericError on failure or if an
/// eigenvalue is not positive.
FourierLikeBasis1d eigendecompose(const StiffnessMatrix& s);

/// Same, decomposing the full dense matrix in one go. Reference path.
std::vector<double> dense_eigenvalues(const StiffnessMatrix& s);

std::shared_ptr<const FourierLikeBasis1d> make_fourier_like_basis(std::size_t degree, double nu);

double fourier_like_eval(const FourierLikeBasis1d& b, std::size_t p, double x);
double fourier_like_deriv(const FourierLikeBasis1d& b, std::size_t p, double x);

/// All T^_0..T^_N at x (resp. their derivatives).
void fourier_like_eval_all(const FourierLikeBasis1d& b, double x, std::span<double> out);
void fourier_like_deriv_all(const FourierLikeBasis1d& b, double x, std::span<double> out);

/// |lambda_p|_1 = sum_k lambda_{p_k}, all dimensions sharing `b`.
double tensor_eigen_sum(const FourierLikeBasis1d& b, std::span<const std::size_t> p);

}  // namespace mcfrac
