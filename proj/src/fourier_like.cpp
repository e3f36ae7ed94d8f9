#include "mcfrac/fourier_like.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mcfrac/error.hpp"

namespace mcfrac {
namespace {

struct Eigenpair {
  double value;
  std::size_t block;  // 0 even, 1 odd
  std::size_t column;
};

// Dense copy of S restricted to indices parity, parity+2, ...
Eigen::MatrixXd parity_block(const StiffnessMatrix& s, std::size_t parity) {
  const std::size_t n = s.order();
  const std::size_t m = n > parity ? (n - parity + 1) / 2 : 0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < 3 && i + k < m; ++k) {
      const double v = s(parity + 2 * i, parity + 2 * (i + k));
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + k)) = v;
      a(static_cast<Eigen::Index>(i + k), static_cast<Eigen::Index>(i)) = v;
    }
  return a;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_block(const Eigen::MatrixXd& a, const char* name) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (a.rows() == 0) return es;
  es.compute(a, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NumericError(std::string("eigendecompose: ") + name + " block of order " +
                       std::to_string(a.rows()) + " did not converge");
  return es;
}

}  // namespace

FourierLikeBasis1d::FourierLikeBasis1d(std::size_t degree, double nu, std::vector<double> eigenvalues,
                                       std::vector<double> vectors)
    : degree_(degree),
      nu_(nu),
      lambda_(std::move(eigenvalues)),
      e_(std::move(vectors)),
      rule_(mapped_quadrature(degree, nu)) {
  const std::size_t n = order();
  if (lambda_.size() != n || e_.size() != n * n)
    throw InvalidArgument("FourierLikeBasis1d: eigenpair storage does not match degree " +
                          std::to_string(degree));
  for (std::size_t p = 0; p < n; ++p)
    if (!(lambda_[p] > 0.0) || !std::isfinite(lambda_[p]))
      throw NumericError("FourierLikeBasis1d: eigenvalue " + std::to_string(p) + " is not positive");
}

FourierLikeBasis1d eigendecompose(const StiffnessMatrix& s) {
  const std::size_t n = s.order();
  const Eigen::MatrixXd blocks[2] = {parity_block(s, 0), parity_block(s, 1)};
  const auto even = solve_block(blocks[0], "even");
  const auto odd = solve_block(blocks[1], "odd");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>* solvers[2] = {&even, &odd};

  std::vector<Eigenpair> pairs;
  pairs.reserve(n);
  for (std::size_t b = 0; b < 2; ++b)
    for (Eigen::Index c = 0; c < blocks[b].rows(); ++c)
      pairs.push_back({solvers[b]->eigenvalues()(c), b, static_cast<std::size_t>(c)});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.value < b.value; });

  std::vector<double> lambda(n);
  std::vector<double> e(n * n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& pr = pairs[p];
    const auto& vec = solvers[pr.block]->eigenvectors();
    const auto col = static_cast<Eigen::Index>(pr.column);
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < vec.rows(); ++i)
      if (std::abs(vec(i, col)) > std::abs(vec(imax, col))) imax = i;
    const double sign = vec(imax, col) < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index i = 0; i < vec.rows(); ++i)
      e[(pr.block + 2 * static_cast<std::size_t>(i)) * n + p] = sign * vec(i, col);
    lambda[p] = pr.value;
  }
  return FourierLikeBasis1d(s.degree(), s.nu(), std::move(lambda), std::move(e));
}

std::vector<double> dense_eigenvalues(const StiffnessMatrix& s) {
  const std::size_t n = s.order();
  const auto d = s.dense();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("dense_eigenvalues: no convergence");
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

std::shared_ptr<const FourierLikeBasis1d> make_fourier_like_basis(std::size_t degree, double nu) {
  return std::make_shared<const FourierLikeBasis1d>(eigendecompose(stiffness_matrix(degree, nu)));
}

void fourier_like_eval_all(const FourierLikeBasis1d& b, double x, std::span<double> out) {
  const std::size_t n = b.order();
  if (out.size() != n) throw InvalidArgument("fourier_like_eval_all: output size mismatch");
  std::vector<double> t(n);
  mcf_eval_all(x, b.nu(), t);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < n; ++p) out[p] += b.vector_entry(j, p) * t[j];
}

void fourier_like_deriv_all(const FourierLikeBasis1d& b, double x, std::span<double> out) {
  const std::size_t n = b.order();
  if (out.size() != n) throw InvalidArgument("fourier_like_deriv_all: output size mismatch");
  std::vector<double> t(n);
  mcf_deriv_all(x, b.nu(), t);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < n; ++p) out[p] += b.vector_entry(j, p) * t[j];
}

double fourier_like_eval(const FourierLikeBasis1d& b, std::size_t p, double x) {
  if (p > b.degree()) throw InvalidArgument("fourier_like_eval: index " + std::to_string(p) + " out of range");
  std::vector<double> t(b.order());
  mcf_eval_all(x, b.nu(), t);
  double acc = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) acc += b.vector_entry(j, p) * t[j];
  return acc;
}

double fourier_like_deriv(const FourierLikeBasis1d& b, std::size_t p, double x) {
  if (p > b.degree()) throw InvalidArgument("fourier_like_deriv: index " + std::to_string(p) + " out of range");
  std::vector<double> t(b.order());
  mcf_deriv_all(x, b.nu(), t);
  double acc = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) acc += b.vector_entry(j, p) * t[j];
  return acc;
}

double tensor_eigen_sum(const FourierLikeBasis1d& b, std::span<const std::size_t> p) {
  double acc = 0.0;
  for (std::size_t k : p) {
    if (k > b.degree()) throw InvalidArgument("tensor_eigen_sum: component " + std::to_string(k) + " out of range");
    acc += b.eigenvalue(k);
  }
  return acc;
}

}  // namespace mcfrac
