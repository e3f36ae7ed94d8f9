#pragma once

// Tensor-product bases on R^d and the containers that live on them. All
// dimensions share one 1-D Fourier-like basis (same N and nu). Data is
// stored row-major: the last index varies fastest.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mcfrac/fourier_like.hpp"

namespace mcfrac {

enum class Representation : std::uint8_t { mcf = 0, fourier_like = 1 };

const char* to_string(Representation r);

class TensorBasis {
 public:
  TensorBasis(std::shared_ptr<const FourierLikeBasis1d> axis, std::size_t dims);

  /// Builds S, its eigenpairs and the tensor bookkeeping. dims in {1,2,3}.
  static std::shared_ptr<const TensorBasis> create(std::size_t dims, std::size_t degree, double nu);

  std::size_t dims() const { return dims_; }
  std::size_t degree() const { return axis_->degree(); }
  std::size_t order() const { return axis_->order(); }
  double nu() const { return axis_->nu(); }
  /// Number of tensor entries, order()^dims().
  std::size_t size() const { return size_; }
  std::vector<std::size_t> shape() const { return std::vector<std::size_t>(dims_, order()); }

  const FourierLikeBasis1d& axis() const { return *axis_; }
  const std::shared_ptr<const FourierLikeBasis1d>& axis_ptr() const { return axis_; }

  /// |lambda_p|_1 for every flat index p.
  std::span<const double> eigen_sums() const { return eigen_sums_; }
  /// Tensorised mapped quadrature weights at every grid node.
  std::span<const double> weights() const { return weights_; }
  /// Coordinates of grid node `flat` written into x (size dims()).
  void node(std::size_t flat, std::span<double> x) const;

  std::vector<std::size_t> unravel(std::size_t flat) const;
  std::size_t ravel(std::span<const std::size_t> index) const;

  /// True when both describe the same discrete space.
  bool same_space(const TensorBasis& other) const;

 private:
  std::shared_ptr<const FourierLikeBasis1d> axis_;
  std::size_t dims_;
  std::size_t size_;
  std::vector<double> eigen_sums_;
  std::vector<double> weights_;
};

using TensorBasisPtr = std::shared_ptr<const TensorBasis>;

/// |lambda_p|_1 for a multi-index p.
double tensor_eigen_sum(const TensorBasis& basis, std::span<const std::size_t> p);

/// Samples at the tensorised mapped Chebyshev-Gauss nodes.
template <class T>
struct BasicGridField {
  TensorBasisPtr basis;
  std::vector<T> values;
};

/// Coefficient tensor tagged with its representation.
template <class T>
struct BasicExpansion {
  TensorBasisPtr basis;
  Representation rep = Representation::mcf;
  std::vector<T> coeffs;
};

using GridField = BasicGridField<double>;
using ComplexGridField = BasicGridField<std::complex<double>>;
using Expansion = BasicExpansion<double>;
using ComplexExpansion = BasicExpansion<std::complex<double>>;

/// Throws InvalidArgument if the container does not fit its basis.
template <class T>
void check_shape(const BasicGridField<T>& f, const char* where);
template <class T>
void check_shape(const BasicExpansion<T>& e, const char* where);

/// Throws InvalidArgument unless a and b live on the same space.
void check_same_space(const TensorBasis& a, const TensorBasis& b, const char* where);

}  // namespace mcfrac
