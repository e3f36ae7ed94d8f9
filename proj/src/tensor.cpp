#include "mcfrac/tensor.hpp"

#include <algorithm>
#include <string>

#include "mcfrac/error.hpp"

namespace mcfrac {

const char* to_string(Representation r) {
  switch (r) {
    case Representation::mcf:
      return "mcf";
    case Representation::fourier_like:
      return "fourier_like";
  }
  return "unknown";
}

TensorBasis::TensorBasis(std::shared_ptr<const FourierLikeBasis1d> axis, std::size_t dims)
    : axis_(std::move(axis)), dims_(dims), size_(1) {
  if (!axis_) throw InvalidArgument("TensorBasis: null axis basis");
  if (dims < 1 || dims > 3) throw InvalidArgument("TensorBasis: dims must be 1, 2 or 3 (got " + std::to_string(dims) + ")");
  const std::size_t n = axis_->order();
  for (std::size_t k = 0; k < dims; ++k) size_ *= n;

  const auto lambda = axis_->eigenvalues();
  const auto& w1 = axis_->rule().weights;
  eigen_sums_.assign(size_, 0.0);
  weights_.assign(size_, 1.0);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = 0; k < dims; ++k) {
      const std::size_t i = rest % n;
      rest /= n;
      eigen_sums_[flat] += lambda[i];
      weights_[flat] *= w1[i];
    }
  }
}

std::shared_ptr<const TensorBasis> TensorBasis::create(std::size_t dims, std::size_t degree, double nu) {
  return std::make_shared<const TensorBasis>(make_fourier_like_basis(degree, nu), dims);
}

void TensorBasis::node(std::size_t flat, std::span<double> x) const {
  if (x.size() != dims_) throw InvalidArgument("TensorBasis::node: coordinate buffer has wrong size");
  const std::size_t n = order();
  const auto& nodes = axis_->rule().nodes;
  for (std::size_t k = dims_; k-- > 0;) {
    x[k] = nodes[flat % n];
    flat /= n;
  }
}

std::vector<std::size_t> TensorBasis::unravel(std::size_t flat) const {
  if (flat >= size_) throw InvalidArgument("TensorBasis::unravel: flat index out of range");
  std::vector<std::size_t> idx(dims_);
  const std::size_t n = order();
  for (std::size_t k = dims_; k-- > 0;) {
    idx[k] = flat % n;
    flat /= n;
  }
  return idx;
}

std::size_t TensorBasis::ravel(std::span<const std::size_t> index) const {
  if (index.size() != dims_) throw InvalidArgument("TensorBasis::ravel: index has wrong rank");
  std::size_t flat = 0;
  for (std::size_t i : index) {
    if (i >= order()) throw InvalidArgument("TensorBasis::ravel: component out of range");
    flat = flat * order() + i;
  }
  return flat;
}

bool TensorBasis::same_space(const TensorBasis& other) const {
  if (this == &other) return true;
  if (dims_ != other.dims_ || degree() != other.degree() || nu() != other.nu()) return false;
  if (axis_ == other.axis_) return true;
  return std::equal(axis_->vectors().begin(), axis_->vectors().end(), other.axis_->vectors().begin());
}

double tensor_eigen_sum(const TensorBasis& basis, std::span<const std::size_t> p) {
  if (p.size() != basis.dims()) throw InvalidArgument("tensor_eigen_sum: multi-index has wrong rank");
  return tensor_eigen_sum(basis.axis(), p);
}

void check_same_space(const TensorBasis& a, const TensorBasis& b, const char* where) {
  if (!a.same_space(b)) throw InvalidArgument(std::string(where) + ": operands live on different bases");
}

template <class T>
void check_shape(const BasicGridField<T>& f, const char* where) {
  if (!f.basis) throw InvalidArgument(std::string(where) + ": grid field has no basis");
  if (f.values.size() != f.basis->size())
    throw InvalidArgument(std::string(where) + ": grid field holds " + std::to_string(f.values.size()) +
                          " values, basis expects " + std::to_string(f.basis->size()));
}

template <class T>
void check_shape(const BasicExpansion<T>& e, const char* where) {
  if (!e.basis) throw InvalidArgument(std::string(where) + ": expansion has no basis");
  if (e.coeffs.size() != e.basis->size())
    throw InvalidArgument(std::string(where) + ": expansion holds " + std::to_string(e.coeffs.size()) +
                          " coefficients, basis expects " + std::to_string(e.basis->size()));
}

template void check_shape(const BasicGridField<double>&, const char*);
template void check_shape(const BasicGridField<std::complex<double>>&, const char*);
template void check_shape(const BasicExpansion<double>&, const char*);
template void check_shape(const BasicExpansion<std::complex<double>>&, const char*);

}  // namespace mcfrac
