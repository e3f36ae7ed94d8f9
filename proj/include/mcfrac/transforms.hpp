#pragma once

// Grid values <-> MCF coefficients <-> Fourier-like coefficients on the
// tensor basis. Every d-dimensional map is applied one axis at a time.

#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include "mcfrac/cheb_core.hpp"
#include "mcfrac/tensor.hpp"

namespace mcfrac {

using PointFunction = std::function<double(std::span<const double>)>;
using ComplexPointFunction = std::function<std::complex<double>(std::span<const double>)>;

/// Samples f at every grid node. Throws DataError on a non-finite sample.
GridField sample(const PointFunction& f, const TensorBasisPtr& basis);
ComplexGridField sample(const ComplexPointFunction& f, const TensorBasisPtr& basis);

/// Picks the real or complex overload from the callable's result type.
template <class F>
  requires std::is_invocable_v<const F&, std::span<const double>>
auto sample(const F& f, const TensorBasisPtr& basis) {
  using R = std::invoke_result_t<const F&, std::span<const double>>;
  if constexpr (std::is_convertible_v<R, double>)
    return sample(PointFunction(f), basis);
  else
    return sample(ComplexPointFunction(f), basis);
}

/// MCF coefficients of the interpolant I_N^d of the samples.
Expansion analyze(const GridField& f, TransformMethod method = TransformMethod::fast);
ComplexExpansion analyze(const ComplexGridField& f, TransformMethod method = TransformMethod::fast);

/// sample + analyze.
Expansion interpolate(const PointFunction& f, const TensorBasisPtr& basis);

/// Values at the native grid. Fourier-like inputs are converted first.
GridField synthesize(const Expansion& e, TransformMethod method = TransformMethod::fast);
ComplexGridField synthesize(const ComplexExpansion& e, TransformMethod method = TransformMethod::fast);

Expansion to_fourier_like(const Expansion& e);
Expansion from_fourier_like(const Expansion& e);
ComplexExpansion to_fourier_like(const ComplexExpansion& e);
ComplexExpansion from_fourier_like(const ComplexExpansion& e);
/// Converts when needed; returns a copy otherwise.
Expansion to_representation(const Expansion& e, Representation rep);
ComplexExpansion to_representation(const ComplexExpansion& e, Representation rep);

/// Values at arbitrary points, given row-major as npts x dims.
std::vector<double> evaluate(const Expansion& e, std::span<const double> points);

/// Values on the tensor grid axis_points^d (row-major, same ordering as
/// grid fields).
std::vector<double> evaluate_on_grid(const Expansion& e, std::span<const double> axis_points);

/// out = M x_axis in, where `in` has shape n^dims and M is rows x n,
/// row-major. The result has extent `rows` along `axis`.
void mode_product(std::span<const double> in, std::span<const std::size_t> shape, std::size_t axis,
                  std::span<const double> matrix, std::size_t rows, std::vector<double>& out);

}  // namespace mcfrac
