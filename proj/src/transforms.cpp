#include "mcfrac/transforms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "mcfrac/error.hpp"
#include "mcfrac/mcf_basis.hpp"

namespace mcfrac {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t ipow(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  while (k-- > 0) r *= n;
  return r;
}

// Applies fn to every fiber along `axis`, presented as contiguous rows of
// length n.
template <class F>
void for_fibers(std::vector<double>& data, std::size_t dims, std::size_t n, std::size_t axis, F&& fn) {
  const std::size_t inner = ipow(n, dims - 1 - axis);
  const std::size_t outer = ipow(n, axis);
  if (inner == 1) {
    fn(std::span<double>(data));
    return;
  }
  std::vector<double> buf(n * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    double* blk = data.data() + o * n * inner;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < inner; ++j) buf[j * n + i] = blk[i * inner + j];
    fn(std::span<double>(buf));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < inner; ++j) blk[i * inner + j] = buf[j * n + i];
  }
}

// g(x_j) = nu^{-1/2} sqrt(1 - y_j^2) at the Gauss nodes, and sqrt(c_k pi/2).
struct AxisScales {
  std::vector<double> g;
  std::vector<double> norm;
};

AxisScales axis_scales(std::size_t n, double nu) {
  const GaussRule rule = chebyshev_gauss(n);
  AxisScales s;
  s.g.resize(n);
  s.norm.resize(n);
  const double front = 1.0 / std::sqrt(nu);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = rule.nodes[j];
    s.g[j] = front * std::sqrt((1.0 - y) * (1.0 + y));
    s.norm[j] = mcf_norm_factor(j);
  }
  return s;
}

std::vector<double> analyze_real(std::vector<double> data, const TensorBasis& b, TransformMethod method) {
  const std::size_t n = b.order();
  const AxisScales sc = axis_scales(n, b.nu());
  for (std::size_t axis = 0; axis < b.dims(); ++axis)
    for_fibers(data, b.dims(), n, axis, [&](std::span<double> rows) {
      for (std::size_t r = 0; r < rows.size(); r += n)
        for (std::size_t j = 0; j < n; ++j) rows[r + j] /= sc.g[j];
      values_to_coeffs_rows(rows, n, method);
      for (std::size_t r = 0; r < rows.size(); r += n)
        for (std::size_t k = 0; k < n; ++k) rows[r + k] *= sc.norm[k];
    });
  return data;
}

std::vector<double> synthesize_real(std::vector<double> data, const TensorBasis& b, TransformMethod method) {
  const std::size_t n = b.order();
  const AxisScales sc = axis_scales(n, b.nu());
  for (std::size_t axis = 0; axis < b.dims(); ++axis)
    for_fibers(data, b.dims(), n, axis, [&](std::span<double> rows) {
      for (std::size_t r = 0; r < rows.size(); r += n)
        for (std::size_t k = 0; k < n; ++k) rows[r + k] /= sc.norm[k];
      coeffs_to_values_rows(rows, n, method);
      for (std::size_t r = 0; r < rows.size(); r += n)
        for (std::size_t j = 0; j < n; ++j) rows[r + j] *= sc.g[j];
    });
  return data;
}

// Applies M (n x n, row-major) along every axis.
std::vector<double> apply_all_axes(std::vector<double> data, const TensorBasis& b, std::span<const double> m) {
  const auto shape = b.shape();
  std::vector<double> out;
  for (std::size_t axis = 0; axis < b.dims(); ++axis) {
    mode_product(data, shape, axis, m, b.order(), out);
    data.swap(out);
  }
  return data;
}

std::vector<double> transposed(std::span<const double> a, std::size_t n) {
  std::vector<double> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  return t;
}

void split(const std::vector<std::complex<double>>& z, std::vector<double>& re, std::vector<double>& im) {
  re.resize(z.size());
  im.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    re[i] = z[i].real();
    im[i] = z[i].imag();
  }
}

std::vector<std::complex<double>> join(const std::vector<double>& re, const std::vector<double>& im) {
  std::vector<std::complex<double>> z(re.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {re[i], im[i]};
  return z;
}

void check_finite_samples(std::span<const double> v, const TensorBasis& b, const char* where) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) {
      std::vector<double> x(b.dims());
      b.node(i, x);
      std::string at = "(";
      for (std::size_t k = 0; k < x.size(); ++k) at += (k ? ", " : "") + std::to_string(x[k]);
      throw DataError(std::string(where) + ": non-finite sample at node " + std::to_string(i) + " x = " + at + ")");
    }
}

}  // namespace

void mode_product(std::span<const double> in, std::span<const std::size_t> shape, std::size_t axis,
                  std::span<const double> matrix, std::size_t rows, std::vector<double>& out) {
  if (axis >= shape.size()) throw InvalidArgument("mode_product: axis out of range");
  std::size_t outer = 1, inner = 1;
  for (std::size_t k = 0; k < axis; ++k) outer *= shape[k];
  for (std::size_t k = axis + 1; k < shape.size(); ++k) inner *= shape[k];
  const std::size_t n = shape[axis];
  if (in.size() != outer * n * inner) throw InvalidArgument("mode_product: data does not match shape");
  if (matrix.size() != rows * n) throw InvalidArgument("mode_product: matrix does not match axis extent");
  out.assign(outer * rows * inner, 0.0);
  const Eigen::Map<const RowMatrix> m(matrix.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  for (std::size_t o = 0; o < outer; ++o) {
    const Eigen::Map<const RowMatrix> blk(in.data() + o * n * inner, static_cast<Eigen::Index>(n),
                                          static_cast<Eigen::Index>(inner));
    Eigen::Map<RowMatrix> dst(out.data() + o * rows * inner, static_cast<Eigen::Index>(rows),
                              static_cast<Eigen::Index>(inner));
    dst.noalias() = m * blk;
  }
}

GridField sample(const PointFunction& f, const TensorBasisPtr& basis) {
  if (!basis) throw InvalidArgument("sample: null basis");
  GridField g{basis, std::vector<double>(basis->size())};
  std::vector<double> x(basis->dims());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    basis->node(i, x);
    g.values[i] = f(x);
  }
  check_finite_samples(g.values, *basis, "sample");
  return g;
}

ComplexGridField sample(const ComplexPointFunction& f, const TensorBasisPtr& basis) {
  if (!basis) throw InvalidArgument("sample: null basis");
  ComplexGridField g{basis, std::vector<std::complex<double>>(basis->size())};
  std::vector<double> x(basis->dims());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    basis->node(i, x);
    g.values[i] = f(x);
    if (!std::isfinite(g.values[i].real()) || !std::isfinite(g.values[i].imag()))
      throw DataError("sample: non-finite complex sample at node " + std::to_string(i));
  }
  return g;
}

Expansion analyze(const GridField& f, TransformMethod method) {
  check_shape(f, "analyze");
  check_finite_samples(f.values, *f.basis, "analyze");
  return {f.basis, Representation::mcf, analyze_real(f.values, *f.basis, method)};
}

ComplexExpansion analyze(const ComplexGridField& f, TransformMethod method) {
  check_shape(f, "analyze");
  std::vector<double> re, im;
  split(f.values, re, im);
  check_finite_samples(re, *f.basis, "analyze");
  check_finite_samples(im, *f.basis, "analyze");
  return {f.basis, Representation::mcf,
          join(analyze_real(std::move(re), *f.basis, method), analyze_real(std::move(im), *f.basis, method))};
}

Expansion interpolate(const PointFunction& f, const TensorBasisPtr& basis) { return analyze(sample(f, basis)); }

GridField synthesize(const Expansion& e, TransformMethod method) {
  check_shape(e, "synthesize");
  const Expansion m = to_representation(e, Representation::mcf);
  return {e.basis, synthesize_real(m.coeffs, *e.basis, method)};
}

ComplexGridField synthesize(const ComplexExpansion& e, TransformMethod method) {
  check_shape(e, "synthesize");
  const ComplexExpansion m = to_representation(e, Representation::mcf);
  std::vector<double> re, im;
  split(m.coeffs, re, im);
  return {e.basis, join(synthesize_real(std::move(re), *e.basis, method),
                        synthesize_real(std::move(im), *e.basis, method))};
}

Expansion to_fourier_like(const Expansion& e) {
  check_shape(e, "to_fourier_like");
  if (e.rep != Representation::mcf) throw InvalidArgument("to_fourier_like: expansion is not in MCF form");
  const auto et = transposed(e.basis->axis().vectors(), e.basis->order());
  return {e.basis, Representation::fourier_like, apply_all_axes(e.coeffs, *e.basis, et)};
}

Expansion from_fourier_like(const Expansion& e) {
  check_shape(e, "from_fourier_like");
  if (e.rep != Representation::fourier_like)
    throw InvalidArgument("from_fourier_like: expansion is not in Fourier-like form");
  return {e.basis, Representation::mcf, apply_all_axes(e.coeffs, *e.basis, e.basis->axis().vectors())};
}

ComplexExpansion to_fourier_like(const ComplexExpansion& e) {
  check_shape(e, "to_fourier_like");
  if (e.rep != Representation::mcf) throw InvalidArgument("to_fourier_like: expansion is not in MCF form");
  const auto et = transposed(e.basis->axis().vectors(), e.basis->order());
  std::vector<double> re, im;
  split(e.coeffs, re, im);
  return {e.basis, Representation::fourier_like,
          join(apply_all_axes(std::move(re), *e.basis, et), apply_all_axes(std::move(im), *e.basis, et))};
}

ComplexExpansion from_fourier_like(const ComplexExpansion& e) {
  check_shape(e, "from_fourier_like");
  if (e.rep != Representation::fourier_like)
    throw InvalidArgument("from_fourier_like: expansion is not in Fourier-like form");
  const auto ev = e.basis->axis().vectors();
  std::vector<double> re, im;
  split(e.coeffs, re, im);
  return {e.basis, Representation::mcf,
          join(apply_all_axes(std::move(re), *e.basis, ev), apply_all_axes(std::move(im), *e.basis, ev))};
}

Expansion to_representation(const Expansion& e, Representation rep) {
  if (e.rep == rep) return e;
  return rep == Representation::fourier_like ? to_fourier_like(e) : from_fourier_like(e);
}

ComplexExpansion to_representation(const ComplexExpansion& e, Representation rep) {
  if (e.rep == rep) return e;
  return rep == Representation::fourier_like ? to_fourier_like(e) : from_fourier_like(e);
}

std::vector<double> evaluate(const Expansion& e, std::span<const double> points) {
  check_shape(e, "evaluate");
  const std::size_t d = e.basis->dims();
  const std::size_t n = e.basis->order();
  const double nu = e.basis->nu();
  if (points.size() % d != 0) throw InvalidArgument("evaluate: point buffer is not a multiple of dims");
  const Expansion m = to_representation(e, Representation::mcf);
  const std::size_t npts = points.size() / d;
  std::vector<double> out(npts);

  if (d == 1) {
    // Clenshaw on the Chebyshev coefficients of u/g
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = m.coeffs[k] / mcf_norm_factor(k);
    for (std::size_t i = 0; i < npts; ++i) {
      const double x = points[i];
      if (!std::isfinite(x)) throw DomainError("evaluate: non-finite coordinate");
      const double r = std::hypot(nu, x);
      out[i] = std::sqrt(nu) / r * cheb_eval(a, x / r);
    }
    return out;
  }

  std::vector<std::vector<double>> phi(d, std::vector<double>(n));
  std::vector<double> tmp;
  for (std::size_t i = 0; i < npts; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double x = points[i * d + k];
      if (!std::isfinite(x)) throw DomainError("evaluate: non-finite coordinate");
      mcf_eval_all(x, nu, phi[k]);
    }
    tmp = m.coeffs;
    for (std::size_t k = d; k-- > 0;) {
      const std::size_t len = tmp.size() / n;
      for (std::size_t o = 0; o < len; ++o) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += tmp[o * n + j] * phi[k][j];
        tmp[o] = acc;
      }
      tmp.resize(len);
    }
    out[i] = tmp[0];
  }
  return out;
}

std::vector<double> evaluate_on_grid(const Expansion& e, std::span<const double> axis_points) {
  check_shape(e, "evaluate_on_grid");
  const std::size_t n = e.basis->order();
  const std::size_t m = axis_points.size();
  std::vector<double> a(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(axis_points[i])) throw DomainError("evaluate_on_grid: non-finite coordinate");
    mcf_eval_all(axis_points[i], e.basis->nu(), std::span<double>(a.data() + i * n, n));
  }
  std::vector<double> data = to_representation(e, Representation::mcf).coeffs;
  std::vector<std::size_t> shape = e.basis->shape();
  std::vector<double> out;
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    mode_product(data, shape, axis, a, m, out);
    shape[axis] = m;
    data.swap(out);
  }
  return data;
}

}  // namespace mcfrac
