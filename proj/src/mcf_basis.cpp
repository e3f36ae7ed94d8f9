#include "mcfrac/mcf_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mcfrac/cheb_core.hpp"
#include "mcfrac/error.hpp"

namespace mcfrac {
namespace {

void check_nu(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw InvalidArgument("scaling factor nu must be positive and finite (got " + std::to_string(nu) + ")");
}

double c_coef(long n) { return n == 0 ? 2.0 : 1.0; }

// y and sqrt(1 - y^2) for the point x, without forming x^2.
struct MappedPoint {
  double y;
  double g;  // sqrt(1 - y^2) = nu / sqrt(nu^2 + x^2)
};

MappedPoint map_point(double x, double nu) {
  const double r = std::hypot(nu, x);
  return {x / r, nu / r};
}

// A sparse Chebyshev expansion with at most six terms.
struct SmallSeries {
  std::array<long, 6> idx{};
  std::array<double, 6> val{};
  int len = 0;
  void add(long k, double v) {
    k = k < 0 ? -k : k;  // T_{-k} = T_k
    for (int i = 0; i < len; ++i)
      if (idx[i] == k) {
        val[i] += v;
        return;
      }
    idx[len] = k;
    val[len] = v;
    ++len;
  }
};

// (1 - y^2) T_n' - y T_n = ((n-1) T_{n-1} - (n+1) T_{n+1}) / 2.
SmallSeries derivative_series(long n) {
  SmallSeries p;
  p.add(n - 1, 0.5 * static_cast<double>(n - 1));
  p.add(n + 1, -0.5 * static_cast<double>(n + 1));
  return p;
}

// (1 - y^2) T_k = T_k / 2 - (T_{k+2} + T_{|k-2|}) / 4.
SmallSeries times_one_minus_y2(const SmallSeries& p) {
  SmallSeries q;
  for (int i = 0; i < p.len; ++i) {
    q.add(p.idx[i], 0.5 * p.val[i]);
    q.add(p.idx[i] + 2, -0.25 * p.val[i]);
    q.add(p.idx[i] - 2, -0.25 * p.val[i]);
  }
  return q;
}

// int P_n P_m (1 - y^2) (1 - y^2)^{-1/2} dy scaled to the MCF normalisation,
// for nu = 1.
double stiffness_entry_unit(long n, long m) {
  const SmallSeries p = derivative_series(n);
  const SmallSeries q = times_one_minus_y2(derivative_series(m));
  double acc = 0.0;
  for (int i = 0; i < p.len; ++i)
    for (int j = 0; j < q.len; ++j)
      if (p.idx[i] == q.idx[j]) acc += c_coef(p.idx[i]) * p.val[i] * q.val[j];
  return acc / std::sqrt(c_coef(n) * c_coef(m));
}

}  // namespace

Mapping::Mapping(double nu) : nu_(nu) { check_nu(nu); }

double Mapping::forward(double y) const {
  if (!(std::abs(y) < 1.0)) throw DomainError("map_forward: |y| must be < 1 (y = " + std::to_string(y) + ")");
  return nu_ * y / std::sqrt((1.0 - y) * (1.0 + y));
}

double Mapping::backward(double x) const {
  if (!std::isfinite(x)) throw DomainError("map_backward: x must be finite");
  return map_point(x, nu_).y;
}

double map_forward(double y, double nu) { return Mapping(nu).forward(y); }
double map_backward(double x, double nu) { return Mapping(nu).backward(x); }

double mcf_norm_factor(std::size_t n) {
  return std::sqrt(c_coef(static_cast<long>(n)) * std::numbers::pi / 2.0);
}

void mcf_eval_all(double x, double nu, std::span<double> out) {
  check_nu(nu);
  if (out.empty()) return;
  const auto [y, g] = map_point(x, nu);
  const double front = g / std::sqrt(nu);
  double t_prev = 1.0, t = y;
  out[0] = front / mcf_norm_factor(0);
  for (std::size_t n = 1; n < out.size(); ++n) {
    out[n] = front * t / mcf_norm_factor(n);
    const double t_next = 2.0 * y * t - t_prev;
    t_prev = t;
    t = t_next;
  }
}

void mcf_deriv_all(double x, double nu, std::span<double> out) {
  check_nu(nu);
  if (out.empty()) return;
  const auto [y, g] = map_point(x, nu);
  const double front = g * g / (nu * std::sqrt(nu));
  // T_{n-1}, T_n, T_{n+1} rolling window, with T_{-1} = T_1
  double tm = y, t0 = 1.0, tp = y;
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double dn = static_cast<double>(n);
    const double p = 0.5 * ((dn - 1.0) * tm - (dn + 1.0) * tp);
    out[n] = front * p / mcf_norm_factor(n);
    const double next = 2.0 * y * tp - t0;
    tm = t0;
    t0 = tp;
    tp = next;
  }
}

double mcf_eval(int n, double x, double nu) {
  if (n < 0) throw InvalidArgument("mcf_eval: index must be non-negative");
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  mcf_eval_all(x, nu, v);
  return v.back();
}

double mcf_deriv(int n, double x, double nu) {
  if (n < 0) throw InvalidArgument("mcf_deriv: index must be non-negative");
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  mcf_deriv_all(x, nu, v);
  return v.back();
}

StiffnessMatrix::StiffnessMatrix(std::size_t degree, double nu) : degree_(degree), nu_(nu) {
  check_nu(nu);
  for (auto& b : band_) b.assign(degree + 1, 0.0);
}

double StiffnessMatrix::operator()(std::size_t m, std::size_t n) const {
  if (m > degree_ || n > degree_) throw InvalidArgument("StiffnessMatrix: index out of range");
  const std::size_t lo = std::min(m, n), hi = std::max(m, n);
  const std::size_t off = hi - lo;
  if (off % 2 != 0 || off > 4) return 0.0;
  return band_[off / 2][lo];
}

void StiffnessMatrix::perturb(std::size_t m, std::size_t n, double delta) {
  if (m > degree_ || n > degree_) throw InvalidArgument("StiffnessMatrix: index out of range");
  const std::size_t lo = std::min(m, n), hi = std::max(m, n);
  const std::size_t off = hi - lo;
  if (off % 2 != 0 || off > 4) throw InvalidArgument("StiffnessMatrix: entry outside the band");
  band_[off / 2][lo] += delta;
}

std::vector<double> StiffnessMatrix::dense() const {
  const std::size_t n = order();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t j = i + 2 * k;
      if (j >= n) break;
      a[i * n + j] = band_[k][i];
      a[j * n + i] = band_[k][i];
    }
  return a;
}

StiffnessMatrix stiffness_matrix(std::size_t degree, double nu) {
  StiffnessMatrix s(degree, nu);
  const double scale = 1.0 / (nu * nu);
  for (std::size_t n = 0; n <= degree; ++n)
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t m = n + 2 * k;
      if (m > degree) break;
      const double v = stiffness_entry_unit(static_cast<long>(n), static_cast<long>(m)) * scale;
      if (k == 0)
        s.perturb(n, n, v);
      else
        s.perturb(n, m, v);
    }
  return s;
}

MappedRule mapped_quadrature(std::size_t degree, double nu) {
  check_nu(nu);
  const GaussRule g = chebyshev_gauss(degree + 1);
  MappedRule r;
  r.nodes.resize(g.size());
  r.weights.resize(g.size());
  const Mapping map(nu);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double y = g.nodes[j];
    r.nodes[j] = map.forward(y);
    r.weights[j] = nu * g.weights[j] / ((1.0 - y) * (1.0 + y));
  }
  return r;
}

}  // namespace mcfrac
