#include "mcfrac/analytic_ref.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mcfrac/error.hpp"
#include "mcfrac/special_functions.hpp"

namespace mcfrac {
namespace {

double norm2(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r += v * v;
  return r;
}

void check_point(std::span<const double> x, const char* where) {
  if (x.empty() || x.size() > 3) throw InvalidArgument(std::string(where) + ": point must have 1 to 3 coordinates");
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError(std::string(where) + ": non-finite coordinate");
}

constexpr double kOracleTol = 1e-13;
constexpr double kSmallFrequency = 1e-6;
constexpr double kMaxFrequency = 1e4;

// Integrates f over (0, inf) against cos(omega t), or plainly when omega = 0.
// The oscillatory error estimate is judged against max(|result|, scale),
// where scale bounds the integral of |f|. Nested integrals use distinct
// slots so the integrators are not reentered.
template <int Slot, class F>
double cosine_integral(const F& f, double omega, const char* what, double scale = 0.0) {
  try {
    if (omega == 0.0) {
      thread_local boost::math::quadrature::exp_sinh<double> es;
      double err = 0.0, l1 = 0.0;
      const double v = es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), kOracleTol, &err, &l1);
      if (!std::isfinite(v)) throw NumericError(std::string(what) + ": non-finite integral");
      return v;
    }
    thread_local boost::math::quadrature::ooura_fourier_cos<double> oc(kOracleTol, 8);
    const auto [v, rel] = oc.integrate(f, std::abs(omega));
    if (!std::isfinite(v) || rel * std::abs(v) > 1e-7 * std::max(std::abs(v), scale))
      throw NumericError(std::string(what) + ": oscillatory quadrature error estimate " + std::to_string(rel));
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

double norm_constant(int d, double s) {
  if (d < 1 || d > 3) throw InvalidArgument("norm_constant: d must be 1, 2 or 3");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("norm_constant: s must lie in (0, 1)");
  const double hd = 0.5 * d;
  return std::pow(2.0, 2.0 * s) * s * gamma_fn(s + hd) / (std::pow(std::numbers::pi, hd) * gamma_fn(1.0 - s));
}

double gaussian_profile(std::span<const double> x) { return std::exp(-norm2(x)); }

double rational_profile(std::span<const double> x, double r) { return std::pow(1.0 + norm2(x), -r); }

double fraclap_gaussian(std::span<const double> x, double s) {
  check_point(x, "fraclap_gaussian");
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("fraclap_gaussian: s must be >= 0");
  const double hd = 0.5 * static_cast<double>(x.size());
  const double front = std::pow(2.0, 2.0 * s) * gamma_fn(s + hd) / gamma_fn(hd);
  return front * hyp1f1(s + hd, hd, -norm2(x));
}

double fraclap_rational(std::span<const double> x, double s, double r) {
  check_point(x, "fraclap_rational");
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("fraclap_rational: s must be >= 0");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("fraclap_rational: r must be > 0");
  const double hd = 0.5 * static_cast<double>(x.size());
  const double front = std::pow(2.0, 2.0 * s) * gamma_fn(s + r) * gamma_fn(s + hd) / (gamma_fn(r) * gamma_fn(hd));
  return front * hyp2f1(s + r, s + hd, hd, -norm2(x));
}

double rhs_exponential(std::span<const double> x, double s, double gamma) {
  return gamma * gaussian_profile(x) + fraclap_gaussian(x, s);
}

double rhs_algebraic(std::span<const double> x, double s, double r, double gamma) {
  return gamma * rational_profile(x, r) + fraclap_rational(x, s, r);
}

double fraclap_fourier_1d(const std::function<double(double)>& cosine_transform, double x, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("fraclap_fourier_1d: s must lie in [0, 1]");
  if (!std::isfinite(x)) throw DomainError("fraclap_fourier_1d: non-finite x");
  auto integrand = [&](double xi) {
    if (xi == 0.0) return s == 0.0 ? cosine_transform(0.0) : 0.0;
    return std::pow(xi, 2.0 * s) * cosine_transform(xi);
  };
  const double scale = cosine_integral<0>([&](double xi) { return std::abs(integrand(xi)); }, 0.0, "fraclap_fourier_1d");
  return 2.0 / std::numbers::pi * cosine_integral<0>(integrand, x, "fraclap_fourier_1d", scale);
}

double fraclap_quadrature_1d(const std::function<double(double)>& u, double x, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("fraclap_quadrature_1d: s must lie in [0, 1]");
  if (!std::isfinite(x)) throw DomainError("fraclap_quadrature_1d: non-finite x");
  const char* what = "fraclap_quadrature_1d";
  const double c0 = cosine_integral<1>(u, 0.0, what);
  const double scale = cosine_integral<1>([&](double y) { return std::abs(u(y)); }, 0.0, what);
  auto integrand = [&](double xi) {
    if (xi < kSmallFrequency) return s == 0.0 ? c0 : std::pow(xi, 2.0 * s) * c0;
    return std::pow(xi, 2.0 * s) * cosine_integral<1>(u, xi, what, scale);
  };
  // truncate where the weighted transform has decayed for two doublings
  double cut = 1.0;
  int quiet = 0;
  for (; cut <= kMaxFrequency && quiet < 2; cut *= 2.0)
    quiet = std::abs(integrand(cut)) < kOracleTol * scale ? quiet + 1 : 0;
  if (quiet < 2) throw NumericError(std::string(what) + ": cosine transform does not decay");
  auto weighted = [&](double xi) { return std::cos(x * xi) * integrand(xi); };
  // tanh-sinh absorbs the xi^{2s} endpoint behaviour; Gauss-Kronrod covers the smooth remainder
  boost::math::quadrature::tanh_sinh<double> ts;
  double err_head = 0.0, err_tail = 0.0;
  const double head = ts.integrate(weighted, 0.0, 1.0, 1e-12, &err_head);
  const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(weighted, 1.0, cut, 20, 1e-12, &err_tail);
  const double v = head + tail;
  const double err = err_head * std::abs(head) + err_tail;
  if (!std::isfinite(v) || err > 1e-9 * std::max(std::abs(v), scale))
    throw NumericError(std::string(what) + ": quadrature error estimate " + std::to_string(err));
  return 2.0 / std::numbers::pi * v;
}

}  // namespace mcfrac
