#include "mcfrac/errors_norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mcfrac/error.hpp"
#include "mcfrac/transforms.hpp"

namespace mcfrac {
namespace {

template <class T>
void check_pair(const BasicGridField<T>& a, const BasicGridField<T>& b, const char* where) {
  check_shape(a, where);
  check_shape(b, where);
  check_same_space(*a.basis, *b.basis, where);
}

template <class T>
double l2_impl(const BasicGridField<T>& a, const BasicGridField<T>& b) {
  check_pair(a, b, "error_l2");
  const auto w = a.basis->weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::norm(a.values[i] - b.values[i]);
  return std::sqrt(acc);
}

template <class T>
double max_impl(const BasicGridField<T>& a, const BasicGridField<T>& b) {
  check_pair(a, b, "error_max");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

}  // namespace

double error_l2(const GridField& a, const GridField& b) { return l2_impl(a, b); }
double error_l2(const ComplexGridField& a, const ComplexGridField& b) { return l2_impl(a, b); }
double error_max(const GridField& a, const GridField& b) { return max_impl(a, b); }
double error_max(const ComplexGridField& a, const ComplexGridField& b) { return max_impl(a, b); }

double error_hs(const Expansion& u_num, const GridField& u_exact, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("error_hs: s must lie in [0, 1]");
  check_shape(u_num, "error_hs");
  check_shape(u_exact, "error_hs");
  check_same_space(*u_num.basis, *u_exact.basis, "error_hs");
  const Expansion exact = to_fourier_like(analyze(u_exact));
  const Expansion num = to_representation(u_num, Representation::fourier_like);
  const auto lam = num.basis->eigen_sums();
  double acc = 0.0;
  for (std::size_t p = 0; p < lam.size(); ++p) {
    const double e = num.coeffs[p] - exact.coeffs[p];
    acc += (1.0 + std::pow(lam[p], s)) * e * e;
  }
  return std::sqrt(acc);
}

double coefficient_norm(std::span<const double> c) {
  double acc = 0.0;
  for (double v : c) acc += v * v;
  return std::sqrt(acc);
}

OrderFit fit_order(std::span<const double> n, std::span<const double> error, std::size_t window) {
  if (n.size() != error.size()) throw InvalidArgument("fit_order: N and error sequences differ in length");
  if (n.size() < 2) throw InvalidArgument("fit_order: need at least two data points");
  const std::size_t count = window == 0 ? std::max<std::size_t>(2, (n.size() + 1) / 2) : std::min(window, n.size());
  if (count < 2) throw InvalidArgument("fit_order: window must hold at least two points");
  const std::size_t first = n.size() - count;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(error[i] > 0.0)) throw InvalidArgument("fit_order: N and errors must be positive");
    const double x = std::log(n[i]), y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(count);
  const double den = k * sxx - sx * sx;
  if (!(den > 0.0)) throw InvalidArgument("fit_order: N values in the window must differ");
  OrderFit f;
  f.slope = (k * sxy - sx * sy) / den;
  f.order = -f.slope;
  f.first = first;
  f.count = count;
  return f;
}

OrderFit fit_order(const ConvergenceReport& report, Metric metric, std::size_t window) {
  std::vector<double> n, e;
  for (const auto& r : report.records) {
    n.push_back(static_cast<double>(r.n));
    e.push_back(metric == Metric::max ? r.error_max : metric == Metric::l2 ? r.error_l2 : r.error_hs);
  }
  return fit_order(n, e, window);
}

std::vector<double> successive_orders(std::span<const double> n, std::span<const double> error) {
  if (n.size() != error.size()) throw InvalidArgument("successive_orders: length mismatch");
  std::vector<double> out;
  for (std::size_t k = 1; k < n.size(); ++k) out.push_back(std::log(error[k - 1] / error[k]) / std::log(n[k] / n[k - 1]));
  return out;
}

double predicted_rate(SolutionFamily family, double s, int d, double r) {
  const double full = 2.0 * s + d;
  if (family == SolutionFamily::gaussian) return full - 0.5;
  return std::min(2.0 * r - s, full) - 0.5;
}

SolutionFamily parse_family(const std::string& name) {
  if (name == "gaussian") return SolutionFamily::gaussian;
  if (name == "rational") return SolutionFamily::rational;
  throw InvalidArgument("unknown solution family '" + name + "' (expected gaussian or rational)");
}

const char* to_string(SolutionFamily f) { return f == SolutionFamily::gaussian ? "gaussian" : "rational"; }

void write_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "# config: " << (report.config_json.empty() ? "{}" : report.config_json) << '\n';
  os << "N,error_max,error_l2,error_hs\n";
  for (const auto& r : report.records)
    os << r.n << ',' << fmt(r.error_max) << ',' << fmt(r.error_l2) << ',' << fmt(r.error_hs) << '\n';
}

}  // namespace mcfrac
