#include "mcfrac/cheb_core.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "mcfrac/error.hpp"

namespace mcfrac {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (size, kind) and kept for the process
// lifetime. Every execution goes through an fftw_malloc'd scratch buffer so
// that the alignment matches the planning buffer.
struct FftwBufferDeleter {
  void operator()(double* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<double[], FftwBufferDeleter>;

FftwBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * n));
  if (p == nullptr) throw NumericError("fftw_malloc failed");
  return FftwBuffer(p);
}

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, fftw_r2r_kind kind) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, static_cast<int>(kind));
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto buf = make_buffer(n);
    fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), buf.get(), buf.get(), kind,
                                      FFTW_ESTIMATE);
    if (plan == nullptr) throw NumericError("FFTW could not create a plan of size " + std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

double* scratch(std::size_t n) {
  thread_local FftwBuffer buf;
  thread_local std::size_t capacity = 0;
  if (capacity < n) {
    buf = make_buffer(n);
    capacity = n;
  }
  return buf.get();
}

// cos(k (2j+1) pi / (2n)) as a dense n x n table (row k, column j).
std::vector<double> cosine_table(std::size_t n) {
  std::vector<double> t(n * n);
  const double h = std::numbers::pi / (2.0 * static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      t[k * n + j] = std::cos(static_cast<double>(k * (2 * j + 1) % (4 * n)) * h);
  return t;
}

void check_rows(std::span<double> rows, std::size_t n) {
  if (n == 0) throw InvalidArgument("transform length must be positive");
  if (rows.size() % n != 0)
    throw InvalidArgument("row buffer of size " + std::to_string(rows.size()) +
                          " is not a multiple of " + std::to_string(n));
}

}  // namespace

GaussRule chebyshev_gauss(std::size_t num_points) {
  if (num_points == 0) throw InvalidArgument("chebyshev_gauss: num_points must be >= 1");
  GaussRule rule;
  rule.nodes.resize(num_points);
  rule.weights.assign(num_points, std::numbers::pi / static_cast<double>(num_points));
  const double h = std::numbers::pi / (2.0 * static_cast<double>(num_points));
  for (std::size_t j = 0; j < num_points; ++j) {
    // sin form keeps the nodes exactly antisymmetric and the middle node at 0
    const double k = static_cast<double>(num_points) - 1.0 - 2.0 * static_cast<double>(j);
    rule.nodes[j] = std::sin(k * h);
  }
  return rule;
}

double cheb_eval(std::span<const double> coeffs, double y) {
  if (!(std::abs(y) <= 1.0)) throw DomainError("cheb_eval: |y| > 1 (y = " + std::to_string(y) + ")");
  if (coeffs.empty()) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    const double b0 = coeffs[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + y * b1 - b2;
}

void values_to_coeffs_rows(std::span<double> rows, std::size_t n, TransformMethod method) {
  check_rows(rows, n);
  const std::size_t howmany = rows.size() / n;
  const double scale = 1.0 / static_cast<double>(n);
  if (method == TransformMethod::fast) {
    fftw_plan plan = plan_cache().get(n, FFTW_REDFT10);
    double* buf = scratch(n);
    for (std::size_t r = 0; r < howmany; ++r) {
      double* row = rows.data() + r * n;
      std::copy(row, row + n, buf);
      fftw_execute_r2r(plan, buf, buf);
      row[0] = 0.5 * buf[0] * scale;
      for (std::size_t k = 1; k < n; ++k) row[k] = buf[k] * scale;
    }
    return;
  }
  const auto table = cosine_table(n);
  std::vector<double> out(n);
  for (std::size_t r = 0; r < howmany; ++r) {
    double* row = rows.data() + r * n;
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += table[k * n + j] * row[j];
      out[k] = (k == 0 ? 1.0 : 2.0) * acc * scale;
    }
    std::copy(out.begin(), out.end(), row);
  }
}

void coeffs_to_values_rows(std::span<double> rows, std::size_t n, TransformMethod method) {
  check_rows(rows, n);
  const std::size_t howmany = rows.size() / n;
  if (method == TransformMethod::fast) {
    fftw_plan plan = plan_cache().get(n, FFTW_REDFT01);
    double* buf = scratch(n);
    for (std::size_t r = 0; r < howmany; ++r) {
      double* row = rows.data() + r * n;
      buf[0] = row[0];
      for (std::size_t k = 1; k < n; ++k) buf[k] = 0.5 * row[k];
      fftw_execute_r2r(plan, buf, buf);
      std::copy(buf, buf + n, row);
    }
    return;
  }
  const auto table = cosine_table(n);
  std::vector<double> out(n);
  for (std::size_t r = 0; r < howmany; ++r) {
    double* row = rows.data() + r * n;
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += table[k * n + j] * row[k];
      out[j] = acc;
    }
    std::copy(out.begin(), out.end(), row);
  }
}

ChebSeries values_to_coeffs(std::span<const double> values, const GaussRule& rule,
                            TransformMethod method) {
  if (values.size() != rule.size())
    throw InvalidArgument("values_to_coeffs: " + std::to_string(values.size()) +
                          " values for a rule of " + std::to_string(rule.size()) + " points");
  ChebSeries s{std::vector<double>(values.begin(), values.end())};
  values_to_coeffs_rows(s.coeffs, s.coeffs.size(), method);
  return s;
}

std::vector<double> coeffs_to_values(const ChebSeries& series, const GaussRule& rule,
                                     TransformMethod method) {
  if (series.coeffs.size() != rule.size())
    throw InvalidArgument("coeffs_to_values: " + std::to_string(series.coeffs.size()) +
                          " coefficients for a rule of " + std::to_string(rule.size()) + " points");
  std::vector<double> v = series.coeffs;
  coeffs_to_values_rows(v, v.size(), method);
  return v;
}

}  // namespace mcfrac
