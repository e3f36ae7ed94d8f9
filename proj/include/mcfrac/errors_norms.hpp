#pragma once

// Discrete error metrics and convergence-order fitting.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcfrac/tensor.hpp"

namespace mcfrac {

/// sqrt(sum_j w_j |a_j - b_j|^2) with the tensorised mapped weights.
double error_l2(const GridField& a, const GridField& b);
double error_l2(const ComplexGridField& a, const ComplexGridField& b);

/// max_j |a_j - b_j| on the native grid.
double error_max(const GridField& a, const GridField& b);
double error_max(const ComplexGridField& a, const ComplexGridField& b);

/// (sum_p (1 + |lambda_p|_1^s) |e_p|^2)^{1/2} where e are the Fourier-like
/// coefficients of I_N(u_num - u_exact).
double error_hs(const Expansion& u_num, const GridField& u_exact, double s);

/// sqrt(sum |c_p|^2).
double coefficient_norm(std::span<const double> c);

struct ConvergenceRecord {
  std::size_t n = 0;
  double error_max = 0.0;
  double error_l2 = 0.0;
  double error_hs = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRecord> records;
  /// Free-form JSON echo of the configuration that produced the report.
  std::string config_json;
};

/// Least-squares fit of log(error) = slope log(N) + c. `order` is -slope,
/// positive for decaying errors.
struct OrderFit {
  double slope = 0.0;
  double order = 0.0;
  std::size_t first = 0;  // first record used
  std::size_t count = 0;  // number of records used
};

/// Fits over the last `window` points; window = 0 selects the default, the
/// last half of the sequence (at least two points). Throws InvalidArgument
/// with fewer than two points or non-positive data.
OrderFit fit_order(std::span<const double> n, std::span<const double> error, std::size_t window = 0);

enum class Metric { max, l2, hs };
OrderFit fit_order(const ConvergenceReport& report, Metric metric, std::size_t window = 0);

/// ln(e_{k-1}/e_k) / ln(N_k/N_{k-1}) for k = 1..; size is one less than the
/// input.
std::vector<double> successive_orders(std::span<const double> n, std::span<const double> error);

enum class SolutionFamily { gaussian, rational };

/// gaussian: 2s + d - 1/2; rational: min(2r - s, 2s + d) - 1/2.
double predicted_rate(SolutionFamily family, double s, int d, double r = 0.0);

SolutionFamily parse_family(const std::string& name);
const char* to_string(SolutionFamily f);

/// "# config: <json>", the header row, then one %.5e row per record.
void write_csv(std::ostream& os, const ConvergenceReport& report);

}  // namespace mcfrac
