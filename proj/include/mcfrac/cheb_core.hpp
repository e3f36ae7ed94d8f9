#pragma once

// Chebyshev polynomials of the first kind on (-1, 1): Gauss rules, evaluation,
// and value <-> coefficient transforms at the Chebyshev-Gauss points.

#include <cstddef>
#include <span>
#include <vector>

namespace mcfrac {

/// Coefficients a_0..a_N of sum a_n T_n(y).
struct ChebSeries {
  std::vector<double> coeffs;
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Chebyshev-Gauss rule. Nodes are y_j = cos((2j+1)pi/(2N+2)), j = 0..N,
/// i.e. in descending order; every weight equals pi/(N+1).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

GaussRule chebyshev_gauss(std::size_t num_points);

/// Clenshaw evaluation of sum a_n T_n(y). Throws DomainError for |y| > 1.
double cheb_eval(std::span<const double> coeffs, double y);
inline double cheb_eval(const ChebSeries& s, double y) { return cheb_eval(s.coeffs, y); }

/// Selects how the discrete cosine transforms are carried out. `fast` uses
/// FFTW's DCT-II/DCT-III (O(n log n) for every n); `direct` is the O(n^2)
/// matrix form and serves as the reference implementation.
enum class TransformMethod { fast, direct };

/// Discrete Chebyshev coefficients a_n = 2/(c_n pi) sum_j rho_j v_j T_n(y_j)
/// of the values v_j sampled at the Gauss nodes. Reproduces polynomials of
/// degree <= N exactly.
ChebSeries values_to_coeffs(std::span<const double> values, const GaussRule& rule,
                            TransformMethod method = TransformMethod::fast);

/// Values of the series at the nodes of `rule`.
std::vector<double> coeffs_to_values(const ChebSeries& series, const GaussRule& rule,
                                     TransformMethod method = TransformMethod::fast);

/// Batched, in-place variants over `rows.size() / n` contiguous rows of
/// length n. These are the workhorses of the tensor transforms.
void values_to_coeffs_rows(std::span<double> rows, std::size_t n,
                           TransformMethod method = TransformMethod::fast);
void coeffs_to_values_rows(std::span<double> rows, std::size_t n,
                           TransformMethod method = TransformMethod::fast);

}  // namespace mcfrac
