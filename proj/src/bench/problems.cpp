#include <algorithm>
#include <cmath>
#include <sstream>

#include "bench/bench.hpp"
#include "mcfrac/analytic_ref.hpp"
#include "mcfrac/error.hpp"

namespace mcfrac::bench {

std::vector<FracTerm> parse_terms(const std::string& text) {
  std::vector<FracTerm> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("term '" + item + "' is not of the form rho:s");
    try {
      std::size_t used = 0;
      const std::string rho_text = item.substr(0, colon), s_text = item.substr(colon + 1);
      const double rho = std::stod(rho_text, &used);
      if (used != rho_text.size()) throw std::invalid_argument(rho_text);
      const double s = std::stod(s_text, &used);
      if (used != s_text.size()) throw std::invalid_argument(s_text);
      terms.push_back({rho, s});
    } catch (const std::logic_error&) {
      throw InvalidArgument("term '" + item + "' has a malformed number");
    }
  }
  if (terms.empty()) throw InvalidArgument("empty term list");
  return terms;
}

Problem make_problem(const std::string& family, const FracOperatorSpec& op, double r) {
  Problem p;
  p.family = family;
  p.op = op;
  double smax = 0.0;
  for (const auto& t : op.terms) smax = std::max(smax, t.s);
  p.hs_order = smax;

  if (family == "gaussian") {
    p.exact = [](std::span<const double> x) { return gaussian_profile(x); };
    p.rhs = [op](std::span<const double> x) {
      double v = op.gamma * gaussian_profile(x);
      for (const auto& t : op.terms) v += t.rho * fraclap_gaussian(x, t.s);
      return v;
    };
  } else if (family == "rational" || family == "multiterm") {
    if (!(r > 0.0)) throw InvalidArgument("rational family needs r > 0");
    p.exact = [r](std::span<const double> x) { return rational_profile(x, r); };
    p.rhs = [op, r](std::span<const double> x) {
      double v = op.gamma * rational_profile(x, r);
      for (const auto& t : op.terms) v += t.rho * fraclap_rational(x, t.s, r);
      return v;
    };
  } else if (family == "table1") {
    p.rhs = [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return (1.0 + x[0]) * std::exp(-0.5 * r2);
    };
  } else {
    throw InvalidArgument("unknown family '" + family + "' (expected gaussian, rational, multiterm or table1)");
  }
  return p;
}

Expansion solve_problem(const Problem& problem, const TensorBasisPtr& basis) {
  return solve_multiterm(interpolate(problem.rhs, basis), problem.op);
}

std::vector<double> audit_axis(std::size_t dims) {
  const std::size_t m = dims == 1 ? 201 : dims == 2 ? 41 : 21;
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = -10.0 + 20.0 * static_cast<double>(i) / static_cast<double>(m - 1);
  return x;
}

ConvergenceRecord measure(const Problem& problem, std::size_t dims, std::size_t degree, double nu) {
  return measure(problem, solve_problem(problem, TensorBasis::create(dims, degree, nu)));
}

ConvergenceRecord measure(const Problem& problem, const Expansion& u) {
  if (!problem.exact) throw InvalidArgument("measure: problem has no exact solution");
  const auto& basis = u.basis;
  const std::size_t dims = basis->dims();
  const GridField num = synthesize(u);
  const GridField ex = sample(problem.exact, basis);

  ConvergenceRecord rec;
  rec.n = basis->degree();
  rec.error_l2 = error_l2(num, ex);
  rec.error_hs = error_hs(u, ex, problem.hs_order);
  rec.error_max = error_max(num, ex);

  const auto axis = audit_axis(dims);
  const auto vals = evaluate_on_grid(u, axis);
  std::vector<double> x(dims);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    std::size_t rest = i;
    for (std::size_t k = dims; k-- > 0;) {
      x[k] = axis[rest % axis.size()];
      rest /= axis.size();
    }
    rec.error_max = std::max(rec.error_max, std::abs(vals[i] - problem.exact(x)));
  }
  return rec;
}

}  // namespace mcfrac::bench
