#pragma once

// Benchmark driver shared by the C API and the command-line tool. Every
// command takes a JSON configuration and returns a JSON report. Usage
// problems raise InvalidArgument; numeric failures raise the other Error
// types.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcfrac/errors_norms.hpp"
#include "mcfrac/fraclap_solver.hpp"
#include "mcfrac/transforms.hpp"

namespace mcfrac::bench {

using Json = nlohmann::json;

/// Dispatches to one of: solve, converge, table1, fnls, validate.
Json run_command(const std::string& command, const Json& config);

Json cmd_solve(const Json& config);
Json cmd_converge(const Json& config);
Json cmd_table1(const Json& config);
Json cmd_fnls(const Json& config);
Json cmd_validate(const Json& config);

/// A manufactured problem: operator, right-hand side and (optionally) the
/// exact solution.
struct Problem {
  std::string family;
  FracOperatorSpec op;
  PointFunction rhs;
  PointFunction exact;  // empty when unknown
  double hs_order = 0.5;
};

/// Families: "gaussian" and "rational" (exact solutions e^{-|x|^2} and
/// (1+|x|^2)^{-r}), "multiterm" (Example-style four-term operator with the
/// rational solution, r = 3 pi / 4) and "table1" (f = (1 + x_1) e^{-|x|^2/2},
/// no exact solution).
Problem make_problem(const std::string& family, const FracOperatorSpec& op, double r);

/// Parses "rho:s,rho:s,...".
std::vector<FracTerm> parse_terms(const std::string& text);

/// Errors of a solve against the exact solution: max over the native grid
/// and a uniform audit grid on [-10, 10]^d, grid L^2, and discrete H^s.
ConvergenceRecord measure(const Problem& problem, std::size_t dims, std::size_t degree, double nu);
ConvergenceRecord measure(const Problem& problem, const Expansion& solution);

/// Uniform audit points on [-10, 10] used for max errors.
std::vector<double> audit_axis(std::size_t dims);

/// Fourier-like solution of `problem` at the given resolution.
Expansion solve_problem(const Problem& problem, const TensorBasisPtr& basis);

}  // namespace mcfrac::bench
