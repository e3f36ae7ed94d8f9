#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "mcfrac/error.hpp"
#include "mcfrac/fraclap_solver.hpp"

using namespace mcfrac;

namespace {

double source(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r += v * v;
  return (1.0 + x[0]) * std::exp(-r / 2.0);
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("solve inverts apply") {
  for (std::size_t d : {1u, 2u, 3u}) {
    const auto basis = TensorBasis::create(d, d == 3 ? 8 : 24, 1.5);
    const auto f = interpolate(source, basis);
    for (double s : {0.0, 0.3, 0.7, 1.0})
      for (double gamma : {0.0, 1.0}) {
        const auto u = solve_fractional(f, s, gamma);
        CHECK(u.rep == Representation::fourier_like);
        auto back = apply_fraclap(u, s);
        for (std::size_t p = 0; p < back.coeffs.size(); ++p) back.coeffs[p] += gamma * u.coeffs[p];
        CHECK(max_diff(back.coeffs, to_fourier_like(f).coeffs) < 1e-13 * max_abs(f.coeffs) * 10);
      }
  }
}

TEST_CASE("s = 1 acts as the stiffness matrix in 1-D") {
  const std::size_t n = 30;
  const double nu = 1.7;
  const auto basis = TensorBasis::create(1, n, nu);
  const auto u = interpolate(source, basis);
  const auto lu = from_fourier_like(apply_fraclap(u, 1.0));
  const auto s = stiffness_matrix(n, nu);
  std::vector<double> su(n + 1, 0.0);
  for (std::size_t m = 0; m <= n; ++m)
    for (std::size_t k = 0; k <= n; ++k) su[m] += s(m, k) * u.coeffs[k];
  CHECK(max_diff(lu.coeffs, su) < 1e-13 * max_abs(su) * 10);
}

TEST_CASE("semigroup and linearity") {
  const auto basis = TensorBasis::create(2, 12, 1.0);
  const auto u = interpolate(source, basis);
  const auto a = apply_fraclap(apply_fraclap(u, 0.3), 0.4);
  const auto b = apply_fraclap(u, 0.7);
  CHECK(max_diff(a.coeffs, b.coeffs) < 1e-12 * max_abs(b.coeffs));
  CHECK(max_diff(apply_fraclap(u, 0.0).coeffs, to_fourier_like(u).coeffs) == 0.0);

  const auto v = interpolate([](std::span<const double> x) { return 1.0 / (1.0 + x[0] * x[0] + x[1] * x[1]); }, basis);
  Expansion w = u;
  for (std::size_t i = 0; i < w.coeffs.size(); ++i) w.coeffs[i] = 2.0 * u.coeffs[i] - 3.0 * v.coeffs[i];
  const auto lw = solve_fractional(w, 0.6, 0.5);
  const auto lu = solve_fractional(u, 0.6, 0.5), lv = solve_fractional(v, 0.6, 0.5);
  for (std::size_t i = 0; i < w.coeffs.size(); ++i) CHECK(lw.coeffs[i] == doctest::Approx(2.0 * lu.coeffs[i] - 3.0 * lv.coeffs[i]).scale(1.0).epsilon(1e-13));
}

TEST_CASE("energy is monotone in s across modes above and below one") {
  // (u, (-Delta)^s u) = sum lambda^s |u_p|^2 is log-convex in s
  const auto basis = TensorBasis::create(1, 40, 1.0);
  const auto u = to_fourier_like(interpolate(source, basis));
  auto energy = [&](double s) {
    double e = 0.0;
    for (std::size_t p = 0; p < u.coeffs.size(); ++p) e += std::pow(basis->eigen_sums()[p], s) * u.coeffs[p] * u.coeffs[p];
    return std::log(e);
  };
  for (double s = 0.1; s < 0.95; s += 0.1) CHECK(energy(s) <= 0.5 * (energy(s - 0.1) + energy(s + 0.1)) + 1e-14);
  const auto mult = [](double lam, double s) { return spectral_multiplier(FracOperatorSpec{{FracTerm{1.0, s}}, 0.0}, lam); };
  CHECK(mult(4.0, 0.3) < mult(4.0, 0.6));
  CHECK(mult(0.25, 0.3) > mult(0.25, 0.6));
  CHECK(mult(1.0, 0.3) == 1.0);
}

TEST_CASE("multi-term operators") {
  const auto basis = TensorBasis::create(2, 10, 1.2);
  const auto f = interpolate(source, basis);
  const auto single = solve_multiterm(f, FracOperatorSpec{{FracTerm{1.0, 0.4}}, 0.7});
  const auto frac = solve_fractional(f, 0.4, 0.7);
  CHECK(single.coeffs == frac.coeffs);

  const auto with_zero = solve_multiterm(f, FracOperatorSpec{{FracTerm{1.0, 0.5}, FracTerm{2.0, 0.0}}, 1.0});
  const auto shifted = solve_fractional(f, 0.5, 3.0);
  CHECK(max_diff(with_zero.coeffs, shifted.coeffs) < 1e-15 * max_abs(shifted.coeffs) * 10);

  const FracOperatorSpec spec{{FracTerm{0.77, 1.0}, FracTerm{0.33, 2.0 / 3.0}, FracTerm{0.21, 1.0 / 3.0}}, 0.0};
  const auto u = solve_multiterm(f, spec);
  auto back = apply_fraclap(u, 1.0);
  const auto b2 = apply_fraclap(u, 2.0 / 3.0), b3 = apply_fraclap(u, 1.0 / 3.0);
  for (std::size_t i = 0; i < back.coeffs.size(); ++i) back.coeffs[i] = 0.77 * back.coeffs[i] + 0.33 * b2.coeffs[i] + 0.21 * b3.coeffs[i];
  CHECK(max_diff(back.coeffs, to_fourier_like(f).coeffs) < 1e-13 * max_abs(f.coeffs) * 10);

  CHECK(spectral_multiplier(spec, 2.0) == doctest::Approx(0.77 * 2.0 + 0.33 * std::pow(2.0, 2.0 / 3.0) + 0.21 * std::pow(2.0, 1.0 / 3.0)));
  CHECK_THROWS_AS(spectral_multiplier(spec, 0.0), SingularOperator);

  CHECK_THROWS_AS(solve_multiterm(f, FracOperatorSpec{{}, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(solve_multiterm(f, FracOperatorSpec{{FracTerm{1.0, 1.2}}, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(solve_multiterm(f, FracOperatorSpec{{FracTerm{NAN, 0.5}}, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(solve_multiterm(f, FracOperatorSpec{{FracTerm{1.0, 0.5}}, -1e6}), SingularOperator);
  CHECK_THROWS_AS(solve_multiterm(f, FracOperatorSpec{{FracTerm{-1.0, 0.5}}, 0.0}), SingularOperator);
}

TEST_CASE("overloads and argument checks") {
  const auto basis = TensorBasis::create(1, 16, 1.0);
  const auto g = sample(source, basis);
  const auto a = solve_fractional(source, 0.5, 1.0, basis);
  const auto b = solve_fractional(g, 0.5, 1.0);
  const auto c = solve_multiterm(g, FracOperatorSpec{{FracTerm{1.0, 0.5}}, 1.0});
  CHECK(a.coeffs == b.coeffs);
  CHECK(b.coeffs == c.coeffs);

  CHECK_THROWS_AS(solve_fractional(g, -0.1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(solve_fractional(g, 1.1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(solve_fractional(g, 0.5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(solve_fractional(g, 0.5, INFINITY), InvalidArgument);
  CHECK_THROWS_AS(apply_fraclap(analyze(g), 1.5), InvalidArgument);

  Expansion bad = analyze(g);
  bad.coeffs[3] = NAN;
  CHECK_THROWS_AS(solve_fractional(bad, 0.5, 1.0), DataError);
  bad.coeffs.pop_back();
  CHECK_THROWS_AS(solve_fractional(bad, 0.5, 1.0), InvalidArgument);
}

TEST_CASE("shifted operator") {
  const auto basis = TensorBasis::create(2, 10, 1.0);
  const auto f = interpolate(source, basis);
  const auto a = solve_shifted(f, 1.0, 2.0);
  const auto b = solve_fractional(f, 1.0, 2.0);
  CHECK(max_diff(a.coeffs, b.coeffs) < 1e-15 * max_abs(b.coeffs) * 10);
  // applying the square root twice undoes the s = 1 solve
  const auto h = solve_shifted(solve_shifted(f, 0.5, 2.0), 0.5, 2.0);
  CHECK(max_diff(h.coeffs, b.coeffs) < 1e-14 * max_abs(b.coeffs) * 10);
  const auto ff = to_fourier_like(f);
  const auto u = solve_shifted(f, 0.3, 0.5);
  for (std::size_t p = 0; p < ff.coeffs.size(); ++p)
    CHECK(u.coeffs[p] == doctest::Approx(ff.coeffs[p] / std::pow(0.5 + basis->eigen_sums()[p], 0.3)).scale(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(solve_shifted(f, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(solve_shifted(f, 0.5, 0.0), InvalidArgument);
}

TEST_CASE("Gauss-Jacobi rule") {
  // Legendre: int x^k over (-1,1)
  const auto leg = gauss_jacobi(6, 0.0, 0.0);
  REQUIRE(leg.size() == 6);
  for (int k = 0; k <= 11; ++k) {
    double q = 0.0;
    for (std::size_t j = 0; j < leg.size(); ++j) q += leg.weights[j] * std::pow(leg.nodes[j], k);
    CHECK(q == doctest::Approx(k % 2 == 0 ? 2.0 / (k + 1) : 0.0).scale(1.0).epsilon(1e-14));
  }
  for (std::size_t j = 1; j < leg.size(); ++j) CHECK(leg.nodes[j] > leg.nodes[j - 1]);
  // int (1-x)^a (1+x)^b = 2^{a+b+1} B(a+1, b+1)
  const double a = 0.4, b = -0.4;
  const auto jr = gauss_jacobi(10, a, b);
  double total = 0.0, first = 0.0;
  for (std::size_t j = 0; j < jr.size(); ++j) {
    total += jr.weights[j];
    first += jr.weights[j] * jr.nodes[j];
  }
  const double mass = 2.0 * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
  CHECK(total == doctest::Approx(mass).epsilon(1e-14));
  CHECK(first == doctest::Approx(mass * (b - a) / (a + b + 2)).epsilon(1e-13));
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), DomainError);
}

TEST_CASE("Dunford-Taylor quadrature") {
  CHECK(dunford_constant(0.5) == doctest::Approx(2.0 / std::numbers::pi));
  for (double s : {0.1, 0.5, 0.9})
    for (double lam : {1e-3, 0.4, 1.0, 7.0, 1e4}) CHECK(dt_multiplier(lam, s) == doctest::Approx(std::pow(lam, s)).epsilon(1e-12));
  // a coarse rule is visibly less accurate than the default
  const double coarse = std::abs(dt_multiplier(1e4, 0.3, DtQuadratureSpec{4}) - std::pow(1e4, 0.3));
  CHECK(coarse > 1e-8 * std::pow(1e4, 0.3));

  const auto basis = TensorBasis::create(2, 10, 1.0);
  const auto u = interpolate(source, basis);
  const auto spectral = apply_fraclap(u, 0.35);
  const auto quad = dt_quadrature_apply(u, 0.35);
  CHECK(max_diff(spectral.coeffs, quad.coeffs) < 1e-12 * max_abs(spectral.coeffs));

  CHECK_THROWS_AS(dt_multiplier(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(dt_multiplier(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(dt_multiplier(1.0, 0.5, DtQuadratureSpec{0}), InvalidArgument);
  CHECK_THROWS_AS(dt_multiplier(-1.0, 0.5), SingularOperator);
}

TEST_CASE("complex apply matches the real one") {
  const auto basis = TensorBasis::create(1, 20, 1.0);
  const auto re = interpolate(source, basis);
  ComplexExpansion c{basis, Representation::mcf, {}};
  for (double v : re.coeffs) c.coeffs.emplace_back(v, -2.0 * v);
  const auto lc = apply_fraclap(c, 0.6);
  const auto lr = apply_fraclap(re, 0.6);
  for (std::size_t p = 0; p < lr.coeffs.size(); ++p) {
    CHECK(lc.coeffs[p].real() == doctest::Approx(lr.coeffs[p]).scale(1.0).epsilon(1e-14));
    CHECK(lc.coeffs[p].imag() == doctest::Approx(-2.0 * lr.coeffs[p]).scale(1.0).epsilon(1e-14));
  }
}
