#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "mcfrac/mcfrac.h"

namespace {

std::string tmp_file(const char* name) {
  const char* dir = std::getenv("MCFRAC_TEST_TMP");
  return std::string(dir ? dir : "/tmp") + "/" + name;
}

struct Basis {
  mcf_basis* p = nullptr;
  Basis(int d, size_t n, double nu) { REQUIRE(mcf_basis_create(d, n, nu, &p) == MCF_OK); }
  ~Basis() { mcf_basis_destroy(p); }
};

struct Exp {
  mcf_expansion* p = nullptr;
  ~Exp() { mcf_expansion_destroy(p); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(mcf_status_name(MCF_OK)) == "ok");
  CHECK(std::string(mcf_status_name(MCF_SINGULAR)).size() > 0);
  CHECK(std::strlen(mcf_version()) > 0);
}

TEST_CASE("basis handles") {
  Basis b(2, 6, 1.5);
  int d = 0;
  size_t n = 0, size = 0;
  double nu = 0.0;
  REQUIRE(mcf_basis_info(b.p, &d, &n, &nu, &size) == MCF_OK);
  CHECK(d == 2);
  CHECK(n == 6);
  CHECK(nu == 1.5);
  CHECK(size == 49);

  std::vector<double> nodes(98), w(49), lam(7);
  CHECK(mcf_basis_nodes(b.p, nodes.data(), nodes.size()) == MCF_OK);
  CHECK(mcf_basis_weights(b.p, w.data(), w.size()) == MCF_OK);
  CHECK(mcf_basis_eigenvalues(b.p, lam.data(), lam.size()) == MCF_OK);
  for (std::size_t p = 1; p < lam.size(); ++p) CHECK(lam[p] >= lam[p - 1]);
  // last index fastest: points 0 and 1 share x_0
  CHECK(nodes[0] == nodes[2]);
  CHECK(nodes[1] != nodes[3]);

  CHECK(mcf_basis_weights(b.p, w.data(), 48) == MCF_INVALID_ARGUMENT);
  CHECK(std::string(mcf_last_error()).find("expected length 49") != std::string::npos);

  mcf_basis* bad = reinterpret_cast<mcf_basis*>(0x1);
  CHECK(mcf_basis_create(4, 6, 1.0, &bad) == MCF_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(mcf_basis_create(1, 6, -1.0, &bad) == MCF_INVALID_ARGUMENT);
  CHECK(mcf_basis_create(1, 6, 1.0, nullptr) == MCF_INVALID_ARGUMENT);
  CHECK(mcf_basis_info(nullptr, &d, &n, &nu, &size) == MCF_INVALID_ARGUMENT);

  const auto path = tmp_file("capi_basis.json");
  REQUIRE(mcf_basis_save(b.p, path.c_str()) == MCF_OK);
  mcf_basis* loaded = nullptr;
  REQUIRE(mcf_basis_load(path.c_str(), 3, &loaded) == MCF_OK);
  REQUIRE(mcf_basis_info(loaded, &d, &n, &nu, &size) == MCF_OK);
  CHECK(d == 3);
  CHECK(size == 343);
  mcf_basis_destroy(loaded);
  CHECK(mcf_basis_load(tmp_file("none.json").c_str(), 1, &loaded) == MCF_IO);
  mcf_basis_destroy(nullptr);
}

TEST_CASE("solve through the C API") {
  const size_t n = 48;
  Basis b(1, n, 1.0);
  std::vector<double> x(n + 1), f(n + 1), exact(n + 1);
  REQUIRE(mcf_basis_nodes(b.p, x.data(), x.size()) == MCF_OK);
  const double s = 0.5, gamma = 1.0;
  for (size_t j = 0; j <= n; ++j) {
    double lap = 0.0;
    REQUIRE(mcf_fraclap_gaussian(&x[j], 1, s, &lap) == MCF_OK);
    exact[j] = std::exp(-x[j] * x[j]);
    f[j] = gamma * exact[j] + lap;
  }
  Exp fe, ue;
  REQUIRE(mcf_expansion_from_values(b.p, f.data(), f.size(), &fe.p) == MCF_OK);
  REQUIRE(mcf_solve(fe.p, s, gamma, &ue.p) == MCF_OK);
  std::vector<double> u(n + 1);
  REQUIRE(mcf_expansion_values(ue.p, u.data(), u.size()) == MCF_OK);
  double err = 0.0;
  for (size_t j = 0; j <= n; ++j) err = std::max(err, std::abs(u[j] - exact[j]));
  CHECK(err < 1e-3);

  // apply inverts solve
  Exp le;
  REQUIRE(mcf_apply_fraclap(ue.p, s, &le.p) == MCF_OK);
  std::vector<double> lu(n + 1), uf(n + 1), ff(n + 1);
  REQUIRE(mcf_expansion_coeffs(le.p, MCF_REP_FOURIER_LIKE, lu.data(), lu.size()) == MCF_OK);
  REQUIRE(mcf_expansion_coeffs(ue.p, MCF_REP_FOURIER_LIKE, uf.data(), uf.size()) == MCF_OK);
  REQUIRE(mcf_expansion_coeffs(fe.p, MCF_REP_FOURIER_LIKE, ff.data(), ff.size()) == MCF_OK);
  for (size_t p = 0; p <= n; ++p) CHECK(lu[p] + gamma * uf[p] == doctest::Approx(ff[p]).scale(1.0).epsilon(1e-13));

  // single-term multiterm agrees
  const double rho = 1.0;
  Exp me;
  REQUIRE(mcf_solve_multiterm(fe.p, &rho, &s, 1, gamma, &me.p) == MCF_OK);
  std::vector<double> mc(n + 1);
  REQUIRE(mcf_expansion_coeffs(me.p, MCF_REP_FOURIER_LIKE, mc.data(), mc.size()) == MCF_OK);
  CHECK(mc == uf);

  Exp se;
  REQUIRE(mcf_solve_shifted(fe.p, 1.0, 1.0, &se.p) == MCF_OK);

  // evaluation off the grid
  const double pts[2] = {0.25, -3.0};
  double vals[2];
  REQUIRE(mcf_expansion_evaluate(ue.p, pts, 2, vals) == MCF_OK);
  CHECK(vals[0] == doctest::Approx(std::exp(-0.0625)).epsilon(1e-3));

  // save and load
  const auto path = tmp_file("capi_u.mcft");
  REQUIRE(mcf_expansion_save(ue.p, path.c_str()) == MCF_OK);
  Exp re;
  REQUIRE(mcf_expansion_load(b.p, path.c_str(), &re.p) == MCF_OK);
  std::vector<double> rc(n + 1);
  REQUIRE(mcf_expansion_coeffs(re.p, MCF_REP_FOURIER_LIKE, rc.data(), rc.size()) == MCF_OK);
  CHECK(rc == uf);

  // error statuses
  Exp bad;
  CHECK(mcf_solve(fe.p, 1.5, gamma, &bad.p) == MCF_INVALID_ARGUMENT);
  CHECK(bad.p == nullptr);
  const double neg = -1.0;
  CHECK(mcf_solve_multiterm(fe.p, &neg, &s, 1, 0.0, &bad.p) == MCF_SINGULAR);
  CHECK(std::string(mcf_last_error()).find("mode") != std::string::npos);
  std::vector<double> nan_values(n + 1, NAN);
  Exp ne;
  REQUIRE(mcf_expansion_from_coeffs(b.p, MCF_REP_MCF, nan_values.data(), nan_values.size(), &ne.p) == MCF_OK);
  CHECK(mcf_solve(ne.p, s, gamma, &bad.p) == MCF_DATA);
  CHECK(mcf_expansion_from_values(b.p, f.data(), 3, &bad.p) == MCF_INVALID_ARGUMENT);
  CHECK(mcf_expansion_coeffs(fe.p, static_cast<mcf_representation>(9), uf.data(), uf.size()) == MCF_INVALID_ARGUMENT);
}

TEST_CASE("analytic references") {
  const double x0[1] = {0.0};
  double v = 0.0;
  REQUIRE(mcf_fraclap_gaussian(x0, 1, 1.0, &v) == MCF_OK);
  CHECK(v == doctest::Approx(2.0));
  REQUIRE(mcf_fraclap_rational(x0, 1, 0.0, 2.0, &v) == MCF_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(mcf_fraclap_gaussian(x0, 4, 0.5, &v) == MCF_INVALID_ARGUMENT);
  CHECK(mcf_fraclap_rational(x0, 1, 0.5, -1.0, &v) == MCF_DOMAIN);
}

TEST_CASE("fNLS handle") {
  mcf_fnls_config c;
  mcf_fnls_config_default(&c);
  CHECK(c.dims == 1);
  CHECK(c.nu == 2.5);
  c.degree = 32;
  c.dt = 0.01;
  mcf_fnls* sim = nullptr;
  REQUIRE(mcf_fnls_create(&c, nullptr, 0, &sim) == MCF_OK);
  double m0 = 0.0, m1 = 0.0, t = 0.0;
  REQUIRE(mcf_fnls_mass(sim, &m0) == MCF_OK);
  REQUIRE(mcf_fnls_step(sim, 50) == MCF_OK);
  REQUIRE(mcf_fnls_mass(sim, &m1) == MCF_OK);
  CHECK(m1 == doctest::Approx(m0).epsilon(1e-12));
  std::vector<double> psi(66);
  REQUIRE(mcf_fnls_state(sim, psi.data(), psi.size(), &t) == MCF_OK);
  CHECK(t == doctest::Approx(0.5));
  CHECK(mcf_fnls_state(sim, psi.data(), 10, &t) == MCF_INVALID_ARGUMENT);

  // restart from the state just read
  mcf_fnls* again = nullptr;
  REQUIRE(mcf_fnls_create(&c, psi.data(), psi.size(), &again) == MCF_OK);
  double m2 = 0.0;
  REQUIRE(mcf_fnls_mass(again, &m2) == MCF_OK);
  CHECK(m2 == doctest::Approx(m1).epsilon(1e-14));
  mcf_fnls_destroy(again);
  mcf_fnls_destroy(sim);

  psi[4] = INFINITY;
  CHECK(mcf_fnls_create(&c, psi.data(), psi.size(), &sim) == MCF_DATA);
  CHECK(sim == nullptr);

  c.s = 2.0;
  CHECK(mcf_fnls_create(&c, nullptr, 0, &sim) == MCF_INVALID_ARGUMENT);
  CHECK(sim == nullptr);
}

TEST_CASE("benchmark commands") {
  char* report = nullptr;
  REQUIRE(mcf_run_command("solve", R"({"N": 32, "s": 0.5})", &report) == MCF_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"error_max\"") != std::string::npos);
  mcf_free_string(report);

  CHECK(mcf_run_command("solve", "{bad json", &report) == MCF_INVALID_ARGUMENT);
  CHECK(report == nullptr);
  CHECK(mcf_run_command("solve", "[1, 2]", &report) == MCF_INVALID_ARGUMENT);
  CHECK(mcf_run_command("frobnicate", "{}", &report) == MCF_INVALID_ARGUMENT);

  REQUIRE(mcf_run_command("validate", R"({"filter": "biorthogonality", "perturb_stiffness": 1e-3})", &report) == MCF_NUMERIC);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"ok\": false") != std::string::npos);
  mcf_free_string(report);
  mcf_free_string(nullptr);
}
