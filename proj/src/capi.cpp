#include "mcfrac/mcfrac.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "bench/bench.hpp"
#include "mcfrac/analytic_ref.hpp"
#include "mcfrac/error.hpp"
#include "mcfrac/fnls.hpp"
#include "mcfrac/fraclap_solver.hpp"
#include "mcfrac/io.hpp"
#include "mcfrac/transforms.hpp"

struct mcf_basis {
  mcfrac::TensorBasisPtr basis;
};

struct mcf_expansion {
  mcfrac::Expansion e;
};

struct mcf_fnls {
  mcfrac::FnlsConfig config;
  mcfrac::WaveState state;
  double initial_amplitude = 0.0;
};

namespace {

thread_local std::string g_last_error;

mcf_status to_status(mcfrac::ErrorCode c) {
  using mcfrac::ErrorCode;
  switch (c) {
    case ErrorCode::ok: return MCF_OK;
    case ErrorCode::invalid_argument: return MCF_INVALID_ARGUMENT;
    case ErrorCode::domain: return MCF_DOMAIN;
    case ErrorCode::numeric: return MCF_NUMERIC;
    case ErrorCode::data: return MCF_DATA;
    case ErrorCode::singular_operator: return MCF_SINGULAR;
    case ErrorCode::io: return MCF_IO;
  }
  return MCF_INTERNAL;
}

mcf_status fail(mcf_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
mcf_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return MCF_OK;
  } catch (const mcfrac::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MCF_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCF_INTERNAL, e.what());
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw mcfrac::InvalidArgument(msg);
}

void require_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw mcfrac::InvalidArgument(std::string(what) + ": expected length " + std::to_string(want) + ", got " +
                                  std::to_string(got));
}

mcfrac::Representation to_rep(mcf_representation r) {
  if (r == MCF_REP_MCF) return mcfrac::Representation::mcf;
  if (r == MCF_REP_FOURIER_LIKE) return mcfrac::Representation::fourier_like;
  throw mcfrac::InvalidArgument("unknown representation");
}

mcf_expansion* wrap(mcfrac::Expansion e) { return new mcf_expansion{std::move(e)}; }

double max_amplitude(const mcfrac::ComplexGridField& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

extern "C" {

const char* mcf_version(void) { return "0.1.0"; }

const char* mcf_last_error(void) { return g_last_error.c_str(); }

const char* mcf_status_name(mcf_status status) {
  switch (status) {
    case MCF_OK: return "ok";
    case MCF_INVALID_ARGUMENT: return "invalid_argument";
    case MCF_DOMAIN: return "domain";
    case MCF_NUMERIC: return "numeric";
    case MCF_DATA: return "data";
    case MCF_SINGULAR: return "singular_operator";
    case MCF_IO: return "io";
    case MCF_INTERNAL: return "internal";
  }
  return "unknown";
}

mcf_status mcf_basis_create(int dims, size_t degree, double nu, mcf_basis** out) {
  return guard([&] {
    require(out != nullptr, "mcf_basis_create: null output");
    *out = nullptr;
    require(dims >= 1 && dims <= 3, "mcf_basis_create: dims must be 1, 2 or 3");
    *out = new mcf_basis{mcfrac::TensorBasis::create(static_cast<std::size_t>(dims), degree, nu)};
  });
}

void mcf_basis_destroy(mcf_basis* basis) { delete basis; }

mcf_status mcf_basis_info(const mcf_basis* basis, int* dims, size_t* degree, double* nu, size_t* size) {
  return guard([&] {
    require(basis != nullptr, "mcf_basis_info: null basis");
    const auto& b = *basis->basis;
    if (dims) *dims = static_cast<int>(b.dims());
    if (degree) *degree = b.degree();
    if (nu) *nu = b.nu();
    if (size) *size = b.size();
  });
}

mcf_status mcf_basis_nodes(const mcf_basis* basis, double* out, size_t len) {
  return guard([&] {
    require(basis != nullptr && out != nullptr, "mcf_basis_nodes: null argument");
    const auto& b = *basis->basis;
    require_len(len, b.size() * b.dims(), "mcf_basis_nodes");
    for (std::size_t i = 0; i < b.size(); ++i) b.node(i, std::span<double>(out + i * b.dims(), b.dims()));
  });
}

mcf_status mcf_basis_weights(const mcf_basis* basis, double* out, size_t len) {
  return guard([&] {
    require(basis != nullptr && out != nullptr, "mcf_basis_weights: null argument");
    const auto w = basis->basis->weights();
    require_len(len, w.size(), "mcf_basis_weights");
    std::copy(w.begin(), w.end(), out);
  });
}

mcf_status mcf_basis_eigenvalues(const mcf_basis* basis, double* out, size_t len) {
  return guard([&] {
    require(basis != nullptr && out != nullptr, "mcf_basis_eigenvalues: null argument");
    const auto lam = basis->basis->axis().eigenvalues();
    require_len(len, lam.size(), "mcf_basis_eigenvalues");
    std::copy(lam.begin(), lam.end(), out);
  });
}

mcf_status mcf_basis_save(const mcf_basis* basis, const char* path) {
  return guard([&] {
    require(basis != nullptr && path != nullptr, "mcf_basis_save: null argument");
    mcfrac::save_basis(path, basis->basis->axis());
  });
}

mcf_status mcf_basis_load(const char* path, int dims, mcf_basis** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "mcf_basis_load: null argument");
    *out = nullptr;
    require(dims >= 1 && dims <= 3, "mcf_basis_load: dims must be 1, 2 or 3");
    auto axis = std::make_shared<const mcfrac::FourierLikeBasis1d>(mcfrac::load_basis(path));
    *out = new mcf_basis{std::make_shared<const mcfrac::TensorBasis>(std::move(axis), static_cast<std::size_t>(dims))};
  });
}

mcf_status mcf_expansion_from_values(const mcf_basis* basis, const double* values, size_t len, mcf_expansion** out) {
  return guard([&] {
    require(basis != nullptr && values != nullptr && out != nullptr, "mcf_expansion_from_values: null argument");
    *out = nullptr;
    require_len(len, basis->basis->size(), "mcf_expansion_from_values");
    mcfrac::GridField g{basis->basis, std::vector<double>(values, values + len)};
    *out = wrap(mcfrac::analyze(g));
  });
}

mcf_status mcf_expansion_from_coeffs(const mcf_basis* basis, mcf_representation rep, const double* coeffs, size_t len,
                                     mcf_expansion** out) {
  return guard([&] {
    require(basis != nullptr && coeffs != nullptr && out != nullptr, "mcf_expansion_from_coeffs: null argument");
    *out = nullptr;
    require_len(len, basis->basis->size(), "mcf_expansion_from_coeffs");
    *out = wrap({basis->basis, to_rep(rep), std::vector<double>(coeffs, coeffs + len)});
  });
}

void mcf_expansion_destroy(mcf_expansion* e) { delete e; }

mcf_status mcf_expansion_coeffs(const mcf_expansion* e, mcf_representation rep, double* out, size_t len) {
  return guard([&] {
    require(e != nullptr && out != nullptr, "mcf_expansion_coeffs: null argument");
    require_len(len, e->e.coeffs.size(), "mcf_expansion_coeffs");
    const auto c = mcfrac::to_representation(e->e, to_rep(rep));
    std::copy(c.coeffs.begin(), c.coeffs.end(), out);
  });
}

mcf_status mcf_expansion_values(const mcf_expansion* e, double* out, size_t len) {
  return guard([&] {
    require(e != nullptr && out != nullptr, "mcf_expansion_values: null argument");
    require_len(len, e->e.coeffs.size(), "mcf_expansion_values");
    const auto g = mcfrac::synthesize(e->e);
    std::copy(g.values.begin(), g.values.end(), out);
  });
}

mcf_status mcf_expansion_evaluate(const mcf_expansion* e, const double* points, size_t npoints, double* out) {
  return guard([&] {
    require(e != nullptr && (npoints == 0 || (points != nullptr && out != nullptr)),
            "mcf_expansion_evaluate: null argument");
    const std::size_t d = e->e.basis->dims();
    const auto v = mcfrac::evaluate(e->e, std::span<const double>(points, npoints * d));
    std::copy(v.begin(), v.end(), out);
  });
}

mcf_status mcf_expansion_save(const mcf_expansion* e, const char* path) {
  return guard([&] {
    require(e != nullptr && path != nullptr, "mcf_expansion_save: null argument");
    mcfrac::save(path, e->e);
  });
}

mcf_status mcf_expansion_load(const mcf_basis* basis, const char* path, mcf_expansion** out) {
  return guard([&] {
    require(basis != nullptr && path != nullptr && out != nullptr, "mcf_expansion_load: null argument");
    *out = nullptr;
    *out = wrap(mcfrac::load_expansion(path, basis->basis));
  });
}

mcf_status mcf_solve(const mcf_expansion* f, double s, double gamma, mcf_expansion** u) {
  return guard([&] {
    require(f != nullptr && u != nullptr, "mcf_solve: null argument");
    *u = nullptr;
    *u = wrap(mcfrac::solve_fractional(f->e, s, gamma));
  });
}

mcf_status mcf_solve_multiterm(const mcf_expansion* f, const double* rho, const double* s, size_t nterms, double gamma,
                               mcf_expansion** u) {
  return guard([&] {
    require(f != nullptr && u != nullptr && (nterms == 0 || (rho != nullptr && s != nullptr)),
            "mcf_solve_multiterm: null argument");
    *u = nullptr;
    mcfrac::FracOperatorSpec spec;
    spec.gamma = gamma;
    for (std::size_t j = 0; j < nterms; ++j) spec.terms.push_back({rho[j], s[j]});
    *u = wrap(mcfrac::solve_multiterm(f->e, spec));
  });
}

mcf_status mcf_solve_shifted(const mcf_expansion* f, double s, double gamma_in, mcf_expansion** u) {
  return guard([&] {
    require(f != nullptr && u != nullptr, "mcf_solve_shifted: null argument");
    *u = nullptr;
    *u = wrap(mcfrac::solve_shifted(f->e, s, gamma_in));
  });
}

mcf_status mcf_apply_fraclap(const mcf_expansion* u, double s, mcf_expansion** out) {
  return guard([&] {
    require(u != nullptr && out != nullptr, "mcf_apply_fraclap: null argument");
    *out = nullptr;
    *out = wrap(mcfrac::apply_fraclap(u->e, s));
  });
}

mcf_status mcf_fraclap_gaussian(const double* x, int d, double s, double* out) {
  return guard([&] {
    require(x != nullptr && out != nullptr, "mcf_fraclap_gaussian: null argument");
    require(d >= 1, "mcf_fraclap_gaussian: d must be positive");
    *out = mcfrac::fraclap_gaussian(std::span<const double>(x, static_cast<std::size_t>(d)), s);
  });
}

mcf_status mcf_fraclap_rational(const double* x, int d, double s, double r, double* out) {
  return guard([&] {
    require(x != nullptr && out != nullptr, "mcf_fraclap_rational: null argument");
    require(d >= 1, "mcf_fraclap_rational: d must be positive");
    *out = mcfrac::fraclap_rational(std::span<const double>(x, static_cast<std::size_t>(d)), s, r);
  });
}

void mcf_fnls_config_default(mcf_fnls_config* config) {
  if (!config) return;
  const mcfrac::FnlsConfig d;
  *config = {static_cast<int>(d.dims), d.degree, d.nu, d.s, d.gamma, d.p, d.dt, d.T};
}

mcf_status mcf_fnls_create(const mcf_fnls_config* config, const double* psi0, size_t len, mcf_fnls** out) {
  return guard([&] {
    require(config != nullptr && out != nullptr, "mcf_fnls_create: null argument");
    *out = nullptr;
    require(config->dims >= 1 && config->dims <= 3, "mcf_fnls_create: dims must be 1, 2 or 3");
    mcfrac::FnlsConfig c;
    c.dims = static_cast<std::size_t>(config->dims);
    c.degree = config->degree;
    c.nu = config->nu;
    c.s = config->s;
    c.gamma = config->gamma;
    c.p = config->p;
    c.dt = config->dt;
    c.T = config->T;
    mcfrac::validate(c);
    auto basis = mcfrac::TensorBasis::create(c.dims, c.degree, c.nu);
    mcfrac::ComplexGridField psi;
    if (psi0) {
      require_len(len, 2 * basis->size(), "mcf_fnls_create");
      psi = {basis, std::vector<std::complex<double>>(basis->size())};
      for (std::size_t i = 0; i < basis->size(); ++i) psi.values[i] = {psi0[2 * i], psi0[2 * i + 1]};
    } else {
      psi = mcfrac::sample(mcfrac::ComplexPointFunction(mcfrac::sech_wave), basis);
    }
    for (const auto& v : psi.values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw mcfrac::DataError("mcf_fnls_create: initial state has non-finite values");
    auto* sim = new mcf_fnls{c, {std::move(psi), 0.0}, 0.0};
    sim->initial_amplitude = max_amplitude(sim->state.psi);
    *out = sim;
  });
}

void mcf_fnls_destroy(mcf_fnls* sim) { delete sim; }

mcf_status mcf_fnls_step(mcf_fnls* sim, size_t nsteps) {
  return guard([&] {
    require(sim != nullptr, "mcf_fnls_step: null argument");
    const auto& c = sim->config;
    for (std::size_t k = 0; k < nsteps; ++k) {
      try {
        mcfrac::ts4_step(sim->state, c.dt, c.s, c.gamma, c.p);
      } catch (const mcfrac::DataError&) {
        throw mcfrac::NumericError("blow-up at t = " + std::to_string(sim->state.time) + ": non-finite values");
      }
      const double amp = max_amplitude(sim->state.psi);
      if (!std::isfinite(amp) || amp > 1e6 * std::max(sim->initial_amplitude, 1e-300))
        throw mcfrac::NumericError("blow-up at t = " + std::to_string(sim->state.time));
    }
  });
}

mcf_status mcf_fnls_state(const mcf_fnls* sim, double* psi, size_t len, double* time) {
  return guard([&] {
    require(sim != nullptr, "mcf_fnls_state: null argument");
    if (psi) {
      const auto& v = sim->state.psi.values;
      require_len(len, 2 * v.size(), "mcf_fnls_state");
      for (std::size_t i = 0; i < v.size(); ++i) {
        psi[2 * i] = v[i].real();
        psi[2 * i + 1] = v[i].imag();
      }
    }
    if (time) *time = sim->state.time;
  });
}

mcf_status mcf_fnls_mass(const mcf_fnls* sim, double* mass) {
  return guard([&] {
    require(sim != nullptr && mass != nullptr, "mcf_fnls_mass: null argument");
    *mass = mcfrac::discrete_mass(sim->state.psi);
  });
}

mcf_status mcf_run_command(const char* command, const char* config_json, char** report_json) {
  if (report_json) *report_json = nullptr;
  bool report_failed = false;
  const mcf_status st = guard([&] {
    require(command != nullptr && report_json != nullptr, "mcf_run_command: null argument");
    const auto config = config_json && *config_json ? nlohmann::json::parse(config_json) : nlohmann::json::object();
    require(config.is_object(), "configuration must be a JSON object");
    const auto report = mcfrac::bench::run_command(command, config);
    report_failed = report.contains("ok") && report.at("ok") == false;
    const std::string text = report.dump(2);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *report_json = buf;
  });
  if (st == MCF_OK && report_failed) return fail(MCF_NUMERIC, std::string(command) + ": report records a failure");
  return st;
}

void mcf_free_string(char* s) { delete[] s; }

}  // extern "C"
