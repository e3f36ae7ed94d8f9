#include "mcfrac/fnls.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcfrac/error.hpp"

namespace mcfrac {
namespace {

constexpr double kBlowUpFactor = 1e6;

double max_abs(const ComplexGridField& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const ComplexGridField& f) {
  return std::all_of(f.values.begin(), f.values.end(),
                     [](const std::complex<double>& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

}  // namespace

void validate(const FnlsConfig& c) {
  if (c.dims < 1 || c.dims > 3) throw InvalidArgument("fnls: dims must be 1, 2 or 3");
  if (!(c.nu > 0.0)) throw InvalidArgument("fnls: nu must be positive");
  if (!(c.s > 0.0 && c.s <= 1.0)) throw InvalidArgument("fnls: s must lie in (0, 1]");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw InvalidArgument("fnls: dt must be positive");
  if (!(c.T >= c.dt) || !std::isfinite(c.T)) throw InvalidArgument("fnls: T must be finite and >= dt");
  if (!(c.p > 0.0) || !std::isfinite(c.p)) throw InvalidArgument("fnls: nonlinearity exponent must be positive");
  if (!std::isfinite(c.gamma)) throw InvalidArgument("fnls: gamma must be finite");
}

double discrete_mass(const ComplexGridField& psi) {
  check_shape(psi, "discrete_mass");
  const auto w = psi.basis->weights();
  double m = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) m += w[i] * std::norm(psi.values[i]);
  return m;
}

void kinetic_propagate(WaveState& state, double weight, double dt, double s) {
  check_shape(state.psi, "kinetic_propagate");
  if (weight == 0.0 || dt == 0.0) return;
  ComplexExpansion c = to_fourier_like(analyze(state.psi));
  const auto lam = c.basis->eigen_sums();
  for (std::size_t k = 0; k < lam.size(); ++k) {
    const double phase = -weight * std::pow(lam[k], s) * dt;
    c.coeffs[k] *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
  state.psi = synthesize(c);
}

void nonlinear_phase(WaveState& state, double weight, double dt, double gamma, double p) {
  check_shape(state.psi, "nonlinear_phase");
  if (weight == 0.0 || dt == 0.0 || gamma == 0.0) return;
  for (auto& v : state.psi.values) {
    const double a2 = std::norm(v);
    const double mod = p == 1.0 ? a2 : std::pow(a2, p);
    const double phase = -2.0 * weight * gamma * dt * mod;
    v *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
}

void ts4_step(WaveState& state, double dt, double s, double gamma, double p) {
  using W = Ts4Weights;
  nonlinear_phase(state, W::w1, dt, gamma, p);
  kinetic_propagate(state, W::w2, dt, s);
  nonlinear_phase(state, W::w3, dt, gamma, p);
  kinetic_propagate(state, W::w4, dt, s);
  nonlinear_phase(state, W::w3, dt, gamma, p);
  kinetic_propagate(state, W::w2, dt, s);
  nonlinear_phase(state, W::w1, dt, gamma, p);
  state.time += dt;
}

SimulationResult run_simulation(const FnlsConfig& config, const ComplexPointFunction& psi0) {
  validate(config);
  auto basis = TensorBasis::create(config.dims, config.degree, config.nu);
  return run_simulation(config, WaveState{sample(psi0, basis), 0.0});
}

SimulationResult run_simulation(const FnlsConfig& config, WaveState initial) {
  validate(config);
  check_shape(initial.psi, "run_simulation");
  const auto& b = *initial.psi.basis;
  if (b.dims() != config.dims || b.degree() != config.degree || b.nu() != config.nu)
    throw InvalidArgument("run_simulation: initial state does not live on the configured grid");
  SimulationResult res;
  const double ratio = config.T / config.dt;
  res.steps = static_cast<std::size_t>(std::max(1.0, std::round(ratio)));
  res.dt_used = config.T / static_cast<double>(res.steps);
  res.dt_adjusted = std::abs(ratio - std::round(ratio)) > 1e-9 * ratio;

  // snapshot step indices
  std::vector<std::size_t> snap_steps;
  for (double t : config.snapshot_times) {
    if (!(t >= 0.0 && t <= config.T)) throw InvalidArgument("run_simulation: snapshot time outside [0, T]");
    snap_steps.push_back(static_cast<std::size_t>(std::round(t / res.dt_used)));
  }

  res.state = std::move(initial);
  if (!all_finite(res.state.psi)) throw DataError("run_simulation: initial state has non-finite values");
  const double m0 = discrete_mass(res.state.psi);
  const double amp0 = max_abs(res.state.psi);
  res.trace.push_back({0, res.state.time, m0});
  auto snap = [&](std::size_t step) {
    for (std::size_t s : snap_steps)
      if (s == step) res.snapshots.push_back(res.state);
  };
  snap(0);

  for (std::size_t n = 1; n <= res.steps; ++n) {
    bool finite = true;
    try {
      ts4_step(res.state, res.dt_used, config.s, config.gamma, config.p);
      finite = all_finite(res.state.psi);
    } catch (const DataError&) {
      finite = false;
    }
    const double amp = finite ? max_abs(res.state.psi) : 0.0;
    if (!finite || amp > kBlowUpFactor * amp0) {
      res.blow_up = true;
      res.blow_up_step = n;
      res.blow_up_reason = finite ? "max |psi| exceeded 1e6 times its initial value at step " + std::to_string(n)
                                  : "non-finite value at step " + std::to_string(n);
      break;
    }
    const double m = discrete_mass(res.state.psi);
    res.trace.push_back({n, res.state.time, m});
    if (m0 > 0.0) res.max_mass_drift = std::max(res.max_mass_drift, std::abs(m - m0) / m0);
    snap(n);
  }
  return res;
}

std::complex<double> sech_wave(std::span<const double> x) {
  double amp = 1.0, phase = 0.0;
  for (double v : x) {
    amp /= std::cosh(v);
    phase += v;
  }
  return std::polar(amp, phase);
}

}  // namespace mcfrac
