#pragma once

// Fourth-order time splitting for
//   i psi_t = 1/2 (-Delta)^s psi + gamma |psi|^{2p} psi
// on the tensor MCF grid.

#include <cstddef>
#include <string>
#include <vector>

#include "mcfrac/tensor.hpp"
#include "mcfrac/transforms.hpp"

namespace mcfrac {

/// Composition weights of the TS4 scheme. With t = 2^{1/3}:
/// w1 = 1/(4(2-t)), w2 = 1/(2(2-t)), w3 = (1-t)/(4(2-t)), w4 = -t/(2(2-t)),
/// so that 2(w1+w3) = 2 w2 + w4 = 1/2.
struct Ts4Weights {
  static constexpr double w1 = 0.33780179798991440851;
  static constexpr double w2 = 0.67560359597982881702;
  static constexpr double w3 = -0.08780179798991440851;
  static constexpr double w4 = -0.85120719195965763404;
};

struct FnlsConfig {
  std::size_t dims = 1;
  std::size_t degree = 128;
  double nu = 2.5;
  double s = 0.7;
  double gamma = 1.0;
  double p = 1.0;
  double dt = 0.01;
  double T = 1.0;
  /// Times at which the state is recorded (nearest step).
  std::vector<double> snapshot_times;
};

/// Throws InvalidArgument for an unusable configuration.
void validate(const FnlsConfig& c);

struct WaveState {
  ComplexGridField psi;
  double time = 0.0;
};

/// sum_j w_j |psi_j|^2.
double discrete_mass(const ComplexGridField& psi);

/// psi <- F^{-1} diag(exp(-i weight |lambda_k|_1^s dt)) F psi, F the map to
/// Fourier-like coefficients.
void kinetic_propagate(WaveState& state, double weight, double dt, double s);

/// psi_j <- exp(-2 i weight gamma dt |psi_j|^{2p}) psi_j.
void nonlinear_phase(WaveState& state, double weight, double dt, double gamma, double p);

/// One TS4 step of size dt (which may be negative).
void ts4_step(WaveState& state, double dt, double s, double gamma, double p);

struct MassSample {
  std::size_t step = 0;
  double time = 0.0;
  double mass = 0.0;
};

struct SimulationResult {
  WaveState state;
  std::vector<MassSample> trace;
  std::vector<WaveState> snapshots;
  std::size_t steps = 0;
  double dt_used = 0.0;
  /// Set when T/dt was not an integer and dt was adjusted.
  bool dt_adjusted = false;
  bool blow_up = false;
  std::size_t blow_up_step = 0;
  std::string blow_up_reason;
  /// max_n |m_n - m_0| / m_0.
  double max_mass_drift = 0.0;
};

SimulationResult run_simulation(const FnlsConfig& config, const ComplexPointFunction& psi0);
SimulationResult run_simulation(const FnlsConfig& config, WaveState initial);

/// prod_k sech(x_k) exp(i sum_k x_k).
std::complex<double> sech_wave(std::span<const double> x);

}  // namespace mcfrac
