#pragma once

#include <optional>
#include <vector>

#include "pulseqa/model.hpp"

namespace pulseqa {

// Default integration grid: t_f / 20000, overridable everywhere a dt is taken.
inline constexpr double kDefaultAnnealSteps = 20000.0;
inline double default_dt(double t_f) { return t_f / kDefaultAnnealSteps; }

// Ground states within this energy of the minimum count as one degenerate
// manifold when projecting for the success probability.
inline constexpr double kDegeneracyTol = 1e-10;

enum class Integrator {
  split,      // Strang-split unitary propagator (production, OpenMP kernels)
  reference,  // per-step exp(-i H(t_mid) dt) via eigendecomposition (serial)
};

struct EvolveOptions {
  double dt = 0.0;               // 0 = default_dt(t_f); must satisfy dt <= t_f/100
  int trace_samples = 0;         // 0 = no trace
  Integrator method = Integrator::split;
  // Testing hooks: freeze H at a fixed time and/or start from a given state
  // instead of the transverse ground state.
  std::optional<double> hold_at;
  std::optional<ComplexVector> initial_state;
};

struct TracePoint {
  double t = 0.0;
  double p0 = 0.0;    // |<psi_0(t)|psi(t)>|^2, pulse-free eigenbasis
  double p1 = 0.0;    // same for the first excited state
  double norm = 0.0;  // ||psi(t)||
};

struct EvolutionResult {
  QuantumState final_state;
  double sp = 0.0;  // success probability, Eq-of-merit of the whole run
  std::vector<TracePoint> trace;
};

// Transverse-field ground state at t = 0: the product state with amplitudes
// (-1)^popcount(z) / sqrt(2^n). The pulse never shifts the start state; runs
// always begin from the plain quantum-fluctuation ground state.
QuantumState ground_state_initial(const AnnealSpec& spec);

// Integrates the Schroedinger equation across [0, t_f] with the window edges
// placed exactly on segment boundaries (clamped to the annealing interval),
// then projects on the target ground state.
EvolutionResult evolve(const AnnealSpec& spec, const EvolveOptions& opt = {});

// Squared projection of psi onto the ground manifold of the target (pulse-free
// final) Hamiltonian; degenerate levels within kDegeneracyTol are projected as
// a whole.
double success_probability(const QuantumState& psi, const AnnealSpec& spec);

// Instantaneous spectra at `samples` uniformly spaced times. k = 0 keeps the
// full spectrum, otherwise the lowest k levels. The pulse is included unless
// include_pulse is false.
struct SpectrumPoint {
  double t = 0.0;
  RealVector energies;
};
std::vector<SpectrumPoint> spectrum_trace(const AnnealSpec& spec, int samples, int k = 0,
                                          bool include_pulse = true);

// Single-qubit gap 2*sqrt(((1-s)Delta)^2 + (s*eps + C*Lambda(t))^2).
double gap_closed_form(double t, double eps, const AnnealSpec& spec);

struct GapReport {
  double e_min = 0.0;          // minimum E_1 - E_0 over the anneal
  double t_min = 0.0;          // where it occurs
  double adiabatic_rhs = 0.0;  // max_s|<0|dH/ds|1>| / min_s E_01(s)^2
  bool degenerate = false;     // gap below 1e-12 somewhere
};

// Scans the pulse-free gap on a 2001-point s-grid with golden-section
// refinement of both extrema. Rejects specs with an active pulse.
GapReport min_gap(const AnnealSpec& spec);

}  // namespace pulseqa
