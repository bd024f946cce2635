#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pulseqa/linalg.hpp"

namespace pulseqa {

// Units: hbar = 1 and the transverse amplitude is the energy unit, so times
// are in hbar/Delta and all energies (eps, J, C) in Delta.

/// Rectangular longitudinal pulse: amplitude C applied on the closed window
/// [t_c - t_d/2, t_c + t_d/2].
struct PulseSchedule {
  double t_c = 0.0;       // pulse center
  double t_d = 0.0;       // pulse duration, >= 0
  double amplitude = 0.0; // C, either sign

  double t_start() const { return t_c - 0.5 * t_d; }
  double t_end() const { return t_c + 0.5 * t_d; }
  bool active() const { return amplitude != 0.0 && t_d > 0.0; }
};

// Window indicator. Both edges are inside the window (step function value 1
// at its jump), which pins the bit-exact behaviour of point evaluations.
inline bool pulse_window(double t, const PulseSchedule& p) {
  return p.t_d >= 0.0 && t >= p.t_start() && t <= p.t_end();
}

struct Coupling {
  int i = 0;
  int j = 0;      // i < j strictly
  double value = 0.0;
};

/// Random-field Ising problem: fields eps_i plus pair couplings J_ij (i<j),
/// all standard normal. `seed` records how the draw was made.
struct SpinGlassInstance {
  int n = 0;
  std::vector<double> eps;
  std::vector<Coupling> couplings;  // sorted by (i, j)
  std::uint64_t seed = 0;

  void validate() const;  // throws config_error on any structural violation
};

// Draws a fresh instance from a deterministic stream (see rng.hpp); the same
// (n, seed) gives a bit-identical instance. Fields come first, then couplings
// in (i, j) lexicographic order, one deviate each.
SpinGlassInstance generate_instance(int n, std::uint64_t seed);

// Classical Ising energy of bitstring z under sigma|0> = +|0>: bit b of z
// contributes spin (1 - 2b).
double target_energy(const SpinGlassInstance& inst, std::uint64_t z);

/// Full description of one annealing run.
struct AnnealSpec {
  SpinGlassInstance instance;
  double t_f = 1.0;                     // annealing time, > 0
  double delta = 1.0;                   // transverse amplitude (the unit)
  std::optional<PulseSchedule> pulse;   // absent or inactive = conventional QA

  int n() const { return instance.n; }
  int dim() const { return 1 << instance.n; }
  void validate() const;

  // C * Lambda_P(t): the diagonal pulse offset at time t.
  double pulse_offset(double t) const {
    return (pulse && pulse->active() && pulse_window(t, *pulse)) ? pulse->amplitude : 0.0;
  }
};

// Convenience single-qubit spec (instance with one field, no couplings).
AnnealSpec single_qubit_spec(double eps, double t_f,
                             std::optional<PulseSchedule> pulse = std::nullopt);

// H(t) for one qubit: (s*eps + C*Lambda(t)) sigma_z + (1-s) Delta sigma_x.
HermitianOperator single_qubit_h(double t, double eps, const AnnealSpec& spec);

// H(t) = s*H_target + C*Lambda(t)*sum_i sigma_z^i + (1-s)*Delta*sum_i sigma_x^i.
HermitianOperator multiqubit_h(double t, const AnnealSpec& spec);

// Diagonal of the target Hamiltonian over all 2^n bitstrings.
std::vector<double> target_diagonal(const SpinGlassInstance& inst);

// Diagonal of sum_i sigma_z^i: total magnetization per bitstring.
std::vector<double> magnetization_diagonal(int n);

// Instance file format: {"n": int, "seed": int, "eps": [...], "J": [[i,j,value]...]}.
std::string instance_to_json(const SpinGlassInstance& inst);
SpinGlassInstance instance_from_json(const std::string& text);
void save_instance(const SpinGlassInstance& inst, const std::string& path);
SpinGlassInstance load_instance(const std::string& path);

}  // namespace pulseqa
