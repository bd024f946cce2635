#pragma once

#include "pulseqa/model.hpp"

namespace pulseqa {

// Semi-analytic single-qubit solver: adiabatic phase accumulation between the
// window edges and sudden basis re-expansion at them. Valid while the three
// regions away from the edges evolve adiabatically.

/// Bloch angles of the pulse-free and pulsed Hamiltonians at one time.
struct MixingAngles {
  double theta0 = 0.0;  // atan2((1-s)*Delta, s*eps)
  double thetaC = 0.0;  // atan2((1-s)*Delta, s*eps + C)
};

MixingAngles mixing_angles(double t, double eps, const AnnealSpec& spec);

// Probability weight of the sudden mixing at time t: the squared overlap of
// the pulsed ground state with the pulse-free excited state,
// sin^2((thetaC - theta0)/2).
double mixing_probability(double t, double eps, const AnnealSpec& spec);

enum class PulseSegment { before, inside, after };

// Adiabatic phase of one region: the integral of the half-gap
// sqrt((s*eps + c)^2 + ((1-s)*Delta)^2) over [t_s, t_q], with c = C inside the
// window and 0 outside. Relative quadrature error below 1e-10.
double segment_phase(double t_s, double t_q, double eps, const AnnealSpec& spec,
                     PulseSegment segment);

// Full transfer-matrix success probability
// |b_0|^2 of U(t_f,t2) N2 U(t2,t1) N1 U(t1,0) (1,0)^T. Rejects windows whose
// edges leave [0, t_f].
double tm_success_probability(double eps, const AnnealSpec& spec);

// 1 - 4 p_s (1 - p_s) sin^2(zeta2): the symmetric-phase interference formula;
// maxima exactly at zeta2 = N*pi.
double approx_success_probability(double p_s, double zeta2);

}  // namespace pulseqa
