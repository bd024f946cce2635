#pragma once

#include <vector>

#include "pulseqa/linalg.hpp"

namespace pulseqa {

// Low-level state-vector kernels for the split-step propagator. All kernels
// are elementwise or butterfly-structured with disjoint writes, so the OpenMP
// versions give bit-identical results for any thread count.

// Dimension threshold below which the parallel kernels stay serial; tiny
// states are dominated by loop overhead.
inline constexpr int kOmpMinDim = 1024;

// psi[z] *= phase[z]
void apply_phase(ComplexVector& psi, const ComplexVector& phase);

// psi[z] *= a[z] * b[z]
void apply_phase_product(ComplexVector& psi, const ComplexVector& a, const ComplexVector& b);

// phase[z] = exp(-i * scale * diag[z])  (diag may be null: phase = 1)
void make_phase(ComplexVector& phase, const std::vector<double>& diag, double scale);

// phase[z] = exp(-i * (sa*a[z] + sb*b[z]))
void make_phase2(ComplexVector& phase, const std::vector<double>& a, double sa,
                 const std::vector<double>& b, double sb);

// cur[z] *= step[z]
void advance_phase(ComplexVector& cur, const ComplexVector& step);

// Applies exp(-i * theta * sum_i sigma_x^i), a product of independent
// single-qubit rotations; exactly unitary.
void apply_transverse_rotation(ComplexVector& psi, int n, double theta);

}  // namespace pulseqa
