#pragma once

#include <Eigen/Dense>

#include "pulseqa/common.hpp"

namespace pulseqa {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// State vector of 2^n complex amplitudes.
struct QuantumState {
  ComplexVector amplitudes;
  int n = 0;  // qubit count; amplitudes.size() == 2^n

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }

  // Builds a state from raw amplitudes, normalizing them. Throws if the
  // length is not a power of two or the vector is zero / non-finite.
  static QuantumState normalized(ComplexVector amps);
};

/// Dense Hermitian matrix; the constructor-side guarantee is that
/// entries(i,j) == conj(entries(j,i)) holds exactly.
struct HermitianOperator {
  ComplexMatrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }

  // Symmetrizes an arbitrary square matrix: the strict upper triangle wins
  // and the lower triangle is set to its exact conjugate; the diagonal is
  // forced real.
  static HermitianOperator from_dense(const ComplexMatrix& m);
};

/// Full spectrum, eigenvalues ascending, eigenvectors orthonormal columns
/// in the same order.
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

// Full Hermitian eigendecomposition. Eigenvector phases are gauged so the
// largest-magnitude component of each column is real and positive; magnitude
// ties are broken by the lowest index. Identical input gives bit-identical
// output.
EigenSystem hermitian_eig(const HermitianOperator& h);

// Matrix-vector product H|psi> (unnormalized result).
ComplexVector apply(const HermitianOperator& h, const QuantumState& psi);

// Inner product <phi|psi>, conjugating the first argument.
Complex overlap(const QuantumState& phi, const QuantumState& psi);

}  // namespace pulseqa
