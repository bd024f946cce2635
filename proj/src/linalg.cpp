#include "pulseqa/linalg.hpp"

#include <cmath>

namespace pulseqa {

namespace {

bool is_power_of_two(Eigen::Index x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(Eigen::Index x) {
  int n = 0;
  while ((Eigen::Index{1} << n) < x) ++n;
  return n;
}

}  // namespace

QuantumState QuantumState::normalized(ComplexVector amps) {
  if (!is_power_of_two(amps.size()))
    throw config_error("state length must be a power of two, got " +
                       std::to_string(amps.size()));
  if (!amps.allFinite()) throw config_error("state has non-finite amplitudes");
  const double nrm = amps.norm();
  if (nrm == 0.0) throw config_error("cannot normalize the zero vector");
  amps /= nrm;
  const int n = log2_exact(amps.size());
  return QuantumState{std::move(amps), n};
}

HermitianOperator HermitianOperator::from_dense(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw config_error("operator must be square");
  ComplexMatrix h = m;
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    h(j, j) = Complex(h(j, j).real(), 0.0);
    for (Eigen::Index i = 0; i < j; ++i) h(j, i) = std::conj(h(i, j));
  }
  return HermitianOperator{std::move(h)};
}

EigenSystem hermitian_eig(const HermitianOperator& h) {
  if (!h.entries.allFinite())
    throw config_error("hermitian_eig: matrix has non-finite entries");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.entries);
  if (solver.info() != Eigen::Success)
    throw numerical_error("hermitian_eig failed to converge", 0.0);

  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};

  // Phase gauge: rotate each column so its largest-|.| component is real
  // positive. Strict '>' keeps the lowest index on magnitude ties, which
  // also fixes the gauge inside degenerate blocks.
  const Eigen::Index dim = sys.vectors.rows();
  for (Eigen::Index k = 0; k < sys.vectors.cols(); ++k) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double mag = std::norm(sys.vectors(i, k));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    const Complex p = sys.vectors(pivot, k);
    const double mag = std::abs(p);
    if (mag > 0.0) sys.vectors.col(k) *= std::conj(p) / mag;
  }
  return sys;
}

ComplexVector apply(const HermitianOperator& h, const QuantumState& psi) {
  if (h.dim() != psi.dim())
    throw config_error("apply: dimension mismatch (" + std::to_string(h.dim()) +
                       " vs " + std::to_string(psi.dim()) + ")");
  return h.entries * psi.amplitudes;
}

Complex overlap(const QuantumState& phi, const QuantumState& psi) {
  if (phi.dim() != psi.dim())
    throw config_error("overlap: dimension mismatch");
  return phi.amplitudes.dot(psi.amplitudes);
}

}  // namespace pulseqa
