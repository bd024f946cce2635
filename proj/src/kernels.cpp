#include "pulseqa/kernels.hpp"

#include <cmath>

namespace pulseqa {

void apply_phase(ComplexVector& psi, const ComplexVector& phase) {
  const Eigen::Index dim = psi.size();
  Complex* p = psi.data();
  const Complex* f = phase.data();
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
  for (Eigen::Index z = 0; z < dim; ++z) p[z] *= f[z];
}

void apply_phase_product(ComplexVector& psi, const ComplexVector& a, const ComplexVector& b) {
  const Eigen::Index dim = psi.size();
  Complex* p = psi.data();
  const Complex* fa = a.data();
  const Complex* fb = b.data();
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
  for (Eigen::Index z = 0; z < dim; ++z) p[z] *= fa[z] * fb[z];
}

void make_phase(ComplexVector& phase, const std::vector<double>& diag, double scale) {
  const Eigen::Index dim = phase.size();
  Complex* f = phase.data();
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
  for (Eigen::Index z = 0; z < dim; ++z)
    f[z] = std::polar(1.0, -scale * diag[static_cast<std::size_t>(z)]);
}

void make_phase2(ComplexVector& phase, const std::vector<double>& a, double sa,
                 const std::vector<double>& b, double sb) {
  const Eigen::Index dim = phase.size();
  Complex* f = phase.data();
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
  for (Eigen::Index z = 0; z < dim; ++z) {
    const auto i = static_cast<std::size_t>(z);
    f[z] = std::polar(1.0, -(sa * a[i] + sb * b[i]));
  }
}

void advance_phase(ComplexVector& cur, const ComplexVector& step) {
  const Eigen::Index dim = cur.size();
  Complex* c = cur.data();
  const Complex* s = step.data();
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
  for (Eigen::Index z = 0; z < dim; ++z) c[z] *= s[z];
}

void apply_transverse_rotation(ComplexVector& psi, int n, double theta) {
  const Eigen::Index dim = psi.size();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex mis(0.0, -s);  // -i sin(theta)
  Complex* p = psi.data();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    const Eigen::Index stride = bit << 1;
#pragma omp parallel for schedule(static) if (dim >= kOmpMinDim)
    for (Eigen::Index base = 0; base < dim; base += stride) {
      for (Eigen::Index off = 0; off < bit; ++off) {
        const Eigen::Index z0 = base + off;
        const Eigen::Index z1 = z0 + bit;
        const Complex u = p[z0];
        const Complex v = p[z1];
        p[z0] = c * u + mis * v;
        p[z1] = mis * u + c * v;
      }
    }
  }
}

}  // namespace pulseqa
