#include "pulseqa/transfer.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pulseqa {

namespace {

// 24-point Gauss-Legendre rule on [-1, 1]; nodes found once by Newton
// iteration on the Legendre polynomial.
struct GaussRule {
  static constexpr int kOrder = 24;
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};

  GaussRule() {
    const int n = kOrder;
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double step = p1 / dp;
        xi -= step;
        if (std::abs(step) < 1e-15) break;
      }
      x[n - 1 - i] = xi;
      w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule rule;
  return rule;
}

double half_gap(double t, double eps, double tf, double delta, double c) {
  const double s = t / tf;
  return std::hypot(s * eps + c, (1.0 - s) * delta);
}

// Integral of the half-gap over [a, b] by a composite Gauss-Legendre rule.
double integrate_half_gap(double a, double b, double eps, double tf, double delta,
                          double c) {
  if (b <= a) return 0.0;
  const auto& rule = gauss_rule();
  const int panels = std::max(4, static_cast<int>(std::ceil(64.0 * (b - a) / tf)));
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < GaussRule::kOrder; ++i)
      acc += rule.w[i] * half_gap(mid + 0.5 * h * rule.x[i], eps, tf, delta, c);
    total += 0.5 * h * acc;
  }
  return total;
}

double pulse_amplitude_or_throw(const AnnealSpec& spec) {
  if (!spec.pulse) throw config_error("transfer matrix needs a pulse schedule");
  return spec.pulse->amplitude;
}

}  // namespace

MixingAngles mixing_angles(double t, double eps, const AnnealSpec& spec) {
  if (!(t >= 0.0 && t <= spec.t_f)) throw config_error("t outside [0, t_f]");
  const double C = pulse_amplitude_or_throw(spec);
  const double s = t / spec.t_f;
  const double dx = (1.0 - s) * spec.delta;
  const double z0 = s * eps;
  const double zc = s * eps + C;
  if (dx == 0.0 && z0 == 0.0)
    throw config_error("mixing angle undefined: pulse-free gap closes at t=" +
                       std::to_string(t));
  if (dx == 0.0 && zc == 0.0)
    throw config_error("mixing angle undefined: pulsed gap closes at t=" +
                       std::to_string(t));
  return {std::atan2(dx, z0), std::atan2(dx, zc)};
}

double mixing_probability(double t, double eps, const AnnealSpec& spec) {
  const auto ang = mixing_angles(t, eps, spec);
  const double s = std::sin(0.5 * (ang.thetaC - ang.theta0));
  return s * s;
}

double segment_phase(double t_s, double t_q, double eps, const AnnealSpec& spec,
                     PulseSegment segment) {
  if (!(0.0 <= t_s && t_s <= t_q && t_q <= spec.t_f))
    throw config_error("segment_phase: need 0 <= t_s <= t_q <= t_f");
  const double tol = 1e-9 * (spec.t_f + 1.0);
  const bool active = spec.pulse && spec.pulse->active();
  double c = 0.0;
  if (segment == PulseSegment::inside) {
    if (!active) throw config_error("segment_phase: no active pulse for the inside segment");
    if (t_s < spec.pulse->t_start() - tol || t_q > spec.pulse->t_end() + tol)
      throw config_error("segment_phase: [t_s, t_q] not inside the pulse window");
    c = spec.pulse->amplitude;
  } else if (active) {
    if (segment == PulseSegment::before && t_q > spec.pulse->t_start() + tol)
      throw config_error("segment_phase: segment overlaps the window start");
    if (segment == PulseSegment::after && t_s < spec.pulse->t_end() - tol)
      throw config_error("segment_phase: segment overlaps the window end");
  }
  return integrate_half_gap(t_s, t_q, eps, spec.t_f, spec.delta, c);
}

double tm_success_probability(double eps, const AnnealSpec& spec) {
  if (spec.n() != 1) throw config_error("transfer matrix is single-qubit only");
  if (!spec.pulse || !spec.pulse->active()) return 1.0;
  const double t1 = spec.pulse->t_start();
  const double t2 = spec.pulse->t_end();
  if (t1 < 0.0 || t2 > spec.t_f)
    throw config_error("transfer matrix needs the pulse window inside [0, t_f]");

  const double z1 = segment_phase(0.0, t1, eps, spec, PulseSegment::before);
  const double z2 = segment_phase(t1, t2, eps, spec, PulseSegment::inside);
  const double z3 = segment_phase(t2, spec.t_f, eps, spec, PulseSegment::after);

  const auto a1 = mixing_angles(t1, eps, spec);
  const auto a2 = mixing_angles(t2, eps, spec);
  const double d1 = a1.thetaC - a1.theta0;  // pulse-free basis -> pulsed basis
  const double d2 = a2.theta0 - a2.thetaC;  // back again at the window end

  using V = Eigen::Vector2cd;
  auto phase = [](double z, V& b) {
    b[0] *= std::polar(1.0, -z);
    b[1] *= std::polar(1.0, z);
  };
  auto rotate = [](double dth, V& b) {
    const double ch = std::cos(0.5 * dth);
    const double sh = std::sin(0.5 * dth);
    const Complex b0 = b[0], b1 = b[1];
    b[0] = ch * b0 - sh * b1;
    b[1] = sh * b0 + ch * b1;
  };

  V b(1.0, 0.0);
  phase(z1, b);
  rotate(d1, b);
  phase(z2, b);
  rotate(d2, b);
  phase(z3, b);
  return std::norm(b[0]);
}

double approx_success_probability(double p_s, double zeta2) {
  if (!(p_s >= 0.0 && p_s <= 1.0)) throw config_error("p_s must be in [0, 1]");
  const double s = std::sin(zeta2);
  return 1.0 - 4.0 * p_s * (1.0 - p_s) * s * s;
}

}  // namespace pulseqa
