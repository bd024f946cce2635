#include "pulseqa/evolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "pulseqa/kernels.hpp"

namespace pulseqa {

namespace {

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double lam = 0.0;  // window indicator on this segment
};

// Splits [0, t_f] at the (clamped) window edges so the discontinuity never
// falls inside a step.
std::vector<Segment> plan_segments(const AnnealSpec& spec) {
  if (spec.pulse && spec.pulse->active()) {
    const double t1 = std::clamp(spec.pulse->t_start(), 0.0, spec.t_f);
    const double t2 = std::clamp(spec.pulse->t_end(), 0.0, spec.t_f);
    if (t1 < t2) {
      std::vector<Segment> segs;
      if (t1 > 0.0) segs.push_back({0.0, t1, 0.0});
      segs.push_back({t1, t2, 1.0});
      if (t2 < spec.t_f) segs.push_back({t2, spec.t_f, 0.0});
      return segs;
    }
  }
  return {{0.0, spec.t_f, 0.0}};
}

// Dense Hamiltonian s*H_t + c*M + (1-s)*Delta*X from precomputed diagonals.
ComplexMatrix build_h(const AnnealSpec& spec, const std::vector<double>& d,
                      const std::vector<double>& m, double s, double c) {
  const int n = spec.n();
  const int dim = spec.dim();
  const double dx = (1.0 - s) * spec.delta;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int z = 0; z < dim; ++z) {
    h(z, z) = s * d[z] + c * m[z];
    for (int q = 0; q < n; ++q) h(z ^ (1 << q), z) += dx;
  }
  return h;
}

struct TraceRecorder {
  const AnnealSpec* spec = nullptr;
  const std::vector<double>* d = nullptr;
  const std::vector<double>* m = nullptr;
  std::vector<TracePoint> points;

  void record(double t, const ComplexVector& psi) {
    const auto sys =
        hermitian_eig(HermitianOperator{build_h(*spec, *d, *m, t / spec->t_f, 0.0)});
    const Complex o0 = sys.vectors.col(0).dot(psi);
    const Complex o1 = psi.size() > 1 ? Complex(sys.vectors.col(1).dot(psi)) : Complex(0.0);
    points.push_back({t, std::norm(o0), std::norm(o1), psi.norm()});
  }
};

// Nearest step-boundary indices (1..ns) for the requested sample times that
// fall inside (a, b].
std::set<long> boundary_indices(const std::vector<double>& times, double a, double b,
                                double h, long ns) {
  std::set<long> ks;
  for (double t : times) {
    if (t <= a || t > b + 1e-12 * (b - a + 1.0)) continue;
    long k = std::lround((t - a) / h);
    k = std::clamp(k, 1L, ns);
    ks.insert(k);
  }
  return ks;
}

void check_finite(const ComplexVector& psi, double t) {
  if (!psi.allFinite())
    throw numerical_error("integration produced a non-finite state", t);
}

}  // namespace

QuantumState ground_state_initial(const AnnealSpec& spec) {
  spec.validate();
  const int dim = spec.dim();
  ComplexVector amps(dim);
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int z = 0; z < dim; ++z)
    amps[z] = (std::popcount(static_cast<unsigned>(z)) & 1) ? -a : a;
  return QuantumState{std::move(amps), spec.n()};
}

double success_probability(const QuantumState& psi, const AnnealSpec& spec) {
  const std::vector<double> d = target_diagonal(spec.instance);
  if (psi.dim() != static_cast<int>(d.size()))
    throw config_error("success_probability: state dimension mismatch");
  const double emin = *std::min_element(d.begin(), d.end());
  double sp = 0.0;
  for (std::size_t z = 0; z < d.size(); ++z)
    if (d[z] <= emin + kDegeneracyTol) sp += std::norm(psi.amplitudes[static_cast<Eigen::Index>(z)]);
  return sp;
}

EvolutionResult evolve(const AnnealSpec& spec, const EvolveOptions& opt) {
  spec.validate();
  const double tf = spec.t_f;
  const double dt = opt.dt > 0.0 ? opt.dt : default_dt(tf);
  if (!(dt > 0.0) || dt > tf / 100.0)
    throw config_error("dt must satisfy 0 < dt <= t_f/100");
  if (opt.hold_at && !(*opt.hold_at >= 0.0 && *opt.hold_at <= tf))
    throw config_error("hold_at outside [0, t_f]");

  const int dim = spec.dim();
  const std::vector<double> d = target_diagonal(spec.instance);
  const std::vector<double> m = magnetization_diagonal(spec.n());

  ComplexVector psi;
  if (opt.initial_state) {
    if (opt.initial_state->size() != dim)
      throw config_error("initial_state dimension mismatch");
    psi = *opt.initial_state;
  } else {
    psi = ground_state_initial(spec).amplitudes;
  }

  TraceRecorder rec{&spec, &d, &m, {}};
  std::vector<double> sample_times;
  if (opt.trace_samples >= 2) {
    sample_times.resize(opt.trace_samples);
    for (int i = 0; i < opt.trace_samples; ++i)
      sample_times[i] = tf * static_cast<double>(i) / (opt.trace_samples - 1);
    rec.record(0.0, psi);
  }

  const auto segments = plan_segments(spec);
  const double cpulse = (spec.pulse && spec.pulse->active()) ? spec.pulse->amplitude : 0.0;

  // Hold mode freezes the Hamiltonian coefficients at one time.
  const bool hold = opt.hold_at.has_value();
  const double s_hold = hold ? *opt.hold_at / tf : 0.0;
  const double c_hold = hold ? spec.pulse_offset(*opt.hold_at) : 0.0;

  ComplexVector u(dim), rh(dim), unew(dim);

  for (const auto& seg : segments) {
    const long ns = std::max(1L, static_cast<long>(std::ceil((seg.b - seg.a) / dt - 1e-9)));
    const double h = (seg.b - seg.a) / static_cast<double>(ns);
    const auto record_ks = boundary_indices(sample_times, seg.a, seg.b, h, ns);
    const double clam = hold ? c_hold : seg.lam * cpulse;

    if (opt.method == Integrator::reference) {
      for (long k = 0; k < ns; ++k) {
        const double smid = hold ? s_hold : (seg.a + (k + 0.5) * h) / tf;
        const auto sys = hermitian_eig(HermitianOperator{build_h(spec, d, m, smid, clam)});
        ComplexVector coeff = sys.vectors.adjoint() * psi;
        for (int i = 0; i < dim; ++i)
          coeff[i] *= std::polar(1.0, -sys.values[i] * h);
        psi = sys.vectors * coeff;
        if (record_ks.count(k + 1)) rec.record(seg.a + (k + 1) * h, psi);
      }
      check_finite(psi, seg.b);
      continue;
    }

    // Strang split with the diagonal half-phases fused between steps. The
    // per-step midpoint phase advances geometrically (uniform grid, linear
    // ramp), so the half-phase vector is updated by one complex multiply per
    // entry instead of fresh trig calls.
    const double s0 = hold ? s_hold : (seg.a + 0.5 * h) / tf;
    make_phase2(u, d, 0.5 * h * s0, m, 0.5 * h * clam);
    if (!hold) make_phase(rh, d, 0.5 * h * h / tf);

    apply_phase(psi, u);
    for (long k = 0; k < ns; ++k) {
      const double sk = hold ? s_hold : (seg.a + (k + 0.5) * h) / tf;
      apply_transverse_rotation(psi, spec.n(), h * (1.0 - sk) * spec.delta);
      if (k == ns - 1) {
        apply_phase(psi, u);  // closing half step of the segment
      } else if (record_ks.count(k + 1)) {
        apply_phase(psi, u);
        rec.record(seg.a + (k + 1) * h, psi);
        if (!hold) advance_phase(u, rh);
        apply_phase(psi, u);
      } else if (hold) {
        apply_phase_product(psi, u, u);
      } else {
        unew = u;
        advance_phase(unew, rh);
        apply_phase_product(psi, u, unew);
        u.swap(unew);
      }
      if ((k & 0xFFF) == 0xFFF) check_finite(psi, seg.a + (k + 1) * h);
    }
    check_finite(psi, seg.b);
    if (record_ks.count(ns)) rec.record(seg.b, psi);
  }

  EvolutionResult res{QuantumState{std::move(psi), spec.n()}, 0.0, std::move(rec.points)};
  res.sp = success_probability(res.final_state, spec);
  return res;
}

std::vector<SpectrumPoint> spectrum_trace(const AnnealSpec& spec, int samples, int k,
                                          bool include_pulse) {
  spec.validate();
  if (samples < 2) throw config_error("spectrum_trace needs samples >= 2");
  const int dim = spec.dim();
  const int keep = (k <= 0 || k > dim) ? dim : k;
  const std::vector<double> d = target_diagonal(spec.instance);
  const std::vector<double> m = magnetization_diagonal(spec.n());

  std::vector<SpectrumPoint> out(samples);
  ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < samples; ++j) {
    errors.run([&, j] {
      const double t = spec.t_f * static_cast<double>(j) / (samples - 1);
      const double c = include_pulse ? spec.pulse_offset(t) : 0.0;
      const auto sys = hermitian_eig(HermitianOperator{build_h(spec, d, m, t / spec.t_f, c)});
      out[j] = {t, sys.values.head(keep)};
    });
  }
  errors.rethrow_if_any();
  return out;
}

double gap_closed_form(double t, double eps, const AnnealSpec& spec) {
  if (spec.n() != 1) throw config_error("gap_closed_form is single-qubit only");
  if (!(t >= 0.0 && t <= spec.t_f)) throw config_error("t outside [0, t_f]");
  const double s = t / spec.t_f;
  const double dz = s * eps + spec.pulse_offset(t);
  const double dx = (1.0 - s) * spec.delta;
  return 2.0 * std::hypot(dz, dx);
}

namespace {

// Golden-section minimizer on [lo, hi]; f must be unimodal on the bracket.
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iters = 80) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-14 * (hi - lo + 1.0); ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = f1 < f2 ? x1 : x2;
  return {x, std::min(f1, f2)};
}

}  // namespace

GapReport min_gap(const AnnealSpec& spec) {
  spec.validate();
  if (spec.pulse && spec.pulse->active())
    throw config_error("min_gap is defined for the pulse-free schedule");

  const std::vector<double> d = target_diagonal(spec.instance);
  const std::vector<double> m = magnetization_diagonal(spec.n());
  const int dim = spec.dim();

  // dH/ds = H_target - Delta * sum_i sigma_x^i, constant in s.
  ComplexMatrix dhds = ComplexMatrix::Zero(dim, dim);
  for (int z = 0; z < dim; ++z) {
    dhds(z, z) = d[z];
    for (int q = 0; q < spec.n(); ++q) dhds(z ^ (1 << q), z) -= spec.delta;
  }

  auto gap_at = [&](double s) {
    const auto sys = hermitian_eig(HermitianOperator{build_h(spec, d, m, s, 0.0)});
    return sys.values[1] - sys.values[0];
  };
  auto neg_numerator_at = [&](double s) {
    const auto sys = hermitian_eig(HermitianOperator{build_h(spec, d, m, s, 0.0)});
    const Complex me = sys.vectors.col(0).dot(dhds * sys.vectors.col(1));
    return -std::abs(me);
  };

  constexpr int kGrid = 2001;
  int gap_idx = 0, num_idx = 0;
  double gap_best = std::numeric_limits<double>::infinity();
  double num_best = std::numeric_limits<double>::infinity();
  std::vector<double> gaps(kGrid), negnums(kGrid);
  ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < kGrid; ++i) {
    errors.run([&, i] {
      const double s = static_cast<double>(i) / (kGrid - 1);
      gaps[i] = gap_at(s);
      negnums[i] = neg_numerator_at(s);
    });
  }
  errors.rethrow_if_any();
  for (int i = 0; i < kGrid; ++i) {
    if (gaps[i] < gap_best) { gap_best = gaps[i]; gap_idx = i; }
    if (negnums[i] < num_best) { num_best = negnums[i]; num_idx = i; }
  }

  const double ds = 1.0 / (kGrid - 1);
  auto bracket = [&](int idx) {
    return std::pair<double, double>{std::max(0.0, (idx - 1) * ds),
                                     std::min(1.0, (idx + 1) * ds)};
  };
  const auto [glo, ghi] = bracket(gap_idx);
  auto [s_min, e_min] = golden_min(gap_at, glo, ghi);
  if (gap_best < e_min) { e_min = gap_best; s_min = gap_idx * ds; }

  const auto [nlo, nhi] = bracket(num_idx);
  auto [s_num, neg_max] = golden_min(neg_numerator_at, nlo, nhi);
  (void)s_num;
  const double numerator = std::max(-neg_max, -num_best);

  GapReport rep;
  rep.e_min = e_min;
  rep.t_min = s_min * spec.t_f;
  rep.adiabatic_rhs = numerator / (e_min * e_min);
  rep.degenerate = e_min < 1e-12;
  return rep;
}

}  // namespace pulseqa
