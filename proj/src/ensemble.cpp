#include "pulseqa/ensemble.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pulseqa/csv.hpp"
#include "pulseqa/rng.hpp"

namespace pulseqa {

SampleBounds default_bounds(double t_f) {
  return {0.1 * t_f, 0.9 * t_f, 0.0, t_f, -1.0, 1.0};
}

namespace {

// Factors `count` into three per-axis sizes with product exactly count,
// keeping the sizes as even as possible (larger counts go to earlier axes).
std::array<int, 3> balanced_factors(int count) {
  std::array<int, 3> best{count, 1, 1};
  long best_score = std::numeric_limits<long>::max();
  for (int a = 1; a <= count; ++a) {
    if (count % a) continue;
    const int rest = count / a;
    for (int b = 1; b <= rest; ++b) {
      if (rest % b) continue;
      const int c = rest / b;
      const int hi = std::max({a, b, c});
      const int lo = std::min({a, b, c});
      const long score = static_cast<long>(hi - lo) * 1000 + hi;
      // prefer tc >= td >= c ordering among equal spreads
      if (score < best_score || (score == best_score && a >= b && b >= c)) {
        best_score = score;
        best = {a, b, c};
      }
    }
  }
  std::sort(best.begin(), best.end(), std::greater<int>());
  return best;
}

std::vector<double> axis_points(double lo, double hi, int k) {
  std::vector<double> pts(k);
  if (k == 1) {
    pts[0] = 0.5 * (lo + hi);
    return pts;
  }
  for (int i = 0; i < k; ++i)
    pts[i] = lo + (hi - lo) * static_cast<double>(i) / (k - 1);
  return pts;
}

double population_std(const std::vector<double>& v, double mean) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

// Reduces one instance's baseline + per-schedule results. `row` points to
// p_s0 followed by S sample values in sampling order.
InstanceResult reduce_instance(std::uint64_t seed, const double* row,
                               const SamplingConfig& sampling) {
  const int S = static_cast<int>(sampling.schedules.size());
  InstanceResult r;
  r.instance_seed = seed;
  r.p_s0 = row[0];
  const std::vector<double> samples(row + 1, row + 1 + S);

  int arg = 0;
  for (int k = 1; k < S; ++k)
    if (samples[k] > samples[arg]) arg = k;
  r.p_sp_max = samples[arg];
  r.best_pulse = sampling.schedules[arg];

  if (sampling.best_sign_average) {
    std::vector<double> pos, neg;
    for (int k = 0; k < S; ++k)
      (sampling.schedules[k].amplitude >= 0.0 ? pos : neg).push_back(samples[k]);
    r.p_sp_av = (pos.empty() || neg.empty()) ? mean_of(samples)
                                             : std::max(mean_of(pos), mean_of(neg));
  } else {
    r.p_sp_av = mean_of(samples);
  }
  r.stddev = population_std(samples, mean_of(samples));

  double stc = 0.0, std_ = 0.0, sc = 0.0;
  for (int k = 0; k < S; ++k) {
    if (samples[k] > r.p_s0) {
      ++r.improved_count;
      stc += sampling.schedules[k].t_c;
      std_ += sampling.schedules[k].t_d;
      sc += sampling.schedules[k].amplitude;
    }
  }
  if (r.improved_count > 0) {
    r.mean_improved_tc = stc / r.improved_count;
    r.mean_improved_td = std_ / r.improved_count;
    r.mean_improved_c = sc / r.improved_count;
  }
  return r;
}

}  // namespace

std::vector<PulseSchedule> sample_schedules(double t_f, SamplingStrategy strategy,
                                            const SampleBounds& bounds, int count,
                                            std::uint64_t seed) {
  if (count < 1) throw config_error("sample_schedules: count must be >= 1");
  if (bounds.tc_lo > bounds.tc_hi || bounds.td_lo > bounds.td_hi ||
      bounds.c_lo > bounds.c_hi || bounds.td_hi < 0.0)
    throw config_error("sample_schedules: empty bounds");

  std::vector<PulseSchedule> out;
  out.reserve(count);
  if (strategy == SamplingStrategy::grid) {
    const auto k = balanced_factors(count);
    const auto tcs = axis_points(bounds.tc_lo, bounds.tc_hi, k[0]);
    const auto tds = axis_points(bounds.td_lo, bounds.td_hi, k[1]);
    const auto cs = axis_points(bounds.c_lo, bounds.c_hi, k[2]);
    for (double tc : tcs)
      for (double td : tds)
        for (double c : cs) out.push_back({tc, td, c});
  } else {
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) {
      PulseSchedule p;
      p.t_c = rng.next_in(bounds.tc_lo, bounds.tc_hi);
      // (lo, hi]: a duration of exactly the lower edge is excluded
      p.t_d = bounds.td_hi - (bounds.td_hi - bounds.td_lo) *
                                 static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
      p.amplitude = rng.next_in(bounds.c_lo, bounds.c_hi);
      out.push_back(p);
    }
  }
  (void)t_f;
  return out;
}

SamplingConfig custom_sampling(double t_f, SamplingStrategy strategy,
                               const SampleBounds& bounds, int count, std::uint64_t seed) {
  SamplingConfig cfg;
  cfg.name = "custom";
  cfg.schedules = sample_schedules(t_f, strategy, bounds, count, seed);
  return cfg;
}

SamplingConfig sampling_preset(const std::string& name, double t_f, std::uint64_t seed) {
  SamplingConfig cfg;
  cfg.name = name;
  if (name == "fig5") {
    // 1353 random draws with C in (0, 1], each mirrored to -C: 2706 samples.
    SampleBounds b = default_bounds(t_f);
    b.c_lo = 0.0;
    b.c_hi = 1.0;
    auto half = sample_schedules(t_f, SamplingStrategy::uniform_random, b, 1353, seed);
    for (auto& p : half)
      if (p.amplitude == 0.0) p.amplitude = 0.5;  // keep the pulse real
    cfg.schedules = half;
    for (const auto& p : half) cfg.schedules.push_back({p.t_c, p.t_d, -p.amplitude});
    cfg.best_sign_average = false;
  } else if (name == "fig7a" || name == "fig7b") {
    // Reduced boxes: pulse center near t_f/2, |C| below the transverse unit,
    // mirrored over the sign of C; per-sign averaging.
    const auto tcs = axis_points(0.3 * t_f, 0.7 * t_f, 5);
    const auto tds = axis_points(0.3 * t_f, 0.8 * t_f, 3);
    const std::vector<double> mags =
        name == "fig7a" ? std::vector<double>{0.25, 0.5, 0.75} : std::vector<double>{0.3, 0.7};
    for (double sign : {1.0, -1.0})
      for (double tc : tcs)
        for (double td : tds)
          for (double mag : mags) cfg.schedules.push_back({tc, td, sign * mag});
    cfg.best_sign_average = true;
  } else {
    throw config_error("unknown sampling preset '" + name +
                       "' (expected fig5, fig7a or fig7b)");
  }
  return cfg;
}

InstanceResult optimize_instance(const SpinGlassInstance& inst, double t_f,
                                 const SamplingConfig& sampling, double dt) {
  if (sampling.schedules.empty()) throw config_error("optimize_instance: no schedules");

  AnnealSpec base;
  base.instance = inst;
  base.t_f = t_f;

  EvolveOptions opt;
  opt.dt = dt;

  const int S = static_cast<int>(sampling.schedules.size());
  std::vector<double> sp(S + 1);
  ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k <= S; ++k) {
    errors.run([&, k] {
      AnnealSpec spec = base;
      if (k > 0) spec.pulse = sampling.schedules[k - 1];
      sp[k] = evolve(spec, opt).sp;
    });
  }
  errors.rethrow_if_any();
  return reduce_instance(inst.seed, sp.data(), sampling);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  if (x.size() != y.size() || x.size() < 2) return fit;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-14 * n * (sxx + 1.0)) return fit;  // degenerate x spread
  fit.a = (n * sxy - sx * sy) / denom;
  fit.b = (sy - fit.a * sx) / n;
  fit.valid = true;
  return fit;
}

EnsembleStats ensemble_run(int n, int instance_count, double t_f,
                           const SamplingConfig& sampling, std::uint64_t master_seed,
                           double dt) {
  if (instance_count < 2) throw config_error("ensemble_run: need at least 2 instances");
  if (sampling.schedules.empty()) throw config_error("ensemble_run: no schedules");

  std::vector<SpinGlassInstance> instances(instance_count);
  for (int i = 0; i < instance_count; ++i)
    instances[i] = generate_instance(n, derive_seed(master_seed, static_cast<std::uint64_t>(i)));

  const int S = static_cast<int>(sampling.schedules.size());
  const long tasks = static_cast<long>(instance_count) * (S + 1);
  std::vector<double> sp_table(tasks);

  EvolveOptions opt;
  opt.dt = dt;

  // One flat task per (instance, schedule) pair; slot writes are disjoint and
  // the reduction below runs serially in index order, so the result does not
  // depend on the schedule of the workers.
  ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
  for (long task = 0; task < tasks; ++task) {
    errors.run([&, task] {
      const int i = static_cast<int>(task / (S + 1));
      const int k = static_cast<int>(task % (S + 1));
      AnnealSpec spec;
      spec.instance = instances[i];
      spec.t_f = t_f;
      if (k > 0) spec.pulse = sampling.schedules[k - 1];
      sp_table[task] = evolve(spec, opt).sp;
    });
  }
  errors.rethrow_if_any();

  std::vector<InstanceResult> results(instance_count);
  for (int i = 0; i < instance_count; ++i)
    results[i] = reduce_instance(instances[i].seed,
                                 sp_table.data() + static_cast<long>(i) * (S + 1), sampling);
  return reduce_ensemble(std::move(results));
}

EnsembleStats reduce_ensemble(std::vector<InstanceResult> results) {
  EnsembleStats stats;
  stats.results = std::move(results);

  std::vector<double> xs, ys;
  int n_av = 0, n_max = 0, n_max5 = 0;
  for (const auto& r : stats.results) {
    xs.push_back(r.p_s0);
    ys.push_back(r.p_sp_av);
    if (r.p_sp_av > r.p_s0) ++n_av;
    if (r.p_sp_max > r.p_s0) ++n_max;
    if (r.p_sp_max > 1.05 * r.p_s0) ++n_max5;
  }
  const double m = static_cast<double>(std::max<std::size_t>(1, stats.results.size()));
  stats.frac_av_improved = n_av / m;
  stats.frac_max_improved = n_max / m;
  stats.frac_max_improved_5pct = n_max5 / m;

  const LinearFit fit = linear_fit(xs, ys);
  stats.fit_valid = fit.valid;
  stats.fit_a = fit.a;
  stats.fit_b = fit.b;
  if (fit.valid && std::abs(1.0 - fit.a) > 1e-12) {
    stats.crossover = fit.b / (1.0 - fit.a);
    stats.crossover_valid = true;
  }

  constexpr int kBins = 10;
  for (int b = 0; b < kBins; ++b) {
    std::vector<double> members;
    for (const auto& r : stats.results) {
      const int idx = std::min(kBins - 1, static_cast<int>(r.p_s0 * kBins));
      if (idx == b) members.push_back(r.p_sp_av);
    }
    if (members.empty()) continue;
    BinStat bs;
    bs.center = (b + 0.5) / kBins;
    bs.mean = mean_of(members);
    bs.stddev = population_std(members, bs.mean);
    bs.count = static_cast<int>(members.size());
    stats.bins.push_back(bs);
  }
  return stats;
}

ScalingPoint relative_sp(int n, const EnsembleStats& stats) {
  ScalingPoint pt;
  pt.n = n;
  std::vector<double> s0s, maxs, avs;
  for (const auto& r : stats.results) {
    s0s.push_back(r.p_s0);
    maxs.push_back(r.p_sp_max);
    avs.push_back(r.p_sp_av);
  }
  const double p0 = mean_of(s0s);
  if (p0 <= 0.0) {
    pt.valid = false;
    return pt;
  }
  const double pmax = mean_of(maxs);
  const double pav = mean_of(avs);
  pt.r_sp_max = (pmax - p0) / p0;
  pt.r_sp_av = (pav - p0) / p0;
  pt.std_max = population_std(maxs, pmax) / p0;
  pt.std_av = population_std(avs, pav) / p0;
  return pt;
}

std::string ensemble_csv(const EnsembleStats& stats) {
  std::ostringstream out;
  out << "instance_seed,p_s0,p_sp_max,p_sp_av,std,best_tc,best_td,best_c\n";
  for (const auto& r : stats.results) {
    out << r.instance_seed << ',' << format_number(r.p_s0) << ','
        << format_number(r.p_sp_max) << ',' << format_number(r.p_sp_av) << ','
        << format_number(r.stddev) << ',' << format_number(r.best_pulse.t_c) << ','
        << format_number(r.best_pulse.t_d) << ',' << format_number(r.best_pulse.amplitude)
        << '\n';
  }
  return out.str();
}

std::string stats_json(const EnsembleStats& stats, const std::string& config_echo_json) {
  nlohmann::ordered_json j;
  if (stats.fit_valid) {
    j["fit_a"] = stats.fit_a;
    j["fit_b"] = stats.fit_b;
  } else {
    j["fit_a"] = nullptr;
    j["fit_b"] = nullptr;
  }
  if (stats.crossover_valid)
    j["crossover"] = stats.crossover;
  else
    j["crossover"] = nullptr;
  j["frac_av_improved"] = stats.frac_av_improved;
  j["frac_max_improved"] = stats.frac_max_improved;
  j["frac_max_improved_5pct"] = stats.frac_max_improved_5pct;
  auto bins = nlohmann::ordered_json::array();
  for (const auto& b : stats.bins)
    bins.push_back(nlohmann::ordered_json::array({b.center, b.mean, b.stddev}));
  j["bins"] = bins;
  if (!config_echo_json.empty()) j["config"] = nlohmann::ordered_json::parse(config_echo_json);
  return j.dump(2) + "\n";
}

std::string scaling_csv(const std::vector<ScalingPoint>& points) {
  std::ostringstream out;
  out << "n,r_sp_max,r_sp_av,std_max,std_av\n";
  for (const auto& p : points)
    out << p.n << ',' << format_number(p.r_sp_max) << ',' << format_number(p.r_sp_av)
        << ',' << format_number(p.std_max) << ',' << format_number(p.std_av) << '\n';
  return out.str();
}

}  // namespace pulseqa
