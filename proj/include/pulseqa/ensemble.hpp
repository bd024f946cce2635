#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pulseqa/evolve.hpp"
#include "pulseqa/model.hpp"

namespace pulseqa {

enum class SamplingStrategy { grid, uniform_random };

struct SampleBounds {
  double tc_lo = 0.0, tc_hi = 0.0;
  double td_lo = 0.0, td_hi = 0.0;
  double c_lo = 0.0, c_hi = 0.0;
};

// The stock sampling box: t_C in [0.1, 0.9] t_f, t_D up to t_f, |C| <= 1.
SampleBounds default_bounds(double t_f);

// Deterministic schedule sequence. grid: the count is factored into per-axis
// point counts as evenly as possible (a 1-point axis sits at the bounds
// midpoint); uniform_random: independent uniform draws, t_D from (td_lo,
// td_hi]. Same inputs give the same sequence.
std::vector<PulseSchedule> sample_schedules(double t_f, SamplingStrategy strategy,
                                            const SampleBounds& bounds, int count,
                                            std::uint64_t seed);

/// A fully materialized sampling plan plus the per-instance averaging rule.
struct SamplingConfig {
  std::string name = "custom";
  std::vector<PulseSchedule> schedules;
  // When set, the per-instance average is taken separately over the C > 0 and
  // C < 0 sub-samplings and the larger mean is kept (the two-sign protocol);
  // otherwise the average runs over the whole sample set.
  bool best_sign_average = false;
};

// Named presets: "fig5" (2706 sign-mirrored random samples over the full
// box), "fig7a" (90-point reduced grid), "fig7b" (60-point reduced grid).
// The reduced grids keep t_C near t_f/2 and |C| < 1 and average per sign.
SamplingConfig sampling_preset(const std::string& name, double t_f, std::uint64_t seed);
SamplingConfig custom_sampling(double t_f, SamplingStrategy strategy,
                               const SampleBounds& bounds, int count, std::uint64_t seed);

struct InstanceResult {
  std::uint64_t instance_seed = 0;
  double p_s0 = 0.0;      // pulse-free success probability
  double p_sp_max = 0.0;  // best sampled success probability
  double p_sp_av = 0.0;   // per-instance average (see SamplingConfig)
  double stddev = 0.0;    // population deviation over all samples
  PulseSchedule best_pulse;      // first arg-max in sampling order
  int improved_count = 0;        // samples with sp > p_s0
  double mean_improved_tc = 0.0; // averages over those samples
  double mean_improved_td = 0.0;
  double mean_improved_c = 0.0;
};

// Runs the pulse-free baseline plus one evolution per schedule and reduces.
InstanceResult optimize_instance(const SpinGlassInstance& inst, double t_f,
                                 const SamplingConfig& sampling, double dt);

struct BinStat {
  double center = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};

struct EnsembleStats {
  std::vector<InstanceResult> results;
  bool fit_valid = false;
  double fit_a = 0.0;  // least squares p_sp_av = A * p_s0 + B
  double fit_b = 0.0;
  bool crossover_valid = false;
  double crossover = 0.0;  // B / (1 - A), where the fit meets y = x
  double frac_av_improved = 0.0;
  double frac_max_improved = 0.0;
  double frac_max_improved_5pct = 0.0;  // p_sp_max > 1.05 * p_s0
  std::vector<BinStat> bins;            // 10 uniform p_s0 bins on [0, 1]
};

// Fit, fractions and bins over already-computed per-instance results.
EnsembleStats reduce_ensemble(std::vector<InstanceResult> results);

// Instance seeds derive from the master seed (derive_seed(master, i)); every
// (instance, schedule) evolution is an independent task, so the outcome is
// bit-identical for any worker count.
EnsembleStats ensemble_run(int n, int instance_count, double t_f,
                           const SamplingConfig& sampling, std::uint64_t master_seed,
                           double dt);

struct ScalingPoint {
  int n = 0;
  double r_sp_max = 0.0;
  double r_sp_av = 0.0;
  double std_max = 0.0;  // instance spread of p_sp_max scaled by mean p_s0
  double std_av = 0.0;
  bool valid = true;     // false when mean p_s0 is zero
};

ScalingPoint relative_sp(int n, const EnsembleStats& stats);

// Serialization shared by the CLI and the tests.
std::string ensemble_csv(const EnsembleStats& stats);
std::string stats_json(const EnsembleStats& stats, const std::string& config_echo_json);
std::string scaling_csv(const std::vector<ScalingPoint>& points);

// Least squares helper exposed for its own tests.
struct LinearFit {
  bool valid = false;
  double a = 0.0;
  double b = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pulseqa
