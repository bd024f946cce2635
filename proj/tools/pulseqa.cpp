// pulseqa: pulsed quantum annealing simulator.
//
// Subcommands: single-sweep, instance, ensemble, scaling, tm-compare.
// All times are in hbar/Delta, all energies in units of the transverse
// amplitude Delta. Exit codes: 0 success, 2 bad configuration, 3 numerical
// failure.

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pulseqa/csv.hpp"
#include "pulseqa/ensemble.hpp"
#include "pulseqa/evolve.hpp"
#include "pulseqa/rng.hpp"
#include "pulseqa/transfer.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pulseqa;

// Adapter so --config accepts a JSON file; flags given on the command line
// still win.
class JsonConfig : public CLI::Config {
public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::FileError(std::string("config file is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> out;
    std::function<void(const nlohmann::json&, std::vector<std::string>)> walk =
        [&](const nlohmann::json& obj, std::vector<std::string> parents) {
          for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
              auto deeper = parents;
              deeper.push_back(key);
              walk(value, deeper);
            } else {
              CLI::ConfigItem item;
              item.name = key;
              item.parents = parents;
              if (value.is_array()) {
                for (const auto& e : value)
                  item.inputs.push_back(e.is_string() ? e.get<std::string>() : e.dump());
              } else {
                item.inputs.push_back(value.is_string() ? value.get<std::string>()
                                                        : value.dump());
              }
              out.push_back(std::move(item));
            }
          }
        };
    walk(j, {});
    return out;
  }
};

void apply_thread_count(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("PULSEQA_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads > 0) {
    omp_set_dynamic(0);
    omp_set_num_threads(threads);
  }
}

struct SweepArgs {
  double eps = 1.0;
  double tf = 10.0;
  std::string axis = "C";
  double lo = 0.0, hi = 1.0;
  int steps = 100;
  double tc = 0.0, td = 0.0, c = 0.0;
  double c_lo = 0.0, c_hi = 2.0;
  int c_steps = 100;
  double td_lo = 0.0, td_hi = 0.0;  // 0,0 = (tf/steps, tf)
  int td_steps = 100;
  double dt = 0.0;
  int threads = 0;
  std::string out;
};

// One row of the numeric/transfer-matrix/approximate comparison.
struct SweepRow {
  double param = 0.0;
  double sp_num = 0.0;
  double sp_tm = 0.0;
  double sp_appr = 0.0;
};

std::vector<SweepRow> run_comparison_sweep(const SweepArgs& a) {
  const bool axis_c = a.axis == "C";
  std::vector<SweepRow> rows(a.steps);
  ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < a.steps; ++i) {
    errors.run([&, i] {
      const double v = a.steps == 1
                           ? 0.5 * (a.lo + a.hi)
                           : a.lo + (a.hi - a.lo) * static_cast<double>(i) / (a.steps - 1);
      PulseSchedule pulse =
          axis_c ? PulseSchedule{a.tc, a.td, v} : PulseSchedule{a.tc, v, a.c};
      AnnealSpec spec = single_qubit_spec(a.eps, a.tf, pulse);
      EvolveOptions opt;
      opt.dt = a.dt;
      SweepRow row;
      row.param = v;
      row.sp_num = evolve(spec, opt).sp;
      if (!pulse.active()) {
        row.sp_tm = 1.0;
        row.sp_appr = 1.0;
      } else {
        row.sp_tm = tm_success_probability(a.eps, spec);
        const double t1 = std::max(0.0, pulse.t_start());
        const double t2 = std::min(a.tf, pulse.t_end());
        const double ps = mixing_probability(t1, a.eps, spec);
        const double z2 = segment_phase(t1, t2, a.eps, spec, PulseSegment::inside);
        row.sp_appr = approx_success_probability(ps, z2);
      }
      rows[i] = row;
    });
  }
  errors.rethrow_if_any();
  return rows;
}

int cmd_single_sweep(const SweepArgs& a) {
  apply_thread_count(a.threads);
  if (a.axis == "contour") {
    const double td_lo = a.td_lo > 0.0 ? a.td_lo : a.tf / a.td_steps;
    const double td_hi = a.td_hi > 0.0 ? a.td_hi : a.tf;
    std::vector<double> grid(static_cast<std::size_t>(a.c_steps) * a.td_steps);
    ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int ic = 0; ic < a.c_steps; ++ic) {
      for (int it = 0; it < a.td_steps; ++it) {
        errors.run([&, ic, it] {
          const double c = a.c_steps == 1
                               ? a.c_lo
                               : a.c_lo + (a.c_hi - a.c_lo) * ic / (a.c_steps - 1.0);
          const double td =
              a.td_steps == 1 ? td_lo : td_lo + (td_hi - td_lo) * it / (a.td_steps - 1.0);
          AnnealSpec spec = single_qubit_spec(a.eps, a.tf, PulseSchedule{a.tc, td, c});
          EvolveOptions opt;
          opt.dt = a.dt;
          grid[static_cast<std::size_t>(ic) * a.td_steps + it] = evolve(spec, opt).sp;
        });
      }
    }
    errors.rethrow_if_any();
    CsvWriter csv(a.out, {"c", "td", "sp_num"});
    for (int ic = 0; ic < a.c_steps; ++ic)
      for (int it = 0; it < a.td_steps; ++it) {
        const double c = a.c_steps == 1 ? a.c_lo
                                        : a.c_lo + (a.c_hi - a.c_lo) * ic / (a.c_steps - 1.0);
        const double td =
            a.td_steps == 1 ? td_lo : td_lo + (td_hi - td_lo) * it / (a.td_steps - 1.0);
        csv.row({c, td, grid[static_cast<std::size_t>(ic) * a.td_steps + it]});
      }
    csv.close();
    return 0;
  }

  const auto rows = run_comparison_sweep(a);
  CsvWriter csv(a.out, {"sweep_param", "sp_num", "sp_tm", "sp_appr"});
  for (const auto& r : rows) csv.row({r.param, r.sp_num, r.sp_tm, r.sp_appr});
  csv.close();
  return 0;
}

int cmd_tm_compare(const SweepArgs& a) {
  apply_thread_count(a.threads);
  const auto rows = run_comparison_sweep(a);
  CsvWriter csv(a.out, {"sweep_param", "sp_num", "sp_tm", "sp_appr"});
  double max_dev = 0.0, at = 0.0;
  for (const auto& r : rows) {
    csv.row({r.param, r.sp_num, r.sp_tm, r.sp_appr});
    if (std::abs(r.sp_tm - r.sp_num) > max_dev) {
      max_dev = std::abs(r.sp_tm - r.sp_num);
      at = r.param;
    }
  }
  csv.close();
  std::cout << "points: " << rows.size() << "\n"
            << "max |sp_tm - sp_num|: " << format_number(max_dev) << " at "
            << (a.axis == "C" ? "C=" : "td=") << format_number(at) << "\n";
  return 0;
}

struct InstanceArgs {
  std::string file;
  int n = 0;
  std::uint64_t seed = 1;
  double tf = 10.0;
  double tc = 0.0, td = 0.0, c = 0.0;
  std::string preset;
  double dt = 0.0;
  bool trace = false;
  int trace_samples = 201;
  int spectrum_samples = 201;
  int spectrum_k = 3;
  bool gap = false;
  bool save_instance_file = false;
  int threads = 0;
  std::string out;
};

int cmd_instance(const InstanceArgs& a) {
  apply_thread_count(a.threads);
  SpinGlassInstance inst;
  if (!a.file.empty())
    inst = load_instance(a.file);
  else if (a.n >= 1)
    inst = generate_instance(a.n, a.seed);
  else
    throw config_error("need either --file or --n/--seed");

  AnnealSpec base;
  base.instance = inst;
  base.t_f = a.tf;

  EvolveOptions opt;
  opt.dt = a.dt;
  opt.trace_samples = a.trace ? a.trace_samples : 0;

  ordered_json summary;
  summary["n"] = inst.n;
  summary["instance_seed"] = inst.seed;
  summary["t_f"] = a.tf;
  summary["dt"] = opt.dt > 0.0 ? opt.dt : default_dt(a.tf);

  const auto conventional = evolve(base, opt);
  summary["p_s0"] = conventional.sp;

  auto write_trace = [&](const std::string& path, const std::vector<TracePoint>& tr) {
    CsvWriter csv(path, {"t", "P0", "P1", "norm"});
    for (const auto& p : tr) csv.row({p.t, p.p0, p.p1, p.norm});
    csv.close();
  };
  auto write_spectrum = [&](const std::string& path, const AnnealSpec& spec,
                            bool include_pulse) {
    const auto pts = spectrum_trace(spec, a.spectrum_samples, a.spectrum_k, include_pulse);
    std::vector<std::string> header{"t"};
    for (int k = 0; k < pts.front().energies.size(); ++k)
      header.push_back("E" + std::to_string(k));
    CsvWriter csv(path, header);
    for (const auto& p : pts) {
      std::vector<double> row{p.t};
      for (int k = 0; k < p.energies.size(); ++k) row.push_back(p.energies[k]);
      csv.row(row);
    }
    csv.close();
  };

  std::optional<PulseSchedule> pulse;
  if (a.td > 0.0 && a.c != 0.0) pulse = PulseSchedule{a.tc, a.td, a.c};

  if (!a.preset.empty()) {
    const auto sampling = sampling_preset(a.preset, a.tf, derive_seed(a.seed, 0x5EEDu));
    const auto result =
        optimize_instance(inst, a.tf, sampling, opt.dt > 0.0 ? opt.dt : default_dt(a.tf));
    summary["sampling"] = {{"preset", a.preset},
                           {"samples", sampling.schedules.size()},
                           {"best_sign_average", sampling.best_sign_average}};
    summary["p_sp_max"] = result.p_sp_max;
    summary["p_sp_av"] = result.p_sp_av;
    summary["std"] = result.stddev;
    summary["best_pulse"] = {{"tc", result.best_pulse.t_c},
                             {"td", result.best_pulse.t_d},
                             {"c", result.best_pulse.amplitude}};
    summary["improved_fraction"] =
        static_cast<double>(result.improved_count) / sampling.schedules.size();
    summary["mean_improved"] = {{"tc", result.mean_improved_tc},
                                {"td", result.mean_improved_td},
                                {"c", result.mean_improved_c}};
    if (!pulse) pulse = result.best_pulse;
  }

  if (pulse) {
    AnnealSpec pulsed = base;
    pulsed.pulse = pulse;
    const auto run = evolve(pulsed, opt);
    summary["pulse"] = {{"tc", pulse->t_c}, {"td", pulse->t_d}, {"c", pulse->amplitude}};
    summary["p_sp"] = run.sp;
    if (a.trace) {
      write_trace(a.out + "_trace_pulsed.csv", run.trace);
      write_spectrum(a.out + "_spectrum_pulsed.csv", pulsed, true);
    }
  }
  if (a.trace) {
    write_trace(a.out + "_trace_conventional.csv", conventional.trace);
    write_spectrum(a.out + "_spectrum.csv", base, false);
  }
  if (a.gap) {
    const auto rep = min_gap(base);
    summary["gap"] = {{"e_min", rep.e_min},
                      {"t_min", rep.t_min},
                      {"adiabatic_rhs", rep.adiabatic_rhs},
                      {"degenerate", rep.degenerate}};
  }
  if (a.save_instance_file) save_instance(inst, a.out + "_instance.json");
  write_text_file(a.out + "_summary.json", summary.dump(2) + "\n");
  return 0;
}

struct EnsembleArgs {
  int n = 5;
  int count = 0;
  double tf = 10.0;
  std::string preset;
  std::string strategy = "grid";
  int samples = 0;
  double tc_min = -1.0, tc_max = -1.0, td_min = -1.0, td_max = -1.0;
  double c_min = -10.0, c_max = -10.0;
  std::uint64_t seed = 1;
  double dt = 0.0;
  int threads = 0;
  std::string out;
};

SamplingConfig build_sampling(const EnsembleArgs& a) {
  if (!a.preset.empty()) return sampling_preset(a.preset, a.tf, derive_seed(a.seed, 0x5EEDu));
  if (a.samples < 1) throw config_error("custom sampling needs --samples >= 1");
  SampleBounds b = default_bounds(a.tf);
  if (a.tc_min >= 0.0) b.tc_lo = a.tc_min;
  if (a.tc_max >= 0.0) b.tc_hi = a.tc_max;
  if (a.td_min >= 0.0) b.td_lo = a.td_min;
  if (a.td_max >= 0.0) b.td_hi = a.td_max;
  if (a.c_min > -10.0) b.c_lo = a.c_min;
  if (a.c_max > -10.0) b.c_hi = a.c_max;
  const auto strategy =
      a.strategy == "random" ? SamplingStrategy::uniform_random : SamplingStrategy::grid;
  return custom_sampling(a.tf, strategy, b, a.samples, derive_seed(a.seed, 0x5EEDu));
}

ordered_json config_echo(const EnsembleArgs& a, const SamplingConfig& sampling) {
  ordered_json cfg;
  cfg["n"] = a.n;
  cfg["count"] = a.count;
  cfg["t_f"] = a.tf;
  cfg["sampling"] = sampling.name;
  cfg["samples"] = sampling.schedules.size();
  cfg["best_sign_average"] = sampling.best_sign_average;
  cfg["master_seed"] = a.seed;
  cfg["dt"] = a.dt > 0.0 ? a.dt : default_dt(a.tf);
  return cfg;
}

// Runs instance by instance so a failure can flush what is already done next
// to a manifest for resumption. The reduction is shared with ensemble_run, so
// a complete chunked run is bit-identical to the library one-shot path.
EnsembleStats run_ensemble_chunked(const EnsembleArgs& a, const SamplingConfig& sampling) {
  std::vector<InstanceResult> done;
  const double dt = a.dt > 0.0 ? a.dt : default_dt(a.tf);
  try {
    for (int i = 0; i < a.count; ++i) {
      const auto inst =
          generate_instance(a.n, derive_seed(a.seed, static_cast<std::uint64_t>(i)));
      done.push_back(optimize_instance(inst, a.tf, sampling, dt));
    }
  } catch (const std::exception& e) {
    EnsembleStats partial;
    partial.results = done;
    write_text_file(a.out + ".partial.csv", ensemble_csv(partial));
    ordered_json manifest;
    manifest["completed_instances"] = done.size();
    manifest["total_instances"] = a.count;
    manifest["next_instance_index"] = done.size();
    manifest["error"] = e.what();
    manifest["config"] = config_echo(a, sampling);
    write_text_file(a.out + ".manifest.json", manifest.dump(2) + "\n");
    throw;
  }
  return reduce_ensemble(std::move(done));
}

int cmd_ensemble(const EnsembleArgs& a) {
  apply_thread_count(a.threads);
  if (a.count < 2) throw config_error("--count must be >= 2");
  const auto sampling = build_sampling(a);
  const EnsembleStats stats = run_ensemble_chunked(a, sampling);
  write_text_file(a.out + ".csv", ensemble_csv(stats));
  write_text_file(a.out + "_stats.json",
                  stats_json(stats, config_echo(a, sampling).dump()));
  return 0;
}

struct ScalingArgs {
  int n_min = 3;
  int n_max = 7;
  int count = 50;
  double tf = 5.0;
  std::string preset = "fig7a";
  std::uint64_t seed = 1;
  double dt = 0.0;
  int threads = 0;
  std::string out;
};

int cmd_scaling(const ScalingArgs& a) {
  apply_thread_count(a.threads);
  if (a.n_min < 1 || a.n_max > 12 || a.n_min > a.n_max)
    throw config_error("qubit range must satisfy 1 <= n_min <= n_max <= 12");
  const double dt = a.dt > 0.0 ? a.dt : default_dt(a.tf);
  std::vector<ScalingPoint> points;
  for (int n = a.n_min; n <= a.n_max; ++n) {
    const auto sampling = sampling_preset(a.preset, a.tf, derive_seed(a.seed, 0x5EEDu));
    const auto stats = ensemble_run(n, a.count, a.tf, sampling, derive_seed(a.seed, n), dt);
    points.push_back(relative_sp(n, stats));
  }
  write_text_file(a.out, scaling_csv(points));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulsed quantum annealing simulator"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with default values for any flag");
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* ss = app.add_subcommand("single-sweep",
                                "Single-qubit success probability sweeps (numeric, "
                                "transfer-matrix and approximate)");
  ss->add_option("--eps", sweep.eps, "energy bias of the qubit [Delta]")->required();
  ss->add_option("--tf", sweep.tf, "annealing time [hbar/Delta]")->required();
  ss->add_option("--axis", sweep.axis, "sweep axis: C, td or contour")
      ->check(CLI::IsMember({"C", "td", "contour"}))
      ->required();
  ss->add_option("--min", sweep.lo, "sweep lower bound");
  ss->add_option("--max", sweep.hi, "sweep upper bound");
  ss->add_option("--steps", sweep.steps, "number of sweep points")
      ->check(CLI::PositiveNumber);
  ss->add_option("--tc", sweep.tc, "pulse center [hbar/Delta]");
  ss->add_option("--td", sweep.td, "pulse duration [hbar/Delta] (fixed axes)");
  ss->add_option("--c", sweep.c, "pulse amplitude [Delta] (fixed axes)");
  ss->add_option("--c-min", sweep.c_lo, "contour: smallest C [Delta]");
  ss->add_option("--c-max", sweep.c_hi, "contour: largest C [Delta]");
  ss->add_option("--c-steps", sweep.c_steps, "contour: C axis points");
  ss->add_option("--td-min", sweep.td_lo, "contour: smallest t_D [hbar/Delta]");
  ss->add_option("--td-max", sweep.td_hi, "contour: largest t_D [hbar/Delta]");
  ss->add_option("--td-steps", sweep.td_steps, "contour: t_D axis points");
  ss->add_option("--dt", sweep.dt, "integration step [hbar/Delta], 0 = t_f/20000");
  ss->add_option("--threads", sweep.threads,
                 "worker threads (0 = PULSEQA_THREADS or all cores)");
  ss->add_option("--out", sweep.out, "output CSV path")->required();

  SweepArgs tmc;
  auto* tc = app.add_subcommand("tm-compare",
                                "Transfer matrix vs numeric success probability table");
  tc->add_option("--eps", tmc.eps, "energy bias of the qubit [Delta]")->required();
  tc->add_option("--tf", tmc.tf, "annealing time [hbar/Delta]")->required();
  tc->add_option("--axis", tmc.axis, "sweep axis: C or td")
      ->check(CLI::IsMember({"C", "td"}));
  tc->add_option("--min", tmc.lo, "sweep lower bound");
  tc->add_option("--max", tmc.hi, "sweep upper bound");
  tc->add_option("--steps", tmc.steps, "number of sweep points")->check(CLI::PositiveNumber);
  tc->add_option("--tc", tmc.tc, "pulse center [hbar/Delta]");
  tc->add_option("--td", tmc.td, "pulse duration [hbar/Delta] (C axis)");
  tc->add_option("--c", tmc.c, "pulse amplitude [Delta] (td axis)");
  tc->add_option("--dt", tmc.dt, "integration step, 0 = t_f/20000");
  tc->add_option("--threads", tmc.threads, "worker threads");
  tc->add_option("--out", tmc.out, "output CSV path")->required();

  InstanceArgs inst;
  auto* ic = app.add_subcommand("instance",
                                "Spectra, overlap traces and optimization for one instance");
  ic->add_option("--file", inst.file, "instance JSON file");
  ic->add_option("--n", inst.n, "qubit count for a generated instance")
      ->check(CLI::Range(1, 12));
  ic->add_option("--seed", inst.seed, "instance seed");
  ic->add_option("--tf", inst.tf, "annealing time [hbar/Delta]")->required();
  ic->add_option("--tc", inst.tc, "pulse center [hbar/Delta]");
  ic->add_option("--td", inst.td, "pulse duration [hbar/Delta]");
  ic->add_option("--c", inst.c, "pulse amplitude [Delta]");
  ic->add_option("--preset", inst.preset, "sampling preset: fig5, fig7a or fig7b");
  ic->add_option("--dt", inst.dt, "integration step, 0 = t_f/20000");
  ic->add_flag("--trace", inst.trace, "write overlap trace and spectrum CSV files");
  ic->add_option("--trace-samples", inst.trace_samples, "points per trace")
      ->check(CLI::Range(2, 100000));
  ic->add_option("--spectrum-samples", inst.spectrum_samples, "points per spectrum");
  ic->add_option("--spectrum-k", inst.spectrum_k, "levels kept in spectra (0 = all)");
  ic->add_flag("--gap", inst.gap, "include the minimum-gap report in the summary");
  ic->add_flag("--save-instance", inst.save_instance_file,
               "also write the instance as <out>_instance.json");
  ic->add_option("--threads", inst.threads, "worker threads");
  ic->add_option("--out", inst.out, "output path prefix")->required();

  EnsembleArgs ens;
  auto* ec = app.add_subcommand("ensemble",
                                "Pulse-parameter statistics over random instances");
  ec->add_option("--n", ens.n, "qubit count")->check(CLI::Range(1, 12))->required();
  ec->add_option("--count", ens.count, "number of instances")->required();
  ec->add_option("--tf", ens.tf, "annealing time [hbar/Delta]")->required();
  ec->add_option("--preset", ens.preset, "sampling preset: fig5, fig7a or fig7b");
  ec->add_option("--strategy", ens.strategy, "custom sampling: grid or random")
      ->check(CLI::IsMember({"grid", "random"}));
  ec->add_option("--samples", ens.samples, "custom sampling: schedule count");
  ec->add_option("--tc-min", ens.tc_min, "custom bounds [hbar/Delta]");
  ec->add_option("--tc-max", ens.tc_max, "custom bounds [hbar/Delta]");
  ec->add_option("--td-min", ens.td_min, "custom bounds [hbar/Delta]");
  ec->add_option("--td-max", ens.td_max, "custom bounds [hbar/Delta]");
  ec->add_option("--c-min", ens.c_min, "custom bounds [Delta]");
  ec->add_option("--c-max", ens.c_max, "custom bounds [Delta]");
  ec->add_option("--seed", ens.seed, "master seed");
  ec->add_option("--dt", ens.dt, "integration step, 0 = t_f/20000");
  ec->add_option("--threads", ens.threads, "worker threads");
  ec->add_option("--out", ens.out, "output path prefix (.csv and _stats.json)")
      ->required();

  ScalingArgs sca;
  auto* sc = app.add_subcommand("scaling", "Relative success probability vs qubit count");
  sc->add_option("--n-min", sca.n_min, "smallest qubit count")->check(CLI::Range(1, 12));
  sc->add_option("--n-max", sca.n_max, "largest qubit count")->check(CLI::Range(1, 12));
  sc->add_option("--count", sca.count, "instances per qubit count");
  sc->add_option("--tf", sca.tf, "annealing time [hbar/Delta]");
  sc->add_option("--preset", sca.preset, "sampling preset per instance");
  sc->add_option("--seed", sca.seed, "master seed");
  sc->add_option("--dt", sca.dt, "integration step, 0 = t_f/20000");
  sc->add_option("--threads", sca.threads, "worker threads");
  sc->add_option("--out", sca.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ss->parsed()) return cmd_single_sweep(sweep);
    if (tc->parsed()) return cmd_tm_compare(tmc);
    if (ic->parsed()) return cmd_instance(inst);
    if (ec->parsed()) return cmd_ensemble(ens);
    if (sc->parsed()) return cmd_scaling(sca);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
