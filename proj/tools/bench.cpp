// Timing harness: split-step propagator (serial and OpenMP) against the
// eigendecomposition reference, plus ensemble throughput at 1 vs all threads.

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "pulseqa/ensemble.hpp"
#include "pulseqa/evolve.hpp"

using namespace pulseqa;

namespace {

double time_evolve(const AnnealSpec& spec, const EvolveOptions& opt, int threads,
                   double* sp_out) {
  omp_set_dynamic(0);
  omp_set_num_threads(threads);
  const double t0 = omp_get_wtime();
  const auto res = evolve(spec, opt);
  const double t1 = omp_get_wtime();
  *sp_out = res.sp;
  return t1 - t0;
}

}  // namespace

int main(int argc, char** argv) {
  const long steps = argc > 1 ? std::atol(argv[1]) : 20000;
  const int max_threads = omp_get_max_threads();

  std::printf("split-step propagator, %ld steps per run, up to %d threads\n\n", steps,
              max_threads);
  std::printf("%3s %14s %14s | %9s %14s %16s\n", "n", "split 1t [s]", "split %dt [s]",
              "ref steps", "ref [s]", "|sp split-ref|");

  for (int n : {4, 6, 8, 10}) {
    AnnealSpec spec;
    spec.instance = generate_instance(n, 42);
    spec.t_f = 10.0;
    spec.pulse = PulseSchedule{5.0, 4.0, 0.4};

    EvolveOptions opt;
    opt.dt = spec.t_f / static_cast<double>(steps);

    double sp_serial = 0.0, sp_parallel = 0.0, sp_ref = 0.0;
    const double t_serial = time_evolve(spec, opt, 1, &sp_serial);
    const double t_parallel = time_evolve(spec, opt, max_threads, &sp_parallel);
    if (sp_serial != sp_parallel)
      std::printf("  !! thread count changed the result at n=%d\n", n);

    // the dense reference diagonalizes per step; keep its grid small enough
    // to finish, it converges at far coarser steps than the split method
    const long ref_steps = std::min<long>(steps, n >= 8 ? 200 : 2000);
    EvolveOptions ref = opt;
    ref.method = Integrator::reference;
    ref.dt = spec.t_f / static_cast<double>(ref_steps);
    const double t_ref = time_evolve(spec, ref, 1, &sp_ref);

    std::printf("%3d %14.4f %14.4f | %9ld %14.4f %16.3e\n", n, t_serial, t_parallel,
                ref_steps, t_ref, std::abs(sp_serial - sp_ref));
  }

  std::printf("\nensemble throughput: n=5, 8 instances, fig7b preset, default dt\n");
  const auto sampling = sampling_preset("fig7b", 3.0, 7);
  for (int threads : {1, max_threads}) {
    omp_set_dynamic(0);
    omp_set_num_threads(threads);
    const double t0 = omp_get_wtime();
    const auto stats = ensemble_run(5, 8, 3.0, sampling, 99, default_dt(3.0));
    const double t1 = omp_get_wtime();
    std::printf("  threads=%d: %.2f s (frac_av_improved=%.3f)\n", threads, t1 - t0,
                stats.frac_av_improved);
  }
  return 0;
}
