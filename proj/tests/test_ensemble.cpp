#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <set>

#include "pulseqa/ensemble.hpp"
#include "pulseqa/rng.hpp"

using namespace pulseqa;

TEST_CASE("grid with one point sits at the bounds midpoint") {
  const auto scheds =
      sample_schedules(10.0, SamplingStrategy::grid, default_bounds(10.0), 1, 0);
  REQUIRE(scheds.size() == 1);
  CHECK(scheds[0].t_c == doctest::Approx(5.0));
  CHECK(scheds[0].amplitude == doctest::Approx(0.0));
}

TEST_CASE("grid 27 covers the corners") {
  const SampleBounds b{1.0, 9.0, 1.0, 10.0, -1.0, 1.0};
  const auto scheds = sample_schedules(10.0, SamplingStrategy::grid, b, 27, 0);
  REQUIRE(scheds.size() == 27);
  std::set<std::tuple<double, double, double>> uniq;
  for (const auto& p : scheds) uniq.insert({p.t_c, p.t_d, p.amplitude});
  CHECK(uniq.size() == 27);
  CHECK(uniq.count({1.0, 1.0, -1.0}) == 1);
  CHECK(uniq.count({9.0, 10.0, 1.0}) == 1);
  CHECK(uniq.count({5.0, 5.5, 0.0}) == 1);
}

TEST_CASE("random sampling is deterministic in the seed") {
  const auto a = sample_schedules(8.0, SamplingStrategy::uniform_random,
                                  default_bounds(8.0), 50, 4242);
  const auto b = sample_schedules(8.0, SamplingStrategy::uniform_random,
                                  default_bounds(8.0), 50, 4242);
  const auto c = sample_schedules(8.0, SamplingStrategy::uniform_random,
                                  default_bounds(8.0), 50, 4243);
  REQUIRE(a.size() == 50);
  bool all_equal = true, any_diff_seed = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    all_equal = all_equal && a[i].t_c == b[i].t_c && a[i].t_d == b[i].t_d &&
                a[i].amplitude == b[i].amplitude;
    any_diff_seed = any_diff_seed || a[i].t_c != c[i].t_c;
  }
  CHECK(all_equal);
  CHECK(any_diff_seed);
  for (const auto& p : a) {
    CHECK(p.t_c >= 0.8);
    CHECK(p.t_c <= 7.2);
    CHECK(p.t_d > 0.0);
    CHECK(p.t_d <= 8.0);
    CHECK(std::abs(p.amplitude) <= 1.0);
  }
  CHECK_THROWS_AS(sample_schedules(8.0, SamplingStrategy::grid,
                                   SampleBounds{2, 1, 0, 1, 0, 1}, 4, 0),
                  config_error);
}

TEST_CASE("presets have the documented sizes and signs") {
  const auto f5 = sampling_preset("fig5", 10.0, 1);
  CHECK(f5.schedules.size() == 2706);
  CHECK(!f5.best_sign_average);
  int pos = 0, neg = 0;
  for (const auto& p : f5.schedules) (p.amplitude > 0 ? pos : neg)++;
  CHECK(pos == 1353);
  CHECK(neg == 1353);

  const auto f7a = sampling_preset("fig7a", 5.0, 1);
  CHECK(f7a.schedules.size() == 90);
  CHECK(f7a.best_sign_average);
  const auto f7b = sampling_preset("fig7b", 3.0, 1);
  CHECK(f7b.schedules.size() == 60);
  for (const auto& p : f7b.schedules) {
    CHECK(std::abs(p.amplitude) < 1.0);
    CHECK(p.t_c >= 0.3 * 3.0);
    CHECK(p.t_c <= 0.7 * 3.0);
  }
  CHECK_THROWS_AS(sampling_preset("fig9", 3.0, 1), config_error);
}

TEST_CASE("inactive schedules reproduce the baseline exactly") {
  SamplingConfig cfg;
  cfg.schedules = {{1.0, 2.0, 0.0}, {3.0, 1.0, 0.0}, {2.0, 0.0, 0.5}};
  const auto inst = generate_instance(2, 5);
  const auto r = optimize_instance(inst, 4.0, cfg, 4.0 / 2000.0);
  CHECK(r.p_sp_max == r.p_s0);
  CHECK(r.p_sp_av == doctest::Approx(r.p_s0).epsilon(1e-15));
  CHECK(r.stddev == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.improved_count == 0);
}

TEST_CASE("maximum never decreases when the schedule set grows") {
  const auto inst = generate_instance(2, 91);
  SamplingConfig small;
  small.schedules = sample_schedules(4.0, SamplingStrategy::uniform_random,
                                     default_bounds(4.0), 5, 11);
  SamplingConfig big = small;
  const auto extra = sample_schedules(4.0, SamplingStrategy::uniform_random,
                                      default_bounds(4.0), 5, 12);
  big.schedules.insert(big.schedules.end(), extra.begin(), extra.end());
  const double dt = 4.0 / 2000.0;
  const auto rs = optimize_instance(inst, 4.0, small, dt);
  const auto rb = optimize_instance(inst, 4.0, big, dt);
  CHECK(rb.p_sp_max >= rs.p_sp_max);
  CHECK(rb.p_sp_max >= rb.p_sp_av - 1e-12);
}

TEST_CASE("least squares on an exact line") {
  std::vector<double> x, y;
  SplitMix64 rng(6);
  for (int i = 0; i < 40; ++i) {
    const double xi = rng.next_unit();
    x.push_back(xi);
    y.push_back(0.8 * xi + 0.07);
  }
  const auto fit = linear_fit(x, y);
  REQUIRE(fit.valid);
  CHECK(fit.a == doctest::Approx(0.80).epsilon(1e-12));
  CHECK(fit.b == doctest::Approx(0.07).epsilon(1e-12));
  // crossover with y = x: B / (1 - A)
  CHECK(fit.b / (1.0 - fit.a) == doctest::Approx(0.35).epsilon(1e-10));
}

TEST_CASE("least squares residual orthogonality") {
  std::vector<double> x, y;
  SplitMix64 rng(61);
  for (int i = 0; i < 100; ++i) {
    x.push_back(rng.next_unit());
    y.push_back(rng.next_unit());
  }
  const auto fit = linear_fit(x, y);
  REQUIRE(fit.valid);
  double sum_r = 0.0, sum_xr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.a * x[i] - fit.b;
    sum_r += r;
    sum_xr += x[i] * r;
  }
  CHECK(std::abs(sum_r) <= 1e-9);
  CHECK(std::abs(sum_xr) <= 1e-9);
}

TEST_CASE("degenerate x spread invalidates the fit") {
  const auto fit = linear_fit({0.5, 0.5, 0.5}, {0.1, 0.2, 0.3});
  CHECK(!fit.valid);
}

TEST_CASE("reduce_ensemble on synthetic data") {
  std::vector<InstanceResult> results;
  SplitMix64 rng(8);
  for (int i = 0; i < 50; ++i) {
    InstanceResult r;
    r.p_s0 = 0.02 + 0.96 * rng.next_unit();
    r.p_sp_av = 0.8 * r.p_s0 + 0.07;
    r.p_sp_max = std::min(1.0, r.p_s0 + 0.2);
    results.push_back(r);
  }
  const auto stats = reduce_ensemble(results);
  REQUIRE(stats.fit_valid);
  CHECK(stats.fit_a == doctest::Approx(0.80).epsilon(1e-9));
  CHECK(stats.fit_b == doctest::Approx(0.07).epsilon(1e-9));
  REQUIRE(stats.crossover_valid);
  CHECK(stats.crossover == doctest::Approx(0.35).epsilon(1e-9));
  CHECK(stats.frac_max_improved == 1.0);
  // bins cover only populated cells and average the exact line
  for (const auto& b : stats.bins) {
    CHECK(b.count > 0);
    CHECK(b.mean == doctest::Approx(0.8 * b.center + 0.07).epsilon(0.05));
  }
}

TEST_CASE("identity results flag the crossover as undefined") {
  std::vector<InstanceResult> results;
  SplitMix64 rng(81);
  for (int i = 0; i < 20; ++i) {
    InstanceResult r;
    r.p_s0 = rng.next_unit();
    r.p_sp_av = r.p_s0;  // exactly on the diagonal
    r.p_sp_max = r.p_s0;
    results.push_back(r);
  }
  const auto stats = reduce_ensemble(results);
  CHECK(stats.frac_av_improved == 0.0);
  REQUIRE(stats.fit_valid);
  CHECK(stats.fit_a == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!stats.crossover_valid);
}

TEST_CASE("relative sp of synthetic ensembles") {
  std::vector<InstanceResult> results;
  for (int i = 0; i < 10; ++i) {
    InstanceResult r;
    r.p_s0 = 0.5;
    r.p_sp_av = 0.5;
    r.p_sp_max = 0.65;  // 1.3x the baseline
    results.push_back(r);
  }
  const auto stats = reduce_ensemble(results);
  const auto pt = relative_sp(5, stats);
  CHECK(pt.valid);
  CHECK(pt.r_sp_av == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pt.r_sp_max == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(pt.std_max == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ensemble run is deterministic and thread independent") {
  SamplingConfig cfg;
  cfg.schedules = sample_schedules(3.0, SamplingStrategy::uniform_random,
                                   default_bounds(3.0), 6, 777);
  const double dt = 3.0 / 600.0;

  omp_set_dynamic(0);
  omp_set_num_threads(2);
  const auto a = ensemble_run(2, 4, 3.0, cfg, 2024, dt);
  omp_set_num_threads(1);
  const auto b = ensemble_run(2, 4, 3.0, cfg, 2024, dt);
  omp_set_num_threads(2);

  CHECK(ensemble_csv(a) == ensemble_csv(b));
  CHECK(stats_json(a, "") == stats_json(b, ""));

  // per-instance optimize path reduces to the same rows
  for (int i = 0; i < 4; ++i) {
    const auto inst = generate_instance(2, derive_seed(2024, i));
    const auto r = optimize_instance(inst, 3.0, cfg, dt);
    CHECK(r.p_s0 == a.results[i].p_s0);
    CHECK(r.p_sp_max == a.results[i].p_sp_max);
    CHECK(r.p_sp_av == a.results[i].p_sp_av);
  }
}

TEST_CASE("csv and json formats") {
  std::vector<InstanceResult> results(2);
  results[0].instance_seed = 11;
  results[0].p_s0 = 0.25;
  results[0].p_sp_max = 0.5;
  results[0].p_sp_av = 0.375;
  results[0].best_pulse = {1.5, 2.0, -0.25};
  results[1].instance_seed = 12;
  results[1].p_s0 = 0.75;
  results[1].p_sp_max = 0.875;
  results[1].p_sp_av = 0.8125;
  const auto stats = reduce_ensemble(results);

  const std::string csv = ensemble_csv(stats);
  CHECK(csv.find("instance_seed,p_s0,p_sp_max,p_sp_av,std,best_tc,best_td,best_c\n") == 0);
  CHECK(csv.find("11,0.25,0.5,0.375,0,1.5,2,-0.25\n") != std::string::npos);

  const std::string json = stats_json(stats, "{\"n\":2}");
  for (const char* key :
       {"fit_a", "fit_b", "crossover", "frac_av_improved", "frac_max_improved",
        "frac_max_improved_5pct", "bins", "config"})
    CHECK(json.find(key) != std::string::npos);

  const auto pt = relative_sp(4, stats);
  const std::string scsv = scaling_csv({pt});
  CHECK(scsv.find("n,r_sp_max,r_sp_av,std_max,std_av\n") == 0);
  CHECK(scsv.find("4,") != std::string::npos);
}
