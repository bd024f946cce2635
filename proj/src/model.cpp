#include "pulseqa/model.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pulseqa/rng.hpp"

namespace pulseqa {

void SpinGlassInstance::validate() const {
  if (n < 1) throw config_error("instance needs at least one qubit");
  if (static_cast<int>(eps.size()) != n)
    throw config_error("instance has " + std::to_string(eps.size()) + " fields for n=" +
                       std::to_string(n));
  std::set<std::pair<int, int>> seen;
  for (const auto& c : couplings) {
    if (c.i < 0 || c.j >= n || c.i >= c.j)
      throw config_error("coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                         ") violates 0 <= i < j < n");
    if (!seen.insert({c.i, c.j}).second)
      throw config_error("duplicate coupling (" + std::to_string(c.i) + "," +
                         std::to_string(c.j) + ")");
  }
  for (double e : eps)
    if (!std::isfinite(e)) throw config_error("non-finite field value");
  for (const auto& c : couplings)
    if (!std::isfinite(c.value)) throw config_error("non-finite coupling value");
}

SpinGlassInstance generate_instance(int n, std::uint64_t seed) {
  if (n < 1) throw config_error("generate_instance: n must be >= 1");
  SpinGlassInstance inst;
  inst.n = n;
  inst.seed = seed;
  GaussianStream g(mix64(seed));
  inst.eps.resize(n);
  for (int i = 0; i < n; ++i) inst.eps[i] = g.next();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) inst.couplings.push_back({i, j, g.next()});
  return inst;
}

double target_energy(const SpinGlassInstance& inst, std::uint64_t z) {
  if (inst.n < 64 && z >= (std::uint64_t{1} << inst.n))
    throw config_error("bitstring out of range for n=" + std::to_string(inst.n));
  auto spin = [z](int i) { return 1.0 - 2.0 * static_cast<double>((z >> i) & 1u); };
  double e = 0.0;
  for (int i = 0; i < inst.n; ++i) e += inst.eps[i] * spin(i);
  for (const auto& c : inst.couplings) e += c.value * spin(c.i) * spin(c.j);
  return e;
}

void AnnealSpec::validate() const {
  instance.validate();
  if (!(t_f > 0.0) || !std::isfinite(t_f)) throw config_error("t_f must be positive");
  if (!(delta > 0.0)) throw config_error("delta must be positive");
  if (pulse) {
    if (pulse->t_d < 0.0) throw config_error("pulse duration must be >= 0");
    if (!std::isfinite(pulse->t_c) || !std::isfinite(pulse->amplitude) ||
        !std::isfinite(pulse->t_d))
      throw config_error("pulse parameters must be finite");
  }
}

AnnealSpec single_qubit_spec(double eps, double t_f, std::optional<PulseSchedule> pulse) {
  AnnealSpec spec;
  spec.instance.n = 1;
  spec.instance.eps = {eps};
  spec.t_f = t_f;
  spec.pulse = pulse;
  return spec;
}

namespace {

void check_time(double t, const AnnealSpec& spec) {
  if (!(t >= 0.0 && t <= spec.t_f))
    throw config_error("time " + std::to_string(t) + " outside [0, t_f=" +
                       std::to_string(spec.t_f) + "]");
}

}  // namespace

HermitianOperator single_qubit_h(double t, double eps, const AnnealSpec& spec) {
  check_time(t, spec);
  const double s = t / spec.t_f;
  const double dz = s * eps + spec.pulse_offset(t);
  const double dx = (1.0 - s) * spec.delta;
  ComplexMatrix m(2, 2);
  m << dz, dx, dx, -dz;
  return HermitianOperator{std::move(m)};
}

HermitianOperator multiqubit_h(double t, const AnnealSpec& spec) {
  check_time(t, spec);
  const int n = spec.n();
  const int dim = spec.dim();
  const double s = t / spec.t_f;
  const double c = spec.pulse_offset(t);
  const double dx = (1.0 - s) * spec.delta;

  const std::vector<double> d = target_diagonal(spec.instance);
  const std::vector<double> m = magnetization_diagonal(n);

  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int z = 0; z < dim; ++z) {
    h(z, z) = s * d[z] + c * m[z];
    for (int q = 0; q < n; ++q) h(z ^ (1 << q), z) += dx;
  }
  return HermitianOperator{std::move(h)};
}

std::vector<double> target_diagonal(const SpinGlassInstance& inst) {
  const int dim = 1 << inst.n;
  std::vector<double> d(dim);
#pragma omp parallel for schedule(static) if (dim >= 4096)
  for (int z = 0; z < dim; ++z) {
    auto spin = [z](int i) { return 1.0 - 2.0 * static_cast<double>((z >> i) & 1); };
    double e = 0.0;
    for (int i = 0; i < inst.n; ++i) e += inst.eps[i] * spin(i);
    for (const auto& c : inst.couplings) e += c.value * spin(c.i) * spin(c.j);
    d[z] = e;
  }
  return d;
}

std::vector<double> magnetization_diagonal(int n) {
  const int dim = 1 << n;
  std::vector<double> m(dim);
  for (int z = 0; z < dim; ++z)
    m[z] = static_cast<double>(n - 2 * std::popcount(static_cast<unsigned>(z)));
  return m;
}

std::string instance_to_json(const SpinGlassInstance& inst) {
  inst.validate();
  nlohmann::ordered_json j;
  j["n"] = inst.n;
  j["seed"] = inst.seed;
  j["eps"] = inst.eps;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : inst.couplings)
    arr.push_back(nlohmann::ordered_json::array({c.i, c.j, c.value}));
  j["J"] = arr;
  return j.dump(2) + "\n";
}

SpinGlassInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("instance file is not valid JSON: ") + e.what());
  }
  auto require = [&](const char* key, nlohmann::json::value_t type, const char* tname) {
    if (!j.contains(key))
      throw config_error(std::string("instance file: missing key at /") + key);
    const auto& v = j.at(key);
    const bool num_ok = type == nlohmann::json::value_t::number_integer &&
                        (v.is_number_integer() || v.is_number_unsigned());
    if (!num_ok && v.type() != type)
      throw config_error(std::string("instance file: /") + key + " must be " + tname);
  };
  require("n", nlohmann::json::value_t::number_integer, "an integer");
  require("seed", nlohmann::json::value_t::number_integer, "an integer");
  require("eps", nlohmann::json::value_t::array, "an array");
  require("J", nlohmann::json::value_t::array, "an array");

  SpinGlassInstance inst;
  inst.n = j.at("n").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  const auto& eps = j.at("eps");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!eps[i].is_number())
      throw config_error("instance file: /eps/" + std::to_string(i) + " must be a number");
    inst.eps.push_back(eps[i].get<double>());
  }
  const auto& J = j.at("J");
  for (std::size_t k = 0; k < J.size(); ++k) {
    const auto& row = J[k];
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
        !row[1].is_number_integer() || !row[2].is_number())
      throw config_error("instance file: /J/" + std::to_string(k) +
                         " must be [i, j, value]");
    inst.couplings.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
  }
  try {
    inst.validate();
  } catch (const config_error& e) {
    throw config_error(std::string("instance file: ") + e.what());
  }
  return inst;
}

void save_instance(const SpinGlassInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open " + path + " for writing");
  out << instance_to_json(inst);
}

SpinGlassInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open instance file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

}  // namespace pulseqa
