#include "cnumlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cnumlab {

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::string& scope,
                         const std::set<std::string>& known) {
  if (!j.is_object())
    throw std::invalid_argument("config: " + scope + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw std::invalid_argument("config: unknown key '" + scope + key + "'");
}

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  reject_unknown_keys(j, "", {"experiment", "output_dir", "workers", "tol_quad",
                              "gas", "grid", "audit", "sweep", "quasi_average",
                              "magnet", "griffiths", "pathological"});
  get_if(j, "experiment", cfg.experiment);
  get_if(j, "output_dir", cfg.output_dir);
  get_if(j, "workers", cfg.workers);
  get_if(j, "tol_quad", cfg.tol_quad);

  if (j.contains("gas")) {
    const auto& g = j["gas"];
    reject_unknown_keys(g, "gas.", {"n_side", "n_max", "volume", "g", "g1",
                                    "mu", "lambda", "beta"});
    get_if(g, "n_side", cfg.gas.n_side);
    get_if(g, "n_max", cfg.gas.n_max);
    get_if(g, "volume", cfg.gas.volume);
    get_if(g, "g", cfg.gas.g);
    get_if(g, "g1", cfg.gas.g1);
    get_if(g, "mu", cfg.gas.mu);
    get_if(g, "lambda", cfg.gas.lambda);
    get_if(g, "beta", cfg.gas.beta);
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    reject_unknown_keys(g, "grid.", {"radial_nodes", "angular_nodes", "radius"});
    get_if(g, "radial_nodes", cfg.grid.radial_nodes);
    get_if(g, "angular_nodes", cfg.grid.angular_nodes);
    get_if(g, "radius", cfg.grid.radius);
  }
  if (j.contains("audit")) {
    const auto& a = j["audit"];
    reject_unknown_keys(a, "audit.", {"count", "seed"});
    get_if(a, "count", cfg.audit.count);
    get_if(a, "seed", cfg.audit.seed);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    reject_unknown_keys(s, "sweep.", {"mu", "lambda", "beta", "volume"});
    get_if(s, "mu", cfg.sweep.mu);
    get_if(s, "lambda", cfg.sweep.lambda);
    get_if(s, "beta", cfg.sweep.beta);
    get_if(s, "volume", cfg.sweep.volume);
  }
  if (j.contains("quasi_average")) {
    const auto& q = j["quasi_average"];
    reject_unknown_keys(q, "quasi_average.", {"volumes", "lambdas"});
    get_if(q, "volumes", cfg.quasi.volumes);
    get_if(q, "lambdas", cfg.quasi.lambdas);
  }
  if (j.contains("magnet")) {
    const auto& m = j["magnet"];
    reject_unknown_keys(m, "magnet.",
                        {"dimension", "length", "sizes", "spin", "coupling",
                         "beta", "field_min", "field_max", "field_count",
                         "distribution_field"});
    get_if(m, "dimension", cfg.magnet.dimension);
    get_if(m, "length", cfg.magnet.length);
    get_if(m, "sizes", cfg.magnet.sizes);
    get_if(m, "spin", cfg.magnet.spin);
    get_if(m, "coupling", cfg.magnet.coupling);
    get_if(m, "beta", cfg.magnet.beta);
    get_if(m, "field_min", cfg.magnet.field_min);
    get_if(m, "field_max", cfg.magnet.field_max);
    get_if(m, "field_count", cfg.magnet.field_count);
    get_if(m, "distribution_field", cfg.magnet.distribution_field);
  }
  if (j.contains("griffiths")) {
    const auto& g = j["griffiths"];
    reject_unknown_keys(g, "griffiths.",
                        {"source", "path", "sizes", "field", "y_max", "y_count",
                         "h_ladder", "eps"});
    get_if(g, "source", cfg.griffiths.source);
    get_if(g, "path", cfg.griffiths.path);
    get_if(g, "sizes", cfg.griffiths.sizes);
    get_if(g, "field", cfg.griffiths.field);
    get_if(g, "y_max", cfg.griffiths.y_max);
    get_if(g, "y_count", cfg.griffiths.y_count);
    get_if(g, "h_ladder", cfg.griffiths.h_ladder);
    get_if(g, "eps", cfg.griffiths.eps);
  }
  if (j.contains("pathological")) {
    const auto& p = j["pathological"];
    reject_unknown_keys(p, "pathological.",
                        {"volumes", "tilt_volume", "beta_lambda"});
    get_if(p, "volumes", cfg.pathological.volumes);
    get_if(p, "tilt_volume", cfg.pathological.tilt_volume);
    get_if(p, "beta_lambda", cfg.pathological.beta_lambda);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + path + " is not valid JSON: " +
                                e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["output_dir"] = output_dir;
  j["workers"] = workers;
  j["tol_quad"] = tol_quad;
  j["gas"] = {{"n_side", gas.n_side},   {"n_max", gas.n_max},
              {"volume", gas.volume},   {"g", gas.g},
              {"g1", gas.g1},           {"mu", gas.mu},
              {"lambda", gas.lambda},   {"beta", gas.beta}};
  j["grid"] = {{"radial_nodes", grid.radial_nodes},
               {"angular_nodes", grid.angular_nodes},
               {"radius", grid.radius}};
  j["audit"] = {{"count", audit.count}, {"seed", audit.seed}};
  j["sweep"] = {{"mu", sweep.mu},
                {"lambda", sweep.lambda},
                {"beta", sweep.beta},
                {"volume", sweep.volume}};
  j["quasi_average"] = {{"volumes", quasi.volumes}, {"lambdas", quasi.lambdas}};
  j["magnet"] = {{"dimension", magnet.dimension},
                 {"length", magnet.length},
                 {"sizes", magnet.sizes},
                 {"spin", magnet.spin},
                 {"coupling", magnet.coupling},
                 {"beta", magnet.beta},
                 {"field_min", magnet.field_min},
                 {"field_max", magnet.field_max},
                 {"field_count", magnet.field_count},
                 {"distribution_field", magnet.distribution_field}};
  j["griffiths"] = {{"source", griffiths.source},
                    {"path", griffiths.path},
                    {"sizes", griffiths.sizes},
                    {"field", griffiths.field},
                    {"y_max", griffiths.y_max},
                    {"y_count", griffiths.y_count},
                    {"h_ladder", griffiths.h_ladder},
                    {"eps", griffiths.eps}};
  j["pathological"] = {{"volumes", pathological.volumes},
                       {"tilt_volume", pathological.tilt_volume},
                       {"beta_lambda", pathological.beta_lambda}};
  return j;
}

std::vector<std::string> RunConfig::problems() const {
  std::vector<std::string> out;
  const std::set<std::string> experiments = {
      "audit", "sweep", "weights", "quasi-average",
      "magnet", "griffiths", "pathological"};
  if (!experiments.count(experiment))
    out.push_back("experiment must be one of audit, sweep, weights, "
                  "quasi-average, magnet, griffiths, pathological");
  if (output_dir.empty()) out.push_back("output_dir must not be empty");
  if (workers < 0) out.push_back("workers must be >= 0");
  if (tol_quad <= 0.0) out.push_back("tol_quad must be > 0");

  if (gas.n_side < 0) out.push_back("gas.n_side must be >= 0");
  if (gas.n_max < 0) out.push_back("gas.n_max must be >= 0");
  if (gas.volume <= 0.0) out.push_back("gas.volume must be > 0");
  if (gas.beta <= 0.0) out.push_back("gas.beta must be > 0");

  if (grid.radial_nodes < 1) out.push_back("grid.radial_nodes must be >= 1");
  if (grid.angular_nodes < 1) out.push_back("grid.angular_nodes must be >= 1");
  if (grid.radius < 0.0) out.push_back("grid.radius must be >= 0 (0 = auto)");

  if (audit.count < 1) out.push_back("audit.count must be >= 1");

  for (double v : sweep.volume)
    if (v <= 0.0) out.push_back("sweep.volume entries must be > 0");
  for (double b : sweep.beta)
    if (b <= 0.0) out.push_back("sweep.beta entries must be > 0");

  if (quasi.volumes.empty()) out.push_back("quasi_average.volumes must be non-empty");
  if (quasi.lambdas.empty()) out.push_back("quasi_average.lambdas must be non-empty");
  for (double v : quasi.volumes)
    if (v <= 0.0) out.push_back("quasi_average.volumes entries must be > 0");
  for (double l : quasi.lambdas)
    if (l < 0.0) out.push_back("quasi_average.lambdas entries must be >= 0");

  if (magnet.dimension < 1 || magnet.dimension > 3)
    out.push_back("magnet.dimension must be 1, 2 or 3");
  if (magnet.length < 1) out.push_back("magnet.length must be >= 1");
  if (magnet.spin <= 0.0) out.push_back("magnet.spin must be > 0");
  if (magnet.beta <= 0.0) out.push_back("magnet.beta must be > 0");
  if (magnet.field_count < 1) out.push_back("magnet.field_count must be >= 1");
  if (magnet.field_count >= 2 && !(magnet.field_min < magnet.field_max))
    out.push_back("magnet.field_min must be < magnet.field_max");
  for (int s : magnet.sizes)
    if (s < 1) out.push_back("magnet.sizes entries must be >= 1");

  const std::set<std::string> sources = {"coins", "two_point", "tilted_coins",
                                         "file"};
  if (!sources.count(griffiths.source))
    out.push_back("griffiths.source must be coins, two_point, tilted_coins or file");
  if (griffiths.source == "file" && griffiths.path.empty())
    out.push_back("griffiths.path required when source = file");
  if (griffiths.source != "file" && griffiths.sizes.empty())
    out.push_back("griffiths.sizes must be non-empty");
  for (int n : griffiths.sizes)
    if (n < 1) out.push_back("griffiths.sizes entries must be >= 1");
  if (griffiths.y_max <= 0.0) out.push_back("griffiths.y_max must be > 0");
  if (griffiths.y_count < 3) out.push_back("griffiths.y_count must be >= 3");
  if (griffiths.h_ladder.size() < 2)
    out.push_back("griffiths.h_ladder needs at least 2 decreasing values");
  for (std::size_t i = 0; i < griffiths.h_ladder.size(); ++i) {
    const double h = griffiths.h_ladder[i];
    if (h <= 0.0 || h > griffiths.y_max)
      out.push_back("griffiths.h_ladder values must lie in (0, y_max]");
    if (i > 0 && h >= griffiths.h_ladder[i - 1])
      out.push_back("griffiths.h_ladder must be strictly decreasing");
  }
  if (griffiths.eps <= 0.0) out.push_back("griffiths.eps must be > 0");

  if (pathological.volumes.empty())
    out.push_back("pathological.volumes must be non-empty");
  for (double v : pathological.volumes)
    if (v <= 1.0) out.push_back("pathological.volumes entries must exceed 1");
  if (pathological.tilt_volume <= 1.0)
    out.push_back("pathological.tilt_volume must exceed 1");
  if (pathological.beta_lambda < 0.0)
    out.push_back("pathological.beta_lambda must be >= 0");
  if (pathological.beta_lambda * pathological.tilt_volume > 600.0)
    out.push_back("pathological: beta_lambda * tilt_volume must stay <= 600");
  return out;
}

void RunConfig::validate() const {
  const auto list = problems();
  if (list.empty()) return;
  std::ostringstream msg;
  msg << "invalid configuration:";
  for (const auto& p : list) msg << "\n  - " << p;
  throw std::invalid_argument(msg.str());
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

}  // namespace cnumlab
