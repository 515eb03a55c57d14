#ifndef CNUMLAB_CONFIG_HPP
#define CNUMLAB_CONFIG_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cnumlab {

// Deterministic RNG used everywhere randomness appears: fixed engine plus a
// fixed uint64 -> [0,1) mapping, so seeds reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

struct GasConfig {
  int n_side = 1;        // modes 0, +-1, ..., +-n_side
  int n_max = 6;         // per-mode occupation cap
  double volume = 4.0;
  double g = 0.5;        // nu(0)
  double g1 = 0.0;       // nu(+-k1)
  double mu = -1.0;
  double lambda = 0.2;
  double beta = 1.0;
};

struct GridConfig {
  int radial_nodes = 200;
  int angular_nodes = 64;
  double radius = 0.0;  // 0 = choose from the parameters
};

struct AuditConfig {
  int count = 20;
  std::uint64_t seed = 424242;
};

struct SweepConfig {
  std::vector<double> mu, lambda, beta, volume;  // empty axis = gas value
};

struct QuasiAverageConfig {
  std::vector<double> volumes = {2.0, 4.0, 8.0};
  std::vector<double> lambdas = {0.4, 0.2, 0.1, 0.05};  // decreasing to 0+
};

struct MagnetConfig {
  int dimension = 1;
  int length = 4;
  std::vector<int> sizes;  // chain lengths; empty = {length}
  double spin = 0.5;
  double coupling = 1.0;
  double beta = 1.0;
  double field_min = -1.0, field_max = 1.0;
  int field_count = 41;
  double distribution_field = 0.0;
};

struct GriffithsConfig {
  std::string source = "coins";  // coins | two_point | tilted_coins | file
  std::string path;              // measures JSON when source = file
  std::vector<int> sizes = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
  double field = 0.3;  // tilt for tilted_coins
  double y_max = 1.0;
  int y_count = 81;
  std::vector<double> h_ladder = {0.5, 0.25, 0.1, 0.05, 0.025};
  double eps = 0.1;
};

struct PathologicalConfig {
  std::vector<double> volumes = {10.0, 100.0, 1000.0};
  double tilt_volume = 200.0;
  double beta_lambda = 1.0;
};

struct RunConfig {
  std::string experiment = "audit";
  std::string output_dir = "runs/out";
  int workers = 0;
  double tol_quad = 1e-8;
  GasConfig gas;
  GridConfig grid;
  AuditConfig audit;
  SweepConfig sweep;
  QuasiAverageConfig quasi;
  MagnetConfig magnet;
  GriffithsConfig griffiths;
  PathologicalConfig pathological;

  // missing keys keep their defaults; unknown keys are rejected
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;

  // all validation problems at once, empty when the config is usable
  std::vector<std::string> problems() const;
  void validate() const;  // throws with the joined problem list

  std::string canonical() const { return to_json().dump(); }
  std::string hash() const;  // FNV-1a 64 of the canonical form, hex
};

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace cnumlab

#endif
