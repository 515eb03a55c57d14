#ifndef CNUMLAB_RUNNER_HPP
#define CNUMLAB_RUNNER_HPP

#include <string>
#include <vector>

#include "cnumlab/config.hpp"
#include "cnumlab/thermo.hpp"

namespace cnumlab {

// printf %.12g, the one numeric format every emitted CSV uses
std::string format_g(double v);

// Minimal CSV emitter: fixed header, explicit rows, '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  void write(const std::string& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

GasParams to_gas_params(const GasConfig& cfg);

// One sampled audit point (gas parameters plus its truncation).
struct AuditPoint {
  GasParams params;
  int n_max = 0;
};

// Random audit configurations drawn from documented ranges
//   modes {1, 3}, n_max 4..6, beta [0.2, 4], mu [-2, 0.3],
//   lambda [0, 0.8] (every 4th draw pinned to 0), g [0, 1], g1 [0, g],
//   V [1, 6],
// then filtered by two acceptance screens before use:
//   - stability: mu <= -0.05 or g >= 0.05 (repulsion must hold the density);
//   - truncation health: raising the zero-mode cap from n_max to n_max + 2
//     moves ln Xi by less than 1e-8, so every audited quantity is converged
//     at the working truncation (candidates failing either screen are
//     redrawn; the sequence is fully determined by the seed).
std::vector<AuditPoint> sample_audit_suite(int count, std::uint64_t seed);

// The truncation-health screen by itself (also used by tests).
bool truncation_adequate(const GasParams& params, int n_max,
                         double rel_tol = 1e-8);

// Radius choice shared by the experiments: explicit value if configured,
// otherwise recommended_radius at the largest chemical potential the audit
// will visit (mu + 2 phi / V + finite-difference step).
double resolve_radius(const GasParams& params, const GridConfig& grid,
                      bool audit_shift);

struct RunOutcome {
  int exit_code = 0;       // 0 ok, 2 = an audit check failed
  std::string output_dir;
  nlohmann::json archive;  // what run.json holds
  std::vector<std::string> files;
};

// Execute one configured experiment and write its archive, CSV tables and
// (for audits) the plain-text summary under config.output_dir.
RunOutcome run_experiment(const RunConfig& config);

}  // namespace cnumlab

#endif
