#ifndef CNUMLAB_THERMO_HPP
#define CNUMLAB_THERMO_HPP

#include <string>
#include <vector>

#include "cnumlab/hamiltonian.hpp"
#include "cnumlab/parallel.hpp"

namespace cnumlab {

// ln Tr exp(-beta H) for hermitian H, max-shifted so only the log is ever
// needed at full scale.  Dense eigensolve up to kEighLimit, scaled-squared
// matrix exponential beyond.
double log_trace_exp(const Eigen::MatrixXcd& h, double beta);
constexpr std::size_t kEighLimit = 2000;

struct PartitionValue {
  double log_value;  // ln Xi
  double value;      // Xi (may overflow to inf for extreme inputs; use logs)
};

// Xi(mu, lambda) = Tr exp(-beta H_{mu,lambda}) on the truncated full space.
PartitionValue partition_full(const GasParams& params, const FockBasis& full);

// Per-node traces of exp(-beta H(z)) over a phase-space grid, plus their
// quadrature sum.  The cutoff warning fires when the integrand on the
// outermost radial ring exceeds 1e-10 of the peak, i.e. the grid radius is
// too small for the parameters.
struct SubstitutedTraces {
  SymbolKind kind;
  double log_xi = 0.0;
  double xi = 0.0;
  std::vector<double> log_traces;  // grid order
  bool cutoff_warning = false;
  double cutoff_ratio = 0.0;
};

SubstitutedTraces partition_substituted(const GasParams& params,
                                        const FockBasis& prime,
                                        const RadialGrid& grid, SymbolKind kind,
                                        const ParallelConfig& par = {});

// Grid radius that keeps the zero-mode integrand comfortably inside the
// cutoff for these parameters (scalar scan of the upper-symbol exponent).
double recommended_radius(const GasParams& params);

// max over z of Tr exp(-beta H(z)).  The search runs golden-section on the
// real axis after a coarse scan; for lambda = 0 the integrand is radial and
// a nonnegative real representative is reported.
struct PmaxResult {
  double z_max = 0.0;        // real representative of the maximizer
  double log_trace_max = 0.0;
  double trace_max = 0.0;
  double p_max = 0.0;        // (beta V)^-1 ln max trace
  bool degenerate = false;   // distinct near-ties within 1e-8 in the scan
};

PmaxResult p_max_search(const GasParams& params, const FockBasis& prime,
                        SymbolKind kind, double radius);

struct InequalityCheck {
  std::string id;
  double lhs = 0.0, rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct AuditOptions {
  double tol_quad = RadialGrid::kDefaultTol;
  double mu_step = 1e-4;  // centered-difference step for rho''
  ParallelConfig par;
};

// Everything the inequality audit measures at one parameter point.
struct EnsembleReport {
  double mu = 0.0, lambda = 0.0, beta = 0.0, volume = 0.0;
  int n_modes = 0, n_max = 0;
  double tol_quad = 0.0;
  double xi = 0.0, xi_prime = 0.0, xi_dprime = 0.0;
  double xi_max = 0.0;         // max_z Tr e^{-beta H'(z)}
  double xi_dprime_max = 0.0;  // max_z Tr e^{-beta H''(z)}
  double log_xi = 0.0, log_xi_prime = 0.0, log_xi_dprime = 0.0;
  double p = 0.0, p_prime = 0.0, p_dprime = 0.0, p_max = 0.0;
  double z_max = 0.0;
  double rho_dprime = 0.0;
  bool degenerate_max = false;
  bool cutoff_warning = false;
  std::vector<InequalityCheck> checks;
  bool all_pass = false;
};

// The five-link chain at one parameter point:
//   1. Xi' <= Xi
//   2. Xi  <= Xi''
//   3. Xi'' <= Xi'(mu + 2 phi / V) * exp(beta (|mu| + phi / V))
//   4. Xi  >= max_z Tr e^{-beta H'(z)}
//   5. Xi'' <= 2 (V rho'' + 1) max_z Tr e^{-beta H''(z)}
// Each check passes when lhs <= rhs + slack, slack = tol (1 + |lhs| + |rhs|).
EnsembleReport audit_chain(const GasParams& params, const FockBasis& full,
                           const FockBasis& prime, const RadialGrid& grid,
                           const AuditOptions& opts = {});

// Pressure gaps along a family of volumes at shared physics; both
// p - p_max and p'' - p' must shrink as V grows at fixed truncation health.
struct GapRow {
  double volume = 0.0;
  double p = 0.0, p_prime = 0.0, p_dprime = 0.0, p_max = 0.0;
  double gap_max = 0.0;     // p - p_max
  double gap_symbol = 0.0;  // p'' - p'
};

std::vector<GapRow> pressure_gap_trend(const std::vector<EnsembleReport>& reports);

}  // namespace cnumlab

#endif
