#ifndef CNUMLAB_ORDER_HPP
#define CNUMLAB_ORDER_HPP

#include <vector>

#include "cnumlab/thermo.hpp"

namespace cnumlab {

// exp(-beta H) held in shifted form: weight = exp(-beta (H - E0)), so
// expectations never touch the raw exponential scale.
struct GibbsState {
  Eigen::MatrixXcd weight;
  double e0 = 0.0;
  double trace_weight = 0.0;
  double log_xi = 0.0;  // ln Tr exp(-beta H)
};

GibbsState gibbs_state(const Eigen::MatrixXcd& h, double beta);
cplx gibbs_expectation(const GibbsState& state, const Eigen::MatrixXcd& op);

// A normalized density on the phase-space grid (one value per node).
struct WeightDensity {
  std::vector<double> values;
  double norm = 0.0;     // quadrature of the density, 1 up to grid error
  cplx mean_a0;          // integral of z W(z)
  double mean_n0 = 0.0;  // integral of (|z|^2 - 1) W(z)
};

// W(z) = Xi^-1 Tr_prime <z|exp(-beta H_{mu,lambda})|z> from the full-space
// Gibbs state (the zero-mode coherent diagonal, traced over the rest).
WeightDensity weight_full(const GasParams& params, const FockBasis& full,
                          const FockBasis& prime, const RadialGrid& grid,
                          const ParallelConfig& par = {});

// W''(z) = Xi''^-1 Tr exp(-beta H''(z)) from precomputed per-node traces.
WeightDensity weight_substituted(const SubstitutedTraces& traces,
                                 const RadialGrid& grid);

// Condensate bookkeeping at one parameter point.  The direct trace route is
// primary; the weight-integral route is the cross-check.
struct CondensateRecord {
  double volume = 0.0, lambda = 0.0;
  cplx a0_direct;
  double n0_direct = 0.0;
  cplx a0_weight;
  double n0_weight = 0.0;
  double weight_norm = 0.0;
  double n0_density = 0.0;       // <a0^+ a0> / V
  double order_param_sq = 0.0;   // |<a0>|^2 / V
  double zmax_density = 0.0;     // |z_max|^2 / V from the best substitution
  bool cauchy_schwarz_ok = false;
};

CondensateRecord condensate_observables(const GasParams& params,
                                        const FockBasis& full,
                                        const FockBasis& prime,
                                        const RadialGrid& grid,
                                        const ParallelConfig& par = {});

// Order parameter along decreasing symmetry-breaking field at several
// volumes (the quasi-average construction).  Mode labels and truncation are
// shared; the box volume is swapped per row.
struct QuasiAveragePoint {
  double volume = 0.0, lambda = 0.0;
  double order_param_sq = 0.0, n0_density = 0.0, zmax_density = 0.0;
};

struct QuasiAverageScan {
  std::vector<QuasiAveragePoint> points;  // volumes outer, lambdas inner
  std::vector<double> volumes, lambdas;
  // order parameter nondecreasing in V at each fixed lambda > 0
  std::vector<bool> grows_with_volume;
  // order parameter nonincreasing as lambda decreases at each fixed V
  std::vector<bool> fades_with_lambda;
};

QuasiAverageScan quasi_average_scan(const GasParams& base, int n_max,
                                    const std::vector<double>& volumes,
                                    const std::vector<double>& lambdas,
                                    const ParallelConfig& par = {});

// The explicit weight family that concentrates on the unit circle while its
// moments stay condensate-like:
//   w_V(zeta) = V^2 - V + 1/V   for |zeta| <= 1/V,
//             = 1/V             for 1/V < |zeta| <= 1,
// normalized to 1 with second moment 1/(2V) + 1/(2V^2) - 1/(2V^3).  Under a
// tilt exp(-c zeta_x), c = beta lambda V, the mass localizes at zeta = -1.
struct PathologicalReport {
  double volume = 0.0;
  double beta_lambda = 0.0;  // the product beta * lambda
  double tilt = 0.0;         // c = beta lambda V
  double normalization = 0.0;
  double second_moment = 0.0;
  double tilted_mean_x = 0.0;    // mean of zeta_x under the tilt
  double localization = 0.0;     // tilted mean of |zeta + 1|^2
};

PathologicalReport pathological_weight(double volume, double beta_lambda);

}  // namespace cnumlab

#endif
