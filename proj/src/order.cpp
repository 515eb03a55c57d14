#include "cnumlab/order.hpp"

#include <cmath>
#include <stdexcept>

namespace cnumlab {

GibbsState gibbs_state(const Eigen::MatrixXcd& h, double beta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gibbs_state: eigendecomposition failed");
  GibbsState out;
  const Eigen::VectorXd& ev = es.eigenvalues();
  out.e0 = ev.minCoeff();
  Eigen::VectorXd boltz(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    boltz[i] = std::exp(-beta * (ev[i] - out.e0));
  out.weight = es.eigenvectors() * boltz.asDiagonal() *
               es.eigenvectors().adjoint();
  out.trace_weight = boltz.sum();
  out.log_xi = -beta * out.e0 + std::log(out.trace_weight);
  return out;
}

cplx gibbs_expectation(const GibbsState& state, const Eigen::MatrixXcd& op) {
  return (op * state.weight).trace() / state.trace_weight;
}

WeightDensity weight_full(const GasParams& params, const FockBasis& full,
                          const FockBasis& prime, const RadialGrid& grid,
                          const ParallelConfig& par) {
  grid.validate();
  const GibbsState gibbs =
      gibbs_state(build_H_mu_lambda(params, full).to_dense(), params.beta);
  const ZeroModeSplit split(full, prime);

  WeightDensity out;
  out.values.resize(grid.size());
  // W(z) = sum over prime states of <z ox s'| e^{-beta H} |z ox s'> / Xi;
  // the shifted weight matrix keeps every entry at unit scale.
  parallel_for(grid.size(), par, [&](std::size_t idx) {
    const cplx z = grid.point(idx);
    const auto amp = zero_mode_amplitudes(split.n0_cap(), z);
    double acc = 0.0;
    for (std::size_t sp = 0; sp < prime.dim(); ++sp) {
      cplx diag = 0.0;
      for (int n = 0; n <= split.n0_cap(); ++n) {
        const std::size_t i = split.full_of(n, sp);
        if (i == ZeroModeSplit::npos) continue;
        cplx row = 0.0;
        for (int m = 0; m <= split.n0_cap(); ++m) {
          const std::size_t j = split.full_of(m, sp);
          if (j == ZeroModeSplit::npos) continue;
          row += gibbs.weight(i, j) * amp[m];
        }
        diag += std::conj(amp[n]) * row;
      }
      acc += diag.real();
    }
    out.values[idx] = acc / gibbs.trace_weight;
  });

  out.norm = 0.0;
  cplx zsum = 0.0;
  double nsum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double wv = grid.weight(i) * out.values[i];
    out.norm += wv;
    zsum += wv * grid.point(i);
    nsum += wv * (std::norm(grid.point(i)) - 1.0);
  }
  out.mean_a0 = zsum;
  out.mean_n0 = nsum;
  return out;
}

WeightDensity weight_substituted(const SubstitutedTraces& traces,
                                 const RadialGrid& grid) {
  if (traces.log_traces.size() != grid.size())
    throw std::invalid_argument("weight_substituted: grid size mismatch");
  WeightDensity out;
  out.values.resize(grid.size());
  out.norm = 0.0;
  cplx zsum = 0.0;
  double nsum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.values[i] = std::exp(traces.log_traces[i] - traces.log_xi);
    const double wv = grid.weight(i) * out.values[i];
    out.norm += wv;
    zsum += wv * grid.point(i);
    nsum += wv * (std::norm(grid.point(i)) - 1.0);
  }
  out.mean_a0 = zsum;
  out.mean_n0 = nsum;
  return out;
}

CondensateRecord condensate_observables(const GasParams& params,
                                        const FockBasis& full,
                                        const FockBasis& prime,
                                        const RadialGrid& grid,
                                        const ParallelConfig& par) {
  params.validate();
  CondensateRecord rec;
  rec.volume = params.volume();
  rec.lambda = params.lambda;

  const GibbsState gibbs =
      gibbs_state(build_H_mu_lambda(params, full).to_dense(), params.beta);
  const Eigen::MatrixXcd a0 = annihilation(full, 0).to_dense();
  rec.a0_direct = gibbs_expectation(gibbs, a0);
  rec.n0_direct =
      gibbs_expectation(gibbs, mode_number_operator(full, 0).to_dense()).real();

  const WeightDensity w = weight_full(params, full, prime, grid, par);
  rec.a0_weight = w.mean_a0;
  rec.n0_weight = w.mean_n0;
  rec.weight_norm = w.norm;

  rec.n0_density = rec.n0_direct / rec.volume;
  rec.order_param_sq = std::norm(rec.a0_direct) / rec.volume;
  rec.cauchy_schwarz_ok = rec.order_param_sq <= rec.n0_density + 1e-10;

  const PmaxResult pmax = p_max_search(params, prime, SymbolKind::Lower,
                                       grid.radius());
  rec.zmax_density = pmax.z_max * pmax.z_max / rec.volume;
  return rec;
}

QuasiAverageScan quasi_average_scan(const GasParams& base, int n_max,
                                    const std::vector<double>& volumes,
                                    const std::vector<double>& lambdas,
                                    const ParallelConfig& par) {
  QuasiAverageScan scan;
  scan.volumes = volumes;
  scan.lambdas = lambdas;
  for (double v : volumes) {
    GasParams params = base;
    params.modes = base.modes.with_volume(v);
    const FockBasis full = build_basis(params.modes, n_max);
    const FockBasis prime = build_prime_basis(params.modes, n_max);
    for (double lam : lambdas) {
      params.lambda = lam;
      const RadialGrid grid(recommended_radius(params));
      const CondensateRecord rec =
          condensate_observables(params, full, prime, grid, par);
      scan.points.push_back({v, lam, rec.order_param_sq, rec.n0_density,
                             rec.zmax_density});
    }
  }
  const std::size_t nl = lambdas.size(), nv = volumes.size();
  for (std::size_t j = 0; j < nl; ++j) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < nv; ++i)
      ok = ok && scan.points[(i + 1) * nl + j].order_param_sq >=
                     scan.points[i * nl + j].order_param_sq - 1e-10;
    scan.grows_with_volume.push_back(ok);
  }
  for (std::size_t i = 0; i < nv; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j + 1 < nl; ++j) {
      // lambdas are expected in decreasing order toward 0
      ok = ok && scan.points[i * nl + j + 1].order_param_sq <=
                     scan.points[i * nl + j].order_param_sq + 1e-10;
    }
    scan.fades_with_lambda.push_back(ok);
  }
  return scan;
}

namespace {

// composite Gauss-Legendre of f over [a, b] in n_panels x 32 nodes
template <typename F>
double panel_integrate(F&& f, double a, double b, int n_panels) {
  std::vector<double> x, w;
  double acc = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double lo = a + (b - a) * p / n_panels;
    const double hi = a + (b - a) * (p + 1) / n_panels;
    gauss_legendre(32, lo, hi, x, w);
    for (int i = 0; i < 32; ++i) acc += w[i] * f(x[i]);
  }
  return acc;
}

}  // namespace

PathologicalReport pathological_weight(double volume, double beta_lambda) {
  if (volume <= 1.0)
    throw std::invalid_argument("pathological_weight: volume must exceed 1");
  const double c = beta_lambda * volume;
  if (c < 0.0)
    throw std::invalid_argument("pathological_weight: beta*lambda must be >= 0");
  if (c > 600.0)
    throw std::invalid_argument(
        "pathological_weight: tilt beta*lambda*V too large for direct Bessel "
        "evaluation (keep it below 600)");

  PathologicalReport rep;
  rep.volume = volume;
  rep.beta_lambda = beta_lambda;
  rep.tilt = c;

  const double inner = (volume * volume) - volume + 1.0 / volume;
  const double outer = 1.0 / volume;
  const double split = 1.0 / volume;

  // radial integrals: integral over d^2 zeta of f(|zeta|) = 2 int f(r) r dr
  auto radial = [&](auto&& f) {
    const int panels = std::max(8, int(c / 4.0) + 1);
    return 2.0 * (inner * panel_integrate(f, 0.0, split, 4) +
                  outer * panel_integrate(f, split, 1.0, panels));
  };

  rep.normalization = radial([](double r) { return r; });
  rep.second_moment = radial([](double r) { return r * r * r; });

  if (c == 0.0) {
    rep.tilted_mean_x = 0.0;
    rep.localization = rep.second_moment + 1.0;
    return rep;
  }

  // angular integrals of exp(-c r cos t) against 1 and cos t give I0 and -I1
  const double denom = radial([&](double r) { return std::cyl_bessel_i(0, c * r) * r; });
  const double num_x = -radial([&](double r) { return std::cyl_bessel_i(1, c * r) * r * r; });
  const double num_s = radial([&](double r) { return std::cyl_bessel_i(0, c * r) * r * r * r; });
  rep.tilted_mean_x = num_x / denom;
  rep.localization = num_s / denom + 2.0 * rep.tilted_mean_x + 1.0;
  return rep;
}

}  // namespace cnumlab
