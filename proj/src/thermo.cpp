#include "cnumlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace cnumlab {

namespace {

double logsumexp(const std::vector<double>& terms) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double t : terms) peak = std::max(peak, t);
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

}  // namespace

double log_trace_exp(const Eigen::MatrixXcd& h, double beta) {
  const std::size_t n = h.rows();
  if (n == 0) throw std::invalid_argument("log_trace_exp: empty matrix");
  if (n <= kEighLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double e0 = ev.minCoeff();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      acc += std::exp(-beta * (ev[i] - e0));
    return -beta * e0 + std::log(acc);
  }
  // large matrices: scaled-and-squared exponential of the shifted operator
  double shift = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double row = h(i, i).real();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row -= std::abs(h(i, j));
    shift = std::min(shift, row);  // Gershgorin lower bound on the spectrum
  }
  const Eigen::MatrixXcd m = (-beta * (h - shift * Eigen::MatrixXcd::Identity(n, n))).exp();
  return -beta * shift + std::log(m.trace().real());
}

PartitionValue partition_full(const GasParams& params, const FockBasis& full) {
  const double log_xi = log_trace_exp(build_H_mu_lambda(params, full).to_dense(),
                                      params.beta);
  return {log_xi, std::exp(log_xi)};
}

SubstitutedTraces partition_substituted(const GasParams& params,
                                        const FockBasis& prime,
                                        const RadialGrid& grid, SymbolKind kind,
                                        const ParallelConfig& par) {
  grid.validate();
  const SubstitutedFamily family(params, prime);
  SubstitutedTraces out;
  out.kind = kind;
  out.log_traces.resize(grid.size());
  parallel_for(grid.size(), par, [&](std::size_t i) {
    out.log_traces[i] = log_trace_exp(family.matrix(grid.point(i), kind),
                                      params.beta);
  });

  std::vector<double> terms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    terms[i] = std::log(grid.weight(i)) + out.log_traces[i];
  out.log_xi = logsumexp(terms);
  out.xi = std::exp(out.log_xi);

  // integrand decay at the radial cutoff, relative to its peak
  const int na = grid.angular_nodes();
  const std::size_t rim = std::size_t(grid.radial_nodes() - 1) * na;
  double peak = -std::numeric_limits<double>::infinity();
  double rim_peak = peak;
  for (std::size_t i = 0; i < grid.size(); ++i)
    peak = std::max(peak, out.log_traces[i]);
  for (std::size_t i = rim; i < grid.size(); ++i)
    rim_peak = std::max(rim_peak, out.log_traces[i]);
  out.cutoff_ratio = std::exp(rim_peak - peak);
  out.cutoff_warning = out.cutoff_ratio > 1e-10;
  return out;
}

double recommended_radius(const GasParams& params) {
  // Scalar model of the zero-mode upper-symbol exponent along the direction
  // favored by the field: log-integrand f(s) up to z-independent terms, with
  // s = |z|^2.  The radius is placed where f has dropped 46 below its peak
  // (twenty decades), with a floor of 8.
  const double beta = params.beta;
  const double nu0 = params.nu_zero();
  const double v = params.volume();
  const double tilt = 2.0 * std::sqrt(v) * std::abs(params.lambda);
  auto f = [&](double s) {
    return -beta * (-params.mu * (s - 1.0) +
                    0.5 * nu0 / v * (s * s - 4.0 * s + 2.0) -
                    tilt * std::sqrt(s));
  };
  double best = f(0.0);
  double s = 0.0;
  double step = 0.05;
  while (s < 1e6) {
    s += step;
    step = std::min(1.0, step * 1.02);
    const double val = f(s);
    if (val > best) best = val;
    if (best - val >= 46.0)
      return std::max(8.0, std::sqrt(s) + 2.0);
  }
  throw std::runtime_error(
      "recommended_radius: zero-mode integrand does not decay; "
      "parameters are thermodynamically unstable at this truncation");
}

PmaxResult p_max_search(const GasParams& params, const FockBasis& prime,
                        SymbolKind kind, double radius) {
  const SubstitutedFamily family(params, prime);
  const double beta = params.beta;
  auto objective = [&](double x) {
    return log_trace_exp(family.matrix(cplx(x, 0.0), kind), beta);
  };

  // Bracket: the field pushes the maximizer to sign(-lambda) real z, out to
  // about sqrt(V)|lambda| / |mu|; |mu| is floored at 0.05 because for small
  // |mu| the quartic takes over well inside the floored extent.
  const double reach =
      std::sqrt(params.volume()) * std::abs(params.lambda) /
      std::max(std::abs(params.mu), 0.05);
  double lo, hi;
  if (params.lambda > 0.0) {
    lo = -(reach + radius);
    hi = radius;
  } else if (params.lambda < 0.0) {
    lo = -radius;
    hi = reach + radius;
  } else {
    lo = 0.0;  // radial symmetry: scan the nonnegative representative
    hi = radius;
  }

  const int n_scan = 129;
  std::vector<double> fx(n_scan);
  int best = 0;
  for (int i = 0; i < n_scan; ++i) {
    const double x = lo + (hi - lo) * i / (n_scan - 1);
    fx[i] = objective(x);
    if (fx[i] > fx[best]) best = i;
  }

  PmaxResult out;
  // flag distinct near-degenerate local maxima seen in the scan
  for (int i = 1; i + 1 < n_scan; ++i) {
    if (i == best) continue;
    if (fx[i] >= fx[i - 1] && fx[i] >= fx[i + 1] &&
        std::abs(fx[i] - fx[best]) <= 1e-8 * (1.0 + std::abs(fx[best])) &&
        std::abs(i - best) > 1)
      out.degenerate = true;
  }

  double a = lo + (hi - lo) * double(std::max(0, best - 1)) / (n_scan - 1);
  double b = lo + (hi - lo) * double(std::min(n_scan - 1, best + 1)) / (n_scan - 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int iter = 0; iter < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b));
       ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(x1);
    }
  }
  out.z_max = 0.5 * (a + b);
  out.log_trace_max = objective(out.z_max);
  out.trace_max = std::exp(out.log_trace_max);
  out.p_max = out.log_trace_max / (beta * params.volume());
  return out;
}

EnsembleReport audit_chain(const GasParams& params, const FockBasis& full,
                           const FockBasis& prime, const RadialGrid& grid,
                           const AuditOptions& opts) {
  params.validate();
  grid.validate(opts.tol_quad);

  EnsembleReport rep;
  rep.mu = params.mu;
  rep.lambda = params.lambda;
  rep.beta = params.beta;
  rep.volume = params.volume();
  rep.n_modes = static_cast<int>(params.modes.size());
  rep.n_max = full.cap(0);
  rep.tol_quad = opts.tol_quad;

  const double beta_v = params.beta * params.volume();
  const double phi_v = params.phi / params.volume();

  const PartitionValue xi = partition_full(params, full);
  const SubstitutedTraces lower =
      partition_substituted(params, prime, grid, SymbolKind::Lower, opts.par);
  const SubstitutedTraces upper =
      partition_substituted(params, prime, grid, SymbolKind::Upper, opts.par);
  const SubstitutedTraces lower_shift = partition_substituted(
      params.with_mu(params.mu + 2.0 * phi_v), prime, grid, SymbolKind::Lower,
      opts.par);
  const SubstitutedTraces upper_plus = partition_substituted(
      params.with_mu(params.mu + opts.mu_step), prime, grid, SymbolKind::Upper,
      opts.par);
  const SubstitutedTraces upper_minus = partition_substituted(
      params.with_mu(params.mu - opts.mu_step), prime, grid, SymbolKind::Upper,
      opts.par);
  const PmaxResult pmax_lower =
      p_max_search(params, prime, SymbolKind::Lower, grid.radius());
  const PmaxResult pmax_upper =
      p_max_search(params, prime, SymbolKind::Upper, grid.radius());

  rep.xi = xi.value;
  rep.log_xi = xi.log_value;
  rep.xi_prime = lower.xi;
  rep.log_xi_prime = lower.log_xi;
  rep.xi_dprime = upper.xi;
  rep.log_xi_dprime = upper.log_xi;
  rep.xi_max = pmax_lower.trace_max;
  rep.xi_dprime_max = pmax_upper.trace_max;
  rep.p = xi.log_value / beta_v;
  rep.p_prime = lower.log_xi / beta_v;
  rep.p_dprime = upper.log_xi / beta_v;
  rep.p_max = pmax_lower.p_max;
  rep.z_max = pmax_lower.z_max;
  rep.degenerate_max = pmax_lower.degenerate;
  rep.cutoff_warning = lower.cutoff_warning || upper.cutoff_warning;
  rep.rho_dprime =
      (upper_plus.log_xi - upper_minus.log_xi) / (2.0 * opts.mu_step * beta_v);

  auto check = [&](const std::string& id, double lhs, double rhs) {
    InequalityCheck c;
    c.id = id;
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = opts.tol_quad * (1.0 + std::abs(lhs) + std::abs(rhs));
    c.pass = lhs <= rhs + c.slack;
    rep.checks.push_back(c);
  };

  check("jensen_lower", lower.xi, xi.value);
  check("berezin_lieb_upper", xi.value, upper.xi);
  check("shifted_closure", upper.xi,
        lower_shift.xi * std::exp(params.beta * (std::abs(params.mu) + phi_v)));
  check("single_point_lower", pmax_lower.trace_max, xi.value);
  check("density_capture", upper.xi,
        2.0 * (params.volume() * rep.rho_dprime + 1.0) * pmax_upper.trace_max);

  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const InequalityCheck& c) { return c.pass; });
  return rep;
}

std::vector<GapRow> pressure_gap_trend(const std::vector<EnsembleReport>& reports) {
  std::vector<GapRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) {
    GapRow row;
    row.volume = r.volume;
    row.p = r.p;
    row.p_prime = r.p_prime;
    row.p_dprime = r.p_dprime;
    row.p_max = r.p_max;
    row.gap_max = r.p - r.p_max;
    row.gap_symbol = r.p_dprime - r.p_prime;
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const GapRow& a, const GapRow& b) { return a.volume < b.volume; });
  return rows;
}

}  // namespace cnumlab
