#include "cnumlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cnumlab/griffiths.hpp"
#include "cnumlab/magnet.hpp"
#include "cnumlab/order.hpp"

namespace cnumlab {

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::logic_error("CsvTable: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text_;
}

GasParams to_gas_params(const GasConfig& cfg) {
  return make_chain_gas(cfg.n_side, cfg.volume, cfg.g, cfg.g1, cfg.mu,
                        cfg.lambda, cfg.beta);
}

bool truncation_adequate(const GasParams& params, int n_max, double rel_tol) {
  const std::size_t n_modes = params.modes.size();
  std::vector<int> caps(n_modes, n_max);
  const FockBasis base(params.modes, caps, std::nullopt);
  caps[0] = n_max + 2;  // deepen only the zero mode; the rest cancels anyway
  const FockBasis deeper(params.modes, caps, std::nullopt);
  const double d = partition_full(params, deeper).log_value -
                   partition_full(params, base).log_value;
  return std::abs(std::expm1(d)) <= rel_tol;
}

std::vector<AuditPoint> sample_audit_suite(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<AuditPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100000)
      throw std::runtime_error("sample_audit_suite: acceptance screens reject "
                               "everything; ranges and screens disagree");
    const int n_side = static_cast<int>(rng.below(2));
    const int n_max = 4 + static_cast<int>(rng.below(3));
    const double beta = rng.uniform(0.2, 4.0);
    const double mu = rng.uniform(-2.0, 0.3);
    double lambda = rng.uniform(0.0, 0.8);
    if (out.size() % 4 == 0) lambda = 0.0;  // keep untilted points in the mix
    const double g = rng.uniform(0.0, 1.0);
    const double g1_draw = rng.uniform();
    const double g1 = n_side >= 1 ? g1_draw * g : 0.0;
    const double volume = rng.uniform(1.0, 6.0);

    if (mu > -0.05 && g < 0.05) continue;  // nothing holds the density down

    GasParams params;
    try {
      params = make_chain_gas(n_side, volume, g, g1, mu, lambda, beta);
      recommended_radius(params.with_mu(mu + 2.0 * params.phi / volume + 1e-4));
    } catch (const std::exception&) {
      continue;  // unstable zero-mode exponent at this truncation
    }
    if (!truncation_adequate(params, n_max, 1e-9)) continue;
    out.push_back({params, n_max});
  }
  return out;
}

double resolve_radius(const GasParams& params, const GridConfig& grid,
                      bool audit_shift) {
  if (grid.radius > 0.0) return grid.radius;
  const double shift =
      audit_shift ? 2.0 * params.phi / params.volume() + 1e-4 : 0.0;
  return recommended_radius(params.with_mu(params.mu + shift));
}

namespace {

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string compact_time(const std::string& iso) {
  std::string out;
  for (char c : iso)
    if (std::isdigit(static_cast<unsigned char>(c))) out += c;
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

nlohmann::json gas_json(const GasParams& params, int n_max) {
  return {{"n_side", (int(params.modes.size()) - 1) / 2},
          {"n_max", n_max},
          {"volume", params.volume()},
          {"g", params.nu_zero()},
          {"g1", params.nu_of({1})},
          {"mu", params.mu},
          {"lambda", params.lambda},
          {"beta", params.beta},
          {"phi", params.phi}};
}

nlohmann::json report_json(const EnsembleReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"id", c.id},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"slack", c.slack},
                      {"pass", c.pass}});
  return {{"mu", rep.mu},
          {"lambda", rep.lambda},
          {"beta", rep.beta},
          {"volume", rep.volume},
          {"n_modes", rep.n_modes},
          {"n_max", rep.n_max},
          {"tol_quad", rep.tol_quad},
          {"xi", rep.xi},
          {"xi_prime", rep.xi_prime},
          {"xi_dprime", rep.xi_dprime},
          {"xi_max", rep.xi_max},
          {"xi_dprime_max", rep.xi_dprime_max},
          {"p", rep.p},
          {"p_prime", rep.p_prime},
          {"p_dprime", rep.p_dprime},
          {"p_max", rep.p_max},
          {"z_max", rep.z_max},
          {"rho_dprime", rep.rho_dprime},
          {"degenerate_max", rep.degenerate_max},
          {"cutoff_warning", rep.cutoff_warning},
          {"checks", checks},
          {"all_pass", rep.all_pass}};
}

std::vector<std::string> audit_csv_row(const EnsembleReport& rep) {
  double max_slack = 0.0;
  for (const auto& c : rep.checks) max_slack = std::max(max_slack, c.slack);
  return {format_g(rep.mu),       format_g(rep.lambda),
          format_g(rep.beta),     format_g(rep.volume),
          format_g(rep.xi_prime), format_g(rep.xi),
          format_g(rep.xi_dprime), format_g(rep.xi_max),
          format_g(max_slack),    rep.all_pass ? "pass" : "fail"};
}

EnsembleReport audit_point(const GasParams& params, int n_max,
                           const RunConfig& cfg) {
  const FockBasis full = build_basis(params.modes, n_max);
  const FockBasis prime = build_prime_basis(params.modes, n_max);
  const RadialGrid grid(resolve_radius(params, cfg.grid, true),
                        cfg.grid.radial_nodes, cfg.grid.angular_nodes);
  AuditOptions opts;
  opts.tol_quad = cfg.tol_quad;
  opts.par.workers = cfg.workers;
  return audit_chain(params, full, prime, grid, opts);
}

RunOutcome finish(const RunConfig& cfg, nlohmann::json archive,
                  const std::map<std::string, std::string>& files,
                  int exit_code) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  RunOutcome out;
  out.exit_code = exit_code;
  out.output_dir = cfg.output_dir;

  const std::string stamp = timestamp_utc();
  archive["schema_version"] = 1;
  archive["run_id"] = cfg.hash() + "-" + compact_time(stamp);
  archive["timestamp"] = stamp;
  archive["config_hash"] = cfg.hash();
  archive["experiment"] = cfg.experiment;
  archive["config"] = cfg.to_json();
  archive["exit_code"] = exit_code;

  for (const auto& [name, text] : files) {
    const std::string path = (fs::path(cfg.output_dir) / name).string();
    write_text(path, text);
    out.files.push_back(path);
  }
  const std::string run_path = (fs::path(cfg.output_dir) / "run.json").string();
  write_text(run_path, archive.dump(2) + "\n");
  out.files.push_back(run_path);
  out.archive = std::move(archive);
  return out;
}

RunOutcome run_audit(const RunConfig& cfg) {
  const auto suite = sample_audit_suite(cfg.audit.count, cfg.audit.seed);
  CsvTable csv({"mu", "lambda", "beta", "V", "Xi_prime", "Xi", "Xi_dprime",
                "Xi_max", "slack", "verdict"});
  nlohmann::json records = nlohmann::json::array();
  int failures = 0, warnings = 0;
  std::ostringstream summary;
  summary << "audit suite: " << suite.size() << " configurations, seed "
          << cfg.audit.seed << "\n";
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const EnsembleReport rep = audit_point(suite[i].params, suite[i].n_max, cfg);
    csv.row(audit_csv_row(rep));
    nlohmann::json rec = report_json(rep);
    rec["gas"] = gas_json(suite[i].params, suite[i].n_max);
    records.push_back(rec);
    if (!rep.all_pass) ++failures;
    if (rep.cutoff_warning) ++warnings;
    summary << "  [" << (rep.all_pass ? "pass" : "FAIL") << "] mu="
            << format_g(rep.mu) << " lambda=" << format_g(rep.lambda)
            << " beta=" << format_g(rep.beta) << " V=" << format_g(rep.volume)
            << " n_max=" << rep.n_max;
    for (const auto& c : rep.checks)
      if (!c.pass)
        summary << "  !" << c.id << " lhs=" << format_g(c.lhs)
                << " rhs=" << format_g(c.rhs);
    summary << "\n";
  }
  summary << (failures == 0 ? "all checks passed" :
              std::to_string(failures) + " configuration(s) failed") << "\n";
  if (warnings > 0)
    summary << warnings << " configuration(s) reported grid cutoff warnings\n";

  nlohmann::json archive;
  archive["records"] = records;
  archive["summary"] = {{"configurations", suite.size()},
                        {"failures", failures},
                        {"cutoff_warnings", warnings}};
  return finish(cfg, archive,
                {{"audit.csv", csv.text()}, {"audit_summary.txt", summary.str()}},
                failures == 0 ? 0 : 2);
}

RunOutcome run_sweep(const RunConfig& cfg) {
  auto axis = [](const std::vector<double>& ax, double fallback) {
    return ax.empty() ? std::vector<double>{fallback} : ax;
  };
  const auto mus = axis(cfg.sweep.mu, cfg.gas.mu);
  const auto lambdas = axis(cfg.sweep.lambda, cfg.gas.lambda);
  const auto betas = axis(cfg.sweep.beta, cfg.gas.beta);
  const auto volumes = axis(cfg.sweep.volume, cfg.gas.volume);

  CsvTable csv({"mu", "lambda", "beta", "V", "p", "p_prime", "p_dprime",
                "p_max", "gap_max", "gap_symbol", "verdict"});
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json trends = nlohmann::json::array();
  int failures = 0;
  // volume is the innermost axis so each (mu, lambda, beta) family is a
  // contiguous run of rows ordered by V
  for (double mu : mus)
    for (double lambda : lambdas)
      for (double beta : betas) {
        std::vector<EnsembleReport> family;
        for (double volume : volumes) {
          GasParams params = make_chain_gas(cfg.gas.n_side, volume, cfg.gas.g,
                                            cfg.gas.g1, mu, lambda, beta);
          const EnsembleReport rep = audit_point(params, cfg.gas.n_max, cfg);
          if (!rep.all_pass) ++failures;
          records.push_back(report_json(rep));
          family.push_back(rep);
        }
        const auto rows = pressure_gap_trend(family);
        nlohmann::json trend = nlohmann::json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& r = rows[i];
          csv.row({format_g(mu), format_g(lambda), format_g(beta),
                   format_g(r.volume), format_g(r.p), format_g(r.p_prime),
                   format_g(r.p_dprime), format_g(r.p_max),
                   format_g(r.gap_max), format_g(r.gap_symbol),
                   family[i].all_pass ? "pass" : "fail"});
          trend.push_back({{"volume", r.volume},
                           {"gap_max", r.gap_max},
                           {"gap_symbol", r.gap_symbol}});
        }
        trends.push_back({{"mu", mu},
                          {"lambda", lambda},
                          {"beta", beta},
                          {"rows", trend}});
      }

  nlohmann::json archive;
  archive["records"] = records;
  archive["gap_trends"] = trends;
  archive["summary"] = {{"points", records.size()}, {"failures", failures}};
  return finish(cfg, archive, {{"sweep.csv", csv.text()}},
                failures == 0 ? 0 : 2);
}

RunOutcome run_weights(const RunConfig& cfg) {
  const GasParams params = to_gas_params(cfg.gas);
  const FockBasis full = build_basis(params.modes, cfg.gas.n_max);
  const FockBasis prime = build_prime_basis(params.modes, cfg.gas.n_max);
  const RadialGrid grid(resolve_radius(params, cfg.grid, false),
                        cfg.grid.radial_nodes, cfg.grid.angular_nodes);
  ParallelConfig par{cfg.workers};

  const WeightDensity w = weight_full(params, full, prime, grid, par);
  const SubstitutedTraces upper =
      partition_substituted(params, prime, grid, SymbolKind::Upper, par);
  const WeightDensity wpp = weight_substituted(upper, grid);

  // exact tilt identity at finite size: W''_{mu,lambda} equals the lambda=0
  // density re-weighted by exp(-beta lambda sqrt(V) (z + z*)) and renormalized
  const SubstitutedTraces upper0 = partition_substituted(
      params.with_lambda(0.0), prime, grid, SymbolKind::Upper, par);
  const double tilt = params.beta * params.lambda * std::sqrt(params.volume());
  std::vector<double> tilted_log(grid.size());
  double lse = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    tilted_log[i] = upper0.log_traces[i] - tilt * 2.0 * grid.point(i).real();
    lse = std::max(lse, tilted_log[i] + std::log(grid.weight(i)));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    acc += std::exp(tilted_log[i] + std::log(grid.weight(i)) - lse);
  const double log_norm = lse + std::log(acc);
  double peak = 0.0, tilt_diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    peak = std::max(peak, wpp.values[i]);
  for (std::size_t i = 0; i < grid.size(); ++i)
    tilt_diff = std::max(
        tilt_diff, std::abs(std::exp(tilted_log[i] - log_norm) - wpp.values[i]));
  const double tilt_rel = tilt_diff / peak;

  const CondensateRecord rec = condensate_observables(params, full, prime,
                                                      grid, par);

  // radial marginals: angular mean of each density per radius
  CsvTable csv({"r", "weight_full", "weight_dprime"});
  const int na = grid.angular_nodes();
  for (int ir = 0; ir < grid.radial_nodes(); ++ir) {
    double mw = 0.0, mpp = 0.0;
    for (int ia = 0; ia < na; ++ia) {
      mw += w.values[std::size_t(ir) * na + ia];
      mpp += wpp.values[std::size_t(ir) * na + ia];
    }
    csv.row({format_g(std::sqrt(grid.s_node(ir))), format_g(mw / na),
             format_g(mpp / na)});
  }

  nlohmann::json archive;
  archive["records"] = {{{"gas", gas_json(params, cfg.gas.n_max)},
                         {"radius", grid.radius()},
                         {"weight_norm", w.norm},
                         {"weight_mean_a0_re", w.mean_a0.real()},
                         {"weight_mean_a0_im", w.mean_a0.imag()},
                         {"weight_mean_n0", w.mean_n0},
                         {"dprime_norm", wpp.norm},
                         {"tilt_identity_rel_error", tilt_rel},
                         {"a0_direct_re", rec.a0_direct.real()},
                         {"a0_direct_im", rec.a0_direct.imag()},
                         {"n0_direct", rec.n0_direct},
                         {"n0_density", rec.n0_density},
                         {"order_param_sq", rec.order_param_sq},
                         {"zmax_density", rec.zmax_density},
                         {"cauchy_schwarz_ok", rec.cauchy_schwarz_ok},
                         {"cutoff_warning", upper.cutoff_warning}}};
  archive["summary"] = {{"tilt_identity_rel_error", tilt_rel},
                        {"weight_norm", w.norm}};
  return finish(cfg, archive, {{"weights.csv", csv.text()}}, 0);
}

RunOutcome run_quasi_average(const RunConfig& cfg) {
  const GasParams base = to_gas_params(cfg.gas);
  ParallelConfig par{cfg.workers};
  const QuasiAverageScan scan = quasi_average_scan(
      base, cfg.gas.n_max, cfg.quasi.volumes, cfg.quasi.lambdas, par);

  CsvTable csv({"V", "lambda", "order_param_sq", "n0_density", "zmax_density"});
  for (const auto& p : scan.points)
    csv.row({format_g(p.volume), format_g(p.lambda), format_g(p.order_param_sq),
             format_g(p.n0_density), format_g(p.zmax_density)});

  nlohmann::json records = nlohmann::json::array();
  for (const auto& p : scan.points)
    records.push_back({{"volume", p.volume},
                       {"lambda", p.lambda},
                       {"order_param_sq", p.order_param_sq},
                       {"n0_density", p.n0_density},
                       {"zmax_density", p.zmax_density}});
  nlohmann::json archive;
  archive["records"] = records;
  archive["summary"] = {{"grows_with_volume", scan.grows_with_volume},
                        {"fades_with_lambda", scan.fades_with_lambda}};
  return finish(cfg, archive, {{"quasi_average.csv", csv.text()}}, 0);
}

RunOutcome run_magnet(const RunConfig& cfg) {
  std::vector<int> sizes = cfg.magnet.sizes;
  if (sizes.empty()) sizes = {cfg.magnet.length};
  std::sort(sizes.begin(), sizes.end());

  CsvTable csv({"sites", "B", "g", "m", "m2", "m_from_g"});
  nlohmann::json records = nlohmann::json::array();
  MeasureSequence seq;
  bool variance_ok = true, derivative_ok = true;
  for (int length : sizes) {
    SpinLattice lattice;
    lattice.dimension = cfg.magnet.dimension;
    lattice.length = length;
    lattice.spin = cfg.magnet.spin;
    lattice.coupling = cfg.magnet.coupling;
    lattice.beta = cfg.magnet.beta;
    const MagnetSystem system(lattice);
    for (int i = 0; i < cfg.magnet.field_count; ++i) {
      const double b =
          cfg.magnet.field_count == 1
              ? cfg.magnet.field_min
              : cfg.magnet.field_min +
                    (cfg.magnet.field_max - cfg.magnet.field_min) * i /
                        (cfg.magnet.field_count - 1);
      const MagnetReport rep = system.thermodynamics(b);
      variance_ok = variance_ok && rep.m2 >= rep.m * rep.m - 1e-10;
      derivative_ok = derivative_ok && std::abs(rep.m - rep.m_from_g) <= 1e-6;
      csv.row({std::to_string(lattice.sites()), format_g(b), format_g(rep.g),
               format_g(rep.m), format_g(rep.m2), format_g(rep.m_from_g)});
      records.push_back({{"sites", lattice.sites()},
                         {"B", b},
                         {"g", rep.g},
                         {"m", rep.m},
                         {"m2", rep.m2},
                         {"m_from_g", rep.m_from_g}});
    }
    seq.entries.push_back(
        system.magnetization_distribution(cfg.magnet.distribution_field));
  }
  seq.sort_by_n();

  nlohmann::json archive;
  archive["records"] = records;
  archive["summary"] = {{"variance_ok", variance_ok},
                        {"derivative_ok", derivative_ok},
                        {"sizes", sizes}};
  return finish(cfg, archive,
                {{"magnet.csv", csv.text()},
                 {"measures.json", seq.to_json().dump(2) + "\n"}},
                0);
}

RunOutcome run_griffiths(const RunConfig& cfg) {
  MeasureSequence seq;
  if (cfg.griffiths.source == "file") {
    std::ifstream in(cfg.griffiths.path);
    if (!in)
      throw std::invalid_argument("griffiths: cannot open " + cfg.griffiths.path);
    nlohmann::json j;
    in >> j;
    seq = MeasureSequence::from_json(j);
  } else {
    for (int n : cfg.griffiths.sizes) {
      if (cfg.griffiths.source == "coins")
        seq.entries.push_back(coin_measure(n));
      else if (cfg.griffiths.source == "two_point")
        seq.entries.push_back(two_point_measure(n));
      else
        seq.entries.push_back(tilted_coin_measure(n, cfg.griffiths.field));
    }
    seq.sort_by_n();
  }

  // y grid: uniform on [-y_max, y_max] joined with 0 and the +-h ladder
  std::vector<double> y;
  for (int i = 0; i < cfg.griffiths.y_count; ++i)
    y.push_back(-cfg.griffiths.y_max +
                2.0 * cfg.griffiths.y_max * i / (cfg.griffiths.y_count - 1));
  y.push_back(0.0);
  for (double h : cfg.griffiths.h_ladder) {
    y.push_back(h);
    y.push_back(-h);
  }
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end(),
                      [](double a, double b) {
                        return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
                      }),
          y.end());

  const RateFunctionEstimate est = rate_function(seq, y);
  const OneSidedDerivatives deriv =
      one_sided_derivatives(est, cfg.griffiths.h_ladder);
  const ConcentrationReport conc =
      concentration_check(seq, deriv.a_minus, deriv.a_plus, cfg.griffiths.eps);

  // long format; n = 0 labels the extrapolated limit
  CsvTable rate_csv({"n", "y", "f"});
  for (std::size_t e = 0; e < est.sizes.size(); ++e)
    for (std::size_t i = 0; i < y.size(); ++i)
      rate_csv.row({format_g(est.sizes[e]), format_g(y[i]),
                    format_g(est.f_n[e][i])});
  for (std::size_t i = 0; i < y.size(); ++i)
    rate_csv.row({"0", format_g(y[i]), format_g(est.f[i])});

  CsvTable tail_csv({"n", "tail_mass"});
  for (std::size_t i = 0; i < conc.sizes.size(); ++i)
    tail_csv.row({format_g(conc.sizes[i]), format_g(conc.tail_mass[i])});

  nlohmann::json archive;
  archive["records"] = {{{"a_plus", deriv.a_plus},
                         {"a_minus", deriv.a_minus},
                         {"err_plus", deriv.err_plus},
                         {"err_minus", deriv.err_minus},
                         {"monotone_plus", deriv.monotone_plus},
                         {"monotone_minus", deriv.monotone_minus},
                         {"convex", est.convex},
                         {"eps", conc.eps},
                         {"slope", conc.slope},
                         {"c_fit", conc.c_fit},
                         {"decaying", conc.decaying}}};
  archive["summary"] = archive["records"][0];
  return finish(cfg, archive,
                {{"rate.csv", rate_csv.text()}, {"tails.csv", tail_csv.text()}},
                0);
}

RunOutcome run_pathological(const RunConfig& cfg) {
  CsvTable csv({"V", "beta_lambda", "tilt", "normalization", "second_moment",
                "tilted_mean_x", "localization"});
  nlohmann::json records = nlohmann::json::array();
  auto add = [&](const PathologicalReport& rep) {
    csv.row({format_g(rep.volume), format_g(rep.beta_lambda),
             format_g(rep.tilt), format_g(rep.normalization),
             format_g(rep.second_moment), format_g(rep.tilted_mean_x),
             format_g(rep.localization)});
    records.push_back({{"V", rep.volume},
                       {"beta_lambda", rep.beta_lambda},
                       {"tilt", rep.tilt},
                       {"normalization", rep.normalization},
                       {"second_moment", rep.second_moment},
                       {"tilted_mean_x", rep.tilted_mean_x},
                       {"localization", rep.localization}});
  };
  for (double v : cfg.pathological.volumes) add(pathological_weight(v, 0.0));
  add(pathological_weight(cfg.pathological.tilt_volume,
                          cfg.pathological.beta_lambda));

  nlohmann::json archive;
  archive["records"] = records;
  archive["summary"] = {{"rows", records.size()}};
  return finish(cfg, archive, {{"pathological.csv", csv.text()}}, 0);
}

}  // namespace

RunOutcome run_experiment(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == "audit") return run_audit(cfg);
  if (cfg.experiment == "sweep") return run_sweep(cfg);
  if (cfg.experiment == "weights") return run_weights(cfg);
  if (cfg.experiment == "quasi-average") return run_quasi_average(cfg);
  if (cfg.experiment == "magnet") return run_magnet(cfg);
  if (cfg.experiment == "griffiths") return run_griffiths(cfg);
  if (cfg.experiment == "pathological") return run_pathological(cfg);
  throw std::invalid_argument("run_experiment: unknown experiment " +
                              cfg.experiment);
}

}  // namespace cnumlab
