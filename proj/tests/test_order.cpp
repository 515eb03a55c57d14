#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cnumlab/order.hpp"
#include "cnumlab/thermo.hpp"

using namespace cnumlab;

namespace {

RadialGrid audit_grid(const GasParams& p, int radial = 160, int angular = 48) {
  const double r =
      recommended_radius(p.with_mu(p.mu + 2.0 * p.phi / p.volume() + 1e-4));
  return RadialGrid(r, radial, angular);
}

}  // namespace

TEST_CASE("full weight density integrates to one and matches direct traces") {
  const GasParams p = make_chain_gas(1, 3.0, 0.4, 0.1, -0.8, 0.15, 1.2);
  const int n_max = 4;
  const FockBasis full = build_basis(p.modes, n_max);
  const FockBasis prime = build_prime_basis(p.modes, n_max);
  const RadialGrid grid = audit_grid(p);

  const WeightDensity w = weight_full(p, full, prime, grid);
  CHECK(w.norm == doctest::Approx(1.0).epsilon(1e-8));

  const GibbsState gibbs =
      gibbs_state(build_H_mu_lambda(p, full).to_dense(), p.beta);
  const cplx a0 = gibbs_expectation(gibbs, annihilation(full, 0).to_dense());
  const cplx n0 =
      gibbs_expectation(gibbs, mode_number_operator(full, 0).to_dense());
  CHECK(std::abs(w.mean_a0 - a0) < 1e-8 * (1.0 + std::abs(a0)));
  CHECK(std::abs(w.mean_n0 - n0.real()) < 1e-8 * (1.0 + n0.real()));
}

TEST_CASE("substituted weight is the tilted zero-field weight") {
  const GasParams p = make_chain_gas(1, 2.5, 0.5, 0.1, -1.0, 0.3, 1.0);
  const FockBasis prime = build_prime_basis(p.modes, 4);
  const RadialGrid grid = audit_grid(p);

  const auto tilted =
      partition_substituted(p, prime, grid, SymbolKind::Upper);
  const auto flat =
      partition_substituted(p.with_lambda(0.0), prime, grid, SymbolKind::Upper);
  const WeightDensity w = weight_substituted(tilted, grid);
  CHECK(w.norm == doctest::Approx(1.0).epsilon(1e-10));

  // re-weight the lambda = 0 traces by the explicit exponential and compare
  const double c = p.beta * p.lambda * std::sqrt(p.volume());
  double norm = 0.0;
  std::vector<double> re(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    re[i] = std::exp(flat.log_traces[i] - c * 2.0 * grid.point(i).real() -
                     tilted.log_xi);
    norm += grid.weight(i) * re[i];
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
  double peak = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    peak = std::max(peak, w.values[i]);
    diff = std::max(diff, std::abs(w.values[i] - re[i]));
  }
  CHECK(diff / peak < 1e-10);
}

TEST_CASE("order parameter vanishes without the breaking field") {
  const GasParams p = make_chain_gas(1, 3.0, 0.5, 0.2, -0.9, 0.0, 1.4);
  const FockBasis full = build_basis(p.modes, 4);
  const FockBasis prime = build_prime_basis(p.modes, 4);
  const CondensateRecord rec =
      condensate_observables(p, full, prime, audit_grid(p));
  CHECK(std::abs(rec.a0_direct) < 1e-12);
  CHECK(rec.n0_direct > 0.0);
  CHECK(rec.cauchy_schwarz_ok);
}

TEST_CASE("condensate routes agree under a tilt") {
  const GasParams p = make_chain_gas(1, 4.0, 0.5, 0.0, -1.0, 0.2, 1.0);
  const FockBasis full = build_basis(p.modes, 6);
  const FockBasis prime = build_prime_basis(p.modes, 6);
  const CondensateRecord rec =
      condensate_observables(p, full, prime, audit_grid(p));
  CHECK(std::abs(rec.a0_weight - rec.a0_direct) <
        1e-6 * (1.0 + std::abs(rec.a0_direct)));
  CHECK(std::abs(rec.n0_weight - rec.n0_direct) < 1e-6 * (1.0 + rec.n0_direct));
  CHECK(rec.a0_direct.real() < 0.0);  // the +sqrt(V) lambda coupling pushes
  CHECK(rec.order_param_sq ==
        doctest::Approx(std::norm(rec.a0_direct) / 4.0).epsilon(1e-12));
  CHECK(rec.cauchy_schwarz_ok);
}

TEST_CASE("quasi average scan flags the expected trends") {
  const GasParams base = make_chain_gas(0, 2.0, 0.4, 0.0, -0.6, 0.2, 1.5);
  const QuasiAverageScan scan =
      quasi_average_scan(base, 8, {2.0, 4.0, 8.0}, {0.2, 0.1, 0.05});
  REQUIRE(scan.points.size() == 9);
  for (const auto& pt : scan.points) {
    CHECK(pt.order_param_sq > 0.0);
    CHECK(pt.order_param_sq <= pt.n0_density + 1e-10);
  }
  for (bool ok : scan.grows_with_volume) CHECK(ok);
  for (bool ok : scan.fades_with_lambda) CHECK(ok);
}

TEST_CASE("piecewise weight example: closed forms and localization") {
  for (double v : {10.0, 100.0, 1000.0}) {
    const PathologicalReport rep = pathological_weight(v, 0.0);
    CHECK(std::abs(rep.normalization - 1.0) < 1e-10);
    const double expect = 0.5 / v + 0.5 / (v * v) - 0.5 / (v * v * v);
    CHECK(rep.second_moment == doctest::Approx(expect).epsilon(1e-8));
    CHECK(rep.second_moment <= 2.0 / v);
    CHECK(rep.tilted_mean_x == 0.0);
    // no localization without a tilt: E|zeta + 1|^2 stays near 1
    CHECK(rep.localization == doctest::Approx(1.0 + expect).epsilon(1e-8));
  }

  const PathologicalReport tilted = pathological_weight(200.0, 1.0);
  CHECK(tilted.tilt == doctest::Approx(200.0));
  CHECK(std::abs(tilted.tilted_mean_x + 1.0) < 0.05);
  CHECK(tilted.localization < 0.05);

  CHECK_THROWS(pathological_weight(0.5, 0.0));    // needs 1/V < 1
  CHECK_THROWS(pathological_weight(1000.0, 1.0)); // tilt overflow guard
}
