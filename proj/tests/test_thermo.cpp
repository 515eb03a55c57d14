#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cnumlab/thermo.hpp"

using namespace cnumlab;

TEST_CASE("log trace of a diagonal exponential") {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
  h(1, 1) = 1.0;
  h(2, 2) = 2.0;
  const double expect = std::log(1.0 + std::exp(-1.0) + std::exp(-2.0));
  CHECK(log_trace_exp(h, 1.0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("log trace is basis independent") {
  Eigen::MatrixXcd h(2, 2);
  h << cplx(1.0, 0.0), cplx(0.3, 0.4), cplx(0.3, -0.4), cplx(-0.5, 0.0);
  // eigenvalues by hand: mean +- sqrt(gap^2 + |off|^2)
  const double mean = 0.25, gap = 0.75;
  const double r = std::sqrt(gap * gap + 0.25);
  const double beta = 1.7;
  const double expect =
      std::log(std::exp(-beta * (mean - r)) + std::exp(-beta * (mean + r)));
  CHECK(log_trace_exp(h, beta) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("single mode oracle values") {
  // H = n with beta = 1 (mu = -1, no kinetic term, no interaction)
  const GasParams p = make_chain_gas(0, 1.0, 0.0, 0.0, -1.0, 0.0, 1.0);
  const FockBasis full = build_basis(p.modes, 60, std::nullopt, 100000);
  const FockBasis prime = build_prime_basis(p.modes, 60);
  const RadialGrid grid(8.0);

  const double xi = partition_full(p, full).value;
  const double xi_prime =
      partition_substituted(p, prime, grid, SymbolKind::Lower).xi;
  const double xi_dprime =
      partition_substituted(p, prime, grid, SymbolKind::Upper).xi;

  CHECK(xi_prime == doctest::Approx(1.000000).epsilon(1e-6));
  CHECK(xi == doctest::Approx(1.0 / (1.0 - std::exp(-1.0))).epsilon(1e-6));
  CHECK(xi_dprime == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
  CHECK(xi_prime < xi);
  CHECK(xi < xi_dprime);
}

TEST_CASE("best substitution point of the shifted free mode") {
  // exponent -beta(-mu |z|^2 + 2 sqrt(V) lambda Re z) peaks at sqrt(V) lambda / mu
  const GasParams p = make_chain_gas(0, 4.0, 0.0, 0.0, -0.8, 0.3, 2.0);
  const FockBasis prime = build_prime_basis(p.modes, 6);
  const PmaxResult res = p_max_search(p, prime, SymbolKind::Lower, 6.0);
  CHECK(res.z_max == doctest::Approx(2.0 * 0.3 / -0.8).epsilon(1e-6));
  // log trace = -beta h(z_max) with h(x) = -mu x^2 + 2 sqrt(V) lambda x
  const double s = std::pow(2.0 * 0.3 / 0.8, 2);
  CHECK(res.log_trace_max ==
        doctest::Approx(-2.0 * (0.8 * s - 2.0 * 0.6 * std::sqrt(s)))
            .epsilon(1e-8));
}

TEST_CASE("partition function is even in the breaking field") {
  const GasParams p = make_chain_gas(1, 3.0, 0.5, 0.2, -1.0, 0.35, 1.1);
  const FockBasis full = build_basis(p.modes, 5);
  const double plus = partition_full(p, full).log_value;
  const double minus = partition_full(p.with_lambda(-0.35), full).log_value;
  CHECK(plus == doctest::Approx(minus).epsilon(1e-10));
}

TEST_CASE("recommended radius grows with the tilt and rejects instability") {
  const GasParams tame = make_chain_gas(0, 2.0, 0.0, 0.0, -1.0, 0.0, 1.0);
  const double r0 = recommended_radius(tame);
  CHECK(r0 >= 8.0);

  const GasParams tilted = make_chain_gas(0, 2.0, 0.0, 0.0, -1.0, 3.0, 1.0);
  CHECK(recommended_radius(tilted) >= r0);

  const GasParams unstable = make_chain_gas(0, 2.0, 0.0, 0.0, 1.0, 0.0, 1.0);
  CHECK_THROWS(recommended_radius(unstable));
}

TEST_CASE("audit chain passes on two pinned configurations") {
  for (const GasParams& p :
       {make_chain_gas(1, 3.0, 0.5, 0.1, -1.0, 0.0, 1.5),
        make_chain_gas(1, 4.0, 0.6, 0.2, -1.2, 0.25, 2.0)}) {
    const int n_max = 5;
    const FockBasis full = build_basis(p.modes, n_max);
    const FockBasis prime = build_prime_basis(p.modes, n_max);
    const RadialGrid grid(
        recommended_radius(p.with_mu(p.mu + 2.0 * p.phi / p.volume() + 1e-4)),
        160, 48);
    const EnsembleReport rep = audit_chain(p, full, prime, grid, {});
    REQUIRE(rep.checks.size() == 5);
    for (const auto& c : rep.checks) {
      INFO(c.id, " lhs=", c.lhs, " rhs=", c.rhs);
      CHECK(c.pass);
    }
    CHECK(rep.all_pass);
    CHECK(rep.xi_prime <= rep.xi + rep.checks[0].slack);
    CHECK(rep.xi <= rep.xi_dprime + rep.checks[1].slack);
  }
}

TEST_CASE("gap rows shrink with the volume") {
  std::vector<EnsembleReport> reports;
  for (double v : {1.5, 3.0, 6.0}) {
    const GasParams p = make_chain_gas(1, v, 0.5, 0.1, -1.0, 0.1, 1.5);
    const int n_max = 5;
    const FockBasis full = build_basis(p.modes, n_max);
    const FockBasis prime = build_prime_basis(p.modes, n_max);
    const RadialGrid grid(
        recommended_radius(p.with_mu(p.mu + 2.0 * p.phi / v + 1e-4)), 160, 48);
    reports.push_back(audit_chain(p, full, prime, grid, {}));
  }
  const auto rows = pressure_gap_trend(reports);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].gap_max > rows[1].gap_max);
  CHECK(rows[1].gap_max > rows[2].gap_max);
  CHECK(rows[0].gap_symbol > rows[1].gap_symbol);
  CHECK(rows[1].gap_symbol > rows[2].gap_symbol);
  for (const auto& r : rows) {
    CHECK(r.p_prime <= r.p + 1e-12);
    CHECK(r.p <= r.p_dprime + 1e-12);
    CHECK(r.p_max <= r.p + 1e-12);
  }
}
