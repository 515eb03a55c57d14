#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cnumlab/coherent.hpp"

using namespace cnumlab;

TEST_CASE("gauss legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(3, 0.0, 1.0, x, w);
  double p5 = 0.0, p0 = 0.0;
  for (int i = 0; i < 3; ++i) {
    p5 += w[i] * std::pow(x[i], 5);
    p0 += w[i];
  }
  CHECK(p5 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(p0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("grid quadrature honours the d^2z convention") {
  const RadialGrid grid(8.0);
  CHECK(grid.convention_defect() < 1e-10);
  CHECK_NOTHROW(grid.validate());

  // first moment of the Gaussian in s = |z|^2 is also 1
  const double m1 =
      grid.integrate([](cplx z) { return std::norm(z) * std::exp(-std::norm(z)); });
  CHECK(m1 == doctest::Approx(1.0).epsilon(1e-10));

  // an angular harmonic integrates to zero
  const double osc = grid.integrate(
      [](cplx z) { return z * std::exp(-std::norm(z)); });
  CHECK(std::abs(osc) < 1e-12);
}

TEST_CASE("a too small radius fails validation") {
  const RadialGrid grid(1.0);
  CHECK(grid.convention_defect() > 1e-8);
  CHECK_THROWS(grid.validate());
}

TEST_CASE("coherent amplitudes carry Poisson weights and exact overlaps") {
  const cplx z(0.7, -0.4);
  const auto amp = zero_mode_amplitudes(40, z);
  REQUIRE(amp.size() == 41);

  const double s = std::norm(z);
  for (int n : {0, 1, 5, 12}) {
    double lg = 0.0;
    for (int k = 2; k <= n; ++k) lg += std::log(double(k));
    const double poisson = std::exp(-s + n * std::log(s) - lg);
    CHECK(std::norm(amp[n]) == doctest::Approx(poisson).epsilon(1e-12));
  }

  const cplx z0(-0.3, 0.9);
  const auto amp0 = zero_mode_amplitudes(40, z0);
  cplx overlap = 0.0;
  for (int n = 0; n <= 40; ++n) overlap += std::conj(amp[n]) * amp0[n];
  const double expect = std::exp(-std::norm(z - z0));
  CHECK(std::norm(overlap) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("symbol table") {
  const cplx z(1.2, -0.5);
  const double s = std::norm(z);

  CHECK(monomial_symbol(Monomial::A, z, SymbolKind::Lower) == z);
  CHECK(monomial_symbol(Monomial::A, z, SymbolKind::Upper) == z);
  CHECK(monomial_symbol(Monomial::Adag, z, SymbolKind::Lower) == std::conj(z));
  CHECK(monomial_symbol(Monomial::AA, z, SymbolKind::Upper) == z * z);
  CHECK(monomial_symbol(Monomial::AdagAdag, z, SymbolKind::Lower) ==
        std::conj(z) * std::conj(z));

  CHECK(monomial_symbol(Monomial::AdagA, z, SymbolKind::Lower).real() ==
        doctest::Approx(s));
  CHECK(monomial_symbol(Monomial::AdagA, z, SymbolKind::Upper).real() ==
        doctest::Approx(s - 1.0));
  CHECK(monomial_symbol(Monomial::AdagAdagAA, z, SymbolKind::Lower).real() ==
        doctest::Approx(s * s));
  CHECK(monomial_symbol(Monomial::AdagAdagAA, z, SymbolKind::Upper).real() ==
        doctest::Approx(s * s - 4.0 * s + 2.0));
}

TEST_CASE("upper symbols rebuild the operators they came from") {
  const ModeSet one({{0}}, 1.0, 1);
  const int n_max = 20;
  const FockBasis basis = build_basis(one, n_max);
  const RadialGrid grid(2.0 * std::sqrt(double(n_max)), 200, 4 * n_max + 16);

  for (Monomial m : {Monomial::A, Monomial::Adag, Monomial::AA,
                     Monomial::AdagAdag, Monomial::AdagA, Monomial::AdagAdagAA})
    CHECK(reconstruction_residual(basis, m, grid, n_max / 2) < 1e-8);
}

TEST_CASE("reconstruction residual shrinks as the truncation deepens") {
  const ModeSet one({{0}}, 1.0, 1);
  std::vector<double> residual;
  for (int n_max : {10, 20, 40}) {
    const FockBasis basis =
        build_basis(one, n_max, std::nullopt, std::size_t(100000));
    const RadialGrid grid(2.0 * std::sqrt(double(n_max)),
                          std::max(200, 4 * n_max), 4 * n_max + 16);
    residual.push_back(
        reconstruction_residual(basis, Monomial::AdagAdagAA, grid, n_max / 2));
  }
  CHECK(residual[1] < 1e-8);
  // decreases until it saturates at rounding noise; the floor scales with
  // the quartic matrix elements, so allow 1e-9 (still below the 1e-8 gate)
  CHECK(residual[0] >= residual[1] - 1e-9);
  CHECK(residual[1] >= residual[2] - 1e-9);
}

TEST_CASE("coherent vectors report truncation leakage") {
  const ModeSet one({{0}}, 1.0, 1);
  const FockBasis deep = build_basis(one, 40);
  const CoherentVector ok = coherent_vector(deep, cplx(1.5, 0.0));
  CHECK(!ok.leaky);
  CHECK(ok.leakage < 1e-12);
  CHECK(ok.amplitudes.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));

  const FockBasis shallow = build_basis(one, 3);
  const CoherentVector bad = coherent_vector(shallow, cplx(2.0, 0.0));
  CHECK(bad.leaky);
  CHECK(bad.leakage > 1e-3);
}

TEST_CASE("partial contraction against the zero mode") {
  const ModeSet modes = ModeSet::chain(1, 4.0);
  const FockBasis full = build_basis(modes, 3);
  const FockBasis prime = build_prime_basis(modes, 3);
  const cplx z(0.4, 0.6);
  const auto amp = zero_mode_amplitudes(3, z);

  // psi = |n0=2> ox |n+1=1, n-1=0>
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(full.dim());
  const std::vector<int> occ{2, 1, 0};
  psi(full.index_of(occ).value()) = 1.0;

  const PartialInner res = partial_inner(full, prime, z, psi);
  const std::vector<int> occ_prime{1, 0};
  const auto idx = prime.index_of(occ_prime).value();
  CHECK(std::abs(res.prime_vector(idx) - std::conj(amp[2])) < 1e-14);
  CHECK(res.weight == doctest::Approx(std::norm(amp[2])).epsilon(1e-12));
}

TEST_CASE("zero mode split round trips") {
  const ModeSet modes = ModeSet::chain(1, 4.0);
  const FockBasis full = build_basis(modes, 3);
  const FockBasis prime = build_prime_basis(modes, 3);
  const ZeroModeSplit split(full, prime);
  CHECK(split.n0_cap() == 3);
  for (std::size_t i = 0; i < full.dim(); ++i) {
    CHECK(split.full_of(split.n0_of(i), split.prime_of(i)) == i);
    CHECK(split.n0_of(i) == full.occupation(i, 0));
  }
}
