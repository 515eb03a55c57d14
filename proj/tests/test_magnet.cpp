#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cnumlab/magnet.hpp"

using namespace cnumlab;

namespace {

SpinLattice chain(int length, double beta) {
  SpinLattice lat;
  lat.length = length;
  lat.beta = beta;
  return lat;
}

}  // namespace

TEST_CASE("spin operators obey su(2)") {
  for (double s : {0.5, 1.0, 1.5}) {
    const SpinOps ops = spin_operators(s);
    const Eigen::MatrixXd sx = 0.5 * (ops.sp + ops.sm);
    const Eigen::MatrixXd sy_i = 0.5 * (ops.sp - ops.sm);  // i * Sy is real
    // [Sx, i Sy] = i [Sx, Sy] = i (i Sz) = -Sz
    const Eigen::MatrixXd comm = sx * sy_i - sy_i * sx;
    CHECK((comm + ops.sz).cwiseAbs().maxCoeff() < 1e-12);
    // Casimir
    const Eigen::MatrixXd casimir =
        sx * sx - sy_i * sy_i + ops.sz * ops.sz;
    const double expect = s * (s + 1.0);
    for (int i = 0; i < casimir.rows(); ++i)
      CHECK(casimir(i, i) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("periodic chain bonds deduplicate") {
  CHECK(lattice_bonds(chain(2, 1.0)).size() == 1);
  CHECK(lattice_bonds(chain(4, 1.0)).size() == 4);

  SpinLattice square = chain(2, 1.0);
  square.dimension = 2;
  CHECK(square.sites() == 4);
  CHECK(lattice_bonds(square).size() == 4);

  SpinLattice grid3 = chain(3, 1.0);
  grid3.dimension = 2;
  CHECK(lattice_bonds(grid3).size() == 18);  // 2 bonds per site on a 3x3 torus
}

TEST_CASE("two spin spectrum splits into triplet and singlet") {
  const MagnetSystem sys(chain(2, 1.0));
  std::vector<double> e = sys.energies();
  std::sort(e.begin(), e.end());
  REQUIRE(e.size() == 4);
  CHECK(e[0] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(e[2] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(e[3] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("hamiltonian commutes with the total magnetization") {
  SpinLattice lat = chain(4, 1.0);
  const Eigen::MatrixXd h = build_spin_hamiltonian(lat, 0.0);
  const Eigen::MatrixXd m = magnetization_operator(lat);
  CHECK((h * m - m * h).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("block spectrum matches the dense spectrum") {
  SpinLattice lat = chain(3, 1.0);
  const MagnetSystem sys(lat);
  std::vector<double> blocks = sys.energies();
  std::sort(blocks.begin(), blocks.end());

  const Eigen::MatrixXd h = build_spin_hamiltonian(lat, 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  for (int i = 0; i < h.rows(); ++i)
    CHECK(blocks[i] == doctest::Approx(eig.eigenvalues()(i)).epsilon(1e-11));
}

TEST_CASE("zero field magnetization vanishes identically") {
  for (int n = 2; n <= 10; ++n) {
    const MagnetSystem sys(chain(n, 1.0));
    CHECK(std::abs(sys.thermodynamics(0.0).m) < 1e-12);
  }
}

TEST_CASE("cold two spin chain keeps only the triplet") {
  const MagnetSystem sys(chain(2, 50.0));
  const MagnetReport rep = sys.thermodynamics(0.0);
  CHECK(rep.m2 == doctest::Approx(1.0 / 6.0).epsilon(1e-3));
}

TEST_CASE("magnetization is the field derivative of the free energy") {
  const MagnetSystem sys(chain(5, 1.3));
  for (double b : {-0.8, -0.2, 0.0, 0.4, 1.0}) {
    const MagnetReport rep = sys.thermodynamics(b);
    CHECK(std::abs(rep.m - rep.m_from_g) < 1e-6);
    CHECK(rep.m2 + 1e-12 >= rep.m * rep.m);
  }
}

TEST_CASE("susceptibility sign: magnetization follows the field") {
  const MagnetSystem sys(chain(4, 2.0));
  CHECK(sys.thermodynamics(0.5).m > 0.0);
  CHECK(sys.thermodynamics(-0.5).m < 0.0);
}

TEST_CASE("infinite temperature magnetization distribution is binomial") {
  const MagnetSystem sys(chain(2, 0.0));
  const Measure m = sys.magnetization_distribution(0.0);
  REQUIRE(m.points.size() == 3);
  CHECK(m.n == 2);
  CHECK(m.points[0] == doctest::Approx(-1.0));
  CHECK(m.points[1] == doctest::Approx(0.0));
  CHECK(m.points[2] == doctest::Approx(1.0));
  CHECK(m.masses[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(m.masses[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.masses[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("dimension guard rejects oversized lattices") {
  CHECK_THROWS(MagnetSystem(chain(15, 1.0)));  // 2^15 states
}
