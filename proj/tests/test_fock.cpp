#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cnumlab/fock.hpp"

using namespace cnumlab;

TEST_CASE("chain mode sets put the zero mode first") {
  const ModeSet modes = ModeSet::chain(2, 5.0);
  REQUIRE(modes.size() == 5);
  CHECK(modes.has_zero_mode());
  CHECK(modes.mode(0).label == std::vector<int>{0});
  CHECK(modes.mode(0).ksq == 0.0);

  // k = 2 pi j / L, listed as 0, +1, -1, +2, -2
  const double unit = std::pow(2.0 * M_PI / 5.0, 2);
  CHECK(modes.mode(1).label == std::vector<int>{1});
  CHECK(modes.mode(2).label == std::vector<int>{-1});
  CHECK(modes.mode(3).ksq == doctest::Approx(4.0 * unit).epsilon(1e-14));

  CHECK(modes.index_of({-2}).value() == 4);
  CHECK(!modes.index_of({3}).has_value());

  const ModeSet prime = modes.without_zero();
  CHECK(prime.size() == 4);
  CHECK(!prime.has_zero_mode());

  const ModeSet rescaled = modes.with_volume(10.0);
  CHECK(rescaled.mode(1).ksq == doctest::Approx(modes.mode(1).ksq / 4.0));
}

TEST_CASE("basis dimensions match hand enumeration") {
  const ModeSet one({{0}}, 1.0, 1);
  CHECK(build_basis(one, 2).dim() == 3);

  const ModeSet two({{0}, {1}}, 1.0, 1);
  FockBasis b2(two, {1, 1}, 2);
  CHECK(b2.dim() == 4);

  const ModeSet three = ModeSet::chain(1, 4.0);
  FockBasis b3(three, {2, 2, 2}, 2);
  CHECK(b3.dim() == 10);

  long sum = 0;
  for (std::size_t i = 0; i < b3.dim(); ++i) sum += b3.total_occupation(i);
  CHECK(sum == 15);  // 1 state of weight 0, 3 of weight 1, 6 of weight 2

  const MatrixOperator n_op = number_operator(b3);
  CHECK(std::abs(n_op.to_dense().trace() - cplx(15.0, 0.0)) < 1e-12);
}

TEST_CASE("enumeration is deterministic and index_of inverts state") {
  const ModeSet modes = ModeSet::chain(1, 4.0);
  const FockBasis a = build_basis(modes, 3);
  const FockBasis b = build_basis(modes, 3);
  REQUIRE(a.dim() == b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto sa = a.state(i);
    const auto sb = b.state(i);
    CHECK(std::equal(sa.begin(), sa.end(), sb.begin()));
    CHECK(a.index_of(sa).value() == i);
  }
}

TEST_CASE("oversized truncations are rejected") {
  const ModeSet modes = ModeSet::chain(1, 4.0);
  CHECK_THROWS(build_basis(modes, 30));              // 31^3 states
  CHECK_NOTHROW(build_basis(modes, 30, std::nullopt, 40000));
}

TEST_CASE("ladder matrix elements and commutators") {
  const ModeSet one({{0}}, 1.0, 1);
  const FockBasis basis = build_basis(one, 3);
  const Eigen::MatrixXcd a = annihilation(basis, 0).to_dense();
  const Eigen::MatrixXcd ad = creation(basis, 0).to_dense();

  CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
  CHECK((ad - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  // identity away from the truncation edge
  const Eigen::MatrixXcd comm = a * ad - ad * a;
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m)
      CHECK(std::abs(comm(n, m) - (n == m ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("distinct modes commute") {
  const ModeSet two({{0}, {1}}, 1.0, 1);
  const FockBasis basis(two, {2, 2}, std::nullopt);
  const Eigen::MatrixXcd a0 = annihilation(basis, 0).to_dense();
  const Eigen::MatrixXcd a1 = annihilation(basis, 1).to_dense();
  const Eigen::MatrixXcd a1d = creation(basis, 1).to_dense();
  CHECK((a0 * a1 - a1 * a0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a0 * a1d - a1d * a0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mode number operators add up to the total") {
  const ModeSet modes = ModeSet::chain(1, 4.0);
  const FockBasis basis(modes, {2, 1, 1}, std::nullopt);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (std::size_t k = 0; k < modes.size(); ++k)
    sum += mode_number_operator(basis, k).to_dense();
  const Eigen::MatrixXcd total = number_operator(basis).to_dense();
  CHECK((sum - total).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("prime basis drops the zero mode") {
  const ModeSet modes = ModeSet::chain(1, 4.0);
  const FockBasis prime = build_prime_basis(modes, 2);
  CHECK(prime.n_modes() == 2);
  CHECK(prime.dim() == 9);
  CHECK(!prime.modes().has_zero_mode());
}

TEST_CASE("hermitian flag is validated") {
  const ModeSet one({{0}}, 1.0, 1);
  const FockBasis basis = build_basis(one, 2);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(3, 3);
  bad(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS(MatrixOperator(basis, bad, true));
  CHECK_NOTHROW(MatrixOperator(basis, bad, false));
}
