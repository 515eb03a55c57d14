#ifndef CNUMLAB_MAGNET_HPP
#define CNUMLAB_MAGNET_HPP

#include <vector>

#include <Eigen/Dense>

#include "cnumlab/griffiths.hpp"

namespace cnumlab {

// Periodic hypercubic spin lattice with uniform nearest-neighbor coupling,
//   H = -J sum_<xy> S_x . S_y - B M,  M = sum_x S^3_x,
// in kT = 1 units (beta kept as an optional rescale, default 1).
struct SpinLattice {
  int dimension = 1;
  int length = 2;
  double spin = 0.5;
  double coupling = 1.0;  // J
  double beta = 1.0;

  int sites() const;
  long local_dim() const;  // 2s + 1
  long hilbert_dim() const;
  static constexpr long kDimCap = 16384;

  void validate() const;
};

// Unordered unique nearest-neighbor bonds (periodic, double bonds on L = 2
// rings deduplicated).
std::vector<std::pair<int, int>> lattice_bonds(const SpinLattice& lattice);

// Spin-s ladder and z matrices on the local (2s+1)-dimensional space,
// ordered by descending m = s, s-1, ..., -s.
struct SpinOps {
  Eigen::MatrixXd sp, sm, sz;  // S^+, S^-, S^3 (real in this basis)
};
SpinOps spin_operators(double s);

// Dense H - B M over the full product basis (site 0 fastest); real because
// S.S couplings only mix occupation codes with real amplitudes.
Eigen::MatrixXd build_spin_hamiltonian(const SpinLattice& lattice, double field);
Eigen::MatrixXd magnetization_operator(const SpinLattice& lattice);

struct MagnetReport {
  double field = 0.0;   // B
  double g = 0.0;       // -(beta |L|)^-1 ln Tr e^{-beta(H0 - B M)}
  double m = 0.0;       // <M> / |L|
  double m2 = 0.0;      // <M^2> / |L|^2
  double m_from_g = 0.0;  // -dg/dB by centered difference, step 1e-4
};

// Exact diagonalization organized by magnetization sectors; [H0, M] = 0 so
// one spectrum of (E, M) pairs serves every field value.
class MagnetSystem {
 public:
  explicit MagnetSystem(const SpinLattice& lattice);

  const SpinLattice& lattice() const { return lattice_; }
  const std::vector<double>& energies() const { return energy_; }
  const std::vector<double>& magnetizations() const { return magnet_; }

  MagnetReport thermodynamics(double field) const;
  std::vector<MagnetReport> thermodynamics(const std::vector<double>& fields) const;

  // P(M = m) at the given field; n is the site count so sequences of growing
  // lattices feed the rate-function machinery directly.
  Measure magnetization_distribution(double field) const;

 private:
  double log_partition(double field) const;

  SpinLattice lattice_;
  std::vector<double> energy_;  // H0 eigenvalues
  std::vector<double> magnet_;  // matching M eigenvalues
};

}  // namespace cnumlab

#endif
