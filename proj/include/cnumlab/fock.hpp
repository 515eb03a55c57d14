#ifndef CNUMLAB_FOCK_HPP
#define CNUMLAB_FOCK_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cnumlab {

using cplx = std::complex<double>;

// One plane-wave mode k = (2*pi/L) * n with integer label n (d components).
struct Mode {
  std::vector<int> label;
  double ksq = 0.0;  // |k|^2 in hbar = 2m = 1 units
};

// Ordered set of momentum modes on a periodic box of volume V = L^d.
// If the zero mode is present it must sit at index 0 with ksq exactly 0.
class ModeSet {
 public:
  ModeSet() = default;
  ModeSet(std::vector<std::vector<int>> labels, double volume, int spatial_dim);

  // 1-D default discretization: labels 0, +1, -1, ..., +n_side, -n_side; V = L.
  static ModeSet chain(int n_side, double length);

  std::size_t size() const { return modes_.size(); }
  const Mode& mode(std::size_t i) const { return modes_[i]; }
  double volume() const { return volume_; }
  int spatial_dimension() const { return spatial_dim_; }
  bool has_zero_mode() const { return has_zero_; }

  std::optional<std::size_t> index_of(const std::vector<int>& label) const;

  // The same set with the zero mode removed (for the Fock space H').
  ModeSet without_zero() const;
  // The same labels on a box of different volume (k-values rescale).
  ModeSet with_volume(double volume) const;

 private:
  std::vector<Mode> modes_;
  std::map<std::vector<int>, std::size_t> index_;
  double volume_ = 1.0;
  int spatial_dim_ = 1;
  bool has_zero_ = false;
};

// Truncated occupation-number basis over a ModeSet.
//
// Enumeration is odometer order with mode 0 incrementing fastest
// ({00, 10, 01, 11} for two modes with cap 1); it is bit-stable across runs.
class FockBasis {
 public:
  static constexpr std::size_t kDefaultDimCap = 20000;

  FockBasis(ModeSet modes, std::vector<int> caps_per_mode,
            std::optional<long> n_total_max,
            std::size_t dim_cap = kDefaultDimCap);

  std::size_t dim() const { return dim_; }
  std::size_t n_modes() const { return n_modes_; }
  const ModeSet& modes() const { return modes_; }
  int cap(std::size_t mode) const { return caps_[mode]; }
  const std::vector<int>& caps() const { return caps_; }
  std::optional<long> total_cap() const { return total_cap_; }

  std::span<const int> state(std::size_t i) const {
    return {states_.data() + i * n_modes_, n_modes_};
  }
  int occupation(std::size_t i, std::size_t mode) const {
    return states_[i * n_modes_ + mode];
  }
  long total_occupation(std::size_t i) const;

  std::optional<std::size_t> index_of(std::span<const int> occ) const;

 private:
  void enumerate(std::size_t dim_cap);
  std::uint64_t pack(std::span<const int> occ) const;

  ModeSet modes_;
  std::vector<int> caps_;
  std::optional<long> total_cap_;
  std::size_t n_modes_ = 0;
  std::size_t dim_ = 0;
  std::vector<int> states_;  // row-major, dim_ x n_modes_
  // lookup: packed 64-bit key when the caps allow it, ordered map otherwise
  bool packed_ = false;
  std::vector<unsigned> pack_bits_;
  std::map<std::uint64_t, std::size_t> packed_index_;
  std::map<std::vector<int>, std::size_t> map_index_;
};

// Public constructors.  build_basis requires at least one mode; the
// prime basis (zero mode removed) may legitimately be zero-mode-free and
// even empty of modes, in which case it is the one-dimensional vacuum space.
FockBasis build_basis(const ModeSet& modes, int n_max_per_mode,
                      std::optional<long> n_total_max = std::nullopt,
                      std::size_t dim_cap = FockBasis::kDefaultDimCap);
FockBasis build_prime_basis(const ModeSet& full_modes, int n_max_per_mode,
                            std::optional<long> n_total_max = std::nullopt,
                            std::size_t dim_cap = FockBasis::kDefaultDimCap);

// Complex matrix attached to a FockBasis.  Dense below kDenseLimit, sparse
// triplet storage above.  A set hermitian flag is validated on construction.
class MatrixOperator {
 public:
  static constexpr std::size_t kDenseLimit = 512;
  static constexpr double kHermTol = 1e-12;

  MatrixOperator(const FockBasis& basis,
                 const std::vector<Eigen::Triplet<cplx>>& entries,
                 bool hermitian);
  MatrixOperator(const FockBasis& basis, Eigen::MatrixXcd dense,
                 bool hermitian);

  std::size_t dim() const { return dim_; }
  bool is_dense() const { return is_dense_; }
  bool is_hermitian() const { return hermitian_; }
  const FockBasis* basis() const { return basis_; }

  Eigen::MatrixXcd to_dense() const;
  const Eigen::SparseMatrix<cplx>& sparse() const { return sparse_; }

  MatrixOperator adjoint() const;

 private:
  void check_hermitian() const;

  const FockBasis* basis_;
  std::size_t dim_;
  bool is_dense_;
  bool hermitian_;
  Eigen::MatrixXcd dense_;
  Eigen::SparseMatrix<cplx> sparse_;
};

// a_k in the occupation basis: a_k|..,n,..> = sqrt(n)|..,n-1,..>.
MatrixOperator annihilation(const FockBasis& basis, std::size_t mode);
// a_k^dagger, the exact conjugate transpose (top states map to zero).
MatrixOperator creation(const FockBasis& basis, std::size_t mode);
// Total number operator N = sum_k a_k^dagger a_k (diagonal).
MatrixOperator number_operator(const FockBasis& basis);
// Single-mode number operator a_k^dagger a_k (diagonal).
MatrixOperator mode_number_operator(const FockBasis& basis, std::size_t mode);

}  // namespace cnumlab

#endif
