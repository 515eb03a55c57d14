#ifndef CNUMLAB_COHERENT_HPP
#define CNUMLAB_COHERENT_HPP

#include <functional>
#include <vector>

#include "cnumlab/fock.hpp"

namespace cnumlab {

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Phase-space quadrature for integrals over d^2z = pi^-1 dx dy, built as a
// Gauss-Legendre rule in s = |z|^2 on [0, R^2] times uniform angles.  With
// that convention the combined node weight is w_s / n_angular and
// integrate(exp(-|z|^2)) must come out 1; validate() checks exactly that.
class RadialGrid {
 public:
  static constexpr int kDefaultRadialNodes = 200;
  static constexpr int kDefaultAngularNodes = 64;
  static constexpr double kDefaultTol = 1e-8;  // quadrature acceptance tol

  RadialGrid(double radius, int radial_nodes = kDefaultRadialNodes,
             int angular_nodes = kDefaultAngularNodes);

  double radius() const { return radius_; }
  int radial_nodes() const { return n_radial_; }
  int angular_nodes() const { return n_angular_; }
  std::size_t size() const { return points_.size(); }
  cplx point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<cplx>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  // flattened index layout: i = i_radial * angular_nodes + i_angular
  double s_node(int i_radial) const { return s_nodes_[i_radial]; }

  double integrate(const std::function<cplx(cplx)>& f) const;
  double convention_defect() const;  // |integrate(e^{-|z|^2}) - 1|
  void validate(double tol = kDefaultTol) const;

 private:
  double radius_;
  int n_radial_, n_angular_;
  std::vector<double> s_nodes_, s_weights_;
  std::vector<cplx> points_;
  std::vector<double> weights_;
};

// Zero-mode monomials with a closed-form symbol on coherent states.
enum class Monomial {
  A,           // a0
  Adag,        // a0^+
  AA,          // a0 a0
  AdagAdag,    // a0^+ a0^+
  AdagA,       // a0^+ a0
  AdagAdagAA,  // a0^+ a0^+ a0 a0
};

enum class SymbolKind { Lower, Upper };

// Scalar symbol of a zero-mode monomial at z.  Lower symbols are the
// diagonal expectations <z|F|z>; upper symbols u(z) reproduce F when
// integrated against |z><z| d^2z and differ only for a0^+a0 (|z|^2 - 1)
// and the quartic (|z|^4 - 4|z|^2 + 2).
cplx monomial_symbol(Monomial m, cplx z, SymbolKind kind);

// Normalized coherent occupation amplitudes <n|z> for n = 0..n_max, built by
// upward recursion with a single exp(-|z|^2/2) normalization at the start.
std::vector<cplx> zero_mode_amplitudes(int n_max, cplx z);

struct CoherentVector {
  Eigen::VectorXcd amplitudes;  // in the given FockBasis
  double leakage;               // 1 - |projection|^2 lost to the truncation
  bool leaky;                   // leakage > tol
};

// Coherent state in the zero mode tensored with the prime-sector vacuum,
// expressed in a basis whose mode set contains the zero mode.
CoherentVector coherent_vector(const FockBasis& basis, cplx z,
                               double tol = RadialGrid::kDefaultTol);

// Quadrature reconstruction of a zero-mode monomial from its upper symbol,
//   F ~= sum_i w_i u(z_i) |z_i><z_i|,
// on a single-mode basis.  Returns the dense matrix for residual inspection.
Eigen::MatrixXcd reconstruct_from_upper(const FockBasis& single_mode_basis,
                                        Monomial m, const RadialGrid& grid);

// Max entrywise residual of the reconstruction against the exact operator,
// restricted to the interior block n, m <= n_interior.
double reconstruction_residual(const FockBasis& single_mode_basis, Monomial m,
                               const RadialGrid& grid, int n_interior);

struct PartialInner {
  Eigen::VectorXcd prime_vector;  // <z| psi in the prime basis
  double weight;                  // |<z ox s'|psi>|^2 summed over s'
};

// Contract a full-basis vector with <z| on the zero mode, leaving a vector
// on the prime basis (the factor space without the zero mode).
PartialInner partial_inner(const FockBasis& full, const FockBasis& prime,
                           cplx z, const Eigen::VectorXcd& psi);

// Index bookkeeping between a full basis and its prime basis: every full
// state factors as (n0, prime state).  Built once, reused by weights and
// partial traces.
class ZeroModeSplit {
 public:
  ZeroModeSplit(const FockBasis& full, const FockBasis& prime);

  int n0_of(std::size_t full_index) const { return n0_[full_index]; }
  std::size_t prime_of(std::size_t full_index) const { return prime_[full_index]; }
  // full index of (n0, prime state), or npos when outside the truncation
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t full_of(int n0, std::size_t prime_index) const {
    return full_of_[prime_index * (n0_cap_ + 1) + n0];
  }
  int n0_cap() const { return n0_cap_; }

 private:
  std::vector<int> n0_;
  std::vector<std::size_t> prime_;
  std::vector<std::size_t> full_of_;
  int n0_cap_;
};

}  // namespace cnumlab

#endif
