#ifndef CNUMLAB_HAMILTONIAN_HPP
#define CNUMLAB_HAMILTONIAN_HPP

#include <map>

#include "cnumlab/coherent.hpp"
#include "cnumlab/fock.hpp"

namespace cnumlab {

// Dilute-gas model data on a periodic box (hbar = 2m = 1):
//   H = sum_k k^2 a_k^+ a_k
//     + (1/2V) sum_{k,p,q} nu(p) a_{k+p}^+ a_{q-p}^+ a_k a_q,
// plus the grand-canonical shift -mu N and the symmetry-breaking field
// sqrt(V) lambda (a_0 + a_0^+), lambda real.  Interaction terms whose
// created momenta fall outside the mode set are dropped.
struct GasParams {
  ModeSet modes;
  std::map<std::vector<int>, double> nu;  // momentum transfer -> strength
  double phi = 0.0;                       // declared bound on |nu|
  double mu = 0.0;
  double lambda = 0.0;
  double beta = 1.0;

  double volume() const { return modes.volume(); }
  double nu_of(const std::vector<int>& p) const;
  double nu_zero() const;

  GasParams with_mu(double value) const;
  GasParams with_lambda(double value) const;

  // throws on: beta <= 0, phi < max |nu|, nu(p) != nu(-p)
  void validate() const;
};

// Convenience: 1-D gas with nu(0) = g and optional nu(+-k1) = g1.
GasParams make_chain_gas(int n_side, double volume, double g, double g1,
                         double mu, double lambda, double beta);

// H on the truncated full basis (zero mode included).
MatrixOperator build_H(const GasParams& params, const FockBasis& basis);
// H - mu N + sqrt(V) lambda (a_0 + a_0^+) on the full basis.
MatrixOperator build_H_mu_lambda(const GasParams& params, const FockBasis& basis);

// The zero mode enters H - mu N + field only through six monomials, so the
// substituted operator on the prime space is an exact linear combination
//   H(z) = base + z c01 + z* c10 + z^2 c02 + z*^2 c20
//        + sym(a0^+a0) c11 + sym(a0^+a0^+a0a0) c22,
// where only the two sym(.) factors distinguish the lower from the upper
// symbol.  Building the seven coefficient matrices once makes grid sweeps
// over z cheap.
class SubstitutedFamily {
 public:
  SubstitutedFamily(const GasParams& params, const FockBasis& prime);

  const FockBasis& prime() const { return *prime_; }
  Eigen::MatrixXcd matrix(cplx z, SymbolKind kind) const;
  // difference upper - lower at z, always diagonal
  Eigen::MatrixXcd symbol_difference(cplx z) const;

 private:
  const FockBasis* prime_;
  Eigen::MatrixXcd base_, c01_, c10_, c02_, c20_, c11_, c22_;
};

struct SubstitutedHamiltonian {
  cplx z;
  SymbolKind kind;
  MatrixOperator op;
};

// One-off substitution (grid code should use SubstitutedFamily directly).
SubstitutedHamiltonian build_substituted(const GasParams& params,
                                         const FockBasis& prime, cplx z,
                                         SymbolKind kind);

// The diagonal correction delta(z) with H''(z) = H'(z) + delta(z):
//   delta(z) = mu + (1/2V) [ (-4|z|^2 + 2) nu(0)
//            - sum_{k != 0} (2 nu(0) + nu(k) + nu(-k)) a_k^+ a_k ].
MatrixOperator delta_correction(const GasParams& params, const FockBasis& prime,
                                cplx z);

// Diagonal of the a-priori bound 2 phi (N'(z) + 1/2)/V + |mu| with
// N'(z) = |z|^2 + sum_{k != 0} a_k^+ a_k; delta must stay below it entrywise.
Eigen::VectorXd delta_bound_diagonal(const GasParams& params,
                                     const FockBasis& prime, cplx z);

}  // namespace cnumlab

#endif
