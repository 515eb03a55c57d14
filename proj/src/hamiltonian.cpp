#include "cnumlab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnumlab {

namespace {

std::vector<int> add_labels(const std::vector<int>& a, const std::vector<int>& b,
                            int sign) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + sign * b[i];
  return out;
}

bool is_zero_label(const std::vector<int>& label) {
  return std::all_of(label.begin(), label.end(), [](int c) { return c == 0; });
}

// One normal-ordered interaction term a_{c1}^+ a_{c2}^+ a_{k} a_{q} resolved
// to mode indices of a basis; any slot may be absent (zero-mode slots are
// peeled off before prime-space assembly).
struct TermSlots {
  std::vector<std::size_t> annihilate;  // applied right to left: q first
  std::vector<std::size_t> create;      // then c2, then c1
};

void accumulate_term(const FockBasis& basis, const TermSlots& slots, double coeff,
                     std::vector<Eigen::Triplet<cplx>>& out) {
  std::vector<int> occ;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    auto s = basis.state(i);
    occ.assign(s.begin(), s.end());
    double amp = coeff;
    bool dead = false;
    for (std::size_t m : slots.annihilate) {
      if (occ[m] == 0) {
        dead = true;
        break;
      }
      amp *= std::sqrt(double(occ[m]));
      --occ[m];
    }
    if (dead) continue;
    for (std::size_t m : slots.create) {
      ++occ[m];
      amp *= std::sqrt(double(occ[m]));
    }
    auto j = basis.index_of(occ);
    if (!j) continue;  // raised past the truncation: the projected term drops it
    out.emplace_back(static_cast<int>(*j), static_cast<int>(i), cplx(amp, 0.0));
  }
}

}  // namespace

double GasParams::nu_of(const std::vector<int>& p) const {
  auto it = nu.find(p);
  return it == nu.end() ? 0.0 : it->second;
}

double GasParams::nu_zero() const {
  return nu_of(std::vector<int>(modes.spatial_dimension(), 0));
}

GasParams GasParams::with_mu(double value) const {
  GasParams out = *this;
  out.mu = value;
  return out;
}

GasParams GasParams::with_lambda(double value) const {
  GasParams out = *this;
  out.lambda = value;
  return out;
}

void GasParams::validate() const {
  if (beta <= 0.0) throw std::invalid_argument("GasParams: beta must be > 0");
  if (phi < 0.0) throw std::invalid_argument("GasParams: phi must be >= 0");
  for (const auto& [p, v] : nu) {
    if (std::abs(v) > phi + 1e-15)
      throw std::invalid_argument("GasParams: |nu| exceeds the declared bound phi");
    std::vector<int> neg(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) neg[i] = -p[i];
    auto it = nu.find(neg);
    const double vneg = it == nu.end() ? 0.0 : it->second;
    if (v != vneg)
      throw std::invalid_argument("GasParams: nu must be even, nu(p) = nu(-p)");
  }
}

GasParams make_chain_gas(int n_side, double volume, double g, double g1,
                         double mu, double lambda, double beta) {
  GasParams params;
  params.modes = ModeSet::chain(n_side, volume);
  if (g != 0.0) params.nu[{0}] = g;
  if (g1 != 0.0 && n_side >= 1) {
    params.nu[{1}] = g1;
    params.nu[{-1}] = g1;
  }
  params.phi = std::max(std::abs(g), std::abs(g1));
  params.mu = mu;
  params.lambda = lambda;
  params.beta = beta;
  params.validate();
  return params;
}

MatrixOperator build_H(const GasParams& params, const FockBasis& basis) {
  params.validate();
  const ModeSet& modes = basis.modes();
  if (modes.size() != params.modes.size() ||
      modes.volume() != params.modes.volume())
    throw std::invalid_argument("build_H: basis does not match params.modes");
  std::vector<Eigen::Triplet<cplx>> trips;

  // kinetic part
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    double e = 0.0;
    for (std::size_t m = 0; m < modes.size(); ++m)
      e += modes.mode(m).ksq * basis.occupation(i, m);
    if (e != 0.0)
      trips.emplace_back(static_cast<int>(i), static_cast<int>(i), cplx(e, 0.0));
  }

  // interaction: sum over annihilated modes (k, q) and transfers p
  const double half_v = 0.5 / params.volume();
  for (std::size_t ki = 0; ki < modes.size(); ++ki) {
    for (std::size_t qi = 0; qi < modes.size(); ++qi) {
      for (const auto& [p, vp] : params.nu) {
        if (vp == 0.0) continue;
        auto c1 = modes.index_of(add_labels(modes.mode(ki).label, p, +1));
        auto c2 = modes.index_of(add_labels(modes.mode(qi).label, p, -1));
        if (!c1 || !c2) continue;
        TermSlots slots;
        slots.annihilate = {qi, ki};
        slots.create = {*c2, *c1};
        accumulate_term(basis, slots, vp * half_v, trips);
      }
    }
  }
  return MatrixOperator(basis, trips, true);
}

MatrixOperator build_H_mu_lambda(const GasParams& params, const FockBasis& basis) {
  Eigen::MatrixXcd h = build_H(params, basis).to_dense();
  h -= params.mu * number_operator(basis).to_dense();
  const double field = std::sqrt(params.volume()) * params.lambda;
  if (field != 0.0) {
    if (!basis.modes().has_zero_mode())
      throw std::invalid_argument(
          "build_H_mu_lambda: breaking field needs the zero mode");
    const Eigen::MatrixXcd a0 = annihilation(basis, 0).to_dense();
    h += field * (a0 + a0.adjoint());
  }
  return MatrixOperator(basis, std::move(h), true);
}

SubstitutedFamily::SubstitutedFamily(const GasParams& params,
                                     const FockBasis& prime)
    : prime_(&prime) {
  params.validate();
  if (prime.modes().has_zero_mode())
    throw std::invalid_argument("SubstitutedFamily: prime basis contains the zero mode");
  const std::size_t d = prime.dim();
  base_ = c01_ = c10_ = c02_ = c20_ = c11_ = c22_ =
      Eigen::MatrixXcd::Zero(d, d);

  const ModeSet& full = params.modes;
  if (!full.has_zero_mode())
    throw std::invalid_argument("SubstitutedFamily: params lack the zero mode");
  const ModeSet& pset = prime.modes();
  if (pset.size() + 1 != full.size() || pset.volume() != full.volume())
    throw std::invalid_argument("SubstitutedFamily: prime basis does not match params");

  // kinetic and -mu N on the prime modes
  for (std::size_t i = 0; i < d; ++i) {
    double e = 0.0;
    for (std::size_t m = 0; m < pset.size(); ++m)
      e += (pset.mode(m).ksq - params.mu) * prime.occupation(i, m);
    base_(i, i) += e;
  }
  // zero-mode pieces of -mu N and of the symmetry-breaking field
  c11_.diagonal().array() += -params.mu;
  const double field = std::sqrt(params.volume()) * params.lambda;
  c01_.diagonal().array() += field;
  c10_.diagonal().array() += field;

  // interaction, classified by how many zero-mode legs each term carries
  const double half_v = 0.5 / params.volume();
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t ki = 0; ki < full.size(); ++ki) {
    for (std::size_t qi = 0; qi < full.size(); ++qi) {
      for (const auto& [p, vp] : params.nu) {
        if (vp == 0.0) continue;
        const auto l1 = add_labels(full.mode(ki).label, p, +1);
        const auto l2 = add_labels(full.mode(qi).label, p, -1);
        if (!full.index_of(l1) || !full.index_of(l2)) continue;

        int n_create0 = 0, n_destroy0 = 0;
        TermSlots slots;
        if (is_zero_label(full.mode(qi).label)) ++n_destroy0;
        else slots.annihilate.push_back(*pset.index_of(full.mode(qi).label));
        if (is_zero_label(full.mode(ki).label)) ++n_destroy0;
        else slots.annihilate.push_back(*pset.index_of(full.mode(ki).label));
        if (is_zero_label(l2)) ++n_create0;
        else slots.create.push_back(*pset.index_of(l2));
        if (is_zero_label(l1)) ++n_create0;
        else slots.create.push_back(*pset.index_of(l1));

        trips.clear();
        accumulate_term(prime, slots, vp * half_v, trips);

        Eigen::MatrixXcd* bucket = nullptr;
        switch (n_create0 * 4 + n_destroy0) {
          case 0: bucket = &base_; break;            // no zero-mode legs
          case 1: bucket = &c01_; break;             // a0         -> z
          case 4: bucket = &c10_; break;             // a0^+       -> z*
          case 2: bucket = &c02_; break;             // a0 a0      -> z^2
          case 8: bucket = &c20_; break;             // a0^+ a0^+  -> z*^2
          case 5: bucket = &c11_; break;             // a0^+ a0
          case 10: bucket = &c22_; break;            // quartic
          default:
            throw std::logic_error(
                "SubstitutedFamily: momentum conservation rules this split out");
        }
        for (const auto& t : trips) (*bucket)(t.row(), t.col()) += t.value();
      }
    }
  }

  // consistency: the bucket pairing must reproduce a hermitian family
  const double defect =
      std::max({(base_ - base_.adjoint()).cwiseAbs().maxCoeff(),
                (c11_ - c11_.adjoint()).cwiseAbs().maxCoeff(),
                (c22_ - c22_.adjoint()).cwiseAbs().maxCoeff(),
                (c10_ - c01_.adjoint()).cwiseAbs().maxCoeff(),
                (c20_ - c02_.adjoint()).cwiseAbs().maxCoeff()});
  if (defect > 1e-12)
    throw std::logic_error("SubstitutedFamily: assembled family is not hermitian");
}

Eigen::MatrixXcd SubstitutedFamily::matrix(cplx z, SymbolKind kind) const {
  const cplx zc = std::conj(z);
  const double s11 = monomial_symbol(Monomial::AdagA, z, kind).real();
  const double s22 = monomial_symbol(Monomial::AdagAdagAA, z, kind).real();
  return base_ + z * c01_ + zc * c10_ + z * z * c02_ + zc * zc * c20_ +
         s11 * c11_ + s22 * c22_;
}

Eigen::MatrixXcd SubstitutedFamily::symbol_difference(cplx z) const {
  const double s = std::norm(z);
  // upper - lower: -1 on the c11 bucket, (-4s + 2) on the quartic bucket
  return -1.0 * c11_ + (-4.0 * s + 2.0) * c22_;
}

SubstitutedHamiltonian build_substituted(const GasParams& params,
                                         const FockBasis& prime, cplx z,
                                         SymbolKind kind) {
  SubstitutedFamily family(params, prime);
  return SubstitutedHamiltonian{z, kind,
                                MatrixOperator(prime, family.matrix(z, kind), true)};
}

MatrixOperator delta_correction(const GasParams& params, const FockBasis& prime,
                                cplx z) {
  if (prime.modes().has_zero_mode())
    throw std::invalid_argument("delta_correction: prime basis contains the zero mode");
  const double s = std::norm(z);
  const double nu0 = params.nu_zero();
  const double half_v = 0.5 / params.volume();
  const ModeSet& pset = prime.modes();

  std::vector<double> mode_coeff(pset.size());
  for (std::size_t m = 0; m < pset.size(); ++m) {
    std::vector<int> neg(pset.mode(m).label.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -pset.mode(m).label[i];
    mode_coeff[m] = 2.0 * nu0 + params.nu_of(pset.mode(m).label) + params.nu_of(neg);
  }

  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t i = 0; i < prime.dim(); ++i) {
    double v = params.mu + half_v * (-4.0 * s + 2.0) * nu0;
    for (std::size_t m = 0; m < pset.size(); ++m)
      v -= half_v * mode_coeff[m] * prime.occupation(i, m);
    trips.emplace_back(static_cast<int>(i), static_cast<int>(i), cplx(v, 0.0));
  }
  return MatrixOperator(prime, trips, true);
}

Eigen::VectorXd delta_bound_diagonal(const GasParams& params,
                                     const FockBasis& prime, cplx z) {
  Eigen::VectorXd bound(prime.dim());
  const double s = std::norm(z);
  for (std::size_t i = 0; i < prime.dim(); ++i) {
    const double nprime = s + double(prime.total_occupation(i));
    bound[i] = 2.0 * params.phi * (nprime + 0.5) / params.volume() +
               std::abs(params.mu);
  }
  return bound;
}

}  // namespace cnumlab
