#include "cnumlab/coherent.hpp"

#include <cmath>
#include <stdexcept>

namespace cnumlab {

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = x;
    weights[i] = w;
    nodes[n - 1 - i] = -x;
    weights[n - 1 - i] = w;
  }
  // map [-1, 1] -> [a, b]; nodes come out ascending in the target interval
  const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid - scale * nodes[i];
    weights[i] *= scale;
  }
}

RadialGrid::RadialGrid(double radius, int radial_nodes, int angular_nodes)
    : radius_(radius), n_radial_(radial_nodes), n_angular_(angular_nodes) {
  if (radius <= 0.0) throw std::invalid_argument("RadialGrid: radius must be > 0");
  if (radial_nodes < 1 || angular_nodes < 1)
    throw std::invalid_argument("RadialGrid: node counts must be >= 1");
  gauss_legendre(n_radial_, 0.0, radius_ * radius_, s_nodes_, s_weights_);
  points_.reserve(std::size_t(n_radial_) * n_angular_);
  weights_.reserve(points_.capacity());
  for (int i = 0; i < n_radial_; ++i) {
    const double r = std::sqrt(s_nodes_[i]);
    const double w = s_weights_[i] / n_angular_;
    for (int j = 0; j < n_angular_; ++j) {
      const double th = 2.0 * M_PI * j / n_angular_;
      points_.emplace_back(r * std::cos(th), r * std::sin(th));
      weights_.push_back(w);
    }
  }
}

double RadialGrid::integrate(const std::function<cplx(cplx)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    acc += weights_[i] * f(points_[i]).real();
  return acc;
}

double RadialGrid::convention_defect() const {
  double acc = 0.0;
  for (int i = 0; i < n_radial_; ++i)
    acc += s_weights_[i] * std::exp(-s_nodes_[i]);
  return std::abs(acc - 1.0);
}

void RadialGrid::validate(double tol) const {
  const double defect = convention_defect();
  if (defect > tol)
    throw std::runtime_error(
        "RadialGrid: phase-space convention check failed, |I[e^{-|z|^2}] - 1| = " +
        std::to_string(defect) + " (radius too small or too few nodes)");
}

cplx monomial_symbol(Monomial m, cplx z, SymbolKind kind) {
  const double s = std::norm(z);
  switch (m) {
    case Monomial::A:
      return z;
    case Monomial::Adag:
      return std::conj(z);
    case Monomial::AA:
      return z * z;
    case Monomial::AdagAdag:
      return std::conj(z) * std::conj(z);
    case Monomial::AdagA:
      return kind == SymbolKind::Lower ? cplx(s, 0.0) : cplx(s - 1.0, 0.0);
    case Monomial::AdagAdagAA:
      return kind == SymbolKind::Lower ? cplx(s * s, 0.0)
                                       : cplx(s * s - 4.0 * s + 2.0, 0.0);
  }
  throw std::logic_error("monomial_symbol: unreachable");
}

std::vector<cplx> zero_mode_amplitudes(int n_max, cplx z) {
  if (n_max < 0) throw std::invalid_argument("zero_mode_amplitudes: n_max < 0");
  std::vector<cplx> amp(n_max + 1);
  // <n|z> = e^{-|z|^2/2} z^n / sqrt(n!), by the recursion
  // <n|z> = <n-1|z> * z / sqrt(n); normalization applied once up front.
  amp[0] = cplx(std::exp(-0.5 * std::norm(z)), 0.0);
  for (int n = 1; n <= n_max; ++n) amp[n] = amp[n - 1] * z / std::sqrt(double(n));
  return amp;
}

CoherentVector coherent_vector(const FockBasis& basis, cplx z, double tol) {
  if (!basis.modes().has_zero_mode())
    throw std::invalid_argument("coherent_vector: basis has no zero mode");
  const int cap = basis.cap(0);
  const auto amp = zero_mode_amplitudes(cap, z);

  CoherentVector out;
  out.amplitudes = Eigen::VectorXcd::Zero(basis.dim());
  double captured = 0.0;
  std::vector<int> occ(basis.n_modes(), 0);
  for (int n = 0; n <= cap; ++n) {
    occ[0] = n;
    auto idx = basis.index_of(occ);
    if (!idx) continue;  // a total-occupation cap can cut the ladder short
    out.amplitudes[*idx] = amp[n];
    captured += std::norm(amp[n]);
  }
  out.leakage = std::max(0.0, 1.0 - captured);
  out.leaky = out.leakage > tol;
  return out;
}

Eigen::MatrixXcd reconstruct_from_upper(const FockBasis& basis, Monomial m,
                                        const RadialGrid& grid) {
  if (basis.n_modes() != 1 || !basis.modes().has_zero_mode())
    throw std::invalid_argument("reconstruct_from_upper: single-mode basis required");
  const int cap = basis.cap(0);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(cap + 1, cap + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.point(i);
    const auto amp = zero_mode_amplitudes(cap, z);
    const cplx coeff = grid.weight(i) * monomial_symbol(m, z, SymbolKind::Upper);
    // rank-one update coeff * |z><z| on the occupation ladder
    for (int r = 0; r <= cap; ++r) {
      const cplx rc = coeff * amp[r];
      for (int c = 0; c <= cap; ++c) acc(r, c) += rc * std::conj(amp[c]);
    }
  }
  return acc;
}

namespace {

Eigen::MatrixXcd exact_monomial(const FockBasis& basis, Monomial m) {
  const Eigen::MatrixXcd a = annihilation(basis, 0).to_dense();
  const Eigen::MatrixXcd ad = a.adjoint();
  switch (m) {
    case Monomial::A: return a;
    case Monomial::Adag: return ad;
    case Monomial::AA: return a * a;
    case Monomial::AdagAdag: return ad * ad;
    case Monomial::AdagA: return ad * a;
    case Monomial::AdagAdagAA: return ad * ad * a * a;
  }
  throw std::logic_error("exact_monomial: unreachable");
}

}  // namespace

double reconstruction_residual(const FockBasis& basis, Monomial m,
                               const RadialGrid& grid, int n_interior) {
  const Eigen::MatrixXcd rec = reconstruct_from_upper(basis, m, grid);
  const Eigen::MatrixXcd exact = exact_monomial(basis, m);
  const int cut = std::min<int>(n_interior, basis.cap(0));
  double res = 0.0;
  for (int r = 0; r <= cut; ++r)
    for (int c = 0; c <= cut; ++c)
      res = std::max(res, std::abs(rec(r, c) - exact(r, c)));
  return res;
}

PartialInner partial_inner(const FockBasis& full, const FockBasis& prime,
                           cplx z, const Eigen::VectorXcd& psi) {
  if (static_cast<std::size_t>(psi.size()) != full.dim())
    throw std::invalid_argument("partial_inner: vector size mismatch");
  ZeroModeSplit split(full, prime);
  const auto amp = zero_mode_amplitudes(split.n0_cap(), z);
  PartialInner out;
  out.prime_vector = Eigen::VectorXcd::Zero(prime.dim());
  for (std::size_t i = 0; i < full.dim(); ++i)
    out.prime_vector[split.prime_of(i)] += std::conj(amp[split.n0_of(i)]) * psi[i];
  out.weight = out.prime_vector.squaredNorm();
  return out;
}

ZeroModeSplit::ZeroModeSplit(const FockBasis& full, const FockBasis& prime) {
  if (!full.modes().has_zero_mode())
    throw std::invalid_argument("ZeroModeSplit: full basis has no zero mode");
  if (prime.n_modes() != full.n_modes() - 1)
    throw std::invalid_argument("ZeroModeSplit: prime basis mode count mismatch");
  n0_cap_ = full.cap(0);
  n0_.resize(full.dim());
  prime_.resize(full.dim());
  full_of_.assign(prime.dim() * (n0_cap_ + 1), npos);
  std::vector<int> rest;
  for (std::size_t i = 0; i < full.dim(); ++i) {
    auto s = full.state(i);
    n0_[i] = s[0];
    rest.assign(s.begin() + 1, s.end());
    auto pj = prime.index_of(rest);
    if (!pj)
      throw std::invalid_argument(
          "ZeroModeSplit: prime basis does not cover the full basis");
    prime_[i] = *pj;
    full_of_[*pj * (n0_cap_ + 1) + s[0]] = i;
  }
}

}  // namespace cnumlab
