#include "cnumlab/magnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace cnumlab {

int SpinLattice::sites() const {
  int n = 1;
  for (int d = 0; d < dimension; ++d) n *= length;
  return n;
}

long SpinLattice::local_dim() const {
  return std::lround(2.0 * spin) + 1;
}

long SpinLattice::hilbert_dim() const {
  long dim = 1;
  for (int i = 0; i < sites(); ++i) {
    dim *= local_dim();
    if (dim > kDimCap) return dim;  // early out, validate() reports it
  }
  return dim;
}

void SpinLattice::validate() const {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("SpinLattice: dimension must be 1, 2 or 3");
  if (length < 1) throw std::invalid_argument("SpinLattice: length must be >= 1");
  const double twos = 2.0 * spin;
  if (spin <= 0.0 || std::abs(twos - std::lround(twos)) > 1e-12)
    throw std::invalid_argument("SpinLattice: spin must be a positive half-integer");
  if (beta < 0.0) throw std::invalid_argument("SpinLattice: beta must be >= 0");
  if (hilbert_dim() > kDimCap)
    throw std::invalid_argument("SpinLattice: Hilbert dimension exceeds " +
                                std::to_string(kDimCap));
}

std::vector<std::pair<int, int>> lattice_bonds(const SpinLattice& lattice) {
  lattice.validate();
  const int n = lattice.sites();
  const int len = lattice.length;
  std::set<std::pair<int, int>> bonds;
  std::vector<int> coord(lattice.dimension);
  for (int site = 0; site < n; ++site) {
    int rest = site;
    for (int d = 0; d < lattice.dimension; ++d) {
      coord[d] = rest % len;
      rest /= len;
    }
    int stride = 1;
    for (int d = 0; d < lattice.dimension; ++d) {
      const int wrapped = (coord[d] + 1) % len;
      const int nb = site + (wrapped - coord[d]) * stride;
      if (nb != site) bonds.emplace(std::min(site, nb), std::max(site, nb));
      stride *= len;
    }
  }
  return {bonds.begin(), bonds.end()};
}

SpinOps spin_operators(double s) {
  const int dim = std::lround(2.0 * s) + 1;
  SpinOps ops;
  ops.sp = Eigen::MatrixXd::Zero(dim, dim);
  ops.sm = Eigen::MatrixXd::Zero(dim, dim);
  ops.sz = Eigen::MatrixXd::Zero(dim, dim);
  // basis ordered m = s, s-1, ..., -s (code c has m = s - c)
  for (int c = 0; c < dim; ++c) {
    const double m = s - c;
    ops.sz(c, c) = m;
    if (c > 0)  // S^+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>
      ops.sp(c - 1, c) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    if (c < dim - 1)
      ops.sm(c + 1, c) = std::sqrt(s * (s + 1.0) - m * (m - 1.0));
  }
  return ops;
}

namespace {

struct ProductBasis {
  int sites;
  int local;
  double spin;
  long dim;

  int code(long state, int site) const {
    for (int i = 0; i < site; ++i) state /= local;
    return static_cast<int>(state % local);
  }
  double mval(long state, int site) const { return spin - code(state, site); }
  long with_codes(long state, int site_a, int code_a, int site_b, int code_b) const {
    long stride_a = 1, stride_b = 1;
    for (int i = 0; i < site_a; ++i) stride_a *= local;
    for (int i = 0; i < site_b; ++i) stride_b *= local;
    return state + (code_a - code(state, site_a)) * stride_a +
           (code_b - code(state, site_b)) * stride_b;
  }
};

double ladder_up(double s, double m) {  // <m+1| S^+ |m>
  return std::sqrt(s * (s + 1.0) - m * (m + 1.0));
}

}  // namespace

Eigen::MatrixXd build_spin_hamiltonian(const SpinLattice& lattice, double field) {
  lattice.validate();
  const ProductBasis pb{lattice.sites(), static_cast<int>(lattice.local_dim()),
                        lattice.spin, lattice.hilbert_dim()};
  const auto bonds = lattice_bonds(lattice);
  const double j = lattice.coupling;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(pb.dim, pb.dim);
  for (long st = 0; st < pb.dim; ++st) {
    double diag = 0.0, mtot = 0.0;
    for (int site = 0; site < pb.sites; ++site) mtot += pb.mval(st, site);
    for (const auto& [x, y] : bonds) {
      const double mx = pb.mval(st, x), my = pb.mval(st, y);
      diag -= j * mx * my;
      // transverse part: -(j/2) (S+_x S-_y + S-_x S+_y)
      if (mx < lattice.spin && my > -lattice.spin) {
        const long to = pb.with_codes(st, x, pb.code(st, x) - 1, y, pb.code(st, y) + 1);
        h(to, st) -= 0.5 * j * ladder_up(lattice.spin, mx) *
                     ladder_up(lattice.spin, my - 1.0);
      }
      if (my < lattice.spin && mx > -lattice.spin) {
        const long to = pb.with_codes(st, x, pb.code(st, x) + 1, y, pb.code(st, y) - 1);
        h(to, st) -= 0.5 * j * ladder_up(lattice.spin, my) *
                     ladder_up(lattice.spin, mx - 1.0);
      }
    }
    h(st, st) += diag - field * mtot;
  }
  return h;
}

Eigen::MatrixXd magnetization_operator(const SpinLattice& lattice) {
  lattice.validate();
  const ProductBasis pb{lattice.sites(), static_cast<int>(lattice.local_dim()),
                        lattice.spin, lattice.hilbert_dim()};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(pb.dim, pb.dim);
  for (long st = 0; st < pb.dim; ++st) {
    double mtot = 0.0;
    for (int site = 0; site < pb.sites; ++site) mtot += pb.mval(st, site);
    m(st, st) = mtot;
  }
  return m;
}

MagnetSystem::MagnetSystem(const SpinLattice& lattice) : lattice_(lattice) {
  lattice_.validate();
  const ProductBasis pb{lattice.sites(), static_cast<int>(lattice.local_dim()),
                        lattice.spin, lattice.hilbert_dim()};
  const auto bonds = lattice_bonds(lattice);
  const double j = lattice.coupling;

  // group product states by total magnetization (integer key 2M)
  std::map<long, std::vector<long>> sectors;
  for (long st = 0; st < pb.dim; ++st) {
    double mtot = 0.0;
    for (int site = 0; site < pb.sites; ++site) mtot += pb.mval(st, site);
    sectors[std::lround(2.0 * mtot)].push_back(st);
  }

  for (const auto& [twom, states] : sectors) {
    const std::size_t dim = states.size();
    std::map<long, std::size_t> local_index;
    for (std::size_t i = 0; i < dim; ++i) local_index[states[i]] = i;

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
      const long st = states[col];
      double diag = 0.0;
      for (const auto& [x, y] : bonds) {
        const double mx = pb.mval(st, x), my = pb.mval(st, y);
        diag -= j * mx * my;
        if (mx < lattice.spin && my > -lattice.spin) {
          const long to =
              pb.with_codes(st, x, pb.code(st, x) - 1, y, pb.code(st, y) + 1);
          block(local_index.at(to), col) -=
              0.5 * j * ladder_up(lattice.spin, mx) *
              ladder_up(lattice.spin, my - 1.0);
        }
        if (my < lattice.spin && mx > -lattice.spin) {
          const long to =
              pb.with_codes(st, x, pb.code(st, x) + 1, y, pb.code(st, y) - 1);
          block(local_index.at(to), col) -=
              0.5 * j * ladder_up(lattice.spin, my) *
              ladder_up(lattice.spin, mx - 1.0);
        }
      }
      block(col, col) += diag;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block,
                                                      Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      energy_.push_back(es.eigenvalues()[i]);
      magnet_.push_back(0.5 * twom);
    }
  }
}

double MagnetSystem::log_partition(double field) const {
  const double beta = lattice_.beta;
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < energy_.size(); ++i)
    peak = std::max(peak, -beta * (energy_[i] - field * magnet_[i]));
  double acc = 0.0;
  for (std::size_t i = 0; i < energy_.size(); ++i)
    acc += std::exp(-beta * (energy_[i] - field * magnet_[i]) - peak);
  return peak + std::log(acc);
}

MagnetReport MagnetSystem::thermodynamics(double field) const {
  if (lattice_.beta <= 0.0)
    throw std::invalid_argument("MagnetSystem: thermodynamics needs beta > 0");
  const double beta = lattice_.beta;
  const int n = lattice_.sites();
  MagnetReport rep;
  rep.field = field;

  const double lz = log_partition(field);
  double msum = 0.0, m2sum = 0.0;
  for (std::size_t i = 0; i < energy_.size(); ++i) {
    const double w = std::exp(-beta * (energy_[i] - field * magnet_[i]) - lz);
    msum += w * magnet_[i];
    m2sum += w * magnet_[i] * magnet_[i];
  }
  rep.g = -lz / (beta * n);
  rep.m = msum / n;
  rep.m2 = m2sum / (double(n) * n);
  const double h = 1e-4;
  rep.m_from_g = (log_partition(field + h) - log_partition(field - h)) /
                 (2.0 * h * beta * n);
  return rep;
}

std::vector<MagnetReport> MagnetSystem::thermodynamics(
    const std::vector<double>& fields) const {
  std::vector<MagnetReport> out;
  out.reserve(fields.size());
  for (double b : fields) out.push_back(thermodynamics(b));
  return out;
}

Measure MagnetSystem::magnetization_distribution(double field) const {
  const double beta = lattice_.beta;
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < energy_.size(); ++i)
    peak = std::max(peak, -beta * (energy_[i] - field * magnet_[i]));
  std::map<long, double> mass;  // key 2M for exact grouping
  double total = 0.0;
  for (std::size_t i = 0; i < energy_.size(); ++i) {
    const double w = std::exp(-beta * (energy_[i] - field * magnet_[i]) - peak);
    mass[std::lround(2.0 * magnet_[i])] += w;
    total += w;
  }
  Measure out;
  out.n = lattice_.sites();
  for (const auto& [twom, w] : mass) {
    out.points.push_back(0.5 * twom);
    out.masses.push_back(w / total);
  }
  return out;
}

}  // namespace cnumlab
