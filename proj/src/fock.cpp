#include "cnumlab/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cnumlab {

namespace {

bool is_zero_label(const std::vector<int>& label) {
  return std::all_of(label.begin(), label.end(), [](int c) { return c == 0; });
}

}  // namespace

ModeSet::ModeSet(std::vector<std::vector<int>> labels, double volume,
                 int spatial_dim)
    : volume_(volume), spatial_dim_(spatial_dim) {
  if (volume <= 0.0) throw std::invalid_argument("ModeSet: volume must be > 0");
  if (spatial_dim < 1) throw std::invalid_argument("ModeSet: dimension must be >= 1");
  const double length = std::pow(volume, 1.0 / spatial_dim);
  const double kunit = 2.0 * M_PI / length;
  modes_.reserve(labels.size());
  for (auto& label : labels) {
    if (static_cast<int>(label.size()) != spatial_dim)
      throw std::invalid_argument("ModeSet: label dimension mismatch");
    if (index_.count(label))
      throw std::invalid_argument("ModeSet: duplicate mode label");
    double nsq = 0.0;
    for (int c : label) nsq += double(c) * double(c);
    const bool zero = is_zero_label(label);
    if (zero) {
      if (!modes_.empty())
        throw std::invalid_argument("ModeSet: zero mode must be listed first");
      has_zero_ = true;
    }
    index_[label] = modes_.size();
    modes_.push_back({std::move(label), zero ? 0.0 : kunit * kunit * nsq});
  }
}

ModeSet ModeSet::chain(int n_side, double length) {
  if (n_side < 0) throw std::invalid_argument("ModeSet::chain: n_side must be >= 0");
  std::vector<std::vector<int>> labels;
  labels.push_back({0});
  for (int n = 1; n <= n_side; ++n) {
    labels.push_back({n});
    labels.push_back({-n});
  }
  return ModeSet(std::move(labels), length, 1);
}

std::optional<std::size_t> ModeSet::index_of(const std::vector<int>& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ModeSet ModeSet::without_zero() const {
  std::vector<std::vector<int>> labels;
  for (const auto& m : modes_)
    if (!is_zero_label(m.label)) labels.push_back(m.label);
  return ModeSet(std::move(labels), volume_, spatial_dim_);
}

ModeSet ModeSet::with_volume(double volume) const {
  std::vector<std::vector<int>> labels;
  labels.reserve(modes_.size());
  for (const auto& m : modes_) labels.push_back(m.label);
  return ModeSet(std::move(labels), volume, spatial_dim_);
}

FockBasis::FockBasis(ModeSet modes, std::vector<int> caps_per_mode,
                     std::optional<long> n_total_max, std::size_t dim_cap)
    : modes_(std::move(modes)),
      caps_(std::move(caps_per_mode)),
      total_cap_(n_total_max),
      n_modes_(caps_.size()) {
  if (n_modes_ != modes_.size())
    throw std::invalid_argument("FockBasis: one cap per mode required");
  for (int c : caps_)
    if (c < 0) throw std::invalid_argument("FockBasis: negative occupation cap");
  if (total_cap_ && *total_cap_ < 0)
    throw std::invalid_argument("FockBasis: negative total cap");

  // Decide the lookup representation: pack occupations into a u64 when the
  // per-mode bit widths fit, otherwise fall back to an ordered map.
  unsigned bits_total = 0;
  pack_bits_.resize(n_modes_);
  for (std::size_t m = 0; m < n_modes_; ++m) {
    pack_bits_[m] = std::bit_width(static_cast<unsigned>(caps_[m]) + 1u);
    bits_total += pack_bits_[m];
  }
  packed_ = bits_total <= 64;

  enumerate(dim_cap);
}

void FockBasis::enumerate(std::size_t dim_cap) {
  std::vector<int> occ(n_modes_, 0);
  long total = 0;
  for (;;) {
    if (!total_cap_ || total <= *total_cap_) {
      if (dim_ == dim_cap)
        throw std::runtime_error(
            "FockBasis: dimension cap " + std::to_string(dim_cap) +
            " exceeded; reduce the truncation");
      states_.insert(states_.end(), occ.begin(), occ.end());
      if (packed_)
        packed_index_.emplace(pack(occ), dim_);
      else
        map_index_.emplace(occ, dim_);
      ++dim_;
    }
    // odometer step, mode 0 fastest
    std::size_t m = 0;
    while (m < n_modes_) {
      if (occ[m] < caps_[m]) {
        ++occ[m];
        ++total;
        break;
      }
      total -= occ[m];
      occ[m] = 0;
      ++m;
    }
    if (m == n_modes_) break;  // wrapped around: enumeration complete
  }
}

long FockBasis::total_occupation(std::size_t i) const {
  auto s = state(i);
  return std::accumulate(s.begin(), s.end(), 0L);
}

std::uint64_t FockBasis::pack(std::span<const int> occ) const {
  std::uint64_t key = 0;
  unsigned shift = 0;
  for (std::size_t m = 0; m < n_modes_; ++m) {
    key |= static_cast<std::uint64_t>(occ[m]) << shift;
    shift += pack_bits_[m];
  }
  return key;
}

std::optional<std::size_t> FockBasis::index_of(std::span<const int> occ) const {
  if (occ.size() != n_modes_) return std::nullopt;
  for (std::size_t m = 0; m < n_modes_; ++m)
    if (occ[m] < 0 || occ[m] > caps_[m]) return std::nullopt;
  if (n_modes_ == 0) return 0;
  if (packed_) {
    auto it = packed_index_.find(pack(occ));
    if (it == packed_index_.end()) return std::nullopt;
    return it->second;
  }
  auto it = map_index_.find(std::vector<int>(occ.begin(), occ.end()));
  if (it == map_index_.end()) return std::nullopt;
  return it->second;
}

FockBasis build_basis(const ModeSet& modes, int n_max_per_mode,
                      std::optional<long> n_total_max, std::size_t dim_cap) {
  if (modes.size() == 0)
    throw std::invalid_argument("build_basis: mode set must be non-empty");
  if (n_max_per_mode < 0)
    throw std::invalid_argument("build_basis: n_max must be >= 0");
  return FockBasis(modes, std::vector<int>(modes.size(), n_max_per_mode),
                   n_total_max, dim_cap);
}

FockBasis build_prime_basis(const ModeSet& full_modes, int n_max_per_mode,
                            std::optional<long> n_total_max,
                            std::size_t dim_cap) {
  if (!full_modes.has_zero_mode())
    throw std::invalid_argument("build_prime_basis: zero mode absent");
  ModeSet prime = full_modes.without_zero();
  return FockBasis(prime, std::vector<int>(prime.size(), n_max_per_mode),
                   n_total_max, dim_cap);
}

MatrixOperator::MatrixOperator(const FockBasis& basis,
                               const std::vector<Eigen::Triplet<cplx>>& entries,
                               bool hermitian)
    : basis_(&basis),
      dim_(basis.dim()),
      is_dense_(basis.dim() < kDenseLimit),
      hermitian_(hermitian) {
  if (is_dense_) {
    dense_ = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const auto& t : entries) dense_(t.row(), t.col()) += t.value();
  } else {
    sparse_.resize(dim_, dim_);
    sparse_.setFromTriplets(entries.begin(), entries.end());
  }
  if (hermitian_) check_hermitian();
}

MatrixOperator::MatrixOperator(const FockBasis& basis, Eigen::MatrixXcd dense,
                               bool hermitian)
    : basis_(&basis),
      dim_(basis.dim()),
      is_dense_(true),
      hermitian_(hermitian),
      dense_(std::move(dense)) {
  if (static_cast<std::size_t>(dense_.rows()) != dim_ ||
      static_cast<std::size_t>(dense_.cols()) != dim_)
    throw std::invalid_argument("MatrixOperator: dimension mismatch");
  if (hermitian_) check_hermitian();
}

void MatrixOperator::check_hermitian() const {
  double defect = 0.0;
  if (is_dense_) {
    defect = (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff();
  } else {
    Eigen::SparseMatrix<cplx> d = sparse_ - Eigen::SparseMatrix<cplx>(sparse_.adjoint());
    for (int k = 0; k < d.outerSize(); ++k)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(d, k); it; ++it)
        defect = std::max(defect, std::abs(it.value()));
  }
  if (defect >= kHermTol)
    throw std::logic_error("MatrixOperator: hermitian flag set but max |A - A^+| = " +
                           std::to_string(defect));
}

Eigen::MatrixXcd MatrixOperator::to_dense() const {
  if (is_dense_) return dense_;
  return Eigen::MatrixXcd(sparse_);
}

MatrixOperator MatrixOperator::adjoint() const {
  if (is_dense_) return MatrixOperator(*basis_, dense_.adjoint(), hermitian_);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(sparse_.nonZeros());
  for (int k = 0; k < sparse_.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(sparse_, k); it; ++it)
      trips.emplace_back(it.col(), it.row(), std::conj(it.value()));
  return MatrixOperator(*basis_, trips, hermitian_);
}

MatrixOperator annihilation(const FockBasis& basis, std::size_t mode) {
  if (mode >= basis.n_modes())
    throw std::invalid_argument("annihilation: mode index out of range");
  std::vector<Eigen::Triplet<cplx>> trips;
  std::vector<int> target;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const int n = basis.occupation(i, mode);
    if (n == 0) continue;
    auto s = basis.state(i);
    target.assign(s.begin(), s.end());
    target[mode] = n - 1;
    auto j = basis.index_of(target);
    if (!j) continue;  // cannot happen for per-mode caps, kept for safety
    trips.emplace_back(static_cast<int>(*j), static_cast<int>(i),
                       cplx(std::sqrt(double(n)), 0.0));
  }
  return MatrixOperator(basis, trips, false);
}

MatrixOperator creation(const FockBasis& basis, std::size_t mode) {
  return annihilation(basis, mode).adjoint();
}

MatrixOperator number_operator(const FockBasis& basis) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i)
    trips.emplace_back(static_cast<int>(i), static_cast<int>(i),
                       cplx(double(basis.total_occupation(i)), 0.0));
  return MatrixOperator(basis, trips, true);
}

MatrixOperator mode_number_operator(const FockBasis& basis, std::size_t mode) {
  if (mode >= basis.n_modes())
    throw std::invalid_argument("mode_number_operator: mode index out of range");
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const int n = basis.occupation(i, mode);
    if (n > 0)
      trips.emplace_back(static_cast<int>(i), static_cast<int>(i),
                         cplx(double(n), 0.0));
  }
  return MatrixOperator(basis, trips, true);
}

}  // namespace cnumlab
