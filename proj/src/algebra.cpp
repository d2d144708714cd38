#include "svf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svf {

namespace {

void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra() == b.algebra())) {
    throw Error(Errc::ShapeMismatch, "elements belong to different algebras");
  }
}

void require_box_class(const MultiMatrixAlgebra& algebra, const K0Class& g) {
  if (g.kind() != GroupKind::Simplicial || g.rank() != algebra.block_count()) {
    throw Error(Errc::VariantMismatch, "expected a simplicial class with " + std::to_string(algebra.block_count()) +
                                           " coordinates, got " + g.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- algebra

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_sizes) : block_sizes_(std::move(block_sizes)) {
  if (block_sizes_.empty()) throw Error(Errc::InvalidArgument, "an algebra needs at least one block");
  for (int n : block_sizes_) {
    if (n < 1) throw Error(Errc::InvalidArgument, "block sizes must be positive");
  }
}

K0Class MultiMatrixAlgebra::unit_class() const {
  return K0Class::simplicial(std::vector<std::int64_t>(block_sizes_.begin(), block_sizes_.end()));
}

K0Class MultiMatrixAlgebra::zero_class() const {
  return K0Class::simplicial(std::vector<std::int64_t>(block_sizes_.size(), 0));
}

OrderedGroupSpec MultiMatrixAlgebra::group() const {
  return OrderedGroupSpec::simplicial(std::vector<std::int64_t>(block_sizes_.begin(), block_sizes_.end()));
}

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(MultiMatrixAlgebra algebra, std::vector<ComplexMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.block_count()) {
    throw Error(Errc::ShapeMismatch, "expected " + std::to_string(algebra_.block_count()) + " blocks, got " +
                                         std::to_string(blocks_.size()));
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int n = algebra_.block_size(i);
    if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
      throw Error(Errc::ShapeMismatch, "block " + std::to_string(i) + " must be " + std::to_string(n) + "x" +
                                           std::to_string(n));
    }
    if (!blocks_[i].allFinite()) throw Error(Errc::NonFinite, "block " + std::to_string(i) + " has NaN or Inf");
  }
}

AlgebraElement AlgebraElement::zero(const MultiMatrixAlgebra& algebra) {
  std::vector<ComplexMatrix> blocks;
  for (int n : algebra.block_sizes()) blocks.push_back(ComplexMatrix::Zero(n, n));
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const MultiMatrixAlgebra& algebra) {
  std::vector<ComplexMatrix> blocks;
  for (int n : algebra.block_sizes()) blocks.push_back(ComplexMatrix::Identity(n, n));
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<ComplexMatrix> out;
  for (const auto& b : blocks_) out.push_back(b.adjoint());
  return {algebra_, std::move(out)};
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) out.push_back(a.blocks_[i] + b.blocks_[i]);
  return {a.algebra_, std::move(out)};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) out.push_back(a.blocks_[i] - b.blocks_[i]);
  return {a.algebra_, std::move(out)};
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) out.push_back(a.blocks_[i] * b.blocks_[i]);
  return {a.algebra_, std::move(out)};
}

AlgebraElement operator*(std::complex<double> alpha, const AlgebraElement& a) {
  std::vector<ComplexMatrix> out;
  for (const auto& b : a.blocks_) out.push_back(alpha * b);
  return {a.algebra_, std::move(out)};
}

// ---------------------------------------------------------------- predicates

double element_norm(const AlgebraElement& a) {
  double norm = 0.0;
  for (const auto& b : a.blocks()) norm = std::max(norm, operator_norm(b));
  return norm;
}

bool is_projection(const AlgebraElement& p) {
  for (const auto& b : p.blocks()) {
    if (operator_norm(ComplexMatrix(b * b - b)) > Tolerance<double>::equality) return false;
    if (operator_norm(ComplexMatrix(b - b.adjoint())) > Tolerance<double>::equality) return false;
  }
  return true;
}

bool is_hermitian(const AlgebraElement& a) {
  return std::all_of(a.blocks().begin(), a.blocks().end(), [](const ComplexMatrix& b) { return is_hermitian(b); });
}

bool is_positive(const AlgebraElement& a) {
  return std::all_of(a.blocks().begin(), a.blocks().end(), [](const ComplexMatrix& b) { return is_positive(b); });
}

K0Class rank_vector(const AlgebraElement& p) {
  if (!is_projection(p)) throw Error(Errc::NotProjection, "rank_vector needs a projection");
  std::vector<std::int64_t> ranks;
  for (const auto& b : p.blocks()) {
    const auto eig = hermitian_eigen(b);
    ranks.push_back(static_cast<std::int64_t>((eig.eigenvalues.array() > 0.5).count()));
  }
  return K0Class::simplicial(std::move(ranks));
}

bool in_dimension_range(const MultiMatrixAlgebra& algebra, const K0Class& g) {
  require_box_class(algebra, g);
  const auto& c = g.as_simplicial().coords;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] > algebra.block_size(i)) return false;
  }
  return true;
}

K0Class clamp_to_box(const MultiMatrixAlgebra& algebra, const K0Class& g) {
  require_box_class(algebra, g);
  if (!g.is_positive()) throw Error(Errc::NegativeClass, g.str() + " is not in the positive cone");
  std::vector<std::int64_t> c = g.as_simplicial().coords;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::min<std::int64_t>(c[i], algebra.block_size(i));
  return K0Class::simplicial(std::move(c));
}

// ---------------------------------------------------------------- spectra

SpectralSteps spectral_steps(const AlgebraElement& a) {
  struct Entry {
    double value;
    std::size_t block;
    Eigen::Index column;
  };
  std::vector<HermitianEigen<double>> eigs;
  std::vector<Entry> entries;
  double norm = 0.0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    if (!is_positive(a.block(i))) throw Error(Errc::NotPositive, "spectral_steps needs a positive element");
    eigs.push_back(hermitian_eigen(a.block(i)));
    for (Eigen::Index j = 0; j < eigs.back().eigenvalues.size(); ++j) {
      entries.push_back({eigs.back().eigenvalues(j), i, j});
      norm = std::max(norm, std::abs(eigs.back().eigenvalues(j)));
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.value > y.value; });

  const double tol = 1e-10 * std::max(1.0, norm);
  const MultiMatrixAlgebra& algebra = a.algebra();
  SpectralSteps steps;
  std::vector<std::int64_t> counts(algebra.block_count(), 0);
  std::size_t k = 0;
  while (k < entries.size() && entries[k].value > tol) {
    const double head = entries[k].value;
    AlgebraElement projection = AlgebraElement::zero(algebra);
    std::vector<ComplexMatrix> blocks = projection.blocks();
    double last = head;
    while (k < entries.size() && entries[k].value > tol && last - entries[k].value <= tol) {
      const auto& e = entries[k];
      const auto v = eigs[e.block].eigenvectors.col(e.column);
      blocks[e.block] += v * v.adjoint();
      ++counts[e.block];
      last = e.value;
      ++k;
    }
    steps.values.push_back(head);
    steps.cumulative_classes.push_back(K0Class::simplicial(counts));
    steps.projections.emplace_back(algebra, std::move(blocks));
  }
  return steps;
}

AlgebraElement absolute_value(const AlgebraElement& a) {
  std::vector<ComplexMatrix> out;
  for (const auto& b : a.blocks()) out.push_back(absolute_value(b));
  return {a.algebra(), std::move(out)};
}

AlgebraElement apply_scalar_function(const AlgebraElement& a, const std::function<double(double)>& f) {
  std::vector<ComplexMatrix> out;
  for (const auto& b : a.blocks()) out.push_back(apply_scalar_function(b, f));
  return {a.algebra(), std::move(out)};
}

AlgebraElement random_projection(const MultiMatrixAlgebra& algebra, const K0Class& rank, std::uint64_t seed) {
  auto rng = sampling::make_rng(seed);
  return sampling::random_projection(algebra, rank, rng);
}

// ---------------------------------------------------------------- sampling

namespace sampling {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace {

ComplexMatrix ginibre(Rng& rng, int n) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = normal(rng);
      m(i, j) = {re, normal(rng)};
    }
  }
  return m;
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

MultiMatrixAlgebra random_algebra(Rng& rng, int max_blocks, int max_size) {
  const int k = uniform_int(rng, 1, max_blocks);
  std::vector<int> sizes;
  for (int i = 0; i < k; ++i) sizes.push_back(uniform_int(rng, 1, max_size));
  return MultiMatrixAlgebra(std::move(sizes));
}

ComplexMatrix haar_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(rng, n));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

AlgebraElement random_unitary(const MultiMatrixAlgebra& algebra, Rng& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int n : algebra.block_sizes()) blocks.push_back(haar_unitary(rng, n));
  return {algebra, std::move(blocks)};
}

AlgebraElement random_projection(const MultiMatrixAlgebra& algebra, const K0Class& rank, Rng& rng) {
  require_box_class(algebra, rank);
  if (!in_dimension_range(algebra, rank)) {
    throw Error(Errc::RankOutOfRange, rank.str() + " is outside the dimension range");
  }
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    const int n = algebra.block_size(i);
    const ComplexMatrix u = haar_unitary(rng, n);
    const auto r = static_cast<Eigen::Index>(rank.as_simplicial().coords[i]);
    ComplexMatrix p = u.leftCols(r) * u.leftCols(r).adjoint();
    blocks.push_back((p + p.adjoint()) / 2.0);
  }
  return {algebra, std::move(blocks)};
}

AlgebraElement random_element(const MultiMatrixAlgebra& algebra, Rng& rng, double max_norm) {
  std::vector<ComplexMatrix> blocks;
  const int flavour = uniform_int(rng, 0, 7);
  for (int n : algebra.block_sizes()) {
    ComplexMatrix m = ginibre(rng, n);
    if (flavour == 0) {
      // rank deficient
      const int r = uniform_int(rng, 0, n - 1);
      const ComplexMatrix u = haar_unitary(rng, n);
      m = m * u.leftCols(r) * u.leftCols(r).adjoint();
    } else if (flavour == 1) {
      // repeated singular values shared across blocks
      const ComplexMatrix u = haar_unitary(rng, n);
      const ComplexMatrix v = haar_unitary(rng, n);
      Eigen::VectorXcd d(n);
      for (int j = 0; j < n; ++j) d(j) = static_cast<double>(uniform_int(rng, 0, 2));
      m = u * d.asDiagonal() * v.adjoint();
    }
    blocks.push_back(std::move(m));
  }
  AlgebraElement a(algebra, std::move(blocks));
  const double norm = element_norm(a);
  if (norm == 0.0) return a;
  const double target = std::uniform_real_distribution<double>(0.1, max_norm)(rng);
  return std::complex<double>(target / norm) * a;
}

AlgebraElement random_positive(const MultiMatrixAlgebra& algebra, Rng& rng) {
  const AlgebraElement x = random_element(algebra, rng);
  AlgebraElement a = x.adjoint() * x;
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : a.blocks()) blocks.push_back((b + b.adjoint()) / 2.0);
  return {algebra, std::move(blocks)};
}

K0Class random_class(const MultiMatrixAlgebra& algebra, Rng& rng) {
  return random_class_below(algebra.unit_class(), rng);
}

K0Class random_class_below(const K0Class& bound, Rng& rng) {
  std::vector<std::int64_t> c;
  for (std::int64_t b : bound.as_simplicial().coords) {
    c.push_back(std::uniform_int_distribution<std::int64_t>(0, std::max<std::int64_t>(b, 0))(rng));
  }
  return K0Class::simplicial(std::move(c));
}

}  // namespace sampling

}  // namespace svf
