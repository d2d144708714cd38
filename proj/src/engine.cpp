#include "svf/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svf {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kNestTolerance = 1e-9;

void require_member(const MultiMatrixAlgebra& algebra, const AlgebraElement& a) {
  if (!(a.algebra() == algebra)) throw Error(Errc::ShapeMismatch, "element does not belong to the algebra");
}

void require_projection(const AlgebraElement& p, const char* name) {
  if (!is_projection(p)) throw Error(Errc::NotProjection, std::string(name) + " is not a projection");
}

void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra() == b.algebra())) throw Error(Errc::ShapeMismatch, "projections live in different algebras");
}

// A projection has singular values exactly 1 (rank_i times) and 0, so its
// values come out as an exact 0/1 indicator.
std::vector<RealVector> block_singular_values(const AlgebraElement& a) {
  std::vector<RealVector> out;
  if (is_projection(a)) {
    const K0Class rank = rank_vector(a);
    const auto& ranks = rank.as_simplicial().coords;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      RealVector s = RealVector::Zero(a.algebra().block_size(i));
      s.head(static_cast<Eigen::Index>(ranks[i])).setOnes();
      out.push_back(std::move(s));
    }
    return out;
  }
  double norm = 0.0;
  for (const auto& b : a.blocks()) {
    out.push_back(singular_values(b));
    if (out.back().size() > 0) norm = std::max(norm, out.back()(0));
  }
  const double snap = kSnap * std::max(1.0, norm);
  for (auto& s : out) s = (s.array() <= snap).select(0.0, s);
  return out;
}

double closed_form(const std::vector<RealVector>& sigmas, const std::vector<std::int64_t>& g) {
  double value = 0.0;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(g[i]);
    if (j < sigmas[i].size()) value = std::max(value, sigmas[i](j));
  }
  return value;
}

ComplexMatrix coordinate_projection(int n, std::int64_t rank) {
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (std::int64_t i = 0; i < rank; ++i) p(i, i) = 1.0;
  return p;
}

AlgebraElement coordinate_projection(const MultiMatrixAlgebra& algebra, const K0Class& rank) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    blocks.push_back(coordinate_projection(algebra.block_size(i), rank.as_simplicial().coords[i]));
  }
  return {algebra, std::move(blocks)};
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

// Orthonormal basis (columns) of the range of a projection block.
ComplexMatrix range_basis(const ComplexMatrix& p) {
  const auto eig = hermitian_eigen(p);
  Eigen::Index r = 0;
  while (r < eig.eigenvalues.size() && eig.eigenvalues(r) > 0.5) ++r;
  return eig.eigenvectors.leftCols(r);
}

}  // namespace

// ---------------------------------------------------------------- table

SvfTable::SvfTable(MultiMatrixAlgebra algebra, std::vector<double> values)
    : algebra_(std::move(algebra)), values_(std::move(values)) {
  std::size_t size = 1;
  for (int n : algebra_.block_sizes()) size *= static_cast<std::size_t>(n) + 1;
  if (values_.size() != size) throw Error(Errc::ShapeMismatch, "table size does not match the box");
}

std::size_t SvfTable::index_of(const K0Class& g) const {
  const auto clamped = clamp_to_box(algebra_, g);
  std::size_t index = 0;
  for (std::size_t i = 0; i < algebra_.block_count(); ++i) {
    index = index * (static_cast<std::size_t>(algebra_.block_size(i)) + 1) +
            static_cast<std::size_t>(clamped.as_simplicial().coords[i]);
  }
  return index;
}

K0Class SvfTable::class_at(std::size_t index) const {
  std::vector<std::int64_t> coords(algebra_.block_count());
  for (std::size_t i = algebra_.block_count(); i-- > 0;) {
    const auto radix = static_cast<std::size_t>(algebra_.block_size(i)) + 1;
    coords[i] = static_cast<std::int64_t>(index % radix);
    index /= radix;
  }
  return K0Class::simplicial(std::move(coords));
}

double SvfTable::value(const K0Class& g) const { return values_[index_of(g)]; }

std::vector<K0Class> SvfTable::classes() const {
  std::vector<K0Class> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out.push_back(class_at(i));
  return out;
}

// ---------------------------------------------------------------- SVF

double svf(const MultiMatrixAlgebra& algebra, const AlgebraElement& a, const K0Class& g) {
  require_member(algebra, a);
  const K0Class clamped = clamp_to_box(algebra, g);
  return closed_form(block_singular_values(a), clamped.as_simplicial().coords);
}

double svf_finite_spectrum(const SpectralSteps& steps, const K0Class& g) {
  if (!g.is_positive()) throw Error(Errc::NegativeClass, g.str() + " is not in the positive cone");
  const std::size_t n = steps.values.size();
  // alpha is decreasing, so scanning down from k = n the first qualifying
  // index carries the minimum. k = 0 always qualifies.
  for (std::size_t k = n; k > 0; --k) {
    if (leq(steps.cumulative_classes[k - 1], g)) return k == n ? 0.0 : steps.values[k];
  }
  return n == 0 ? 0.0 : steps.values[0];
}

int svf_projection_indicator(const K0Class& pclass, const K0Class& g) { return leq(pclass, g) ? 0 : 1; }

double svf_sampling_bound(const MultiMatrixAlgebra& algebra, const AlgebraElement& a, const K0Class& g, int trials,
                          std::uint64_t seed) {
  require_member(algebra, a);
  if (trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
  const K0Class bound = clamp_to_box(algebra, g);
  const auto residual = [&](const AlgebraElement& p) { return element_norm(a - a * p); };

  const AlgebraElement modulus = absolute_value(a);

  // Top eigenvectors of |a_i|, as many as the clamped class allows.
  std::vector<ComplexMatrix> top;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    const auto eig = hermitian_eigen(modulus.block(i));
    const auto r = static_cast<Eigen::Index>(bound.as_simplicial().coords[i]);
    top.push_back(hermitian_part(eig.eigenvectors.leftCols(r) * eig.eigenvectors.leftCols(r).adjoint()));
  }
  double best = residual(AlgebraElement(algebra, std::move(top)));

  // Cumulative spectral projections of |a| whose class fits under g.
  const SpectralSteps steps = spectral_steps(modulus);
  AlgebraElement cumulative = AlgebraElement::zero(algebra);
  best = std::min(best, residual(cumulative));
  for (std::size_t k = 0; k < steps.values.size(); ++k) {
    cumulative = cumulative + steps.projections[k];
    if (leq(steps.cumulative_classes[k], bound)) best = std::min(best, residual(cumulative));
  }

  auto rng = sampling::make_rng(seed, 0x5a4d);
  for (int t = 0; t < trials; ++t) {
    const K0Class rank = sampling::random_class_below(bound, rng);
    best = std::min(best, residual(sampling::random_projection(algebra, rank, rng)));
  }
  return best;
}

SvfTable svf_table(const MultiMatrixAlgebra& algebra, const AlgebraElement& a) {
  require_member(algebra, a);
  const auto sigmas = block_singular_values(a);
  std::size_t size = 1;
  for (int n : algebra.block_sizes()) size *= static_cast<std::size_t>(n) + 1;
  SvfTable shape(algebra, std::vector<double>(size, 0.0));
  std::vector<double> values(size);
  for (std::size_t i = 0; i < size; ++i) values[i] = closed_form(sigmas, shape.class_at(i).as_simplicial().coords);
  return SvfTable(algebra, std::move(values));
}

// ---------------------------------------------------------------- projection constructions

SubordinationCheck norm_subordination(const AlgebraElement& p, const AlgebraElement& q) {
  require_projection(p, "p");
  require_projection(q, "q");
  require_same_algebra(p, q);
  // |p - pq| is exactly 1 whenever p is not subordinate to q; values within
  // rounding of 1 are read as 1.
  const double norm = element_norm(p - p * q);
  return {norm, norm < 1.0 - kNestTolerance, leq(rank_vector(p), rank_vector(q))};
}

AlgebraElement nest_projection(const AlgebraElement& p1, const AlgebraElement& q, const AlgebraElement& p2) {
  require_projection(p1, "p1");
  require_projection(q, "q");
  require_projection(p2, "p2");
  require_same_algebra(p1, q);
  require_same_algebra(p1, p2);
  if (element_norm(p1 - p1 * p2) > kNestTolerance) throw Error(Errc::NotNested, "p1 is not below p2");
  const K0Class r1 = rank_vector(p1);
  const K0Class rq = rank_vector(q);
  const K0Class r2 = rank_vector(p2);
  if (!leq(r1, rq) || !leq(rq, r2)) {
    throw Error(Errc::RankGapViolated, "need rank(p1) <= rank(q) <= rank(p2), got " + r1.str() + ", " + rq.str() +
                                           ", " + r2.str());
  }
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < p1.blocks().size(); ++i) {
    const ComplexMatrix gap = range_basis(hermitian_part(p2.block(i) - p1.block(i)));
    const auto extra = static_cast<Eigen::Index>(rq.as_simplicial().coords[i] - r1.as_simplicial().coords[i]);
    const auto v = gap.leftCols(extra);
    blocks.push_back(hermitian_part(p1.block(i) + v * v.adjoint()));
  }
  return {p1.algebra(), std::move(blocks)};
}

std::vector<AlgebraElement> lift_class_chain(const MultiMatrixAlgebra& algebra, const std::vector<K0Class>& chain,
                                             const AlgebraElement& p) {
  require_member(algebra, p);
  require_projection(p, "p");
  if (chain.empty()) throw Error(Errc::InvalidArgument, "chain is empty");
  for (const auto& g : chain) {
    if (!in_dimension_range(algebra, g)) throw Error(Errc::RankOutOfRange, g.str() + " is outside the dimension range");
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!leq(chain[i - 1], chain[i])) {
      throw Error(Errc::ChainNotIncreasing, chain[i - 1].str() + " is not below " + chain[i].str());
    }
  }
  if (!(chain.back() == rank_vector(p))) {
    throw Error(Errc::TopMismatch, "chain top " + chain.back().str() + " differs from [p] = " + rank_vector(p).str());
  }
  std::vector<AlgebraElement> out(chain.size(), p);
  const AlgebraElement zero = AlgebraElement::zero(algebra);
  for (std::size_t i = chain.size() - 1; i-- > 0;) {
    out[i] = nest_projection(zero, coordinate_projection(algebra, chain[i]), out[i + 1]);
  }
  return out;
}

AlgebraElement approx_sum_projection(const AlgebraElement& p, const AlgebraElement& q, double eps) {
  require_projection(p, "p");
  require_projection(q, "q");
  require_same_algebra(p, q);
  if (!(eps > 0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  const MultiMatrixAlgebra& algebra = p.algebra();
  const K0Class target = rank_vector(p) + rank_vector(q);
  if (!in_dimension_range(algebra, target)) {
    throw Error(Errc::RankOverflow, "[p] + [q] = " + target.str() + " exceeds the block sizes");
  }
  // The leading eigenvectors of p + q span ran(p) + ran(q) and pad it with
  // kernel directions up to the target rank.
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    const auto eig = hermitian_eigen(hermitian_part(p.block(i) + q.block(i)));
    const auto r = static_cast<Eigen::Index>(target.as_simplicial().coords[i]);
    const auto v = eig.eigenvectors.leftCols(r);
    blocks.push_back(hermitian_part(v * v.adjoint()));
  }
  AlgebraElement r(algebra, std::move(blocks));
  if (!(element_norm(p - p * r) < eps) || !(element_norm(q - q * r) < eps)) {
    throw Error(Errc::InvalidArgument, "eps is below the numerical resolution of the construction");
  }
  return r;
}

}  // namespace svf
