#pragma once

// Multi-matrix C*-algebras M_{n_1} (+) ... (+) M_{n_k} and their elements.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "svf/k0.hpp"
#include "svf/linalg.hpp"

namespace svf {

class MultiMatrixAlgebra {
 public:
  explicit MultiMatrixAlgebra(std::vector<int> block_sizes);

  const std::vector<int>& block_sizes() const { return block_sizes_; }
  std::size_t block_count() const { return block_sizes_.size(); }
  int block_size(std::size_t i) const { return block_sizes_.at(i); }

  /// Class of the unit, (n_1, ..., n_k).
  K0Class unit_class() const;
  K0Class zero_class() const;
  OrderedGroupSpec group() const;

  friend bool operator==(const MultiMatrixAlgebra&, const MultiMatrixAlgebra&) = default;

 private:
  std::vector<int> block_sizes_;
};

/// A tuple of blocks, one square matrix per summand of the algebra.
class AlgebraElement {
 public:
  AlgebraElement(MultiMatrixAlgebra algebra, std::vector<ComplexMatrix> blocks);

  static AlgebraElement zero(const MultiMatrixAlgebra& algebra);
  static AlgebraElement identity(const MultiMatrixAlgebra& algebra);

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }

  AlgebraElement adjoint() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(std::complex<double> alpha, const AlgebraElement& a);

 private:
  MultiMatrixAlgebra algebra_;
  std::vector<ComplexMatrix> blocks_;
};

/// Distinct nonzero eigenvalues of a positive element, merged across blocks,
/// with the rank vectors of the cumulative spectral projections.
struct SpectralSteps {
  std::vector<double> values;                  // alpha_0 > alpha_1 > ... > 0
  std::vector<K0Class> cumulative_classes;     // [p^_1], ..., [p^_n]
  std::vector<AlgebraElement> projections;     // p_1, ..., p_n (mutually orthogonal)
};

/// C*-norm: the largest block operator norm.
double element_norm(const AlgebraElement& a);

bool is_projection(const AlgebraElement& p);
bool is_positive(const AlgebraElement& a);
bool is_hermitian(const AlgebraElement& a);

/// Rank vector of a projection (eigenvalues above 1/2 per block).
K0Class rank_vector(const AlgebraElement& p);

bool in_dimension_range(const MultiMatrixAlgebra& algebra, const K0Class& g);

/// Clamp a positive simplicial class componentwise to the block sizes.
K0Class clamp_to_box(const MultiMatrixAlgebra& algebra, const K0Class& g);

/// Eigenvalues within 1e-10 max(1, |a|) of each other are merged and those
/// below that threshold are dropped.
SpectralSteps spectral_steps(const AlgebraElement& a);

AlgebraElement absolute_value(const AlgebraElement& a);
AlgebraElement apply_scalar_function(const AlgebraElement& a, const std::function<double(double)>& f);

/// Haar-conjugated coordinate projection with the requested rank vector.
AlgebraElement random_projection(const MultiMatrixAlgebra& algebra, const K0Class& rank, std::uint64_t seed);

// Sampling helpers shared by the property battery and the tests.
namespace sampling {

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

MultiMatrixAlgebra random_algebra(Rng& rng, int max_blocks, int max_size);
ComplexMatrix haar_unitary(Rng& rng, int n);
AlgebraElement random_unitary(const MultiMatrixAlgebra& algebra, Rng& rng);
AlgebraElement random_projection(const MultiMatrixAlgebra& algebra, const K0Class& rank, Rng& rng);
/// Ginibre blocks scaled so that |a| <= max_norm; occasionally rank deficient
/// or with a repeated spectrum.
AlgebraElement random_element(const MultiMatrixAlgebra& algebra, Rng& rng, double max_norm = 2.0);
AlgebraElement random_positive(const MultiMatrixAlgebra& algebra, Rng& rng);
/// Uniform simplicial class in the box prod [0, n_i].
K0Class random_class(const MultiMatrixAlgebra& algebra, Rng& rng);
/// Uniform simplicial class with 0 <= r_i <= bound_i.
K0Class random_class_below(const K0Class& bound, Rng& rng);

}  // namespace sampling

}  // namespace svf
