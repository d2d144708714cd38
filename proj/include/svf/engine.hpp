#pragma once

// Singular value functions on multi-matrix algebras,
//   s_g(a) = inf { |a - a p| : p projection, [p] <= g },
// together with the constructive projection results that surround them.

#include <cstdint>
#include <vector>

#include "svf/algebra.hpp"

namespace svf {

/// s(a) tabulated on the box prod [0, n_i]; classes outside the box read the
/// value at the clamped class.
class SvfTable {
 public:
  SvfTable(MultiMatrixAlgebra algebra, std::vector<double> values);

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  /// Row-major over the box, last coordinate fastest.
  const std::vector<double>& values() const { return values_; }

  double value(const K0Class& g) const;
  /// All classes of the box in storage order.
  std::vector<K0Class> classes() const;

  std::size_t index_of(const K0Class& g) const;
  K0Class class_at(std::size_t index) const;

 private:
  MultiMatrixAlgebra algebra_;
  std::vector<double> values_;
};

/// Closed form max_i sigma_{min(g_i, n_i)}(a_i), with sigma_{n_i} = 0.
/// Singular values below 1e-12 max(1, |a|) are reported as exactly 0.
double svf(const MultiMatrixAlgebra& algebra, const AlgebraElement& a, const K0Class& g);

/// min { alpha_k : [p^_k] <= g } with alpha_n = 0 and [p^_0] = 0.
double svf_finite_spectrum(const SpectralSteps& steps, const K0Class& g);

/// SVF of a projection with class `pclass`: 0 if pclass <= g, else 1. Works in
/// every group model.
int svf_projection_indicator(const K0Class& pclass, const K0Class& g);

/// Smallest |a - a p| over `trials` random projections with [p] <= g and the
/// structured spectral candidates of |a|. An upper bound for svf that the
/// structured candidates make tight.
double svf_sampling_bound(const MultiMatrixAlgebra& algebra, const AlgebraElement& a, const K0Class& g, int trials,
                          std::uint64_t seed);

SvfTable svf_table(const MultiMatrixAlgebra& algebra, const AlgebraElement& a);

struct SubordinationCheck {
  double norm;          // |p - p q|
  bool implied;         // norm < 1 - 1e-9, so p is subequivalent to q
  bool rank_dominated;  // rank(p) <= rank(q) componentwise

  bool consistent() const { return !implied || rank_dominated; }
};

SubordinationCheck norm_subordination(const AlgebraElement& p, const AlgebraElement& q);

/// q' with [q'] = [q] and p1 <= q' <= p2, obtained by extending ran(p1)
/// inside ran(p2).
AlgebraElement nest_projection(const AlgebraElement& p1, const AlgebraElement& q, const AlgebraElement& p2);

/// Increasing projections p_1 <= ... <= p_N = p with [p_i] = chain[i].
std::vector<AlgebraElement> lift_class_chain(const MultiMatrixAlgebra& algebra, const std::vector<K0Class>& chain,
                                             const AlgebraElement& p);

/// r with [r] = [p] + [q], |p - p r| < eps and |q - q r| < eps. The range of
/// r contains ran(p) + ran(q), so both norms are zero up to rounding.
AlgebraElement approx_sum_projection(const AlgebraElement& p, const AlgebraElement& q, double eps);

}  // namespace svf
