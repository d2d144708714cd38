#pragma once

// The dyadic UHF tower M_2 -> M_4 -> ... with K0 = Z[1/2] and normalized
// trace, its finite-spectrum positive elements, and the constructive
// realization of a prescribed decreasing right-continuous function as a
// singular value function.

#include <optional>
#include <string>
#include <vector>

#include "svf/algebra.hpp"
#include "svf/k0.hpp"
#include "svf/stepfn.hpp"

namespace svf {

struct Mass {
  double value;
  Dyadic trace_mass;
};

/// sum_k value_k p_k in M_{2^stage} with tr(p_k) = trace_mass_k. In the
/// diagonal model p_k is the coordinate projection onto the trace interval
/// [M_k, M_{k+1}) where M_k is the cumulative mass before k.
class TowerElement {
 public:
  /// Validates: values strictly descending and positive, masses positive
  /// with denominators dividing 2^stage, total mass at most 1.
  TowerElement(unsigned stage, std::vector<Mass> masses);

  static TowerElement zero() { return TowerElement(0, {}); }
  /// Merges equal consecutive values and drops zero values first.
  static TowerElement from_steps(unsigned stage, const std::vector<Mass>& steps);

  unsigned stage() const { return stage_; }
  const std::vector<Mass>& masses() const { return masses_; }

  double norm() const { return masses_.empty() ? 0.0 : masses_.front().value; }
  Dyadic total_mass() const;
  /// M_0 = 0, M_1, ..., M_n.
  std::vector<Dyadic> cumulative_masses() const;

 private:
  unsigned stage_;
  std::vector<Mass> masses_;
};

/// min { alpha_k : M_k <= g } with alpha_n = 0; zero for g >= 1.
double tower_svf(const TowerElement& a, const K0Class& g);

/// s(a) as a step function on the dyadics: alpha_k on [M_k, M_{k+1}) and 0
/// from the total mass on.
StepFunction tower_svf_function(const TowerElement& a);

/// |a - b| for diagonal elements embedded at the common stage: the sup over
/// the trace interval of the difference of their eigenvalue profiles.
double tower_norm_diff(const TowerElement& a, const TowerElement& b);

/// diag(a) in M_{2^stage}; throws InvalidArgument above `max_stage`.
AlgebraElement tower_to_matrix(const TowerElement& a, unsigned max_stage = 10);

/// max over ranks r in [0, 2^stage] of |svf(diag(a), r) - tower_svf(a, r / 2^stage)|.
double tower_dense_deviation(const TowerElement& a, unsigned max_stage = 10);

struct RealizationTrace {
  double scale = 0.0;  // f(0)
  std::vector<std::vector<Point>> partitions;
  std::vector<TowerElement> elements;
  std::vector<double> distances;   // |s(a_n) - f|
  std::vector<double> increments;  // |a_n - a_{n-1}|, and |a_0| at n = 0

  std::size_t rounds() const { return elements.size(); }
  /// distances[n] < f(0) / 2^n and increments[n] < f(0) / 2^(n-1) for n >= 1.
  /// Trivially true when f(0) = 0 and every entry is 0.
  bool within_envelope() const;
  /// "n,increment,distance"
  std::string to_csv() const;
};

/// Runs N + 1 rounds of the construction for a target on the dyadics with
/// f(1) = 0. Throws DomainMismatch for other domains and BadNormalization if
/// f(1) != 0.
RealizationTrace realize(const TargetFunction& f, int n);

struct ProbeResult {
  /// Distance from g to the next breakpoint of s(a) above g; empty when none.
  std::optional<Dyadic> gap;
  /// Largest drop s_g(a) - s_{g+delta}(a) over delta strictly below the gap.
  double max_drop = 0.0;
  /// Drops for every delta, in input order.
  std::vector<double> drops;
};

ProbeResult right_continuity_probe(const TowerElement& a, const Dyadic& g, const std::vector<Dyadic>& deltas);

struct CounterexampleRow {
  std::string label;  // "n" for the sequence, "limit" or "control"
  int n = 0;
  K0Class g;
  int expected = 0;
  int value = 0;

  bool ok() const { return value == expected; }
};

struct CounterexampleReport {
  K0Class projection_class;
  std::vector<CounterexampleRow> rows;
  /// Second coordinates of the sequence equal the limit's, and the first
  /// coordinates sit exactly 1/n from it.
  bool converges = false;

  bool passed() const;
  /// "n,class,s" with the limit and control rows labelled.
  std::string to_csv() const;
};

/// Projection of class (1, 0) in the lex pair model, evaluated at
/// (1 + 1/n, 1) for n = 1..100, at the limit (1, 1) and at (1, 0).
CounterexampleReport counterexample_lex();

}  // namespace svf
