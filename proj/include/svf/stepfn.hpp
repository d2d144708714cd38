#pragma once

// Right-continuous decreasing step functions on a scalar domain S in [0, inf)
// with 0 in S, and the approximation machinery built on them: left-endpoint
// step functions over a finite partition, their exact sup distance to a
// target, partition refinement and nested geometric approximation sequences.

#include <functional>
#include <optional>
#include <vector>

#include "svf/k0.hpp"

namespace svf {

using Point = Rational;

class ScalarDomain {
 public:
  enum class Kind { Dyadic, Rational, FiniteGrid };

  static ScalarDomain dyadic() { return ScalarDomain(Kind::Dyadic, {}); }
  static ScalarDomain rational() { return ScalarDomain(Kind::Rational, {}); }
  /// Grid points are converted exactly from their binary values; 0 must be
  /// among them.
  static ScalarDomain finite_grid(const std::vector<double>& points);
  static ScalarDomain finite_grid(std::vector<Point> points);

  Kind kind() const { return kind_; }
  const std::vector<Point>& grid() const { return grid_; }

  bool contains(const Point& x) const;
  /// Largest domain point strictly below x (finite grids only).
  std::optional<Point> predecessor(const Point& x) const;

  friend bool operator==(const ScalarDomain&, const ScalarDomain&) = default;

 private:
  ScalarDomain(Kind kind, std::vector<Point> grid) : kind_(kind), grid_(std::move(grid)) {}

  Kind kind_;
  std::vector<Point> grid_;
};

struct Jump {
  Point point;
  double size;  // f(x-) - f(x) > 0
};

/// Decreasing step function. values[i] holds on [breakpoints[i],
/// breakpoints[i+1]) and the last value holds on [breakpoints.back(), inf).
class StepFunction {
 public:
  StepFunction(std::vector<Point> breakpoints, std::vector<double> values);

  static StepFunction zero() { return StepFunction({Point(0)}, {0.0}); }

  const std::vector<Point>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(const Point& x) const;
  /// inf over [0, x); equals the value at 0 when x = 0.
  double left_limit(const Point& x) const;
  std::vector<Jump> jumps() const;
  bool has_compact_support() const { return values_.back() == 0.0; }

 private:
  std::vector<Point> breakpoints_;
  std::vector<double> values_;
};

/// A decreasing right-continuous target f : S -> [0, inf) together with its
/// declared left-jump set. Left limits default to f(x) + jump at declared
/// points and to f(x) elsewhere; on a finite grid they default to the value at
/// the predecessor.
class TargetFunction {
 public:
  using Evaluator = std::function<double(const Point&)>;

  TargetFunction(ScalarDomain domain, Evaluator value, std::vector<Jump> jumps = {}, Evaluator left_limit = {});

  static TargetFunction constant(ScalarDomain domain, double c);
  /// max(0, 1 - t)
  static TargetFunction one_minus_t(ScalarDomain domain);
  /// 1 / (1 + t)
  static TargetFunction reciprocal(ScalarDomain domain);
  static TargetFunction from_step(ScalarDomain domain, const StepFunction& g);

  const ScalarDomain& domain() const { return domain_; }
  const std::vector<Jump>& declared_jumps() const { return jumps_; }

  double operator()(const Point& x) const { return value_(x); }
  double left_limit(const Point& x) const;

  /// Checks monotonicity on consecutive pairs of `samples` and the declared
  /// jump sizes; throws InvalidArgument on failure.
  void validate(const std::vector<Point>& samples) const;

 private:
  ScalarDomain domain_;
  Evaluator value_;
  std::vector<Jump> jumps_;
  Evaluator left_limit_;
};

/// g_F^f: the value f(x_{i-1}) on [x_{i-1}, x_i) and 0 from max F onwards.
StepFunction step_from_partition(const TargetFunction& f, std::vector<Point> partition);

/// sup over S of |g - f|, evaluated exactly from values and left limits.
double sup_distance(const StepFunction& g, const TargetFunction& f);

/// Declared left jumps in (0, b], each validated against the evaluators.
std::vector<Jump> left_jump_set(const TargetFunction& f, const Point& b);

/// a = x_0 < ... < x_m = b in S with every drop f(x_{i-1}) - f(x_i-) < eps.
std::vector<Point> refine_partition(const TargetFunction& f, const Point& a, const Point& b, double eps);

/// Nested partitions F_0 within F_1 within ... F_n with sup distance of
/// g_{F_n}^f to f below c / 2^n. Witnesses for vanishing at infinity are
/// searched among the integers up to `search_bound` (grid points for finite
/// grids).
std::vector<std::vector<Point>> approx_sequence(const TargetFunction& f, double c, int n, long search_bound = 1 << 20);

/// True iff some searched point x has f(x) < eps.
bool is_vanishing_at_infinity(const TargetFunction& f, double eps, long search_bound);

}  // namespace svf
