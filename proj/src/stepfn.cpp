#include "svf/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "svf/error.hpp"

namespace svf {

namespace {

constexpr int kMaxBisections = 512;

double to_double(const Point& x) { return x.convert_to<double>(); }

std::string render(const Point& x) { return render_rational(x); }

void require_in_domain(const ScalarDomain& domain, const Point& x, Errc code = Errc::NotInDomain) {
  if (!domain.contains(x)) throw Error(code, render(x) + " is not in the domain");
}

}  // namespace

// ---------------------------------------------------------------- domain

ScalarDomain ScalarDomain::finite_grid(const std::vector<double>& points) {
  std::vector<Point> exact;
  for (double p : points) {
    if (!std::isfinite(p)) throw Error(Errc::NonFinite, "grid point is not finite");
    exact.emplace_back(p);
  }
  return finite_grid(std::move(exact));
}

ScalarDomain ScalarDomain::finite_grid(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty() || points.front() != 0) throw Error(Errc::InvalidArgument, "a grid must contain 0");
  return ScalarDomain(Kind::FiniteGrid, std::move(points));
}

bool ScalarDomain::contains(const Point& x) const {
  if (x < 0) return false;
  switch (kind_) {
    case Kind::Dyadic: return Dyadic::is_dyadic(x);
    case Kind::Rational: return true;
    case Kind::FiniteGrid: return std::binary_search(grid_.begin(), grid_.end(), x);
  }
  return false;
}

std::optional<Point> ScalarDomain::predecessor(const Point& x) const {
  if (kind_ != Kind::FiniteGrid) return std::nullopt;
  auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
  if (it == grid_.begin()) return std::nullopt;
  return *std::prev(it);
}

// ---------------------------------------------------------------- step functions

StepFunction::StepFunction(std::vector<Point> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw Error(Errc::InvalidArgument, "a step function needs matching non-empty breakpoints and values");
  }
  if (breakpoints_.front() != 0) throw Error(Errc::InvalidArgument, "first breakpoint must be 0");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0) throw Error(Errc::InvalidArgument, "values must be >= 0");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw Error(Errc::InvalidArgument, "breakpoints must be strictly increasing");
    }
    if (i > 0 && values_[i] > values_[i - 1]) throw Error(Errc::InvalidArgument, "values must be decreasing");
  }
}

double StepFunction::operator()(const Point& x) const {
  if (x < 0) throw Error(Errc::NotInDomain, "negative argument");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1];
}

double StepFunction::left_limit(const Point& x) const {
  if (x < 0) throw Error(Errc::NotInDomain, "negative argument");
  if (x == 0) return values_.front();
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1];
}

std::vector<Jump> StepFunction::jumps() const {
  std::vector<Jump> out;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i - 1] > values_[i]) out.push_back({breakpoints_[i], values_[i - 1] - values_[i]});
  }
  return out;
}

// ---------------------------------------------------------------- targets

TargetFunction::TargetFunction(ScalarDomain domain, Evaluator value, std::vector<Jump> jumps, Evaluator left_limit)
    : domain_(std::move(domain)), value_(std::move(value)), jumps_(std::move(jumps)), left_limit_(std::move(left_limit)) {
  for (const auto& j : jumps_) {
    require_in_domain(domain_, j.point, Errc::JumpNotInDomain);
    if (j.point <= 0) throw Error(Errc::JumpNotInDomain, "jumps must lie strictly above 0");
    if (!(j.size > 0)) throw Error(Errc::InvalidArgument, "declared jump at " + render(j.point) + " has size <= 0");
  }
  std::sort(jumps_.begin(), jumps_.end(), [](const Jump& x, const Jump& y) { return x.point < y.point; });
}

TargetFunction TargetFunction::constant(ScalarDomain domain, double c) {
  return TargetFunction(std::move(domain), [c](const Point&) { return c; });
}

TargetFunction TargetFunction::one_minus_t(ScalarDomain domain) {
  return TargetFunction(std::move(domain), [](const Point& x) { return x >= 1 ? 0.0 : to_double(Point(1 - x)); });
}

TargetFunction TargetFunction::reciprocal(ScalarDomain domain) {
  return TargetFunction(std::move(domain), [](const Point& x) { return 1.0 / (1.0 + to_double(x)); });
}

TargetFunction TargetFunction::from_step(ScalarDomain domain, const StepFunction& g) {
  Evaluator left;
  if (domain.kind() != ScalarDomain::Kind::FiniteGrid) {
    left = [g](const Point& x) { return g.left_limit(x); };
  }
  return TargetFunction(std::move(domain), [g](const Point& x) { return g(x); }, g.jumps(), std::move(left));
}

double TargetFunction::left_limit(const Point& x) const {
  if (x == 0) return value_(x);
  if (left_limit_) return left_limit_(x);
  if (domain_.kind() == ScalarDomain::Kind::FiniteGrid) {
    const auto pred = domain_.predecessor(x);
    return pred ? value_(*pred) : value_(Point(0));
  }
  const auto it = std::lower_bound(jumps_.begin(), jumps_.end(), x, [](const Jump& j, const Point& p) { return j.point < p; });
  if (it != jumps_.end() && it->point == x) return value_(x) + it->size;
  return value_(x);
}

void TargetFunction::validate(const std::vector<Point>& samples) const {
  std::vector<Point> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double v = value_(sorted[i]);
    if (!std::isfinite(v) || v < 0) throw Error(Errc::InvalidArgument, "target must be finite and non-negative");
    if (i > 0 && v > value_(sorted[i - 1])) {
      throw Error(Errc::InvalidArgument, "target is not decreasing at " + render(sorted[i]));
    }
  }
  for (const auto& j : jumps_) {
    if (!(left_limit(j.point) - value_(j.point) > 0)) {
      throw Error(Errc::InvalidArgument, "declared jump at " + render(j.point) + " is not a left jump");
    }
  }
}

// ---------------------------------------------------------------- operations

StepFunction step_from_partition(const TargetFunction& f, std::vector<Point> partition) {
  if (partition.empty()) throw Error(Errc::EmptyPartition, "partition is empty");
  std::sort(partition.begin(), partition.end());
  partition.erase(std::unique(partition.begin(), partition.end()), partition.end());
  if (partition.front() != 0) throw Error(Errc::EmptyPartition, "partition must contain 0");
  for (const auto& x : partition) require_in_domain(f.domain(), x);
  std::vector<double> values;
  for (std::size_t i = 0; i + 1 < partition.size(); ++i) values.push_back(f(partition[i]));
  values.push_back(0.0);
  return StepFunction(std::move(partition), std::move(values));
}

double sup_distance(const StepFunction& g, const TargetFunction& f) {
  const auto& xs = g.breakpoints();
  const auto& vs = g.values();
  for (const auto& x : xs) {
    if (!f.domain().contains(x)) throw Error(Errc::DomainMismatch, render(x) + " is not in the target's domain");
  }
  double dist = 0.0;
  // On [x_i, x_{i+1}) f runs from f(x_i) down towards f(x_{i+1}-).
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    dist = std::max({dist, std::abs(vs[i] - f(xs[i])), std::abs(vs[i] - f.left_limit(xs[i + 1]))});
  }
  // Tail: f decreases from f(x_last) and is assumed to vanish at infinity.
  const double tail = vs.back();
  dist = std::max({dist, std::abs(tail - f(xs.back())), tail});
  return dist;
}

std::vector<Jump> left_jump_set(const TargetFunction& f, const Point& b) {
  require_in_domain(f.domain(), b);
  std::vector<Jump> out;
  for (const auto& j : f.declared_jumps()) {
    if (j.point > b) break;
    require_in_domain(f.domain(), j.point, Errc::JumpNotInDomain);
    const double drop = f.left_limit(j.point) - f(j.point);
    if (!(drop > 0)) throw Error(Errc::InvalidArgument, "declared jump at " + render(j.point) + " has no drop");
    out.push_back({j.point, drop});
  }
  return out;
}

namespace {

// Finds c in (a, b) with lambda < f(a) - f(c) and f(a) - f(c-) < lambda + mu,
// given lambda < f(a) - f(b-). The search starts from the infimum of
// {c : f(a) - f(c) > lambda}: a declared jump is taken when the crossing
// happens there, otherwise the crossing inside a jump-free stretch is
// bracketed by bisection.
Point locate_cut(const TargetFunction& f, const Point& a, const Point& b, double lambda, double mu) {
  const double fa = f(a);
  const auto h = [&](const Point& x) { return fa - f(x); };
  const auto h_left = [&](const Point& x) { return fa - f.left_limit(x); };

  if (f.domain().kind() == ScalarDomain::Kind::FiniteGrid) {
    const auto& grid = f.domain().grid();
    for (auto it = std::upper_bound(grid.begin(), grid.end(), a); it != grid.end() && *it < b; ++it) {
      if (h(*it) > lambda) {
        if (h_left(*it) < lambda + mu) return *it;
        break;
      }
    }
    throw Error(Errc::NonTermination, "no cut found on the grid; left limits are inconsistent with the values");
  }

  Point lo = a;
  Point hi = b;
  for (const auto& j : f.declared_jumps()) {
    if (j.point <= a) continue;
    if (j.point >= b) break;
    if (h(j.point) > lambda) {
      if (h_left(j.point) < lambda + mu) return j.point;
      hi = j.point;
      break;
    }
    lo = j.point;
  }
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const Point mid = (lo + hi) / 2;
    if (h(mid) > lambda) {
      if (h_left(mid) < lambda + mu) return mid;
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw Error(Errc::NonTermination, "bisection did not isolate a cut in [" + render(a) + ", " + render(b) +
                                        "); the target likely has an undeclared jump");
}

}  // namespace

std::vector<Point> refine_partition(const TargetFunction& f, const Point& a, const Point& b, double eps) {
  if (!(a < b)) throw Error(Errc::BadInterval, "need a < b");
  if (!(eps > 0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  require_in_domain(f.domain(), a);
  require_in_domain(f.domain(), b);

  const double fb_left = f.left_limit(b);
  const double total = f(a) - fb_left;
  const long bound = static_cast<long>(std::ceil(2.0 * std::max(total, 0.0) / eps)) + 1;

  std::vector<Point> out{a};
  Point x = a;
  long iterations = 0;
  while (f(x) - fb_left >= eps) {
    if (++iterations > bound) {
      throw Error(Errc::NonTermination, "refinement exceeded its iteration bound; target violates its contract");
    }
    x = locate_cut(f, x, b, eps / 2, eps / 2);
    out.push_back(x);
  }
  out.push_back(b);
  return out;
}

namespace {

// Candidate witnesses at or above `from`, in increasing order.
template <typename Visit>
bool scan_witnesses(const TargetFunction& f, const Point& from, long search_bound, Visit&& visit) {
  if (f.domain().kind() == ScalarDomain::Kind::FiniteGrid) {
    const auto& grid = f.domain().grid();
    for (auto it = std::lower_bound(grid.begin(), grid.end(), from); it != grid.end(); ++it) {
      if (visit(*it)) return true;
    }
    return false;
  }
  if (visit(from)) return true;
  const BigInt start = boost::multiprecision::numerator(from) / boost::multiprecision::denominator(from) + 1;
  for (BigInt k = start; k <= search_bound; ++k) {
    if (visit(Point(k))) return true;
  }
  return false;
}

}  // namespace

std::vector<std::vector<Point>> approx_sequence(const TargetFunction& f, double c, int n, long search_bound) {
  if (!(c > 0)) throw Error(Errc::InvalidArgument, "C must be positive");
  if (n < 0) throw Error(Errc::InvalidArgument, "N must be non-negative");
  std::vector<std::vector<Point>> out;
  if (f(Point(0)) == 0.0) {
    out.assign(static_cast<std::size_t>(n) + 1, {Point(0)});
    return out;
  }
  std::vector<Point> current{Point(0)};
  for (int level = 0; level <= n; ++level) {
    const double target = std::ldexp(c, -level);
    std::optional<Point> witness;
    scan_witnesses(f, current.back(), search_bound, [&](const Point& x) {
      if (f(x) < target) {
        witness = x;
        return true;
      }
      return false;
    });
    if (!witness) {
      throw Error(Errc::DoesNotVanish, "no point with f < " + std::to_string(target) + " within the search bound");
    }
    std::vector<Point> coarse = current;
    if (*witness != coarse.back()) coarse.push_back(*witness);
    std::vector<Point> next{coarse.front()};
    for (std::size_t i = 1; i < coarse.size(); ++i) {
      const auto piece = refine_partition(f, coarse[i - 1], coarse[i], target);
      next.insert(next.end(), piece.begin() + 1, piece.end());
    }
    current = std::move(next);
    out.push_back(current);
  }
  return out;
}

bool is_vanishing_at_infinity(const TargetFunction& f, double eps, long search_bound) {
  if (!(eps > 0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  return scan_witnesses(f, Point(0), search_bound, [&](const Point& x) { return f(x) < eps; });
}

}  // namespace svf
