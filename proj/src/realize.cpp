#include "svf/realize.hpp"

#include <algorithm>
#include <cmath>

#include "svf/engine.hpp"
#include "svf/error.hpp"
#include "svf/format.hpp"

namespace svf {

namespace {

const Dyadic kOne(1);

Point to_point(const Dyadic& d) { return d.to_rational(); }

BigInt units_at_stage(const Dyadic& d, unsigned stage) {
  return d.mantissa() << static_cast<unsigned>(stage - d.exponent());
}

std::string quote_if_needed(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

// ---------------------------------------------------------------- elements

TowerElement::TowerElement(unsigned stage, std::vector<Mass> masses) : stage_(stage), masses_(std::move(masses)) {
  Dyadic total(0);
  for (std::size_t k = 0; k < masses_.size(); ++k) {
    const Mass& m = masses_[k];
    if (!std::isfinite(m.value) || !(m.value > 0)) {
      throw Error(Errc::InvalidArgument, "tower values must be positive and finite");
    }
    if (k > 0 && !(m.value < masses_[k - 1].value)) {
      throw Error(Errc::InvalidArgument, "tower values must be strictly descending");
    }
    if (!(m.trace_mass > Dyadic(0))) throw Error(Errc::InvalidArgument, "trace masses must be positive");
    if (m.trace_mass.exponent() > stage_) {
      throw Error(Errc::InvalidArgument, "trace mass " + m.trace_mass.str() + " does not live at stage " +
                                             std::to_string(stage_));
    }
    total = total + m.trace_mass;
  }
  if (total > kOne) throw Error(Errc::InvalidArgument, "total trace mass " + total.str() + " exceeds 1");
}

TowerElement TowerElement::from_steps(unsigned stage, const std::vector<Mass>& steps) {
  std::vector<Mass> merged;
  for (const auto& s : steps) {
    if (s.value == 0.0) continue;
    if (!merged.empty() && merged.back().value == s.value) {
      merged.back().trace_mass = merged.back().trace_mass + s.trace_mass;
    } else {
      merged.push_back(s);
    }
  }
  return TowerElement(stage, std::move(merged));
}

Dyadic TowerElement::total_mass() const {
  Dyadic total(0);
  for (const auto& m : masses_) total = total + m.trace_mass;
  return total;
}

std::vector<Dyadic> TowerElement::cumulative_masses() const {
  std::vector<Dyadic> out{Dyadic(0)};
  for (const auto& m : masses_) out.push_back(out.back() + m.trace_mass);
  return out;
}

// ---------------------------------------------------------------- SVF

double tower_svf(const TowerElement& a, const K0Class& g) {
  const Dyadic& x = g.as_dyadic();
  if (x < Dyadic(0)) throw Error(Errc::NegativeClass, g.str() + " is not in the positive cone");
  if (x >= kOne) return 0.0;
  const auto cumulative = a.cumulative_masses();
  const auto& masses = a.masses();
  // Largest k with M_k <= g; cumulative is increasing.
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  const auto k = static_cast<std::size_t>(it - cumulative.begin()) - 1;
  return k < masses.size() ? masses[k].value : 0.0;
}

StepFunction tower_svf_function(const TowerElement& a) {
  if (a.masses().empty()) return StepFunction::zero();
  std::vector<Point> breakpoints;
  for (const auto& m : a.cumulative_masses()) breakpoints.push_back(to_point(m));
  std::vector<double> values;
  for (const auto& m : a.masses()) values.push_back(m.value);
  values.push_back(0.0);
  return StepFunction(std::move(breakpoints), std::move(values));
}

double tower_norm_diff(const TowerElement& a, const TowerElement& b) {
  // Both eigenvalue profiles are constant between consecutive points of the
  // merged breakpoint set, and the profile at t is s_t.
  std::vector<Dyadic> cuts = a.cumulative_masses();
  const auto more = b.cumulative_masses();
  cuts.insert(cuts.end(), more.begin(), more.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double diff = 0.0;
  for (const auto& t : cuts) {
    if (t >= kOne) break;
    diff = std::max(diff, std::abs(tower_svf(a, t) - tower_svf(b, t)));
  }
  return diff;
}

AlgebraElement tower_to_matrix(const TowerElement& a, unsigned max_stage) {
  if (a.stage() > max_stage) {
    throw Error(Errc::InvalidArgument, "stage " + std::to_string(a.stage()) + " is too large to materialize");
  }
  const int n = 1 << a.stage();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  int row = 0;
  for (const auto& mass : a.masses()) {
    const int count = units_at_stage(mass.trace_mass, a.stage()).convert_to<int>();
    for (int i = 0; i < count; ++i, ++row) m(row, row) = mass.value;
  }
  return AlgebraElement(MultiMatrixAlgebra({n}), {std::move(m)});
}

double tower_dense_deviation(const TowerElement& a, unsigned max_stage) {
  const AlgebraElement dense = tower_to_matrix(a, max_stage);
  const SvfTable table = svf_table(dense.algebra(), dense);
  const std::int64_t n = std::int64_t{1} << a.stage();
  double worst = 0.0;
  for (std::int64_t r = 0; r <= n; ++r) {
    const double matrix = table.value(K0Class::simplicial({r}));
    const double tower = tower_svf(a, Dyadic(BigInt(r), a.stage()));
    worst = std::max(worst, std::abs(matrix - tower));
  }
  return worst;
}

// ---------------------------------------------------------------- realization

bool RealizationTrace::within_envelope() const {
  for (std::size_t n = 0; n < rounds(); ++n) {
    const double dist_bound = std::ldexp(scale, -static_cast<int>(n));
    if (scale == 0.0) {
      if (distances[n] != 0.0 || increments[n] != 0.0) return false;
      continue;
    }
    if (!(distances[n] < dist_bound)) return false;
    if (n > 0 && !(increments[n] < 2.0 * dist_bound)) return false;
  }
  return true;
}

std::string RealizationTrace::to_csv() const {
  std::string out = "n,increment,distance\n";
  for (std::size_t n = 0; n < rounds(); ++n) {
    out += std::to_string(n) + "," + format_real(increments[n]) + "," + format_real(distances[n]) + "\n";
  }
  return out;
}

namespace {

TowerElement step_element(const TargetFunction& f, const std::vector<Point>& partition) {
  std::vector<Dyadic> points;
  unsigned stage = 0;
  for (const auto& x : partition) {
    points.push_back(Dyadic::from_rational(x));
    stage = std::max(stage, points.back().exponent());
  }
  std::vector<Mass> steps;
  for (std::size_t k = 1; k < points.size(); ++k) steps.push_back({f(partition[k - 1]), points[k] - points[k - 1]});
  return TowerElement::from_steps(stage, steps);
}

}  // namespace

RealizationTrace realize(const TargetFunction& f, int n) {
  if (f.domain().kind() != ScalarDomain::Kind::Dyadic) {
    throw Error(Errc::DomainMismatch, "realization needs a target on the dyadic rationals");
  }
  if (n < 0) throw Error(Errc::InvalidArgument, "N must be non-negative");
  const double at_one = f(Point(1));
  if (at_one != 0.0) throw Error(Errc::BadNormalization, "f(1) = " + format_real(at_one) + ", expected 0");

  RealizationTrace trace;
  trace.scale = f(Point(0));
  if (trace.scale == 0.0) {
    trace.partitions = {{Point(0)}};
    trace.elements = {TowerElement::zero()};
    trace.distances = {sup_distance(StepFunction::zero(), f)};
    trace.increments = {0.0};
    return trace;
  }

  trace.partitions = approx_sequence(f, trace.scale, n);
  for (std::size_t k = 0; k < trace.partitions.size(); ++k) {
    trace.elements.push_back(step_element(f, trace.partitions[k]));
    const TowerElement& a = trace.elements.back();
    trace.distances.push_back(sup_distance(tower_svf_function(a), f));
    trace.increments.push_back(k == 0 ? a.norm() : tower_norm_diff(a, trace.elements[k - 1]));
  }
  return trace;
}

// ---------------------------------------------------------------- probes

ProbeResult right_continuity_probe(const TowerElement& a, const Dyadic& g, const std::vector<Dyadic>& deltas) {
  ProbeResult out;
  for (const auto& m : a.cumulative_masses()) {
    if (m > g) {
      out.gap = m - g;
      break;
    }
  }
  if (g < kOne && (!out.gap || kOne - g < *out.gap)) out.gap = kOne - g;
  const double base = tower_svf(a, g);
  for (const auto& d : deltas) {
    if (!(d > Dyadic(0))) throw Error(Errc::InvalidArgument, "probe steps must be positive");
    const double drop = base - tower_svf(a, g + d);
    out.drops.push_back(drop);
    if (!out.gap || d < *out.gap) out.max_drop = std::max(out.max_drop, drop);
  }
  return out;
}

// ---------------------------------------------------------------- counterexample

bool CounterexampleReport::passed() const {
  return converges && std::all_of(rows.begin(), rows.end(), [](const CounterexampleRow& r) { return r.ok(); });
}

std::string CounterexampleReport::to_csv() const {
  std::string out = "n,class,s\n";
  for (const auto& r : rows) {
    const std::string n = r.label == "n" ? std::to_string(r.n) : r.label;
    out += n + "," + quote_if_needed(r.g.str()) + "," + std::to_string(r.value) + "\n";
  }
  return out;
}

CounterexampleReport counterexample_lex() {
  CounterexampleReport report;
  report.projection_class = LexPair{Rational(1), BigInt(0)};
  const LexPair limit{Rational(1), BigInt(1)};
  report.converges = true;
  for (int n = 1; n <= 100; ++n) {
    const LexPair g{Rational(1) + Rational(1, n), BigInt(1)};
    report.converges = report.converges && g.v == limit.v && g.u - limit.u == Rational(1, n);
    report.rows.push_back({"n", n, g, 0, svf_projection_indicator(report.projection_class, g)});
  }
  report.rows.push_back({"limit", 0, limit, 1, svf_projection_indicator(report.projection_class, limit)});
  const K0Class control = report.projection_class;
  report.rows.push_back({"control", 0, control, 0, svf_projection_indicator(report.projection_class, control)});
  return report;
}

}  // namespace svf
