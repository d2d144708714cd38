// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "svf/battery.hpp"
#include "svf/engine.hpp"
#include "svf/realize.hpp"

namespace {

using svf::AlgebraElement;
using svf::BigInt;
using svf::Dyadic;
using svf::K0Class;
using svf::MultiMatrixAlgebra;
using svf::Point;
using svf::TargetFunction;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_s <= 0 || secs < budget_s;
  const bool ok = o.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %-28s %7.2fs  %s%s\n", ok ? "PASS" : "FAIL", id, name, secs, o.detail.c_str(),
              in_time ? "" : " (over time budget)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

K0Class simp(std::vector<std::int64_t> v) { return K0Class::simplicial(std::move(v)); }

// ---------------------------------------------------------------- 1

Outcome classical_agreement() {
  auto rng = svf::sampling::make_rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 8;
    const MultiMatrixAlgebra alg({n});
    const AlgebraElement a = svf::sampling::random_element(alg, rng);
    const Eigen::VectorXd sigma = svf::singular_values(a.block(0));
    for (int j = 0; j <= n; ++j) {
      const double expected = j < n ? sigma(j) : 0.0;
      worst = std::max(worst, std::abs(svf::svf(alg, a, simp({j})) - expected));
    }
  }
  return {worst <= 1e-10, fmt("max |s_j - sigma_j+1| = %.2e", worst)};
}

// ---------------------------------------------------------------- 2

Outcome oracle_triangle() {
  auto rng = svf::sampling::make_rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const AlgebraElement a = svf::sampling::random_element(alg, rng);
    const K0Class g = svf::sampling::random_class(alg, rng);
    const double closed = svf::svf(alg, a, g);
    const double spectral = svf::svf_finite_spectrum(svf::spectral_steps(svf::absolute_value(a)), g);
    const double sampled = svf::svf_sampling_bound(alg, a, g, 4, 1002 + static_cast<std::uint64_t>(t));
    worst = std::max({worst, std::abs(closed - spectral), std::abs(closed - sampled), std::abs(spectral - sampled)});
  }
  return {worst <= 1e-8, fmt("max pairwise gap = %.2e", worst)};
}

// ---------------------------------------------------------------- 3

Outcome projection_indicator() {
  auto rng = svf::sampling::make_rng(1003);
  long mismatches = 0;
  long entries = 0;
  for (int t = 0; t < 100; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const K0Class r = svf::sampling::random_class(alg, rng);
    const AlgebraElement p = svf::sampling::random_projection(alg, r, rng);
    const svf::SvfTable table = svf::svf_table(alg, p);
    const auto& rc = r.as_simplicial().coords;
    for (const auto& g : table.classes()) {
      // [p] <= g componentwise, checked on the coordinates directly.
      bool below = true;
      for (std::size_t i = 0; i < rc.size(); ++i) below = below && rc[i] <= g.as_simplicial().coords[i];
      mismatches += table.value(g) != (below ? 0.0 : 1.0);
      ++entries;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(entries) + " entries"};
}

// ---------------------------------------------------------------- 4

Outcome battery() {
  svf::BatteryOptions o;
  o.trials = 1000;
  o.seed = 1004;
  o.tolerance = 1e-8;
  const auto report = svf::property_battery(o);
  double worst = -1e300;
  int violations = 0;
  for (const auto& p : report.properties) {
    worst = std::max(worst, p.worst_slack);
    violations += p.failures;
  }
  return {report.passed(), std::to_string(report.properties.size()) + " properties, " + std::to_string(violations) +
                               " violations, worst slack " + fmt("%.2e", worst)};
}

// ---------------------------------------------------------------- 5

Outcome subordination() {
  auto rng = svf::sampling::make_rng(1005);
  int implied = 0;
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const K0Class rp = svf::sampling::random_class(alg, rng);
    // Half the pairs are drawn with rank(p) <= rank(q) so that both branches
    // of the implication are exercised.
    const K0Class rq = t % 2 ? svf::sampling::random_class(alg, rng) : svf::clamp_to_box(alg, rp + svf::sampling::random_class(alg, rng));
    const AlgebraElement p = svf::sampling::random_projection(alg, rp, rng);
    const AlgebraElement q = svf::sampling::random_projection(alg, rq, rng);
    const auto check = svf::norm_subordination(p, q);
    bool dominated = true;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
      dominated = dominated && rp.as_simplicial().coords[i] <= rq.as_simplicial().coords[i];
    }
    if (check.implied) {
      ++implied;
      bad += !dominated;
    }
  }
  return {bad == 0 && implied > 0,
          std::to_string(implied) + " pairs with |p - pq| < 1, " + std::to_string(bad) + " without rank domination"};
}

// ---------------------------------------------------------------- 6

TargetFunction two_jump_step() {
  const svf::StepFunction g({Point(0), Point(1, 4), Point(3, 4), Point(1)}, {1.0, 0.75, 0.25, 0.0});
  return TargetFunction::from_step(svf::ScalarDomain::dyadic(), g);
}

// sup |g_F - f| for the two targets, recomputed from their closed forms:
// on [x_{i-1}, x_i) the gap is f(x_{i-1}) - f(x_i-).
double independent_distance(const std::vector<Point>& part, const std::function<double(double)>& f,
                            const std::function<double(double)>& f_left) {
  double d = 0.0;
  for (std::size_t i = 1; i < part.size(); ++i) {
    d = std::max(d, f(part[i - 1].convert_to<double>()) - f_left(part[i].convert_to<double>()));
  }
  // From max F on g_F vanishes and f is largest at max F.
  return std::max(d, f(part.back().convert_to<double>()));
}

Outcome step_approximation() {
  const auto lin = [](double t) { return std::max(0.0, 1.0 - t); };
  const auto jumps = [](double t) { return t < 0.25 ? 1.0 : t < 0.75 ? 0.75 : t < 1.0 ? 0.25 : 0.0; };
  const auto jumps_left = [](double t) { return t <= 0.25 ? 1.0 : t <= 0.75 ? 0.75 : t <= 1.0 ? 0.25 : 0.0; };
  struct Case {
    TargetFunction f;
    std::function<double(double)> value;
    std::function<double(double)> left;
  };
  const std::vector<Case> cases{{TargetFunction::one_minus_t(svf::ScalarDomain::dyadic()), lin, lin},
                                {two_jump_step(), jumps, jumps_left}};
  double worst_ratio = 0.0;
  bool nested = true;
  bool dyadic = true;
  for (const auto& c : cases) {
    const auto seq = svf::approx_sequence(c.f, 1.0, 8);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      for (const auto& x : seq[n]) dyadic = dyadic && Dyadic::is_dyadic(x);
      if (n > 0) nested = nested && std::includes(seq[n].begin(), seq[n].end(), seq[n - 1].begin(), seq[n - 1].end());
      const double lib = svf::sup_distance(svf::step_from_partition(c.f, seq[n]), c.f);
      const double ind = independent_distance(seq[n], c.value, c.left);
      if (std::abs(lib - ind) > 1e-15) return {false, "library and independent distances differ at n = " + std::to_string(n)};
      worst_ratio = std::max(worst_ratio, ind * std::ldexp(1.0, static_cast<int>(n)));
    }
  }
  return {nested && dyadic && worst_ratio < 1.0,
          std::string(nested ? "nested" : "NOT nested") + ", " + (dyadic ? "dyadic" : "non-dyadic") +
              ", max 2^n d_n = " + fmt("%.4f", worst_ratio)};
}

// ---------------------------------------------------------------- 7

Outcome realization() {
  const auto trace = svf::realize(TargetFunction::one_minus_t(svf::ScalarDomain::dyadic()), 8);
  bool ok = trace.rounds() == 9;
  double worst_dense = 0.0;
  unsigned max_stage = 0;
  for (std::size_t n = 0; n < trace.rounds(); ++n) {
    ok = ok && trace.distances[n] < std::ldexp(1.0, -static_cast<int>(n));
    if (n > 0) ok = ok && trace.increments[n] < std::ldexp(1.0, 1 - static_cast<int>(n));
    const auto& a = trace.elements[n];
    max_stage = std::max(max_stage, a.stage());
    // Every round is checked against its dense diagonal matrix, including
    // the late rounds whose mesh forces stages above 8.
    worst_dense = std::max(worst_dense, svf::tower_dense_deviation(a, 12));
  }
  ok = ok && worst_dense <= 1e-10;
  return {ok, "9 rounds, max stage " + std::to_string(max_stage) + ", dense deviation " + fmt("%.2e", worst_dense)};
}

// ---------------------------------------------------------------- 8

Outcome right_continuity() {
  std::mt19937_64 rng(1008);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const unsigned stage = std::uniform_int_distribution<unsigned>(1, 10)(rng);
    const long units = 1L << stage;
    std::vector<long> cuts{0};
    for (int k = 0; k < 5; ++k) cuts.push_back(std::uniform_int_distribution<long>(1, units)(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<svf::Mass> masses;
    double v = 4.0;
    for (std::size_t k = 1; k < cuts.size(); ++k) {
      masses.push_back({v, Dyadic(BigInt(cuts[k] - cuts[k - 1]), stage)});
      v /= 2.0;
    }
    const svf::TowerElement a(stage, masses);
    const Dyadic g(BigInt(std::uniform_int_distribution<long>(0, units - 1)(rng)), stage);
    std::vector<Dyadic> deltas;
    for (unsigned e = stage + 1; e <= stage + 40; ++e) deltas.push_back(Dyadic(BigInt(1), e));
    const auto probe = svf::right_continuity_probe(a, g, deltas);
    if (!probe.gap) return {false, "no gap reported below 1"};
    worst = std::max(worst, probe.max_drop);
  }
  return {worst == 0.0, "max drop " + fmt("%g", worst)};
}

// ---------------------------------------------------------------- 9

Outcome counterexample() {
  const auto report = svf::counterexample_lex();
  int seq_ok = 0;
  for (const auto& r : report.rows) seq_ok += r.label == "n" && r.value == 0;
  const auto& limit = report.rows.at(100);
  return {report.passed() && seq_ok == 100 && limit.label == "limit" && limit.value == 1,
          std::to_string(seq_ok) + "/100 sequence values 0, limit value " + std::to_string(limit.value)};
}

// ---------------------------------------------------------------- 10

Outcome functional_calculus() {
  const std::vector<std::function<double(double)>> fs{[](double t) { return t * t; },
                                                      [](double t) { return std::sqrt(t); },
                                                      [](double t) { return t / (1.0 + t); }};
  auto rng = svf::sampling::make_rng(1010);
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const AlgebraElement a = svf::sampling::random_positive(alg, rng);
    const K0Class g = svf::sampling::random_class(alg, rng);
    for (const auto& f : fs) {
      const AlgebraElement fa = svf::apply_scalar_function(a, f);
      worst = std::max(worst, std::abs(svf::svf(alg, fa, g) - f(svf::svf(alg, a, g))));
    }
  }
  return {worst <= 1e-8, fmt("max deviation = %.2e", worst)};
}

}  // namespace

int main() {
  criterion(1, "classical agreement", 5, classical_agreement);
  criterion(2, "oracle triangle", 60, oracle_triangle);
  criterion(3, "projection indicator", 0, projection_indicator);
  criterion(4, "property battery", 180, battery);
  criterion(5, "subordination", 0, subordination);
  criterion(6, "step approximation", 0, step_approximation);
  criterion(7, "realization", 30, realization);
  criterion(8, "right continuity", 0, right_continuity);
  criterion(9, "lex counterexample", 0, counterexample);
  criterion(10, "functional calculus", 0, functional_calculus);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
