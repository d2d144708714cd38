#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "svf/engine.hpp"

namespace {

using svf::AlgebraElement;
using svf::ComplexMatrix;
using svf::Errc;
using svf::K0Class;
using svf::LexPair;
using svf::MultiMatrixAlgebra;
using svf::Rational;
using support::code_of;

K0Class simp(std::vector<std::int64_t> v) { return K0Class::simplicial(std::move(v)); }

AlgebraElement example() { return oracle::diagonal({{5, 1}, {4, 3, 2}}); }

// ---------------------------------------------------------------- svf

TEST(Svf, ClassicalSingularValuesOnOneBlock) {
  auto rng = svf::sampling::make_rng(41);
  const MultiMatrixAlgebra alg({5});
  const AlgebraElement a = svf::sampling::random_element(alg, rng);
  const auto sigma = oracle::singular_values(a.block(0));
  for (std::int64_t j = 0; j <= 5; ++j) {
    const double expected = j < 5 ? sigma[static_cast<std::size_t>(j)] : 0.0;
    EXPECT_NEAR(svf::svf(alg, a, simp({j})), expected, 1e-10) << j;
  }
}

TEST(Svf, ZeroClassGivesTheNorm) {
  const AlgebraElement a = example();
  EXPECT_DOUBLE_EQ(svf::svf(a.algebra(), a, simp({0, 0})), 5.0);
}

TEST(Svf, TwoBlockExample) {
  const AlgebraElement a = example();
  EXPECT_NEAR(svf::svf(a.algebra(), a, simp({1, 1})), 3.0, 1e-14);
  // Independent check through the finite-spectrum formula.
  EXPECT_NEAR(svf::svf_finite_spectrum(svf::spectral_steps(a), simp({1, 1})), 3.0, 1e-14);
}

TEST(Svf, ClampsOutsideTheBox) {
  const AlgebraElement a = example();
  EXPECT_EQ(svf::svf(a.algebra(), a, simp({7, 1})), svf::svf(a.algebra(), a, simp({2, 1})));
  EXPECT_EQ(svf::svf(a.algebra(), a, simp({9, 9})), 0.0);
}

TEST(Svf, Errors) {
  const AlgebraElement a = example();
  EXPECT_EQ(code_of([&] { svf::svf(a.algebra(), a, simp({-1, 0})); }), Errc::NegativeClass);
  EXPECT_EQ(code_of([&] { svf::svf(a.algebra(), a, K0Class(Rational(1))); }), Errc::VariantMismatch);
  EXPECT_EQ(code_of([&] { svf::svf(a.algebra(), a, simp({1})); }), Errc::VariantMismatch);
  EXPECT_EQ(code_of([&] { svf::svf(MultiMatrixAlgebra({2}), a, simp({1})); }), Errc::ShapeMismatch);
}

TEST(Svf, MatchesDilationOracleOnRandomInputs) {
  auto rng = svf::sampling::make_rng(42);
  for (int t = 0; t < 300; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const AlgebraElement a = svf::sampling::random_element(alg, rng);
    const K0Class g = svf::sampling::random_class(alg, rng);
    EXPECT_NEAR(svf::svf(alg, a, g), oracle::svf(a, g.as_simplicial().coords), 1e-10);
  }
}

TEST(Svf, LowerBoundsEverySampledResidual) {
  auto rng = svf::sampling::make_rng(43);
  for (int t = 0; t < 200; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 5);
    const AlgebraElement a = svf::sampling::random_element(alg, rng);
    const K0Class g = svf::sampling::random_class(alg, rng);
    const double s = svf::svf(alg, a, g);
    for (int k = 0; k < 5; ++k) {
      const AlgebraElement p = svf::sampling::random_projection(alg, svf::sampling::random_class_below(g, rng), rng);
      EXPECT_GE(svf::element_norm(a - a * p), s - 1e-9);
    }
  }
}

// ---------------------------------------------------------------- finite spectrum

TEST(FiniteSpectrum, Examples) {
  const auto steps = svf::spectral_steps(example());
  EXPECT_EQ(svf::svf_finite_spectrum(steps, simp({2, 3})), 0.0);
  EXPECT_EQ(svf::svf_finite_spectrum(steps, simp({5, 5})), 0.0);
  EXPECT_NEAR(svf::svf_finite_spectrum(steps, simp({0, 0})), 5.0, 1e-14);
  EXPECT_NEAR(svf::svf_finite_spectrum(steps, simp({2, 0})), 4.0, 1e-14);
  EXPECT_NEAR(svf::svf_finite_spectrum(steps, simp({0, 3})), 5.0, 1e-14);
  EXPECT_EQ(code_of([&] { svf::svf_finite_spectrum(steps, simp({-1, 0})); }), Errc::NegativeClass);
  EXPECT_EQ(code_of([&] { svf::svf_finite_spectrum(steps, simp({1})); }), Errc::VariantMismatch);
}

TEST(FiniteSpectrum, HandComputedMinimum) {
  // min { alpha_k : [p^_k] <= g } evaluated directly on the listed data.
  const std::vector<double> alpha{5, 4, 3, 2, 1, 0};
  const std::vector<K0Class> cls{simp({0, 0}), simp({1, 0}), simp({1, 1}), simp({1, 2}), simp({1, 3}), simp({2, 3})};
  const auto steps = svf::spectral_steps(example());
  for (std::int64_t g1 = 0; g1 <= 2; ++g1) {
    for (std::int64_t g2 = 0; g2 <= 3; ++g2) {
      double best = alpha[0];
      for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (svf::leq(cls[k], simp({g1, g2}))) best = std::min(best, alpha[k]);
      }
      EXPECT_NEAR(svf::svf_finite_spectrum(steps, simp({g1, g2})), best, 1e-14);
    }
  }
}

// ---------------------------------------------------------------- indicator

TEST(Indicator, Examples) {
  EXPECT_EQ(svf::svf_projection_indicator(simp({1, 0}), simp({1, 1})), 0);
  EXPECT_EQ(svf::svf_projection_indicator(simp({1, 1}), simp({1, 0})), 1);
  const K0Class p = LexPair{Rational(1), svf::BigInt(0)};
  EXPECT_EQ(svf::svf_projection_indicator(p, LexPair{Rational(1), svf::BigInt(3)}), 1);
  EXPECT_EQ(svf::svf_projection_indicator(p, p), 0);
  EXPECT_EQ(code_of([&] { svf::svf_projection_indicator(p, simp({1})); }), Errc::VariantMismatch);
}

TEST(Indicator, TableOfRandomProjections) {
  auto rng = svf::sampling::make_rng(44);
  for (int t = 0; t < 100; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const K0Class r = svf::sampling::random_class(alg, rng);
    const AlgebraElement p = svf::sampling::random_projection(alg, r, rng);
    const svf::SvfTable table = svf::svf_table(alg, p);
    for (const auto& g : table.classes()) {
      EXPECT_EQ(table.value(g), static_cast<double>(svf::svf_projection_indicator(r, g))) << g.str();
    }
  }
}

// ---------------------------------------------------------------- sampling bound

TEST(SamplingBound, Examples) {
  auto rng = svf::sampling::make_rng(45);
  const MultiMatrixAlgebra alg({2, 3});
  const AlgebraElement a = svf::sampling::random_element(alg, rng);
  EXPECT_NEAR(svf::svf_sampling_bound(alg, a, simp({0, 0}), 8, 1), svf::element_norm(a), 1e-12);
  EXPECT_LE(svf::svf_sampling_bound(alg, a, simp({2, 3}), 8, 1), 1e-9);
  EXPECT_EQ(code_of([&] { svf::svf_sampling_bound(alg, a, simp({1, 1}), 0, 1); }), Errc::InvalidArgument);
}

TEST(SamplingBound, TightOnRandomInputs) {
  auto rng = svf::sampling::make_rng(46);
  for (int t = 0; t < 300; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const AlgebraElement a = svf::sampling::random_element(alg, rng);
    const K0Class g = svf::sampling::random_class(alg, rng);
    const double gap = svf::svf_sampling_bound(alg, a, g, 4, static_cast<std::uint64_t>(t)) - svf::svf(alg, a, g);
    EXPECT_GE(gap, -1e-9);
    EXPECT_LE(gap, 1e-9);
  }
}

// ---------------------------------------------------------------- tables

TEST(Table, Examples) {
  const MultiMatrixAlgebra alg({2, 3});
  const svf::SvfTable zero = svf::svf_table(alg, AlgebraElement::zero(alg));
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
  const svf::SvfTable unit = svf::svf_table(alg, AlgebraElement::identity(alg));
  for (const auto& g : unit.classes()) EXPECT_EQ(unit.value(g), g == simp({2, 3}) ? 0.0 : 1.0);
  EXPECT_EQ(unit.values().size(), 12u);
  EXPECT_EQ(unit.class_at(unit.index_of(simp({1, 2}))), simp({1, 2}));
  EXPECT_EQ(unit.index_of(simp({0, 1})), 1u);
  EXPECT_EQ(unit.index_of(simp({1, 0})), 4u);
}

TEST(Table, AntitoneWithZeroTop) {
  auto rng = svf::sampling::make_rng(47);
  for (int t = 0; t < 100; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 5);
    const AlgebraElement a = svf::sampling::random_element(alg, rng);
    const svf::SvfTable table = svf::svf_table(alg, a);
    EXPECT_EQ(table.value(alg.unit_class()), 0.0);
    const auto classes = table.classes();
    for (const auto& g : classes) {
      for (const auto& h : classes) {
        if (svf::leq(g, h)) { EXPECT_GE(table.value(g), table.value(h)); }
      }
      EXPECT_EQ(table.value(g), svf::svf(alg, a, g));
    }
  }
}

// ---------------------------------------------------------------- subordination

TEST(Subordination, Examples) {
  const AlgebraElement p = oracle::diagonal({{1, 0, 0}});
  const AlgebraElement q = oracle::diagonal({{1, 1, 0}});
  const auto below = svf::norm_subordination(p, q);
  EXPECT_NEAR(below.norm, 0.0, 1e-15);
  EXPECT_TRUE(below.implied);
  EXPECT_TRUE(below.rank_dominated);
  const auto perp = svf::norm_subordination(p, oracle::diagonal({{0, 1, 0}}));
  EXPECT_NEAR(perp.norm, 1.0, 1e-15);
  EXPECT_FALSE(perp.implied);
  EXPECT_TRUE(perp.consistent());
  EXPECT_EQ(code_of([&] { svf::norm_subordination(oracle::diagonal({{0.5, 0, 0}}), q); }), Errc::NotProjection);
}

TEST(Subordination, LargerRankForcesNormOne) {
  auto rng = svf::sampling::make_rng(48);
  int strict = 0;
  for (int t = 0; t < 1000; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const AlgebraElement p = svf::sampling::random_projection(alg, svf::sampling::random_class(alg, rng), rng);
    const AlgebraElement q = svf::sampling::random_projection(alg, svf::sampling::random_class(alg, rng), rng);
    const auto check = svf::norm_subordination(p, q);
    EXPECT_TRUE(check.consistent());
    if (!check.rank_dominated) {
      ++strict;
      EXPECT_GE(check.norm, 1.0 - 1e-12);
    }
  }
  EXPECT_GT(strict, 100);
}

// ---------------------------------------------------------------- nesting

void expect_between(const AlgebraElement& lo, const AlgebraElement& x, const AlgebraElement& hi) {
  EXPECT_LE(svf::element_norm(lo - lo * x), 1e-9);
  EXPECT_LE(svf::element_norm(x - x * hi), 1e-9);
}

TEST(NestProjection, Examples) {
  const AlgebraElement p1 = oracle::diagonal({{1, 0, 0}});
  const AlgebraElement p2 = oracle::diagonal({{1, 1, 1}});
  auto rng = svf::sampling::make_rng(49);
  const MultiMatrixAlgebra alg({3});

  const AlgebraElement same = svf::nest_projection(p1, svf::sampling::random_projection(alg, simp({1}), rng), p2);
  EXPECT_LE(svf::element_norm(same - p1), 1e-12);
  const AlgebraElement top = svf::nest_projection(p1, p2, p2);
  EXPECT_LE(svf::element_norm(top - p2), 1e-12);

  const AlgebraElement q = svf::sampling::random_projection(alg, simp({2}), rng);
  const AlgebraElement mid = svf::nest_projection(p1, q, p2);
  EXPECT_TRUE(svf::is_projection(mid));
  EXPECT_EQ(svf::rank_vector(mid), simp({2}));
  expect_between(p1, mid, p2);
}

TEST(NestProjection, Errors) {
  const AlgebraElement e1 = oracle::diagonal({{1, 0, 0}});
  const AlgebraElement e2 = oracle::diagonal({{0, 1, 0}});
  const AlgebraElement e12 = oracle::diagonal({{1, 1, 0}});
  EXPECT_EQ(code_of([&] { svf::nest_projection(e1, e12, e2); }), Errc::NotNested);
  EXPECT_EQ(code_of([&] { svf::nest_projection(e12, e1, e12); }), Errc::RankGapViolated);
  EXPECT_EQ(code_of([&] { svf::nest_projection(e1, oracle::diagonal({{1, 1, 1}}), e12); }), Errc::RankGapViolated);
}

TEST(NestProjection, RandomFlags) {
  auto rng = svf::sampling::make_rng(50);
  for (int t = 0; t < 200; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const K0Class r2 = svf::sampling::random_class(alg, rng);
    const K0Class rq = svf::sampling::random_class_below(r2, rng);
    const K0Class r1 = svf::sampling::random_class_below(rq, rng);
    const AlgebraElement p2 = svf::sampling::random_projection(alg, r2, rng);
    const AlgebraElement p1 = svf::lift_class_chain(alg, {r1, r2}, p2)[0];
    const AlgebraElement q = svf::sampling::random_projection(alg, rq, rng);
    const AlgebraElement out = svf::nest_projection(p1, q, p2);
    EXPECT_EQ(svf::rank_vector(out), rq);
    expect_between(p1, out, p2);
  }
}

TEST(LiftClassChain, Examples) {
  const MultiMatrixAlgebra alg({2, 3});
  const AlgebraElement unit = AlgebraElement::identity(alg);
  const auto single = svf::lift_class_chain(alg, {simp({2, 3})}, unit);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(svf::element_norm(single[0] - unit), 0.0);

  const auto pair = svf::lift_class_chain(alg, {simp({1, 0}), simp({2, 3})}, unit);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_EQ(svf::rank_vector(pair[0]), simp({1, 0}));
  expect_between(pair[0], pair[0], pair[1]);

  const std::vector<K0Class> flag{simp({0, 0}), simp({1, 0}), simp({2, 0}), simp({2, 1}), simp({2, 2}), simp({2, 3})};
  const auto chain = svf::lift_class_chain(alg, flag, unit);
  ASSERT_EQ(chain.size(), flag.size());
  EXPECT_LE(svf::element_norm(chain[0]), 1e-15);
  for (std::size_t i = 0; i < flag.size(); ++i) {
    EXPECT_EQ(svf::rank_vector(chain[i]), flag[i]);
    if (i > 0) expect_between(chain[i - 1], chain[i - 1], chain[i]);
  }
}

TEST(LiftClassChain, Errors) {
  const MultiMatrixAlgebra alg({2, 3});
  const AlgebraElement unit = AlgebraElement::identity(alg);
  EXPECT_EQ(code_of([&] { svf::lift_class_chain(alg, {simp({2, 0}), simp({1, 3}), simp({2, 3})}, unit); }),
            Errc::ChainNotIncreasing);
  EXPECT_EQ(code_of([&] { svf::lift_class_chain(alg, {simp({1, 0}), simp({2, 2})}, unit); }), Errc::TopMismatch);
  EXPECT_EQ(code_of([&] { svf::lift_class_chain(alg, {simp({3, 0}), simp({2, 3})}, unit); }), Errc::RankOutOfRange);
}

// ---------------------------------------------------------------- sums

TEST(ApproxSum, Examples) {
  const AlgebraElement p = oracle::diagonal({{1, 0, 0}});
  const AlgebraElement q = oracle::diagonal({{0, 1, 0}});
  const AlgebraElement r = svf::approx_sum_projection(p, q, 1e-6);
  EXPECT_EQ(svf::rank_vector(r), simp({2}));
  EXPECT_LE(svf::element_norm(p - p * r), 1e-12);
  EXPECT_LE(svf::element_norm(q - q * r), 1e-12);

  const AlgebraElement r0 = svf::approx_sum_projection(p, oracle::diagonal({{0, 0, 0}}), 1e-6);
  EXPECT_EQ(svf::rank_vector(r0), simp({1}));
  EXPECT_LE(svf::element_norm(p - p * r0), 1e-12);

  auto rng = svf::sampling::make_rng(51);
  const AlgebraElement x = svf::sampling::random_projection(MultiMatrixAlgebra({3}), simp({1}), rng);
  const AlgebraElement rx = svf::approx_sum_projection(x, x, 1e-6);
  EXPECT_EQ(svf::rank_vector(rx), simp({2}));
  EXPECT_LE(svf::element_norm(x - x * rx), 1e-12);
}

TEST(ApproxSum, Errors) {
  const AlgebraElement p = oracle::diagonal({{1, 1, 0}});
  EXPECT_EQ(code_of([&] { svf::approx_sum_projection(p, p, 0.1); }), Errc::RankOverflow);
  EXPECT_EQ(code_of([&] { svf::approx_sum_projection(p, p, -1.0); }), Errc::InvalidArgument);
}

TEST(ApproxSum, RandomPairs) {
  auto rng = svf::sampling::make_rng(52);
  int ran = 0;
  for (int t = 0; t < 300; ++t) {
    const MultiMatrixAlgebra alg = svf::sampling::random_algebra(rng, 3, 6);
    const K0Class gp = svf::sampling::random_class(alg, rng);
    const K0Class gq = svf::sampling::random_class(alg, rng);
    if (!svf::in_dimension_range(alg, gp + gq)) continue;
    ++ran;
    const AlgebraElement p = svf::sampling::random_projection(alg, gp, rng);
    const AlgebraElement q = svf::sampling::random_projection(alg, gq, rng);
    const AlgebraElement r = svf::approx_sum_projection(p, q, 1e-8);
    EXPECT_EQ(svf::rank_vector(r), gp + gq);
    EXPECT_TRUE(svf::is_projection(r));
  }
  EXPECT_GT(ran, 20);
}

}  // namespace
