// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "monobox/error.hpp"
#include "monobox/measure.hpp"
#include "monobox/rng.hpp"

namespace monobox {
namespace {

Measure atom_plus_uniform() { return Measure({{0.0, 1.0, 0.5}}, {{0.3, 0.5}}); }
Measure two_piece() { return Measure({{0.0, 0.5, 1.5}, {0.5, 1.0, 0.5}}, {}); }
Measure left_half() { return Measure({{0.0, 0.5, 2.0}}, {}); }

TEST(Measure, LebesgueMass) {
  const auto m = Measure::lebesgue();
  EXPECT_DOUBLE_EQ(m.mass_open(0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(m.mass_open(0.25, 0.75), 0.5);
  EXPECT_DOUBLE_EQ(m.mass_open(0.4, 0.4), 0.0);
}

TEST(Measure, AtomAtEndpointExcluded) {
  const auto m = atom_plus_uniform();
  EXPECT_NEAR(m.mass_open(0.3, 1.0), 0.35, 1e-15);
  EXPECT_NEAR(m.mass_open(0.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(m.mass_open(0.29, 0.31), 0.5 + 0.01, 1e-15);

  // Monte Carlo oracle: draws from the full measure, counted in (0.3, 1).
  CounterRng rng(7, 0);
  int hits = 0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double x = m.sample_conditional(0.0, 1.0, rng);
    hits += (x > 0.3 && x < 1.0);
  }
  const double phat = static_cast<double>(hits) / kDraws;
  EXPECT_NEAR(phat, 0.35, 4.0 * std::sqrt(0.35 * 0.65 / kDraws));
}

TEST(Measure, RejectsBadEndpoints) {
  const auto m = Measure::lebesgue();
  EXPECT_THROW(m.mass_open(-0.1, 0.5), DomainError);
  EXPECT_THROW(m.mass_open(0.6, 0.5), DomainError);
  EXPECT_THROW(m.mass_open(0.2, 1.5), DomainError);
}

TEST(Measure, ValidatesConstruction) {
  EXPECT_THROW(Measure({{0.0, 1.0, 0.9}}, {}), DomainError);
  EXPECT_THROW(Measure({{0.0, 0.6, 1.0}, {0.5, 1.0, 0.8}}, {}), DomainError);
  EXPECT_THROW(Measure({{0.0, 1.0, 0.5}}, {{0.2, 0.25}, {0.2, 0.25}}), DomainError);
  EXPECT_THROW(Measure({{0.0, 1.0, -1.0}}, {{0.5, 2.0}}), DomainError);
  EXPECT_THROW(Measure({{0.0, 1.0, NAN}}, {}), DomainError);
  EXPECT_NO_THROW(Measure({}, {{0.5, 1.0}}));
}

TEST(Measure, Median) {
  const auto m = Measure::lebesgue();
  EXPECT_DOUBLE_EQ(m.conditional_median(0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(m.conditional_median(0.25, 0.5), 0.375);
  EXPECT_DOUBLE_EQ(left_half().conditional_median(0.0, 1.0), 0.25);
  EXPECT_THROW(m.conditional_median(0.5, 0.5), DomainError);
}

TEST(Measure, MedianOfConcentratedDensityMatchesSamples) {
  const auto m = left_half();
  CounterRng rng(11, 3);
  std::vector<double> xs(100001);
  for (auto& x : xs) x = m.sample_conditional(0.0, 1.0, rng);
  std::nth_element(xs.begin(), xs.begin() + 50000, xs.end());
  EXPECT_NEAR(xs[50000], m.conditional_median(0.0, 1.0), 5e-3);
}

TEST(Measure, ZeroMassMedianFallsBackToMidpoint) {
  const auto m = left_half();
  EXPECT_DOUBLE_EQ(m.conditional_median(0.6, 0.8), 0.7);
  EXPECT_THROW(m.conditional_quantile(0.6, 0.8, 0.5), DegenerateInterval);
  CounterRng rng(1, 1);
  EXPECT_THROW(m.sample_conditional(0.6, 0.8, rng), DegenerateInterval);
}

TEST(Measure, Quantiles) {
  const auto m = Measure::lebesgue();
  EXPECT_DOUBLE_EQ(m.conditional_quantile(0.0, 1.0, 0.25), 0.25);
  EXPECT_NEAR(m.conditional_quantile(0.2, 0.6, 0.75), 0.5, 1e-15);
  EXPECT_THROW(m.conditional_quantile(0.0, 1.0, 1.5), DomainError);

  const auto tp = two_piece();
  double prev = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double x = tp.conditional_quantile(0.0, 1.0, i / 10.0);
    EXPECT_GE(x, prev);
    prev = x;
  }
  EXPECT_DOUBLE_EQ(tp.conditional_quantile(0.1, 0.9, 0.5), tp.conditional_median(0.1, 0.9));
}

TEST(Measure, QuantileInverseOnAtomlessMeasure) {
  const auto tp = two_piece();
  for (double a : {0.0, 0.1, 0.45}) {
    for (double b : {0.55, 0.8, 1.0}) {
      const double mass = tp.mass_open(a, b);
      for (int i = 1; i < 20; ++i) {
        const double q = i / 20.0;
        const double x = tp.conditional_quantile(a, b, q);
        EXPECT_NEAR(tp.mass_open(a, x) / mass, q, 1e-10);
      }
    }
  }
}

TEST(Measure, QuantileWithAtomIsLowerQuantile) {
  const auto m = atom_plus_uniform();
  // mu((0, x]) jumps from 0.15 to 0.65 at the atom.
  EXPECT_DOUBLE_EQ(m.conditional_quantile(0.0, 1.0, 0.5), 0.3);
  EXPECT_DOUBLE_EQ(m.conditional_quantile(0.0, 1.0, 0.65), 0.3);
  EXPECT_NEAR(m.conditional_quantile(0.0, 1.0, 0.75), 0.5, 1e-12);
  EXPECT_NEAR(m.conditional_quantile(0.0, 1.0, 0.1), 0.2, 1e-12);
}

TEST(Measure, Additivity) {
  const auto m = atom_plus_uniform();
  const std::vector<double> pts{0.0, 0.1, 0.3, 0.5, 0.77, 1.0};
  for (double a : pts) {
    for (double b : pts) {
      for (double c : pts) {
        if (!(a < b && b < c)) continue;
        EXPECT_NEAR(m.mass_open(a, c), m.mass_open(a, b) + m.atom_mass(b) + m.mass_open(b, c),
                    1e-12);
      }
    }
  }
}

TEST(Measure, MedianHalvesMass) {
  const auto tp = two_piece();
  for (double a : {0.0, 0.2, 0.49}) {
    for (double b : {0.51, 0.7, 1.0}) {
      const double med = tp.conditional_median(a, b);
      const double mass = tp.mass_open(a, b);
      EXPECT_GT(med, a);
      EXPECT_LT(med, b);
      EXPECT_LE(tp.mass_open(a, med) / mass, 0.5 + 1e-10);
      EXPECT_LE(tp.mass_open(med, b) / mass, 0.5 + 1e-10);
    }
  }
}

TEST(Measure, SamplingIsDeterministic) {
  const auto m = Measure::lebesgue();
  CounterRng r1(42, 5);
  CounterRng r2(42, 5);
  const double x = m.sample_conditional(0.0, 1.0, r1);
  EXPECT_EQ(x, m.sample_conditional(0.0, 1.0, r2));
  EXPECT_GT(x, 0.0);
  EXPECT_LT(x, 1.0);
}

TEST(Measure, ConditionalSampleMean) {
  const auto m = Measure::lebesgue();
  CounterRng rng(3, 9);
  constexpr int kDraws = 100000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = m.sample_conditional(0.3, 0.4, rng);
    ASSERT_GT(x, 0.3);
    ASSERT_LT(x, 0.4);
    sum += x;
  }
  const double se = 0.1 / std::sqrt(12.0 * kDraws);
  EXPECT_NEAR(sum / kDraws, 0.35, 3.0 * se);
}

TEST(Measure, SamplesRespectSupport) {
  const auto m = left_half();
  CounterRng rng(5, 0);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(m.sample_conditional(0.0, 1.0, rng), 0.5);
}

TEST(Measure, Breakpoints) {
  const auto m = atom_plus_uniform();
  EXPECT_EQ(m.breakpoints(), (std::vector<double>{0.0, 0.3, 1.0}));
  EXPECT_TRUE(Measure::lebesgue().is_lebesgue());
  EXPECT_FALSE(two_piece().is_lebesgue());
}

}  // namespace
}  // namespace monobox
