#include "tsteg/rates.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tsteg/rng.hpp"
#include "tsteg/sweeps.hpp"

namespace tsteg {
namespace {

TEST(BinaryEntropy, EndpointsAndValue) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.499915958164528, 1e-14);
  EXPECT_DOUBLE_EQ(binary_entropy(0.3), binary_entropy(0.7));
  EXPECT_THROW(binary_entropy(-0.1), std::invalid_argument);
  EXPECT_THROW(binary_entropy(1.1), std::invalid_argument);
}

TEST(RateFromPerr, EndpointsAndMonotonicity) {
  EXPECT_DOUBLE_EQ(rate_from_perr(0.0), 1.0);
  EXPECT_DOUBLE_EQ(rate_from_perr(0.5), 0.0);
  double prev = 1.0;
  for (double p = 0.01; p <= 0.5; p += 0.01) {
    const double r = rate_from_perr(p);
    ASSERT_LT(r, prev);
    prev = r;
  }
}

TEST(MixtureQ, ConvexCombination) {
  EXPECT_DOUBLE_EQ(mixture_q({1.0, 0.0, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(mixture_q({0.37, 0.37, 0.9}), 0.37);
  EXPECT_DOUBLE_EQ(mixture_q({0.8, 0.2, 0.25}), 0.75 * 0.8 + 0.25 * 0.2);
}

TEST(RateGeneral, ChannelLimits) {
  EXPECT_NEAR(rate_general({1.0, 0.0, 0.3}), binary_entropy(0.3), 1e-15);
  EXPECT_NEAR(rate_general({0.6, 0.6, 0.4}), 0.0, 1e-15);
  // Binary symmetric channel consistency with the p_err form.
  for (double p : {0.0, 0.05, 0.2, 0.45}) {
    EXPECT_NEAR(rate_general({1.0 - p, p, 0.5}), rate_from_perr(p), 1e-12);
  }
}

TEST(KeyRate, LimitsAndAlternateFormAgreement) {
  EXPECT_NEAR(key_rate_distribution({1.0, 0.0, 0.3}), 0.0, 1e-15);
  EXPECT_NEAR(key_rate_distribution({0.6, 0.6, 0.3}), binary_entropy(0.3),
              1e-15);

  // K = h(f) - (h(q) - h(q|x)) must match the expanded form everywhere.
  Philox4x32 rng(1618, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const ChannelProbs c{uniform_unit(rng), uniform_unit(rng),
                         0.999 * uniform_unit(rng) + 0.0005};
    const double information =
        binary_entropy(mixture_q(c)) - c.f * binary_entropy(c.p01) -
        (1.0 - c.f) * binary_entropy(c.p00);
    const double k30 = key_rate_distribution(c);
    const double k38 = binary_entropy(c.f) - information;
    ASSERT_NEAR(k30, k38, 1e-12);
    ASSERT_GE(k30, -1e-12);  // key consumption is never negative
  }
}

TEST(PairwiseKeyOverhead, ClosedForm) {
  EXPECT_NEAR(pairwise_key_overhead(0.5, 2), 0.0, 1e-15);
  EXPECT_NEAR(pairwise_key_overhead(0.5, 4), 2.0, 1e-15);
  EXPECT_NEAR(pairwise_key_overhead(0.3, 100), std::log2(2100.0), 1e-12);
  EXPECT_THROW(pairwise_key_overhead(0.0, 4), std::invalid_argument);
  EXPECT_THROW(pairwise_key_overhead(0.5, 1), std::invalid_argument);
}

TEST(SchemeSweep, FockCapacityCurve) {
  const std::vector<double> grid{0.5, 1.0, 5.0};
  const auto curve = scheme_sweep(Scheme::FockCapacity, grid);
  EXPECT_DOUBLE_EQ(curve[1].R, 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_DOUBLE_EQ(curve[i].R, capacity_per_symbol(grid[i]));
    EXPECT_DOUBLE_EQ(curve[i].K, 0.0);
  }
}

TEST(SchemeSweep, DeterministicForFixedSeed) {
  const std::vector<double> grid{0.5, 2.0};
  SweepConfig cfg;
  cfg.pairs = 64;
  const auto a = scheme_sweep(Scheme::PairwiseHelstrom, grid, cfg);
  const auto b = scheme_sweep(Scheme::PairwiseHelstrom, grid, cfg);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_EQ(a[i].R, b[i].R);
    ASSERT_EQ(a[i].K, b[i].K);
    ASSERT_EQ(a[i].p_err, b[i].p_err);
  }
}

TEST(SchemeSweep, HelstromDominatesHomodynePointwise) {
  const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 5.0};
  for (double f : {0.15, 0.5}) {
    SweepConfig cfg;
    cfg.f = f;
    const auto hel = scheme_sweep(Scheme::PairwiseHelstrom, grid, cfg);
    const auto hom = scheme_sweep(Scheme::PairwiseHomodyne, grid, cfg);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ASSERT_GE(hel[i].R, hom[i].R) << "f=" << f << " nbar=" << grid[i];
      ASSERT_LE(hel[i].p_err, hom[i].p_err + 1e-12)
          << "f=" << f << " nbar=" << grid[i];
    }
  }
}

TEST(SchemeSweep, FockDominatesCoherentSchemesAtSmallPrior) {
  // The Fock curve sits above both pairwise curves across the grid when the
  // pairwise prior satisfies h(f) <= min Fock capacity; f = 0.15 keeps
  // h(f) = 0.61 under the capacity at the top of the grid.
  const std::vector<double> grid{0.1, 0.25, 0.5, 1.0, 2.0, 3.5, 5.0};
  SweepConfig cfg;
  cfg.f = 0.15;
  const auto fock = scheme_sweep(Scheme::FockCapacity, grid, cfg);
  const auto hel = scheme_sweep(Scheme::PairwiseHelstrom, grid, cfg);
  const auto hom = scheme_sweep(Scheme::PairwiseHomodyne, grid, cfg);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_GE(fock[i].R, hel[i].R) << grid[i];
    ASSERT_GE(hel[i].R, hom[i].R) << grid[i];
  }
}

TEST(SchemeSweep, KeyRatesNonnegativeOnGrid) {
  const std::vector<double> grid{0.2, 1.0, 3.0};
  for (double f : {0.1, 0.3, 0.5, 0.8}) {
    SweepConfig cfg;
    cfg.f = f;
    cfg.pairs = 128;
    for (auto scheme : {Scheme::PairwiseHelstrom, Scheme::PairwiseHomodyne}) {
      for (const auto& rep : scheme_sweep(scheme, grid, cfg)) {
        ASSERT_GE(rep.K, -1e-12);
        ASSERT_GE(rep.R, 0.0);
        ASSERT_LE(rep.p_err, 0.5 + 1e-12);
      }
    }
  }
}

TEST(OptimizeF, RateObjectivePeaksNearBalancedPrior) {
  const auto res = optimize_f(5.0, Objective::Rate);
  EXPECT_NEAR(res.f_star, 0.5, 0.1);
  // Argmax property against a coarse manual scan.
  for (double f : {0.1, 0.3, 0.7, 0.9}) {
    SweepConfig cfg;
    cfg.f = f;
    EXPECT_GE(res.report.R + 1e-12,
              scheme_report(Scheme::PairwiseHelstrom, 5.0, cfg, 0).R);
  }
}

TEST(OptimizeF, RatePerKeyPushesPriorTowardZero) {
  const auto per_key = optimize_f(5.0, Objective::RatePerKey);
  const auto rate = optimize_f(5.0, Objective::Rate);
  EXPECT_LT(per_key.f_star, rate.f_star - 0.1);
  EXPECT_GT(per_key.report.ratio, 1.0);
}

}  // namespace
}  // namespace tsteg
