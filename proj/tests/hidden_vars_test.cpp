#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "entangle/correlation.hpp"
#include "entangle/errors.hpp"
#include "entangle/hidden_vars.hpp"
#include "entangle/states.hpp"
#include "support/random.hpp"

using namespace entangle;
using testsupport::Rng;

namespace {

// The refined index by brute-force enumeration of (i, j, lambda) triples.
double refined_index_by_enumeration(const HVModel& m) {
  const std::size_t nl = m.lambda_count(), da = m.outcomes_a(), db = m.outcomes_b();
  std::vector<double> pa(da, 0.0), pb(db, 0.0);
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t i = 0; i < da; ++i) pa[i] += m.weights()[l] * m.cond_a()[l][i];
    for (std::size_t j = 0; j < db; ++j) pb[j] += m.weights()[l] * m.cond_b()[l][j];
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t l = 0; l < nl; ++l) {
        const double p = m.weights()[l] * m.cond_a()[l][i] * m.cond_b()[l][j];
        if (p > 0) sum += p * std::log(p / (pa[i] * pb[j] * m.weights()[l]));
      }
  return sum;
}

}  // namespace

TEST(HVModelCheck, Validation) {
  EXPECT_THROW(HVModel({0.5, 0.4}, {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}), ValidationError);
  EXPECT_THROW(HVModel({1.0}, {{1.2, -0.2}}, {{1, 0}}), ValidationError);
  EXPECT_THROW(HVModel({1.0}, {{0.5, 0.4}}, {{1, 0}}), ValidationError);
  EXPECT_THROW(HVModel({0.5, 0.5}, {{1, 0}}, {{1, 0}, {0, 1}}), ValidationError);
  EXPECT_THROW(HVModel({0.5, 0.5}, {{1, 0}, {1}}, {{1, 0}, {0, 1}}), ValidationError);
}

TEST(InducedJoint, SingleLambdaIsProduct) {
  const HVModel m({1.0}, {{0.3, 0.7}}, {{0.6, 0.4}});
  const auto table = induced_joint(m);
  EXPECT_NEAR(table[0], 0.18, 1e-15);
  EXPECT_NEAR(table[1], 0.12, 1e-15);
  EXPECT_NEAR(table[2], 0.42, 1e-15);
  EXPECT_NEAR(table[3], 0.28, 1e-15);
  EXPECT_NEAR(shannon_index(table), 0.0, 1e-15);
}

TEST(InducedJoint, CopierIsDiagonal) {
  const auto table = induced_joint(copier_model(2));
  EXPECT_EQ(table[0], 0.5);
  EXPECT_EQ(table[1], 0.0);
  EXPECT_EQ(table[2], 0.0);
  EXPECT_EQ(table[3], 0.5);
}

TEST(InducedJoint, RandomModelsSumToOne) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto table = induced_joint(random_model(seed, {5, 3, 4}));
    double total = 0.0;
    for (double p : table.probs()) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(RefinedIndex, CopierValues) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto report = check_refinement(copier_model(d));
    const double ln_d = std::log(static_cast<double>(d));
    EXPECT_NEAR(report.i_hv, 2 * ln_d, 1e-10);
    EXPECT_NEAR(report.i_shann, ln_d, 1e-10);
    EXPECT_NEAR(report.gap, ln_d, 1e-10);
    EXPECT_FALSE(report.equality);
  }
}

TEST(RefinedIndex, CopierExceedsHalfTheSingletQuantumIndex) {
  const double i_c = quantum_index(density_from_pure(singlet()));
  const double i_hv = hv_shannon_index(copier_model(2));
  EXPECT_NEAR(i_hv, i_c, 1e-12);
  EXPECT_GT(i_hv, i_c / 2);
}

TEST(RefinedIndex, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = random_model(seed, {1 + seed % 5, 2 + seed % 3, 2 + seed % 2});
    EXPECT_NEAR(hv_shannon_index(m), refined_index_by_enumeration(m), 1e-12);
    EXPECT_GE(hv_shannon_index(m), -1e-12);
  }
}

TEST(Refinement, LambdaIndependentConditionalsGiveEquality) {
  const auto m = lambda_independent_model({0.2, 0.5, 0.3}, {0.1, 0.9}, {0.6, 0.3, 0.1});
  const auto report = check_refinement(m);
  EXPECT_NEAR(report.gap, 0.0, 1e-12);
  EXPECT_TRUE(report.equality);
}

TEST(Refinement, EqualityIgnoresNegligibleLambdas) {
  const HVModel m({1.0, 0.0}, {{0.3, 0.7}, {1, 0}}, {{0.5, 0.5}, {0, 1}});
  EXPECT_TRUE(check_refinement(m).equality);
}

TEST(Refinement, RandomModelsNeverViolate) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto report = check_refinement(random_model(seed, {4, 2, 2}));
    EXPECT_GE(report.gap, -1e-12) << seed;
    if (!report.equality) {
      EXPECT_GT(report.gap, 1e-9) << seed;
    }
  }
}

TEST(RandomModel, DeterministicAndValid) {
  const auto a = random_model(5, {4, 2, 2});
  const auto b = random_model(5, {4, 2, 2});
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_EQ(a.cond_a(), b.cond_a());
  EXPECT_EQ(a.cond_b(), b.cond_b());
  EXPECT_NE(a.weights(), random_model(6, {4, 2, 2}).weights());
  const auto single = random_model(9, {1, 2, 2});
  EXPECT_NEAR(shannon_index(induced_joint(single)), 0.0, 1e-14);
}

TEST(LogSum, Examples) {
  const std::vector<double> x{0.3, 0.5, 0.2};
  const auto same = logsum_check(x, x);
  EXPECT_NEAR(same.lhs, 0.0, 1e-16);
  EXPECT_NEAR(same.rhs, 0.0, 1e-16);
  EXPECT_TRUE(same.holds);

  const std::vector<double> ones{1, 1}, a{2, 0.5};
  const auto r = logsum_check(ones, a);
  EXPECT_NEAR(r.lhs, std::log(0.5) + std::log(2.0), 1e-15);
  EXPECT_NEAR(r.rhs, 2 * std::log(2.0 / 2.5), 1e-15);
  EXPECT_TRUE(r.holds);
}

TEST(LogSum, Conventions) {
  const std::vector<double> x{0.0, 1.0}, a{1.0, 1.0};
  EXPECT_NEAR(logsum_check(x, a).lhs, 0.0, 1e-16);
  const std::vector<double> y{1.0, 1.0}, b{1.0, 0.0};
  const auto inf = logsum_check(y, b);
  EXPECT_EQ(inf.lhs, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(inf.holds);
  const std::vector<double> neg{-1.0, 1.0};
  EXPECT_THROW(logsum_check(neg, a), ValidationError);
  const std::vector<double> short_a{1.0};
  EXPECT_THROW(logsum_check(x, short_a), ValidationError);
}

TEST(LogSum, RandomPositiveVectors) {
  Rng rng(23);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t len = 1 + rng.index(6);
    std::vector<double> x(len), a(len);
    for (auto& v : x) v = rng.uniform(0.0, 3.0);
    for (auto& v : a) v = rng.uniform(1e-3, 3.0);
    EXPECT_TRUE(logsum_check(x, a).holds);
  }
}
