// Copyright 2026 The ifair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ifair/info_measures.h"
#include "ifair/partition.h"
#include "ifair/pmf.h"
#include "ifair/synth.h"
#include "test_util.h"

namespace ifair {
namespace {

using ::ifair::testing::BinarySchema;
using ::ifair::testing::RandomPmf;

// log E[exp(t L)] written as a Renyi-type sum over groups:
// sum_a p(a)^(1+t) prod_t p(a_t)^(-t).
double RenyiKappa(const JointPMF& pmf, const Partition& q, double t) {
  const AttributeSchema& s = pmf.schema();
  const std::vector<double> mass = testing::GroupMass(pmf);
  double total = 0.0;
  for (std::size_t g = 0; g < mass.size(); ++g) {
    if (!(mass[g] > 0.0)) continue;
    const std::vector<std::size_t> values = s.DecodeGroup(g);
    double term = std::pow(mass[g], 1.0 + t);
    for (const Block& b : q.blocks()) {
      term *= std::pow(testing::BlockMassOf(pmf, b, values), -t);
    }
    total += term;
  }
  return std::log(total);
}

// Same for L_y: sum_{a,y} p(a,y) (p(a|y) / prod_t p(a_t|y))^t.
double RenyiKappaY(const JointPMF& pmf, const Partition& q, double t) {
  const AttributeSchema& s = pmf.schema();
  const std::vector<double> py = testing::LabelMass(pmf);
  double total = 0.0;
  for (std::size_t g = 0; g < s.num_groups(); ++g) {
    const std::vector<std::size_t> values = s.DecodeGroup(g);
    for (std::size_t y = 0; y < py.size(); ++y) {
      const double p = pmf.prob(g, y);
      if (!(p > 0.0)) continue;
      double ratio = p / py[y];
      for (const Block& b : q.blocks()) {
        ratio /= testing::BlockJoint(pmf, b, values, y) / py[y];
      }
      total += p * std::pow(ratio, t);
    }
  }
  return std::log(total);
}

std::vector<Partition> SomePartitions(int d) {
  std::vector<Partition> out = {Partition::Singletons(d), Partition::Trivial(d)};
  if (d == 3) {
    out.push_back(Partition::FromBlocks({{0, 2}, {1}}, d));
    out.push_back(Partition::FromBlocks({{0}, {1, 2}}, d));
  }
  return out;
}

TEST(EntropyTest, KnownValues) {
  const std::vector<double> uniform(4, 0.25);
  EXPECT_NEAR(Entropy(uniform), std::log(4.0), 1e-15);
  EXPECT_NEAR(PluginQ(uniform), std::log(4.0) * std::log(4.0), 1e-15);
  const std::vector<double> point = {0.0, 1.0, 0.0};
  EXPECT_EQ(Entropy(point), 0.0);
  EXPECT_EQ(PluginQ(point), 0.0);
  const std::vector<double> coin = {0.25, 0.75};
  EXPECT_NEAR(Entropy(coin),
              -(0.25 * std::log(0.25) + 0.75 * std::log(0.75)), 1e-15);
}

TEST(EntropyTest, RejectsNonPmf) {
  const std::vector<double> short_mass = {0.5, 0.4};
  const std::vector<double> negative = {1.5, -0.5};
  EXPECT_ANY_THROW(Entropy(short_mass));
  EXPECT_ANY_THROW(Entropy(negative));
  EXPECT_ANY_THROW(PluginQ(short_mass));
}

TEST(MomentsTest, Ce8ClosedForm) {
  const MomentSummary m = ComputeMoments(Ce8Fixture(), Partition::Singletons(2));
  EXPECT_NEAR(m.mu, 0.0, 1e-15);
  EXPECT_NEAR(m.sigma, 0.0, 1e-15);
  const double mu_y = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  EXPECT_NEAR(m.mu_y, mu_y, 1e-15);
  EXPECT_NEAR(m.sigma_y, std::log(3.0) * std::sqrt(3.0 / 16.0), 1e-15);
  EXPECT_NEAR(m.s_star, m.sigma_y, 1e-15);
  EXPECT_NEAR(m.gamma, -mu_y, 1e-15);
  EXPECT_NEAR(m.gamma_mi, m.gamma, 1e-15);
}

TEST(MomentsTest, MatchesDefinitionOracle) {
  const AttributeSchema s =
      AttributeSchema::Create({"a", "b", "c"}, {2, 3, 2}, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const JointPMF p = RandomPmf(s, seed, 0.7);
    for (const Partition& q : SomePartitions(3)) {
      const MomentSummary m = ComputeMoments(p, q);
      const testing::OracleMoments o = testing::Moments(p, q);
      EXPECT_NEAR(m.mu, o.mu, 1e-12);
      EXPECT_NEAR(m.sigma * m.sigma, o.var, 1e-12);
      EXPECT_NEAR(m.mu_y, o.mu_y, 1e-12);
      EXPECT_NEAR(m.sigma_y * m.sigma_y, o.var_y, 1e-12);
      const double s23 = std::cbrt(o.var) + std::cbrt(o.var_y);
      EXPECT_NEAR(m.s_star, std::pow(s23, 1.5), 1e-9);
      EXPECT_NEAR(m.gamma, o.mu - o.mu_y, 1e-12);
    }
  }
}

TEST(MomentsTest, GammaEqualsMutualInformationGap) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    const JointPMF p = RandomPmf(BinarySchema(d, 3), seed, 0.3);
    for (const Partition& q : SomePartitions(d)) {
      const MomentSummary m = ComputeMoments(p, q);
      double mi = -LabelMutualInformation(p, Partition::Trivial(d).block(0));
      for (const Block& b : q.blocks()) mi += LabelMutualInformation(p, b);
      EXPECT_NEAR(m.gamma, mi, 1e-12);
      EXPECT_NEAR(m.gamma, m.gamma_mi, 1e-12);
    }
  }
}

TEST(MomentsTest, TrivialPartitionIsDegenerate) {
  const JointPMF p = RandomPmf(BinarySchema(3), 4);
  const MomentSummary m = ComputeMoments(p, Partition::Trivial(3));
  EXPECT_NEAR(m.mu, 0.0, 1e-14);
  EXPECT_NEAR(m.sigma, 0.0, 1e-14);
  EXPECT_NEAR(m.mu_y, 0.0, 1e-14);
  EXPECT_NEAR(m.sigma_y, 0.0, 1e-14);
  EXPECT_NEAR(m.s_star, 0.0, 1e-14);
}

TEST(MomentsTest, IndependentAttributesHaveZeroL) {
  // Noise family: A_2.. are uniform and independent of (A_1, Yhat).
  const JointPMF p = NoiseFamilyFixture(4, 3);
  const MomentSummary m = ComputeMoments(p, Partition::Singletons(4));
  EXPECT_NEAR(m.mu, 0.0, 1e-12);
  EXPECT_NEAR(m.sigma, 0.0, 1e-7);
  EXPECT_NEAR(m.sigma_y, 0.0, 1e-7);
  EXPECT_NEAR(m.gamma, 0.0, 1e-12);
}

TEST(TotalCorrelationTest, EqualsMeansOfLogRatios) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const JointPMF p = RandomPmf(BinarySchema(3, 2), seed);
    for (const Partition& q : SomePartitions(3)) {
      const MomentSummary m = ComputeMoments(p, q);
      EXPECT_NEAR(TotalCorrelation(p, q), m.mu, 1e-12);
      EXPECT_NEAR(ConditionalTotalCorrelation(p, q), m.mu_y, 1e-12);
      EXPECT_GE(TotalCorrelation(p, q), -1e-12);
      EXPECT_GE(ConditionalTotalCorrelation(p, q), -1e-12);
    }
  }
}

TEST(TotalCorrelationTest, CoarseningNeverIncreases) {
  const AttributeSchema s =
      AttributeSchema::Create({"a", "b", "c"}, {2, 3, 2}, 2);
  const Partition fine = Partition::Singletons(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const JointPMF p = RandomPmf(s, seed, 0.5);
    for (std::size_t i = 0; i < fine.size(); ++i) {
      for (std::size_t j = i + 1; j < fine.size(); ++j) {
        const Partition coarse = fine.Merge(i, j);
        EXPECT_LE(TotalCorrelation(p, coarse),
                  TotalCorrelation(p, fine) + 1e-12);
        EXPECT_LE(ConditionalTotalCorrelation(p, coarse),
                  ConditionalTotalCorrelation(p, fine) + 1e-12);
        EXPECT_LE(TotalCorrelation(p, Partition::Trivial(3)),
                  TotalCorrelation(p, coarse) + 1e-12);
      }
    }
  }
}

// For rho coarser than q: l^(q)(a) = l^(rho)(a) + sum_r l_r^(q_r)(a_r), where
// q_r holds the blocks of q inside block r of rho.
TEST(DecompositionTest, CellwiseIdentity) {
  const AttributeSchema s =
      AttributeSchema::Create({"a", "b", "c", "d"}, {2, 3, 2, 2}, 2);
  const Partition q = Partition::Singletons(4);
  const std::vector<Partition> rhos = {
      Partition::FromBlocks({{0, 1}, {2, 3}}, 4),
      Partition::FromBlocks({{0, 2, 3}, {1}}, 4), Partition::Trivial(4)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const JointPMF p = RandomPmf(s, seed, 0.4);
    const std::vector<double> lq = PointwiseL(p, q);
    for (const Partition& rho : rhos) {
      std::vector<double> rhs = PointwiseL(p, rho);
      for (const Block& r : rho.blocks()) {
        const JointPMF pr = MarginalPmf(p, r);
        const int m = static_cast<int>(r.size());
        const std::vector<double> lr = PointwiseL(pr, Partition::Singletons(m));
        for (std::size_t g = 0; g < s.num_groups(); ++g) {
          const std::vector<std::size_t> v = s.DecodeGroup(g);
          std::vector<std::size_t> sub;
          for (int k : r) sub.push_back(v[k]);
          rhs[g] += lr[pr.schema().EncodeGroup(sub)];
        }
      }
      for (std::size_t g = 0; g < s.num_groups(); ++g) {
        EXPECT_NEAR(lq[g], rhs[g], 1e-10);
      }
    }
  }
}

TEST(LawTest, WeightsFormPmfAndMatchPointwise) {
  const JointPMF p = RandomPmf(BinarySchema(3, 3), 8);
  const Partition q = Partition::Singletons(3);
  const LogRatioLaw l = LawOfL(p, q);
  const LogRatioLaw ly = LawOfLy(p, q);
  EXPECT_NEAR(Sum(l.weights), 1.0, 1e-12);
  EXPECT_NEAR(Sum(ly.weights), 1.0, 1e-12);
  EXPECT_LE(l.Min(), l.Max());
  const std::vector<double> pointwise = PointwiseL(p, q);
  const std::vector<double> mass = testing::GroupMass(p);
  double mean = 0.0;
  for (std::size_t g = 0; g < mass.size(); ++g) mean += mass[g] * pointwise[g];
  EXPECT_NEAR(mean, ComputeMoments(p, q).mu, 1e-12);
}

TEST(LawTest, ZeroCellsAreDropped) {
  const JointPMF p = JointPMF::FromProbabilities(
      BinarySchema(2), {0.2, 0.0, 0.3, 0.1, 0.0, 0.0, 0.15, 0.25});
  const Partition q = Partition::Singletons(2);
  EXPECT_EQ(LawOfL(p, q).values.size(), 3u);
  EXPECT_EQ(LawOfLy(p, q).values.size(), 5u);
  EXPECT_EQ(PointwiseL(p, q)[2], 0.0);
}

TEST(CumulantTest, MatchesRenyiOracle) {
  const AttributeSchema s =
      AttributeSchema::Create({"a", "b", "c"}, {2, 3, 2}, 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const JointPMF p = RandomPmf(s, seed, 0.5);
    for (const Partition& q : SomePartitions(3)) {
      for (double t : {-3.0, -1.0, -0.2, 0.0, 0.4, 1.0, 2.5, 8.0}) {
        const double k = Cumulant(p, q, t, false);
        const double ky = Cumulant(p, q, t, true);
        EXPECT_NEAR(k, RenyiKappa(p, q, t), 1e-9 * std::max(1.0, std::abs(k)));
        EXPECT_NEAR(ky, RenyiKappaY(p, q, t),
                    1e-9 * std::max(1.0, std::abs(ky)));
      }
    }
  }
}

TEST(CumulantTest, DerivativesAtZeroAreMoments) {
  const double h = 1e-4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const JointPMF p = RandomPmf(BinarySchema(3, 2), seed);
    const Partition q = Partition::Singletons(3);
    const MomentSummary m = ComputeMoments(p, q);
    for (bool cond : {false, true}) {
      const double kp = Cumulant(p, q, h, cond);
      const double km = Cumulant(p, q, -h, cond);
      EXPECT_EQ(Cumulant(p, q, 0.0, cond), 0.0);
      EXPECT_NEAR((kp - km) / (2 * h), cond ? m.mu_y : m.mu, 1e-6);
      const double var = cond ? m.sigma_y * m.sigma_y : m.sigma * m.sigma;
      EXPECT_NEAR((kp + km) / (h * h), var, 1e-5);
    }
  }
}

TEST(CumulantTest, ConvexAndStableForLargeArguments) {
  const JointPMF p = RandomPmf(BinarySchema(4, 2), 11, 0.2);
  const LogRatioLaw law = LawOfLy(p, Partition::Singletons(4));
  double prev_slope = -HUGE_VAL;
  for (double t = -50.0; t < 50.0; t += 0.5) {
    const double slope = Cumulant(law, t + 0.5) - Cumulant(law, t);
    EXPECT_GE(slope, prev_slope - 1e-9);
    prev_slope = slope;
  }
  // kappa(t) / t tends to the extreme values of the law.
  EXPECT_TRUE(std::isfinite(Cumulant(law, 1e7)));
  EXPECT_NEAR(Cumulant(law, 1e7) / 1e7, law.Max(), 1e-5);
  EXPECT_NEAR(Cumulant(law, -1e7) / -1e7, law.Min(), 1e-5);
}

}  // namespace
}  // namespace ifair
