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

// Unfairness functionals of a joint pmf p_{A,Yhat}.
//
// Four disparity notions are supported. Pairwise variants compare two groups
// a, a' through their prediction rates p(y|a), p(y|a'):
//   kRatioLog:  |log(p(y|a) / p(y|a'))|
//   kAbsDiff:   |p(y|a) - p(y|a')|
// Reference variants compare one group against the population rate p(y):
//   kRatioLogVsAverage:  |log(p(y|a) / p(y))|
//   kAbsDiffVsAverage:   |p(y|a) - p(y)|
//
// The random unfairness U draws Yhat ~ p_Yhat and then, for pairwise
// variants, two groups A, A' independently from p_{A|Yhat}; for reference
// variants a single group A ~ p_{A|Yhat}.

#ifndef IFAIR_METRICS_H_
#define IFAIR_METRICS_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ifair/numeric.h"
#include "ifair/partition.h"
#include "ifair/pmf.h"

namespace ifair {

enum class MetricVariant {
  kRatioLog,
  kAbsDiff,
  kRatioLogVsAverage,
  kAbsDiffVsAverage,
};

std::string_view VariantName(MetricVariant variant);
// Accepts the names produced by VariantName ("ratio-log", ...).
MetricVariant ParseVariant(std::string_view name);
bool IsPairwise(MetricVariant variant);
bool IsRatio(MetricVariant variant);

// u*: sup over labels and groups. Throws kUndefinedConditional naming the
// first group with zero mass; ratio variants return an infinite Score when a
// conditional rate is zero.
Score IntersectionalUnfairness(const JointPMF& pmf,
                               MetricVariant variant = MetricVariant::kRatioLog);

// u*_k: the same functional on the marginal of attribute k.
Score MarginalUnfairness(const JointPMF& pmf, int k,
                         MetricVariant variant = MetricVariant::kRatioLog);

// u*_ind^{(q)}: the value u* would take if the blocks of q were independent
// and conditionally independent given Yhat, computed from block marginals
// only. For kRatioLog this is sup_y sum_t log(sup p(y|a_t) / inf p(y|a_t)).
// The other variants use the exact identity p(y|a) = p(y)^{1-m} prod_t
// p(y|a_t) that holds under independence, which makes them an upper-bound
// surrogate rather than a decomposition of u*.
Score IndependentApprox(const JointPMF& pmf, const Partition& q,
                        MetricVariant variant = MetricVariant::kRatioLog);

// Exact law of U: ascending distinct support values with their masses.
// Outcomes of probability zero are not part of the support.
struct UDistribution {
  std::vector<double> support;
  std::vector<double> probs;

  // Pr(U > eps), up to a 1e-12 comparison slack on support values.
  double TailMass(double eps) const;
  double Mean() const;
};

inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 26;

// Enumerates Y x A x A (pairwise) or Y x A (reference variants). Throws
// kBudgetExceeded when the enumeration size exceeds cell_budget.
UDistribution ComputeUDistribution(
    const JointPMF& pmf, MetricVariant variant = MetricVariant::kRatioLog,
    std::size_t cell_budget = kDefaultCellBudget);

// eps*(delta) = min{eps >= 0 : Pr(U > eps) <= delta}.
double UnfairnessQuantile(const UDistribution& u, double delta);
double UnfairnessQuantile(const JointPMF& pmf, double delta,
                          MetricVariant variant = MetricVariant::kRatioLog,
                          std::size_t cell_budget = kDefaultCellBudget);

// ubar = E[U].
double ExpectedUnfairness(const JointPMF& pmf,
                          MetricVariant variant = MetricVariant::kRatioLog,
                          std::size_t cell_budget = kDefaultCellBudget);

// w* = sup_a p(a) |p(pos|a) - p(pos)| for a binary label. The default
// positive label is the last value of the label alphabet.
double WeightedUnfairness(const JointPMF& pmf,
                          std::optional<std::size_t> positive_label = {});

struct UnfairnessReport {
  MetricVariant variant = MetricVariant::kRatioLog;
  Score ufi;                   // u*
  std::vector<Score> marginals;  // u*_k
  Score ufm;                   // max_k u*_k
  Score u_ind;                 // singleton-partition approximation
  double expected = 0.0;       // ubar
  std::optional<double> weighted;  // w*, binary labels only
  // Set when u_ind is the upper-bound surrogate (non ratio-log variants).
  bool u_ind_is_surrogate = false;
};

UnfairnessReport ComputeUnfairnessReport(
    const JointPMF& pmf, MetricVariant variant = MetricVariant::kRatioLog,
    std::optional<std::size_t> positive_label = {},
    std::size_t cell_budget = kDefaultCellBudget);

// Conditional rates p(y|group), group-major. Throws kUndefinedConditional
// for zero-mass groups.
std::vector<double> ConditionalRates(const JointPMF& pmf);

}  // namespace ifair

#endif  // IFAIR_METRICS_H_
