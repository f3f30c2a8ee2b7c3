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

#include "ifair/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ifair/error.h"

namespace ifair {
namespace {

constexpr double kSupportMergeTolerance = 1e-12;
constexpr double kTailSlack = 1e-12;

// Per label: extremes of p(y|a) over groups.
struct RateRange {
  std::vector<double> sup;
  std::vector<double> inf;
};

RateRange RangeOf(const JointPMF& pmf) {
  const std::vector<double> rates = ConditionalRates(pmf);
  const std::size_t labels = pmf.schema().label_card();
  RateRange r{std::vector<double>(labels, 0.0),
              std::vector<double>(labels, std::numeric_limits<double>::max())};
  for (std::size_t c = 0; c < rates.size(); ++c) {
    const std::size_t y = c % labels;
    r.sup[y] = std::max(r.sup[y], rates[c]);
    r.inf[y] = std::min(r.inf[y], rates[c]);
  }
  return r;
}

double PairValue(MetricVariant variant, double r1, double r2) {
  if (variant == MetricVariant::kRatioLog) return std::abs(std::log(r1 / r2));
  return std::abs(r1 - r2);
}

double ReferenceValue(MetricVariant variant, double rate, double py) {
  if (variant == MetricVariant::kRatioLogVsAverage) {
    return std::abs(std::log(rate / py));
  }
  return std::abs(rate - py);
}

Score MaxScore(const std::vector<Score>& scores) {
  Score best = Score::Finite(0.0);
  for (const Score& s : scores) {
    if (best < s) best = s;
  }
  return best;
}

UDistribution Collapse(std::vector<std::pair<double, double>> outcomes) {
  std::sort(outcomes.begin(), outcomes.end());
  UDistribution u;
  std::size_t i = 0;
  while (i < outcomes.size()) {
    const double start = outcomes[i].first;
    CompensatedSum mass;
    double value = start;
    while (i < outcomes.size() &&
           outcomes[i].first - start <=
               kSupportMergeTolerance * std::max(1.0, std::abs(start))) {
      value = outcomes[i].first;
      mass.Add(outcomes[i].second);
      ++i;
    }
    u.support.push_back(value);
    u.probs.push_back(mass.Value());
  }
  return u;
}

}  // namespace

std::string_view VariantName(MetricVariant variant) {
  switch (variant) {
    case MetricVariant::kRatioLog:
      return "ratio-log";
    case MetricVariant::kAbsDiff:
      return "abs-diff";
    case MetricVariant::kRatioLogVsAverage:
      return "ratio-log-vs-average";
    case MetricVariant::kAbsDiffVsAverage:
      return "abs-diff-vs-average";
  }
  return "unknown";
}

MetricVariant ParseVariant(std::string_view name) {
  for (auto v : {MetricVariant::kRatioLog, MetricVariant::kAbsDiff,
                 MetricVariant::kRatioLogVsAverage,
                 MetricVariant::kAbsDiffVsAverage}) {
    if (VariantName(v) == name) return v;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric variant '" + std::string(name) + "'");
}

bool IsPairwise(MetricVariant variant) {
  return variant == MetricVariant::kRatioLog ||
         variant == MetricVariant::kAbsDiff;
}

bool IsRatio(MetricVariant variant) {
  return variant == MetricVariant::kRatioLog ||
         variant == MetricVariant::kRatioLogVsAverage;
}

std::vector<double> ConditionalRates(const JointPMF& pmf) {
  const AttributeSchema& schema = pmf.schema();
  const std::vector<double> mass = pmf.GroupMarginal();
  const std::size_t labels = schema.label_card();
  std::vector<double> rates(pmf.probs().size());
  for (std::size_t g = 0; g < mass.size(); ++g) {
    if (!(mass[g] > 0.0)) {
      throw Error(ErrorCode::kUndefinedConditional,
                  "undefined conditional: group {" + schema.DescribeGroup(g) +
                      "} has zero probability mass");
    }
    for (std::size_t y = 0; y < labels; ++y) {
      rates[g * labels + y] = pmf.prob(g, y) / mass[g];
    }
  }
  return rates;
}

Score IntersectionalUnfairness(const JointPMF& pmf, MetricVariant variant) {
  const RateRange r = RangeOf(pmf);
  const std::vector<double> py = pmf.LabelMarginal();
  double best = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    double value = 0.0;
    switch (variant) {
      case MetricVariant::kRatioLog:
        if (r.inf[y] <= 0.0) return Score::Infinite();
        value = std::log(r.sup[y] / r.inf[y]);
        break;
      case MetricVariant::kAbsDiff:
        value = r.sup[y] - r.inf[y];
        break;
      case MetricVariant::kRatioLogVsAverage:
        if (r.inf[y] <= 0.0) return Score::Infinite();
        value = std::max(std::log(r.sup[y] / py[y]), std::log(py[y] / r.inf[y]));
        break;
      case MetricVariant::kAbsDiffVsAverage:
        value = std::max(r.sup[y] - py[y], py[y] - r.inf[y]);
        break;
    }
    best = std::max(best, value);
  }
  return Score::Finite(best);
}

Score MarginalUnfairness(const JointPMF& pmf, int k, MetricVariant variant) {
  if (k < 0 || k >= pmf.schema().num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "attribute index " + std::to_string(k) + " outside schema");
  }
  return IntersectionalUnfairness(MarginalPmf(pmf, {k}), variant);
}

Score IndependentApprox(const JointPMF& pmf, const Partition& q,
                        MetricVariant variant) {
  if (q.num_attributes() != pmf.schema().num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "partition does not match the schema's attribute count");
  }
  std::vector<RateRange> ranges;
  for (const Block& t : q.blocks()) ranges.push_back(RangeOf(MarginalPmf(pmf, t)));
  const std::vector<double> py = pmf.LabelMarginal();
  const double m = static_cast<double>(q.size());
  double best = 0.0;
  for (std::size_t y = 0; y < py.size(); ++y) {
    double value = 0.0;
    if (variant == MetricVariant::kRatioLog ||
        variant == MetricVariant::kRatioLogVsAverage) {
      double log_sup = 0.0;
      double log_inf = 0.0;
      for (const RateRange& r : ranges) {
        if (r.inf[y] <= 0.0) return Score::Infinite();
        log_sup += std::log(r.sup[y]);
        log_inf += std::log(r.inf[y]);
      }
      if (variant == MetricVariant::kRatioLog) {
        value = log_sup - log_inf;
      } else {
        const double log_py = std::log(py[y]);
        value = std::max(log_sup - m * log_py, m * log_py - log_inf);
      }
    } else {
      if (!(py[y] > 0.0)) continue;
      double prod_sup = 1.0;
      double prod_inf = 1.0;
      for (const RateRange& r : ranges) {
        prod_sup *= r.sup[y] / py[y];
        prod_inf *= r.inf[y] / py[y];
      }
      if (variant == MetricVariant::kAbsDiff) {
        value = py[y] * (prod_sup - prod_inf);
      } else {
        value = py[y] * std::max(prod_sup - 1.0, 1.0 - prod_inf);
      }
    }
    best = std::max(best, value);
  }
  return Score::Finite(best);
}

double UDistribution::TailMass(double eps) const {
  CompensatedSum tail;
  const double cut = eps + kTailSlack * std::max(1.0, std::abs(eps));
  for (std::size_t i = support.size(); i-- > 0 && support[i] > cut;) {
    tail.Add(probs[i]);
  }
  return tail.Value();
}

double UDistribution::Mean() const {
  CompensatedSum s;
  for (std::size_t i = 0; i < support.size(); ++i) s.Add(support[i] * probs[i]);
  return s.Value();
}

UDistribution ComputeUDistribution(const JointPMF& pmf, MetricVariant variant,
                                   std::size_t cell_budget) {
  const AttributeSchema& schema = pmf.schema();
  const std::size_t groups = schema.num_groups();
  const std::size_t labels = schema.label_card();
  const bool pairwise = IsPairwise(variant);
  const bool too_large =
      pairwise ? (groups > cell_budget / groups ||
                  groups * groups > cell_budget / labels)
               : groups * labels > cell_budget;
  if (too_large) {
    throw Error(ErrorCode::kBudgetExceeded,
                "too large: enumerating U needs more than the cell budget of " +
                    std::to_string(cell_budget) + " outcomes");
  }
  const std::vector<double> py = pmf.LabelMarginal();
  const std::vector<double> mass = pmf.GroupMarginal();
  std::vector<std::pair<double, double>> outcomes;
  for (std::size_t y = 0; y < labels; ++y) {
    if (!(py[y] > 0.0)) continue;
    // Groups sharing a rate produce identical outcomes; aggregate them first.
    std::vector<std::pair<double, double>> rate_mass;
    for (std::size_t g = 0; g < groups; ++g) {
      const double p = pmf.prob(g, y);
      if (p > 0.0) rate_mass.emplace_back(p / mass[g], p);
    }
    std::sort(rate_mass.begin(), rate_mass.end());
    std::vector<std::pair<double, double>> levels;
    for (const auto& [rate, p] : rate_mass) {
      if (!levels.empty() && levels.back().first == rate) {
        levels.back().second += p;
      } else {
        levels.emplace_back(rate, p);
      }
    }
    if (pairwise) {
      for (const auto& [r1, p1] : levels) {
        for (const auto& [r2, p2] : levels) {
          outcomes.emplace_back(PairValue(variant, r1, r2), p1 * p2 / py[y]);
        }
      }
    } else {
      for (const auto& [r, p] : levels) {
        outcomes.emplace_back(ReferenceValue(variant, r, py[y]), p);
      }
    }
  }
  return Collapse(std::move(outcomes));
}

double UnfairnessQuantile(const UDistribution& u, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in [0, 1]");
  }
  if (u.TailMass(0.0) <= delta + kTailSlack) return 0.0;
  // tail[i] = Pr(U > support[i]).
  CompensatedSum tail;
  std::vector<double> tails(u.support.size());
  for (std::size_t i = u.support.size(); i-- > 0;) {
    tails[i] = tail.Value();
    tail.Add(u.probs[i]);
  }
  for (std::size_t i = 0; i < tails.size(); ++i) {
    if (tails[i] <= delta + kTailSlack) return u.support[i];
  }
  return u.support.empty() ? 0.0 : u.support.back();
}

double UnfairnessQuantile(const JointPMF& pmf, double delta,
                          MetricVariant variant, std::size_t cell_budget) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in [0, 1]");
  }
  return UnfairnessQuantile(ComputeUDistribution(pmf, variant, cell_budget),
                            delta);
}

double ExpectedUnfairness(const JointPMF& pmf, MetricVariant variant,
                          std::size_t cell_budget) {
  return ComputeUDistribution(pmf, variant, cell_budget).Mean();
}

double WeightedUnfairness(const JointPMF& pmf,
                          std::optional<std::size_t> positive_label) {
  const AttributeSchema& schema = pmf.schema();
  if (schema.label_card() != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "weighted unfairness requires binary label");
  }
  const std::size_t pos = positive_label.value_or(1);
  if (pos >= 2) {
    throw Error(ErrorCode::kInvalidArgument, "positive label index out of range");
  }
  const double p_pos = pmf.LabelMarginal()[pos];
  const std::vector<double> mass = pmf.GroupMarginal();
  double best = 0.0;
  for (std::size_t g = 0; g < mass.size(); ++g) {
    // p(a) |p(pos|a) - p(pos)| without dividing by p(a).
    best = std::max(best, std::abs(pmf.prob(g, pos) - mass[g] * p_pos));
  }
  return best;
}

UnfairnessReport ComputeUnfairnessReport(
    const JointPMF& pmf, MetricVariant variant,
    std::optional<std::size_t> positive_label, std::size_t cell_budget) {
  UnfairnessReport report;
  report.variant = variant;
  report.ufi = IntersectionalUnfairness(pmf, variant);
  for (int k = 0; k < pmf.schema().num_attributes(); ++k) {
    report.marginals.push_back(MarginalUnfairness(pmf, k, variant));
  }
  report.ufm = MaxScore(report.marginals);
  report.u_ind = IndependentApprox(
      pmf, Partition::Singletons(pmf.schema().num_attributes()), variant);
  report.u_ind_is_surrogate = variant != MetricVariant::kRatioLog;
  report.expected = ExpectedUnfairness(pmf, variant, cell_budget);
  if (pmf.schema().label_card() == 2) {
    report.weighted = WeightedUnfairness(pmf, positive_label);
  }
  return report;
}

}  // namespace ifair
