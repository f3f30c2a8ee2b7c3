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

#include "ifair/partition_search.h"

#include <string>

#include "ifair/error.h"

namespace ifair {
namespace {

// First block-marginal cell at or below tau, if any.
std::optional<std::pair<std::size_t, std::size_t>> FirstThinCell(
    const ContingencyTable& marginal, std::uint64_t tau) {
  const std::size_t labels = marginal.schema().label_card();
  for (std::size_t g = 0; g < marginal.schema().num_groups(); ++g) {
    for (std::size_t y = 0; y < labels; ++y) {
      if (marginal.count(g, y) <= tau) return std::make_pair(g, y);
    }
  }
  return std::nullopt;
}

void RequireFeasibleSingletons(const ContingencyTable& table,
                               std::uint64_t tau) {
  for (int k = 0; k < table.schema().num_attributes(); ++k) {
    const ContingencyTable m = MarginalCounts(table, {k});
    if (auto cell = FirstThinCell(m, tau)) {
      const AttributeSchema& s = m.schema();
      throw Error(ErrorCode::kInfeasible,
                  "singleton partition infeasible at tau=" +
                      std::to_string(tau) + ": cell (" +
                      s.DescribeGroup(cell->first) + ", " + s.label().name +
                      "=" + s.label().values[cell->second] + ") has count " +
                      std::to_string(m.count(cell->first, cell->second)));
    }
  }
}

}  // namespace

FeasibilityCache::FeasibilityCache(const ContingencyTable& table,
                                   std::uint64_t tau)
    : table_(table), tau_(tau) {}

bool FeasibilityCache::BlockFeasible(const Block& block) {
  const std::uint64_t key = BlockMask(block);
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++lookups_;
    if (auto it = verdicts_.find(key); it != verdicts_.end()) return it->second;
  }
  const bool ok = !FirstThinCell(MarginalCounts(table_, block), tau_);
  std::lock_guard<std::mutex> lock(mu_);
  verdicts_.emplace(key, ok);
  return ok;
}

bool FeasibilityCache::IsFeasible(const Partition& q) {
  if (q.num_attributes() != table_.schema().num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "partition does not match the schema's attribute count");
  }
  for (const Block& t : q.blocks()) {
    if (!BlockFeasible(t)) return false;
  }
  return true;
}

std::size_t FeasibilityCache::lookups() const {
  std::lock_guard<std::mutex> lock(mu_);
  return lookups_;
}

std::size_t FeasibilityCache::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return verdicts_.size();
}

bool IsFeasible(const ContingencyTable& table, const Partition& q,
                std::uint64_t tau) {
  FeasibilityCache cache(table, tau);
  return cache.IsFeasible(q);
}

GreedyResult GreedyPartition(const ContingencyTable& table, std::uint64_t tau,
                             std::optional<double> alpha) {
  RequireFeasibleSingletons(table, tau);
  const JointPMF pmf = alpha ? SmoothedPmf(table, *alpha) : EmpiricalPmf(table);
  FeasibilityCache cache(table, tau);
  const int d = table.schema().num_attributes();
  GreedyResult result;
  result.q_star = Partition::Singletons(d);
  result.final_s_star = ComputeMoments(pmf, result.q_star).s_star;
  for (;;) {
    const Partition& q = result.q_star;
    std::optional<Partition> best;
    MergeStep step;
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = i + 1; j < q.size(); ++j) {
        Block merged = q.block(i);
        merged.insert(merged.end(), q.block(j).begin(), q.block(j).end());
        if (!cache.BlockFeasible(merged)) continue;
        Partition candidate = q.Merge(i, j);
        const double s = ComputeMoments(pmf, candidate).s_star;
        if (!best || s < step.s_star) {
          step = MergeStep{q.block(i), q.block(j), s};
          best = std::move(candidate);
        }
      }
    }
    if (!best) break;
    result.q_star = std::move(*best);
    result.final_s_star = step.s_star;
    result.trace.push_back(std::move(step));
  }
  return result;
}

Score PartitionedEstimate(const ContingencyTable& table, std::uint64_t tau,
                          MetricVariant variant) {
  const GreedyResult g = GreedyPartition(table, tau);
  return IndependentApprox(EmpiricalPmf(table), g.q_star, variant);
}

}  // namespace ifair
