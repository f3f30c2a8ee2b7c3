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

// Feasible partitions of the attributes and the greedy search for a coarse
// one. A partition is feasible at threshold tau when every block-marginal
// count N_{a_t, y} exceeds tau.

#ifndef IFAIR_PARTITION_SEARCH_H_
#define IFAIR_PARTITION_SEARCH_H_

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ifair/info_measures.h"
#include "ifair/metrics.h"
#include "ifair/numeric.h"
#include "ifair/partition.h"
#include "ifair/pmf.h"

namespace ifair {

inline constexpr std::uint64_t kDefaultTau = 10;

// Per-block feasibility verdicts for one (table, tau). Safe to share between
// threads.
class FeasibilityCache {
 public:
  FeasibilityCache(const ContingencyTable& table, std::uint64_t tau);

  bool BlockFeasible(const Block& block);
  bool IsFeasible(const Partition& q);

  std::uint64_t tau() const { return tau_; }
  std::size_t lookups() const;
  std::size_t entries() const;

 private:
  const ContingencyTable& table_;
  std::uint64_t tau_;
  mutable std::mutex mu_;
  std::unordered_map<std::uint64_t, bool> verdicts_;
  std::size_t lookups_ = 0;
};

bool IsFeasible(const ContingencyTable& table, const Partition& q,
                std::uint64_t tau);

struct MergeStep {
  Block first;
  Block second;
  double s_star = 0.0;  // of the partition after the merge
};

struct GreedyResult {
  Partition q_star = Partition::Singletons(1);
  std::vector<MergeStep> trace;
  double final_s_star = 0.0;
};

// Starts from singletons and repeatedly applies the feasible pairwise merge
// with the smallest s*, ties going to the lexicographically smallest pair of
// block minima. Stops when no merge is feasible. Moments come from the
// empirical pmf, or from the smoothed pmf when alpha is given. Throws
// kInfeasible naming a violating cell when the singletons are infeasible.
GreedyResult GreedyPartition(const ContingencyTable& table, std::uint64_t tau,
                             std::optional<double> alpha = {});

// u_ind of the empirical pmf over the greedy partition.
Score PartitionedEstimate(const ContingencyTable& table, std::uint64_t tau,
                          MetricVariant variant = MetricVariant::kRatioLog);

}  // namespace ifair

#endif  // IFAIR_PARTITION_SEARCH_H_
