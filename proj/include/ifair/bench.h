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

// Monte Carlo convergence experiments and exact bound comparisons on known
// ground-truth pmfs.

#ifndef IFAIR_BENCH_H_
#define IFAIR_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifair/partition_search.h"
#include "ifair/pmf.h"
#include "ifair/report.h"
#include "ifair/synth.h"
#include "ifair/tail_bounds.h"

namespace ifair {

// Estimators, with the functional of the truth pmf each one targets:
//   bayes(alpha)        u* of the smoothed pmf            -> u*
//   u_ind               u_ind of the empirical pmf        -> u_ind
//   s_star              s* of the empirical pmf           -> s*
//   partitioned(tau)    u_ind over the greedy partition   -> u*
//   s_star_qstar(tau)   s* of the truth pmf at the greedy partition -> 0,
//                       the value at the trivial partition
// All use the singleton partition unless stated otherwise.
struct EstimatorSpec {
  enum class Kind { kBayes, kUInd, kSStar, kPartitioned, kSStarQStar };
  Kind kind = Kind::kUInd;
  double alpha = 1.0;
  std::uint64_t tau = kDefaultTau;

  std::string Name() const;
  // Inverse of Name().
  static EstimatorSpec Parse(std::string_view text);
};

struct RepRecord {
  std::string estimator;
  std::uint64_t n = 0;
  int rep = 0;
  bool ok = false;
  double estimate = 0.0;
  std::string failure;  // reason when !ok
  std::string q_star;   // partition-based estimators only
};

struct ConvergenceCurve {
  std::string estimator;
  double truth = 0.0;
  // Set when truth is zero: errors are then absolute rather than relative.
  bool absolute = false;
  std::vector<std::uint64_t> n_grid;
  int reps = 0;
  // Per n: mean over successful reps of (estimate - truth)^2 / truth^2.
  std::vector<double> rel_l2;
  // Per n: 10th and 90th percentiles of the per-rep squared error.
  std::vector<double> decile_low;
  std::vector<double> decile_high;
  std::vector<double> mean_estimate;
  std::vector<double> median_estimate;
  std::vector<double> failure_fraction;
};

struct ConvergenceResult {
  std::vector<ConvergenceCurve> curves;
  std::vector<RepRecord> records;
};

// One sampled table per (n, rep), shared by every estimator.
ConvergenceResult ConvergenceExperiment(
    const JointPMF& truth, const std::vector<EstimatorSpec>& estimators,
    const std::vector<std::uint64_t>& n_grid, int reps, const RngSpec& rng);

// Linear-interpolation quantile of unsorted values, q in [0, 1].
double Percentile(std::vector<double> values, double q);

struct BoundRow {
  std::string label;  // "singletons" or "q_star"
  BoundReport bounds;
};

struct BoundComparison {
  double delta = 0.0;
  double u_star = 0.0;
  double eps_star = 0.0;  // exact quantile of U
  std::uint64_t selection_n = 0;
  GreedyResult selection;
  std::vector<BoundRow> rows;
};

// Selects q* on a sample of size selection_n, then evaluates every bound
// exactly on pmf, at the singletons and at q*.
BoundComparison CompareBounds(const JointPMF& pmf, double delta,
                              std::uint64_t tau, std::uint64_t selection_n,
                              const RngSpec& rng, bool chernoff,
                              const SolverConfig& solver = {});

// Tidy CSV: estimator,n,statistic,value.
std::string CurvesCsv(const std::vector<ConvergenceCurve>& curves);
Json ToJson(const ConvergenceCurve& c);
Json ToJson(const BoundComparison& b);

}  // namespace ifair

#endif  // IFAIR_BENCH_H_
