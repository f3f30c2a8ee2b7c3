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

// (eps, delta) certificates: every eps returned here satisfies
// Pr(U > eps) <= delta for the random unfairness U of the matching variant.
//
// The Chebyshev bounds use only the moment summary of L and L_y over a
// partition q. The Chernoff bound optimizes a split of delta between an upper
// tail and a lower tail, each controlled through the Legendre transform of a
// cumulant generating function.

#ifndef IFAIR_TAIL_BOUNDS_H_
#define IFAIR_TAIL_BOUNDS_H_

#include <optional>
#include <vector>

#include "ifair/info_measures.h"
#include "ifair/metrics.h"
#include "ifair/numeric.h"
#include "ifair/partition.h"
#include "ifair/pmf.h"

namespace ifair {

// Which pair of tails enters the Chernoff bound.
enum class TailPairing {
  // Upper tail of L_y with lower tail of L (default).
  kConditionalUpper,
  // Upper tail of L with lower tail of L_y.
  kConditionalLower,
};

struct SolverConfig {
  int split_points = 400;
  int t_grid_points = 256;
  double t_min = 1e-6;
  double t_max = 200.0;
  double refine_tol = 1e-8;
  double lambda_tol = 1e-10;
  TailPairing pairing = TailPairing::kConditionalUpper;
};

// Chernoff rate function of a finite law X,
//   upper: I+(l) = sup_{t>0} t l - kappa(t)
//   lower: I-(l) = sup_{t>0} -t l - kappa(-t)
// with t restricted to [t_min, t_max].
class RateFunction {
 public:
  enum class Tail { kUpper, kLower };

  RateFunction(const LogRatioLaw& law, Tail tail, const SolverConfig& config);

  Tail tail() const { return tail_; }
  double mean() const { return sign_ * mean_; }
  double operator()(double lambda) const;
  // Bound on Pr(X > l) (upper) or Pr(X < l) (lower): exp(-I(l)), and exactly
  // 0 beyond the extreme support point.
  double TailBound(double lambda) const;
  // The least extreme l with TailBound(l) <= delta, by bisection between the
  // mean and the extreme support point.
  double Quantile(double delta) const;

 private:
  // Everything below works on sign * X so that only upper tails occur.
  double Kappa(double t) const;
  double KappaSlope(double t) const;
  double Rate(double lambda, double stop_at) const;
  double Bound(double lambda) const;

  Tail tail_;
  double sign_;
  SolverConfig config_;
  std::vector<double> values_;
  std::vector<double> weights_;
  double mean_ = 0.0;
  double extreme_ = 0.0;
  std::vector<double> t_grid_;
  std::vector<double> kappa_grid_;
  std::vector<double> slope_grid_;
};

struct SolverDiagnostics {
  int split_points = 0;
  int t_grid_points = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  double refine_tol = 0.0;
  TailPairing pairing = TailPairing::kConditionalUpper;
  double delta_upper = 0.0;  // budget spent on the upper tail
  double lambda_upper = 0.0;
  double lambda_lower = 0.0;
  // Tail bound at the optimum minus delta; never positive.
  double slack = 0.0;
};

struct BoundReport {
  MetricVariant variant = MetricVariant::kRatioLog;
  double delta = 0.0;
  Partition q = Partition::Singletons(1);
  MomentSummary moments;
  Score u_ind;
  // sup_y sum_t log(p(y)^(1 - 1/m) / inf p(y|a_t)), m = |q|.
  Score marginal_term;
  Score eps1;
  std::optional<Score> eps1_prime;  // ratio-log only
  std::optional<Score> eps2;        // when the Chernoff solver ran
  std::optional<SolverDiagnostics> solver;
};

// delta in (0, 1]. Throws kUndefinedConditional when a block has a group of
// zero mass; zero conditional rates give infinite bounds.
BoundReport ChebyshevBounds(const JointPMF& pmf, const Partition& q,
                            double delta,
                            MetricVariant variant = MetricVariant::kRatioLog);

// Adds eps2 to a ratio-log report. delta in (0, 1).
void AddChernoffBound(const JointPMF& pmf, BoundReport& report,
                      const SolverConfig& config = {});

// ChebyshevBounds followed by AddChernoffBound.
BoundReport ChernoffBound(const JointPMF& pmf, const Partition& q,
                          double delta, const SolverConfig& config = {});

Score MarginalTerm(const JointPMF& pmf, const Partition& q);

}  // namespace ifair

#endif  // IFAIR_TAIL_BOUNDS_H_
