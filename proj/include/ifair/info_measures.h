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

// Entropy-family quantities of a joint pmf and the pointwise log-ratios
//   L(a)      = log p(a)   - sum_t log p(a_t)
//   L_y(a, y) = log p(a|y) - sum_t log p(a_t|y)
// taken over the blocks t of a partition q. L is distributed under p_A and
// L_y under p_{A,Yhat}. All logarithms are natural.

#ifndef IFAIR_INFO_MEASURES_H_
#define IFAIR_INFO_MEASURES_H_

#include <span>
#include <vector>

#include "ifair/partition.h"
#include "ifair/pmf.h"

namespace ifair {

// -sum w log w. Throws kInvalidArgument unless w is a pmf within 1e-9.
double Entropy(std::span<const double> weights);

// Q = sum p log^2 p, same precondition as Entropy.
double PluginQ(std::span<const double> weights);

// C(A^(q)) = sum_t H(A_t) - H(A).
double TotalCorrelation(const JointPMF& pmf, const Partition& q);
// C(A^(q) | Yhat) = sum_t H(A_t | Yhat) - H(A | Yhat).
double ConditionalTotalCorrelation(const JointPMF& pmf, const Partition& q);
// I(A_block, Yhat).
double LabelMutualInformation(const JointPMF& pmf, const Block& block);

struct MomentSummary {
  double mu = 0.0;       // E[L] = C(A)
  double sigma = 0.0;    // sd(L)
  double mu_y = 0.0;     // E[L_y] = C(A | Yhat)
  double sigma_y = 0.0;  // sd(L_y)
  double s_star = 0.0;   // (sigma^(2/3) + sigma_y^(2/3))^(3/2)
  double gamma = 0.0;    // mu - mu_y
  // sum_t I(A_t, Yhat) - I(A, Yhat); equal to gamma up to rounding.
  double gamma_mi = 0.0;
};

MomentSummary ComputeMoments(const JointPMF& pmf, const Partition& q);

// Finite law of L or L_y: outcomes with positive weight only.
struct LogRatioLaw {
  std::vector<double> values;
  std::vector<double> weights;

  double Min() const;
  double Max() const;
};

LogRatioLaw LawOfL(const JointPMF& pmf, const Partition& q);
LogRatioLaw LawOfLy(const JointPMF& pmf, const Partition& q);

// L(a) per group; 0 for groups of zero mass.
std::vector<double> PointwiseL(const JointPMF& pmf, const Partition& q);

// kappa(t) = log E[exp(t X)], evaluated by log-sum-exp.
double Cumulant(const LogRatioLaw& law, double t);
// kappa(t) for L, or kappa_y(t) for L_y when conditional is set.
double Cumulant(const JointPMF& pmf, const Partition& q, double t,
                bool conditional);

}  // namespace ifair

#endif  // IFAIR_INFO_MEASURES_H_
