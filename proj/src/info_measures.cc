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

#include "ifair/info_measures.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifair/error.h"
#include "ifair/numeric.h"

namespace ifair {
namespace {

double RawEntropy(std::span<const double> w) {
  CompensatedSum s;
  for (double x : w) s.Add(-XLogX(x));
  return s.Value();
}

void CheckPmf(std::span<const double> w) {
  CompensatedSum total;
  for (double x : w) {
    if (!(x >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be non-negative");
    }
    total.Add(x);
  }
  if (std::abs(total.Value() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "weights must sum to one");
  }
}

void CheckPartition(const JointPMF& pmf, const Partition& q) {
  if (q.num_attributes() != pmf.schema().num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "partition does not match the schema's attribute count");
  }
}

// Block marginal pmfs together with the group -> block-group maps.
struct BlockMarginals {
  std::vector<BlockProjection> projections;
  std::vector<JointPMF> pmfs;
};

BlockMarginals MarginalsOf(const JointPMF& pmf, const Partition& q) {
  BlockMarginals out;
  for (const Block& t : q.blocks()) {
    out.projections.emplace_back(pmf.schema(), t);
    out.pmfs.push_back(MarginalPmf(pmf, t));
  }
  return out;
}

struct Moments {
  double mean;
  double sd;
};

Moments MomentsOf(const LogRatioLaw& law) {
  CompensatedSum m;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    m.Add(law.weights[i] * law.values[i]);
  }
  const double mean = m.Value();
  CompensatedSum v;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    const double c = law.values[i] - mean;
    v.Add(law.weights[i] * c * c);
  }
  return {mean, std::sqrt(std::max(0.0, v.Value()))};
}

}  // namespace

double Entropy(std::span<const double> weights) {
  CheckPmf(weights);
  return RawEntropy(weights);
}

double PluginQ(std::span<const double> weights) {
  CheckPmf(weights);
  CompensatedSum s;
  for (double x : weights) s.Add(XLog2X(x));
  return s.Value();
}

double TotalCorrelation(const JointPMF& pmf, const Partition& q) {
  CheckPartition(pmf, q);
  CompensatedSum c;
  for (const Block& t : q.blocks()) {
    c.Add(RawEntropy(MarginalPmf(pmf, t).GroupMarginal()));
  }
  c.Add(-RawEntropy(pmf.GroupMarginal()));
  return c.Value();
}

double ConditionalTotalCorrelation(const JointPMF& pmf, const Partition& q) {
  CheckPartition(pmf, q);
  // H(A_t | Y) = H(A_t, Y) - H(Y); the H(Y) terms leave (m - 1) H(Y).
  CompensatedSum c;
  for (const Block& t : q.blocks()) c.Add(RawEntropy(MarginalPmf(pmf, t).probs()));
  c.Add(-RawEntropy(pmf.probs()));
  c.Add(-(static_cast<double>(q.size()) - 1.0) *
        RawEntropy(pmf.LabelMarginal()));
  return c.Value();
}

double LabelMutualInformation(const JointPMF& pmf, const Block& block) {
  const JointPMF m = MarginalPmf(pmf, block);
  CompensatedSum c;
  c.Add(RawEntropy(m.GroupMarginal()));
  c.Add(RawEntropy(m.LabelMarginal()));
  c.Add(-RawEntropy(m.probs()));
  return c.Value();
}

double LogRatioLaw::Min() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

double LogRatioLaw::Max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::vector<double> PointwiseL(const JointPMF& pmf, const Partition& q) {
  CheckPartition(pmf, q);
  const BlockMarginals bm = MarginalsOf(pmf, q);
  std::vector<std::vector<double>> block_mass;
  for (const JointPMF& m : bm.pmfs) block_mass.push_back(m.GroupMarginal());
  const std::vector<double> mass = pmf.GroupMarginal();
  std::vector<double> out(mass.size(), 0.0);
  for (std::size_t g = 0; g < mass.size(); ++g) {
    if (!(mass[g] > 0.0)) continue;
    double l = std::log(mass[g]);
    for (std::size_t t = 0; t < bm.pmfs.size(); ++t) {
      l -= std::log(block_mass[t][bm.projections[t](g)]);
    }
    out[g] = l;
  }
  return out;
}

LogRatioLaw LawOfL(const JointPMF& pmf, const Partition& q) {
  const std::vector<double> l = PointwiseL(pmf, q);
  const std::vector<double> mass = pmf.GroupMarginal();
  LogRatioLaw law;
  for (std::size_t g = 0; g < mass.size(); ++g) {
    if (mass[g] > 0.0) {
      law.values.push_back(l[g]);
      law.weights.push_back(mass[g]);
    }
  }
  return law;
}

LogRatioLaw LawOfLy(const JointPMF& pmf, const Partition& q) {
  CheckPartition(pmf, q);
  const BlockMarginals bm = MarginalsOf(pmf, q);
  const std::vector<double> py = pmf.LabelMarginal();
  const std::size_t labels = py.size();
  const double extra = static_cast<double>(q.size()) - 1.0;
  LogRatioLaw law;
  for (std::size_t g = 0; g < pmf.schema().num_groups(); ++g) {
    for (std::size_t y = 0; y < labels; ++y) {
      const double p = pmf.prob(g, y);
      if (!(p > 0.0)) continue;
      double l = std::log(p) + extra * std::log(py[y]);
      for (std::size_t t = 0; t < bm.pmfs.size(); ++t) {
        l -= std::log(bm.pmfs[t].prob(bm.projections[t](g), y));
      }
      law.values.push_back(l);
      law.weights.push_back(p);
    }
  }
  return law;
}

MomentSummary ComputeMoments(const JointPMF& pmf, const Partition& q) {
  const Moments l = MomentsOf(LawOfL(pmf, q));
  const Moments ly = MomentsOf(LawOfLy(pmf, q));
  MomentSummary s;
  s.mu = l.mean;
  s.sigma = l.sd;
  s.mu_y = ly.mean;
  s.sigma_y = ly.sd;
  s.s_star = std::pow(std::cbrt(s.sigma * s.sigma) +
                          std::cbrt(s.sigma_y * s.sigma_y),
                      1.5);
  s.gamma = s.mu - s.mu_y;
  CompensatedSum mi;
  for (const Block& t : q.blocks()) mi.Add(LabelMutualInformation(pmf, t));
  Block all(q.num_attributes());
  for (int k = 0; k < q.num_attributes(); ++k) all[k] = k;
  mi.Add(-LabelMutualInformation(pmf, all));
  s.gamma_mi = mi.Value();
  return s;
}

double Cumulant(const LogRatioLaw& law, double t) {
  if (law.values.empty()) return 0.0;
  double top = -std::numeric_limits<double>::infinity();
  for (double v : law.values) top = std::max(top, t * v);
  // Normalizing by the total weight absorbs rounding in the weights and keeps
  // kappa(0) exactly 0.
  CompensatedSum s;
  CompensatedSum mass;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    s.Add(law.weights[i] * std::exp(t * law.values[i] - top));
    mass.Add(law.weights[i]);
  }
  return top + std::log(s.Value() / mass.Value());
}

double Cumulant(const JointPMF& pmf, const Partition& q, double t,
                bool conditional) {
  return Cumulant(conditional ? LawOfLy(pmf, q) : LawOfL(pmf, q), t);
}

}  // namespace ifair
