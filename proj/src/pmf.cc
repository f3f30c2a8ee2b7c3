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

#include "ifair/pmf.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifair/error.h"
#include "ifair/numeric.h"

namespace ifair {
namespace {

constexpr double kMassTolerance = 1e-12;

void CheckBlock(const AttributeSchema& schema, const Block& block) {
  if (block.empty()) {
    throw Error(ErrorCode::kStructural, "empty attribute block");
  }
  std::vector<bool> seen(schema.num_attributes(), false);
  for (int k : block) {
    if (k < 0 || k >= schema.num_attributes()) {
      throw Error(ErrorCode::kStructural,
                  "block index " + std::to_string(k) + " outside schema");
    }
    if (seen[k]) {
      throw Error(ErrorCode::kStructural, "block repeats an index");
    }
    seen[k] = true;
  }
}

// Single variable whose alphabet is the cross product of vars' alphabets.
Variable Flatten(const std::vector<Variable>& vars) {
  Variable out;
  std::vector<std::string> values = {""};
  for (std::size_t i = 0; i < vars.size(); ++i) {
    out.name += (i == 0 ? "" : "&") + vars[i].name;
    std::vector<std::string> next;
    next.reserve(values.size() * vars[i].cardinality());
    for (const auto& prefix : values) {
      for (const auto& v : vars[i].values) {
        next.push_back(i == 0 ? v : prefix + "/" + v);
      }
    }
    values = std::move(next);
  }
  out.values = std::move(values);
  return out;
}

}  // namespace

ContingencyTable ContingencyTable::Zeros(AttributeSchema schema) {
  std::vector<std::uint64_t> counts(schema.num_cells(), 0);
  return ContingencyTable(std::move(schema), std::move(counts));
}

ContingencyTable ContingencyTable::FromCounts(
    AttributeSchema schema, std::vector<std::uint64_t> counts) {
  return ContingencyTable(std::move(schema), std::move(counts));
}

ContingencyTable::ContingencyTable(AttributeSchema schema,
                                   std::vector<std::uint64_t> counts)
    : schema_(std::move(schema)), counts_(std::move(counts)) {
  if (counts_.size() != schema_.num_cells()) {
    throw Error(ErrorCode::kStructural,
                "count array has " + std::to_string(counts_.size()) +
                    " entries, schema has " +
                    std::to_string(schema_.num_cells()) + " cells");
  }
  for (auto c : counts_) n_ += c;
}

JointPMF JointPMF::FromProbabilities(AttributeSchema schema,
                                     std::vector<double> probs) {
  if (probs.size() != schema.num_cells()) {
    throw Error(ErrorCode::kStructural,
                "probability array has " + std::to_string(probs.size()) +
                    " entries, schema has " +
                    std::to_string(schema.num_cells()) + " cells");
  }
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probabilities must be finite and non-negative");
    }
  }
  const double total = Sum(probs);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "probabilities sum to " + std::to_string(total) +
                    ", expected 1");
  }
  return JointPMF(std::move(schema), std::move(probs));
}

JointPMF JointPMF::Normalized(AttributeSchema schema,
                              std::vector<double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weights must be finite and non-negative");
    }
  }
  const double total = Sum(weights);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "weights sum to zero");
  }
  for (double& w : weights) w /= total;
  return FromProbabilities(std::move(schema), std::move(weights));
}

std::vector<double> JointPMF::GroupMarginal() const {
  const std::size_t labels = schema_.label_card();
  std::vector<double> out(schema_.num_groups());
  for (std::size_t g = 0; g < out.size(); ++g) {
    CompensatedSum s;
    for (std::size_t y = 0; y < labels; ++y) s.Add(probs_[g * labels + y]);
    out[g] = s.Value();
  }
  return out;
}

std::vector<double> JointPMF::LabelMarginal() const {
  const std::size_t labels = schema_.label_card();
  std::vector<CompensatedSum> sums(labels);
  for (std::size_t c = 0; c < probs_.size(); ++c) {
    sums[c % labels].Add(probs_[c]);
  }
  std::vector<double> out(labels);
  for (std::size_t y = 0; y < labels; ++y) out[y] = sums[y].Value();
  return out;
}

BlockProjection::BlockProjection(const AttributeSchema& schema,
                                 const Block& block)
    : block_schema_([&] {
        CheckBlock(schema, block);
        Block sorted = block;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Variable> vars;
        for (int k : sorted) vars.push_back(schema.attribute(k));
        return AttributeSchema::FromVariables(std::move(vars), schema.label());
      }()) {
  Block sorted = block;
  std::sort(sorted.begin(), sorted.end());
  const int d = schema.num_attributes();
  // Weight of each original attribute digit in the block index.
  std::vector<std::size_t> weight(d, 0);
  std::size_t w = 1;
  for (std::size_t i = sorted.size(); i-- > 0;) {
    weight[sorted[i]] = w;
    w *= schema.attr_card(sorted[i]);
  }
  map_.resize(schema.num_groups());
  std::vector<std::size_t> digits(d, 0);
  std::size_t index = 0;
  for (std::size_t g = 0; g < map_.size(); ++g) {
    map_[g] = static_cast<std::uint32_t>(index);
    // Odometer increment, last attribute fastest.
    for (int k = d - 1; k >= 0; --k) {
      if (++digits[k] < schema.attr_card(k)) {
        index += weight[k];
        break;
      }
      index -= weight[k] * (digits[k] - 1);
      digits[k] = 0;
    }
  }
}

JointPMF EmpiricalPmf(const ContingencyTable& table) {
  if (table.n() == 0) throw Error(ErrorCode::kNoData, "no data");
  const double n = static_cast<double>(table.n());
  std::vector<double> probs(table.counts().size());
  for (std::size_t c = 0; c < probs.size(); ++c) {
    probs[c] = static_cast<double>(table.counts()[c]) / n;
  }
  return JointPMF::FromProbabilities(table.schema(), std::move(probs));
}

JointPMF SmoothedPmf(const ContingencyTable& table, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument,
                "smoothing parameter alpha must be positive");
  }
  const double denom = static_cast<double>(table.n()) +
                       static_cast<double>(table.counts().size()) * alpha;
  std::vector<double> probs(table.counts().size());
  for (std::size_t c = 0; c < probs.size(); ++c) {
    probs[c] = (static_cast<double>(table.counts()[c]) + alpha) / denom;
  }
  return JointPMF::FromProbabilities(table.schema(), std::move(probs));
}

JointPMF MergeAttributes(const JointPMF& pmf, const Partition& q) {
  const AttributeSchema& schema = pmf.schema();
  if (q.num_attributes() != schema.num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "partition over " + std::to_string(q.num_attributes()) +
                    " attributes, schema has " +
                    std::to_string(schema.num_attributes()));
  }
  std::vector<Variable> merged;
  std::vector<BlockProjection> projections;
  for (const Block& t : q.blocks()) {
    projections.emplace_back(schema, t);
    merged.push_back(Flatten(projections.back().block_schema().attributes()));
  }
  AttributeSchema out_schema =
      AttributeSchema::FromVariables(std::move(merged), schema.label());
  const std::size_t labels = schema.label_card();
  std::vector<double> probs(pmf.probs().size());
  for (std::size_t g = 0; g < schema.num_groups(); ++g) {
    std::size_t ng = 0;
    for (std::size_t b = 0; b < projections.size(); ++b) {
      ng = ng * projections[b].num_block_groups() + projections[b](g);
    }
    for (std::size_t y = 0; y < labels; ++y) {
      probs[ng * labels + y] = pmf.probs()[g * labels + y];
    }
  }
  return JointPMF::FromProbabilities(std::move(out_schema), std::move(probs));
}

JointPMF MarginalPmf(const JointPMF& pmf, const Block& block) {
  BlockProjection proj(pmf.schema(), block);
  const std::size_t labels = pmf.schema().label_card();
  std::vector<CompensatedSum> sums(proj.block_schema().num_cells());
  for (std::size_t g = 0; g < pmf.schema().num_groups(); ++g) {
    for (std::size_t y = 0; y < labels; ++y) {
      sums[proj(g) * labels + y].Add(pmf.probs()[g * labels + y]);
    }
  }
  std::vector<double> probs(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) probs[c] = sums[c].Value();
  return JointPMF::FromProbabilities(proj.block_schema(), std::move(probs));
}

ContingencyTable MarginalCounts(const ContingencyTable& table,
                                const Block& block) {
  BlockProjection proj(table.schema(), block);
  return ContingencyTable::FromCounts(proj.block_schema(),
                                      proj.Project(table.counts()));
}

}  // namespace ifair
