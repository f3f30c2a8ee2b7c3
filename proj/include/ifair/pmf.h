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

#ifndef IFAIR_PMF_H_
#define IFAIR_PMF_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ifair/partition.h"
#include "ifair/schema.h"

namespace ifair {

// Counts N_{a,y} over every cell of a schema.
class ContingencyTable {
 public:
  static ContingencyTable Zeros(AttributeSchema schema);
  static ContingencyTable FromCounts(AttributeSchema schema,
                                     std::vector<std::uint64_t> counts);

  const AttributeSchema& schema() const { return schema_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t count(std::size_t group, std::size_t y) const {
    return counts_[group * schema_.label_card() + y];
  }
  std::uint64_t n() const { return n_; }

 private:
  ContingencyTable(AttributeSchema schema, std::vector<std::uint64_t> counts);

  AttributeSchema schema_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

// Joint probability mass function of (A, Yhat).
class JointPMF {
 public:
  // Entries must be non-negative and sum to one within 1e-12.
  static JointPMF FromProbabilities(AttributeSchema schema,
                                    std::vector<double> probs);
  // Rescales non-negative weights with a positive total.
  static JointPMF Normalized(AttributeSchema schema,
                             std::vector<double> weights);

  const AttributeSchema& schema() const { return schema_; }
  std::span<const double> probs() const { return probs_; }
  double prob(std::size_t group, std::size_t y) const {
    return probs_[group * schema_.label_card() + y];
  }

  // p_A over groups.
  std::vector<double> GroupMarginal() const;
  // p_Yhat over labels.
  std::vector<double> LabelMarginal() const;

 private:
  JointPMF(AttributeSchema schema, std::vector<double> probs)
      : schema_(std::move(schema)), probs_(std::move(probs)) {}

  AttributeSchema schema_;
  std::vector<double> probs_;
};

// Maps every group of a schema onto the flattened value of a block of its
// attributes. The flattened alphabet is the cross product of the block's
// alphabets in mixed radix, lowest original index most significant.
class BlockProjection {
 public:
  BlockProjection(const AttributeSchema& schema, const Block& block);

  // Schema with a single flattened attribute per block member list.
  const AttributeSchema& block_schema() const { return block_schema_; }
  std::size_t num_block_groups() const { return block_schema_.num_groups(); }
  std::size_t operator()(std::size_t group) const { return map_[group]; }

  // Sums a (group, y) cell array into block cells (a_t, y).
  template <typename T>
  std::vector<T> Project(std::span<const T> cells) const {
    const std::size_t labels = block_schema_.label_card();
    std::vector<T> out(block_schema_.num_cells(), T{});
    for (std::size_t g = 0; g < map_.size(); ++g) {
      for (std::size_t y = 0; y < labels; ++y) {
        out[map_[g] * labels + y] += cells[g * labels + y];
      }
    }
    return out;
  }

 private:
  AttributeSchema block_schema_;
  std::vector<std::uint32_t> map_;
};

// N_{a,y} / n. Throws kNoData when n == 0.
JointPMF EmpiricalPmf(const ContingencyTable& table);

// (N_{a,y} + alpha) / (n + |A||Y| alpha).
JointPMF SmoothedPmf(const ContingencyTable& table, double alpha);

// Re-indexes the pmf so each block of q becomes one attribute whose alphabet
// is the cross product of the block's alphabets.
JointPMF MergeAttributes(const JointPMF& pmf, const Partition& q);

// Distribution of (A_block, Yhat); block is sorted on return schema.
JointPMF MarginalPmf(const JointPMF& pmf, const Block& block);
ContingencyTable MarginalCounts(const ContingencyTable& table,
                                const Block& block);

}  // namespace ifair

#endif  // IFAIR_PMF_H_
