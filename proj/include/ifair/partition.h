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

#ifndef IFAIR_PARTITION_H_
#define IFAIR_PARTITION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ifair {

using Block = std::vector<int>;

// A set partition of the attribute indices {0..d-1}. Always canonical: every
// block is sorted and blocks are ordered by their smallest element.
class Partition {
 public:
  static Partition Singletons(int d);
  static Partition Trivial(int d);
  // Validates coverage and disjointness, then canonicalizes.
  static Partition FromBlocks(std::vector<Block> blocks, int d);
  // Parses "0,1|2" (blocks separated by '|').
  static Partition Parse(std::string_view text, int d);

  int num_attributes() const { return d_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t i) const { return blocks_[i]; }

  // Partition with blocks i and j replaced by their union.
  Partition Merge(std::size_t i, std::size_t j) const;

  // "{{0,1},{2}}"
  std::string ToString() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  Partition(std::vector<Block> blocks, int d)
      : blocks_(std::move(blocks)), d_(d) {}

  std::vector<Block> blocks_;
  int d_ = 0;
};

// True iff every block of q is contained in some block of rho (q is finer).
bool Refines(const Partition& q, const Partition& rho);

// Bit set of a block, used as a hash key. Requires d <= 64.
std::uint64_t BlockMask(const Block& block);

}  // namespace ifair

#endif  // IFAIR_PARTITION_H_
