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

#include "ifair/partition.h"

#include <algorithm>
#include <string>

#include "ifair/error.h"

namespace ifair {

Partition Partition::Singletons(int d) {
  std::vector<Block> blocks;
  for (int k = 0; k < d; ++k) blocks.push_back({k});
  return FromBlocks(std::move(blocks), d);
}

Partition Partition::Trivial(int d) {
  Block all;
  for (int k = 0; k < d; ++k) all.push_back(k);
  return FromBlocks({all}, d);
}

Partition Partition::FromBlocks(std::vector<Block> blocks, int d) {
  if (d < 1) throw Error(ErrorCode::kStructural, "partition of an empty set");
  std::vector<int> owner(d, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      throw Error(ErrorCode::kStructural, "partition has an empty block");
    }
    for (int k : blocks[b]) {
      if (k < 0 || k >= d) {
        throw Error(ErrorCode::kStructural,
                    "attribute index " + std::to_string(k) +
                        " outside 0.." + std::to_string(d - 1));
      }
      if (owner[k] != -1) {
        throw Error(ErrorCode::kStructural,
                    "attribute index " + std::to_string(k) +
                        " appears in two blocks");
      }
      owner[k] = static_cast<int>(b);
    }
    std::sort(blocks[b].begin(), blocks[b].end());
  }
  for (int k = 0; k < d; ++k) {
    if (owner[k] == -1) {
      throw Error(ErrorCode::kStructural,
                  "attribute index " + std::to_string(k) + " not covered");
    }
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  return Partition(std::move(blocks), d);
}

Partition Partition::Parse(std::string_view text, int d) {
  std::vector<Block> blocks;
  Block current;
  std::string number;
  auto flush_number = [&] {
    if (number.empty()) {
      throw Error(ErrorCode::kInvalidInput,
                  "malformed partition '" + std::string(text) + "'");
    }
    current.push_back(std::stoi(number));
    number.clear();
  };
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      number += c;
    } else if (c == ',') {
      flush_number();
    } else if (c == '|') {
      flush_number();
      blocks.push_back(std::move(current));
      current.clear();
    } else if (c != ' ') {
      throw Error(ErrorCode::kInvalidInput,
                  "malformed partition '" + std::string(text) + "'");
    }
  }
  flush_number();
  blocks.push_back(std::move(current));
  return FromBlocks(std::move(blocks), d);
}

Partition Partition::Merge(std::size_t i, std::size_t j) const {
  if (i == j || i >= blocks_.size() || j >= blocks_.size()) {
    throw Error(ErrorCode::kStructural, "invalid block pair to merge");
  }
  std::vector<Block> blocks;
  Block merged = blocks_[i];
  merged.insert(merged.end(), blocks_[j].begin(), blocks_[j].end());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b != i && b != j) blocks.push_back(blocks_[b]);
  }
  blocks.push_back(std::move(merged));
  return FromBlocks(std::move(blocks), d_);
}

std::string Partition::ToString() const {
  std::string out = "{";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b > 0) out += ",";
    out += "{";
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(blocks_[b][i]);
    }
    out += "}";
  }
  return out + "}";
}

bool Refines(const Partition& q, const Partition& rho) {
  if (q.num_attributes() != rho.num_attributes()) {
    throw Error(ErrorCode::kStructural,
                "partitions over different attribute counts");
  }
  std::vector<std::size_t> owner(rho.num_attributes());
  for (std::size_t b = 0; b < rho.size(); ++b) {
    for (int k : rho.block(b)) owner[k] = b;
  }
  for (const Block& t : q.blocks()) {
    for (int k : t) {
      if (owner[k] != owner[t.front()]) return false;
    }
  }
  return true;
}

std::uint64_t BlockMask(const Block& block) {
  std::uint64_t mask = 0;
  for (int k : block) {
    if (k < 0 || k >= 64) {
      throw Error(ErrorCode::kStructural, "block index beyond 64 attributes");
    }
    mask |= std::uint64_t{1} << k;
  }
  return mask;
}

}  // namespace ifair
