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

#ifndef IFAIR_SCHEMA_H_
#define IFAIR_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ifair {

// A named categorical variable with an ordered alphabet.
struct Variable {
  std::string name;
  std::vector<std::string> values;

  std::size_t cardinality() const { return values.size(); }
  std::optional<std::size_t> IndexOf(const std::string& value) const;

  friend bool operator==(const Variable&, const Variable&) = default;
};

// Protected attributes A_1..A_d plus the prediction alphabet.
//
// Cells (a, y) are stored densely in mixed radix: attribute 0 is the most
// significant digit and the label varies fastest, so
//   cell = group * label_cardinality + y.
class AttributeSchema {
 public:
  // Attribute values default to "0", "1", ...; the label is named "yhat".
  static AttributeSchema Create(std::vector<std::string> attr_names,
                                std::vector<std::size_t> attr_cards,
                                std::size_t label_card);
  static AttributeSchema FromVariables(std::vector<Variable> attributes,
                                       Variable label);

  int num_attributes() const { return static_cast<int>(attributes_.size()); }
  const Variable& attribute(int k) const { return attributes_[k]; }
  const std::vector<Variable>& attributes() const { return attributes_; }
  const Variable& label() const { return label_; }

  std::size_t attr_card(int k) const { return attributes_[k].cardinality(); }
  std::size_t label_card() const { return label_.cardinality(); }
  // |A|, the number of intersectional groups.
  std::size_t num_groups() const { return num_groups_; }
  // |A| * |Y|.
  std::size_t num_cells() const { return num_groups_ * label_card(); }

  std::size_t EncodeGroup(std::span<const std::size_t> values) const;
  std::vector<std::size_t> DecodeGroup(std::size_t group) const;
  // Human-readable "name=value, name=value" description of a group.
  std::string DescribeGroup(std::size_t group) const;

  friend bool operator==(const AttributeSchema& a, const AttributeSchema& b) {
    return a.attributes_ == b.attributes_ && a.label_ == b.label_;
  }

 private:
  AttributeSchema(std::vector<Variable> attributes, Variable label);

  std::vector<Variable> attributes_;
  Variable label_;
  std::size_t num_groups_ = 1;
};

}  // namespace ifair

#endif  // IFAIR_SCHEMA_H_
