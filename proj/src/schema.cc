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

#include "ifair/schema.h"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "ifair/error.h"

namespace ifair {
namespace {

std::vector<std::string> DefaultValues(std::size_t card) {
  std::vector<std::string> values;
  values.reserve(card);
  for (std::size_t i = 0; i < card; ++i) values.push_back(std::to_string(i));
  return values;
}

void CheckVariable(const Variable& v, const char* what) {
  if (v.name.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(what) + " with an empty name");
  }
  std::set<std::string> seen;
  for (const auto& value : v.values) {
    if (!seen.insert(value).second) {
      throw Error(ErrorCode::kInvalidInput, std::string(what) + " '" +
                                                v.name +
                                                "' lists value '" + value +
                                                "' twice");
    }
  }
}

}  // namespace

std::optional<std::size_t> Variable::IndexOf(const std::string& value) const {
  auto it = std::find(values.begin(), values.end(), value);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

AttributeSchema AttributeSchema::Create(std::vector<std::string> attr_names,
                                        std::vector<std::size_t> attr_cards,
                                        std::size_t label_card) {
  if (attr_names.size() != attr_cards.size()) {
    throw Error(ErrorCode::kStructural,
                "attribute names and cardinalities differ in length");
  }
  std::vector<Variable> attrs;
  attrs.reserve(attr_names.size());
  for (std::size_t k = 0; k < attr_names.size(); ++k) {
    attrs.push_back({std::move(attr_names[k]), DefaultValues(attr_cards[k])});
  }
  return FromVariables(std::move(attrs), {"yhat", DefaultValues(label_card)});
}

AttributeSchema AttributeSchema::FromVariables(std::vector<Variable> attributes,
                                               Variable label) {
  return AttributeSchema(std::move(attributes), std::move(label));
}

AttributeSchema::AttributeSchema(std::vector<Variable> attributes,
                                 Variable label)
    : attributes_(std::move(attributes)), label_(std::move(label)) {
  if (attributes_.empty()) {
    throw Error(ErrorCode::kStructural, "schema needs at least one attribute");
  }
  if (label_.cardinality() < 2) {
    throw Error(ErrorCode::kStructural,
                "label alphabet needs at least two values");
  }
  CheckVariable(label_, "label");
  std::set<std::string> names;
  constexpr std::size_t kMax = std::numeric_limits<std::uint32_t>::max();
  std::size_t groups = 1;
  for (const auto& a : attributes_) {
    CheckVariable(a, "attribute");
    if (!names.insert(a.name).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate attribute name '" + a.name + "'");
    }
    if (a.cardinality() < 1) {
      throw Error(ErrorCode::kStructural,
                  "attribute '" + a.name + "' has an empty alphabet");
    }
    if (groups > kMax / a.cardinality()) {
      throw Error(ErrorCode::kStructural,
                  "number of groups overflows the index type");
    }
    groups *= a.cardinality();
  }
  if (groups > kMax / label_.cardinality()) {
    throw Error(ErrorCode::kStructural,
                "number of cells overflows the index type");
  }
  num_groups_ = groups;
}

std::size_t AttributeSchema::EncodeGroup(
    std::span<const std::size_t> values) const {
  if (values.size() != attributes_.size()) {
    throw Error(ErrorCode::kStructural, "group arity does not match schema");
  }
  std::size_t g = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= attributes_[k].cardinality()) {
      throw Error(ErrorCode::kInvalidInput,
                  "value index out of range for attribute '" +
                      attributes_[k].name + "'");
    }
    g = g * attributes_[k].cardinality() + values[k];
  }
  return g;
}

std::vector<std::size_t> AttributeSchema::DecodeGroup(std::size_t group) const {
  std::vector<std::size_t> values(attributes_.size());
  for (std::size_t k = attributes_.size(); k-- > 0;) {
    const std::size_t card = attributes_[k].cardinality();
    values[k] = group % card;
    group /= card;
  }
  return values;
}

std::string AttributeSchema::DescribeGroup(std::size_t group) const {
  const auto values = DecodeGroup(group);
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ", ";
    out += attributes_[k].name + "=" + attributes_[k].values[values[k]];
  }
  return out;
}

}  // namespace ifair
