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

#include "ifair/ingest.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/tokenizer.hpp>

#include "ifair/error.h"

namespace ifair {
namespace {

std::size_t ColumnIndex(const CsvTable& csv, const std::string& name) {
  auto it = std::find(csv.header.begin(), csv.header.end(), name);
  if (it == csv.header.end()) {
    throw Error(ErrorCode::kInvalidInput,
                "column '" + name + "' not found in CSV header");
  }
  return static_cast<std::size_t>(it - csv.header.begin());
}

std::vector<std::string> SplitLine(const std::string& line) {
  using Separator = boost::escaped_list_separator<char>;
  boost::tokenizer<Separator> tokens(line, Separator('\\', ',', '"'));
  return {tokens.begin(), tokens.end()};
}

Variable VariableFromJson(const nlohmann::json& j, const char* what) {
  if (!j.is_object() || !j.contains("name") || !j.contains("values")) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("schema ") + what + " needs 'name' and 'values'");
  }
  Variable v;
  v.name = j.at("name").get<std::string>();
  for (const auto& value : j.at("values")) {
    v.values.push_back(value.is_string() ? value.get<std::string>()
                                         : value.dump());
  }
  return v;
}

}  // namespace

ContingencyTable IngestRecords(std::span<const Record> records,
                               const AttributeSchema& schema) {
  std::vector<std::uint64_t> counts(schema.num_cells(), 0);
  std::vector<std::size_t> values(schema.num_attributes());
  for (const Record& r : records) {
    if (r.attrs.size() != values.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "record has " + std::to_string(r.attrs.size()) +
                      " attribute values, schema has " +
                      std::to_string(values.size()));
    }
    for (int k = 0; k < schema.num_attributes(); ++k) {
      auto index = schema.attribute(k).IndexOf(r.attrs[k]);
      if (!index) {
        throw Error(ErrorCode::kInvalidInput,
                    "value '" + r.attrs[k] + "' of column '" +
                        schema.attribute(k).name +
                        "' is not in the declared alphabet");
      }
      values[k] = *index;
    }
    auto y = schema.label().IndexOf(r.label);
    if (!y) {
      throw Error(ErrorCode::kInvalidInput,
                  "value '" + r.label + "' of column '" + schema.label().name +
                      "' is not in the declared alphabet");
    }
    ++counts[schema.EncodeGroup(values) * schema.label_card() + *y];
  }
  return ContingencyTable::FromCounts(schema, std::move(counts));
}

CsvTable ParseCsv(const std::string& text) {
  CsvTable csv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = SplitLine(line);
    } catch (const boost::escaped_list_error& e) {
      throw Error(ErrorCode::kInvalidInput,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (csv.header.empty()) {
      csv.header = std::move(fields);
      continue;
    }
    if (fields.size() != csv.header.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(csv.header.size()));
    }
    csv.rows.push_back(std::move(fields));
  }
  if (csv.header.empty()) throw Error(ErrorCode::kNoData, "no data");
  return csv;
}

CsvTable ReadCsvFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidInput,
                "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str());
}

std::vector<Record> ExtractRecords(const CsvTable& csv,
                                   const std::vector<std::string>& attr_columns,
                                   const std::string& pred_column) {
  std::vector<std::size_t> cols;
  for (const auto& name : attr_columns) cols.push_back(ColumnIndex(csv, name));
  const std::size_t pred = ColumnIndex(csv, pred_column);
  std::vector<Record> records;
  records.reserve(csv.rows.size());
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    Record rec;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (row[cols[i]].empty()) {
        throw Error(ErrorCode::kInvalidInput,
                    "empty value in column '" + attr_columns[i] +
                        "' at data row " + std::to_string(r + 1));
      }
      rec.attrs.push_back(row[cols[i]]);
    }
    if (row[pred].empty()) {
      throw Error(ErrorCode::kInvalidInput,
                  "empty value in column '" + pred_column + "' at data row " +
                      std::to_string(r + 1));
    }
    rec.label = row[pred];
    records.push_back(std::move(rec));
  }
  return records;
}

AttributeSchema InferSchema(const CsvTable& csv,
                            const std::vector<std::string>& attr_columns,
                            const std::string& pred_column) {
  if (csv.rows.empty()) throw Error(ErrorCode::kNoData, "no data");
  auto distinct = [&](const std::string& name) {
    const std::size_t col = ColumnIndex(csv, name);
    std::set<std::string> seen;
    for (const auto& row : csv.rows) seen.insert(row[col]);
    return Variable{name, {seen.begin(), seen.end()}};
  };
  std::vector<Variable> attrs;
  for (const auto& name : attr_columns) attrs.push_back(distinct(name));
  Variable label = distinct(pred_column);
  if (label.cardinality() < 2) {
    throw Error(ErrorCode::kInvalidInput,
                "prediction column '" + pred_column +
                    "' has a single observed value; declare its alphabet in "
                    "a schema file");
  }
  return AttributeSchema::FromVariables(std::move(attrs), std::move(label));
}

AttributeSchema SchemaFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("attributes") || !j.contains("label")) {
    throw Error(ErrorCode::kInvalidInput,
                "schema needs 'attributes' and 'label'");
  }
  std::vector<Variable> attrs;
  for (const auto& a : j.at("attributes")) {
    attrs.push_back(VariableFromJson(a, "attribute"));
  }
  return AttributeSchema::FromVariables(std::move(attrs),
                                        VariableFromJson(j.at("label"), "label"));
}

nlohmann::json SchemaToJson(const AttributeSchema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& a : schema.attributes()) {
    attrs.push_back({{"name", a.name}, {"values", a.values}});
  }
  return {{"attributes", attrs},
          {"label",
           {{"name", schema.label().name}, {"values", schema.label().values}}}};
}

}  // namespace ifair
