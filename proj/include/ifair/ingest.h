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

#ifndef IFAIR_INGEST_H_
#define IFAIR_INGEST_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ifair/pmf.h"
#include "ifair/schema.h"

namespace ifair {

// One observation: attribute values in schema order plus the prediction.
struct Record {
  std::vector<std::string> attrs;
  std::string label;
};

// Counts records per cell. Values outside the schema's alphabets are rejected
// with an error naming the column and the value.
ContingencyTable IngestRecords(std::span<const Record> records,
                               const AttributeSchema& schema);

// Header plus rows of a comma-separated file; quoted fields are supported.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable ParseCsv(const std::string& text);
CsvTable ReadCsvFile(const std::filesystem::path& path);

// Schema whose alphabets are the distinct values seen in each selected
// column, sorted lexicographically.
AttributeSchema InferSchema(const CsvTable& csv,
                            const std::vector<std::string>& attr_columns,
                            const std::string& pred_column);

// Selects the named columns of every row as records.
std::vector<Record> ExtractRecords(const CsvTable& csv,
                                   const std::vector<std::string>& attr_columns,
                                   const std::string& pred_column);

// {"attributes":[{"name":..,"values":[..]},..],"label":{"name":..,"values":[..]}}
AttributeSchema SchemaFromJson(const nlohmann::json& j);
nlohmann::json SchemaToJson(const AttributeSchema& schema);

}  // namespace ifair

#endif  // IFAIR_INGEST_H_
