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

// JSON and CSV rendering shared by the command-line tools. Numbers are
// rounded to 10 significant digits so that reports are stable across
// platforms; infinite scores are written as null with a companion flag.

#ifndef IFAIR_REPORT_H_
#define IFAIR_REPORT_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ifair/info_measures.h"
#include "ifair/metrics.h"
#include "ifair/numeric.h"
#include "ifair/partition_search.h"
#include "ifair/pmf.h"
#include "ifair/tail_bounds.h"

namespace ifair {

using Json = nlohmann::ordered_json;

// Round-trips x through "%.10g".
double Sig10(double x);
std::string FormatNumber(double x);

// Sets j[key] (null when infinite) and j[key + "_infinite"].
void PutScore(Json& j, const std::string& key, const Score& s);

// 16 hex digits of FNV-1a-64.
std::string Fnv1aHex(std::string_view bytes);

Json ToJson(const MomentSummary& m);
Json ToJson(const UnfairnessReport& r, const AttributeSchema& schema);
Json ToJson(const BoundReport& r);
Json ToJson(const GreedyResult& g);
Json ToJson(const UDistribution& u);

// {"schema": {...}, "probs": [...]} with probabilities in cell order.
Json PmfToJson(const JointPMF& pmf);
JointPMF PmfFromJson(const nlohmann::json& j);

}  // namespace ifair

#endif  // IFAIR_REPORT_H_
