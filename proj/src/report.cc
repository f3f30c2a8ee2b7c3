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

#include "ifair/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ifair/error.h"
#include "ifair/ingest.h"

namespace ifair {
namespace {

std::string_view PairingName(TailPairing p) {
  return p == TailPairing::kConditionalUpper ? "conditional-upper"
                                             : "conditional-lower";
}

Json BlockJson(const Block& b) {
  Json j = Json::array();
  for (int k : b) j.push_back(k);
  return j;
}

}  // namespace

double Sig10(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(FormatNumber(x).c_str(), nullptr);
}

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x == 0.0 ? 0.0 : x);
  return buf;
}

void PutScore(Json& j, const std::string& key, const Score& s) {
  j[key] = s.infinite ? Json(nullptr) : Json(Sig10(s.value));
  j[key + "_infinite"] = s.infinite;
}

std::string Fnv1aHex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json ToJson(const MomentSummary& m) {
  Json j;
  j["mu"] = Sig10(m.mu);
  j["sigma"] = Sig10(m.sigma);
  j["mu_y"] = Sig10(m.mu_y);
  j["sigma_y"] = Sig10(m.sigma_y);
  j["s_star"] = Sig10(m.s_star);
  j["gamma"] = Sig10(m.gamma);
  j["gamma_mi"] = Sig10(m.gamma_mi);
  return j;
}

Json ToJson(const UnfairnessReport& r, const AttributeSchema& schema) {
  Json j;
  j["variant"] = VariantName(r.variant);
  PutScore(j, "ufi", r.ufi);
  Json marginals = Json::array();
  for (std::size_t k = 0; k < r.marginals.size(); ++k) {
    Json m;
    m["attribute"] = schema.attribute(static_cast<int>(k)).name;
    PutScore(m, "value", r.marginals[k]);
    marginals.push_back(std::move(m));
  }
  j["marginals"] = std::move(marginals);
  PutScore(j, "ufm", r.ufm);
  PutScore(j, "u_ind", r.u_ind);
  j["u_ind_is_surrogate"] = r.u_ind_is_surrogate;
  j["expected"] = Sig10(r.expected);
  j["weighted"] = r.weighted ? Json(Sig10(*r.weighted)) : Json(nullptr);
  return j;
}

Json ToJson(const BoundReport& r) {
  Json j;
  j["variant"] = VariantName(r.variant);
  j["delta"] = Sig10(r.delta);
  j["partition"] = r.q.ToString();
  j["moments"] = ToJson(r.moments);
  PutScore(j, "u_ind", r.u_ind);
  PutScore(j, "marginal_term", r.marginal_term);
  PutScore(j, "eps1", r.eps1);
  if (r.eps1_prime) {
    PutScore(j, "eps1_prime", *r.eps1_prime);
  } else {
    j["eps1_prime"] = nullptr;
  }
  if (r.eps2) {
    PutScore(j, "eps2", *r.eps2);
  } else {
    j["eps2"] = nullptr;
  }
  if (r.solver) {
    const SolverDiagnostics& s = *r.solver;
    Json d;
    d["split_points"] = s.split_points;
    d["t_grid_points"] = s.t_grid_points;
    d["t_min"] = Sig10(s.t_min);
    d["t_max"] = Sig10(s.t_max);
    d["refine_tol"] = Sig10(s.refine_tol);
    d["pairing"] = PairingName(s.pairing);
    d["delta_upper"] = Sig10(s.delta_upper);
    d["lambda_upper"] = Sig10(s.lambda_upper);
    d["lambda_lower"] = Sig10(s.lambda_lower);
    d["slack"] = Sig10(s.slack);
    j["solver"] = std::move(d);
  }
  return j;
}

Json ToJson(const GreedyResult& g) {
  Json j;
  j["q_star"] = g.q_star.ToString();
  Json trace = Json::array();
  for (const MergeStep& s : g.trace) {
    Json t;
    t["merged"] = Json::array({BlockJson(s.first), BlockJson(s.second)});
    t["s_star"] = Sig10(s.s_star);
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  j["final_s_star"] = Sig10(g.final_s_star);
  return j;
}

Json ToJson(const UDistribution& u) {
  Json j;
  Json support = Json::array();
  Json probs = Json::array();
  for (std::size_t i = 0; i < u.support.size(); ++i) {
    support.push_back(Sig10(u.support[i]));
    probs.push_back(Sig10(u.probs[i]));
  }
  j["support"] = std::move(support);
  j["probs"] = std::move(probs);
  return j;
}

Json PmfToJson(const JointPMF& pmf) {
  Json j;
  j["schema"] = Json(SchemaToJson(pmf.schema()));
  Json probs = Json::array();
  // Full precision: pmf files are inputs, not reports.
  for (double p : pmf.probs()) probs.push_back(p);
  j["probs"] = std::move(probs);
  return j;
}

JointPMF PmfFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema") || !j.contains("probs") ||
      !j["probs"].is_array()) {
    throw Error(ErrorCode::kInvalidInput,
                "pmf JSON needs \"schema\" and \"probs\" fields");
  }
  AttributeSchema schema = SchemaFromJson(j["schema"]);
  std::vector<double> probs;
  for (const auto& p : j["probs"]) {
    if (!p.is_number()) {
      throw Error(ErrorCode::kInvalidInput, "pmf probabilities must be numbers");
    }
    probs.push_back(p.get<double>());
  }
  if (probs.size() != schema.num_cells()) {
    throw Error(ErrorCode::kInvalidInput,
                "pmf has " + std::to_string(probs.size()) +
                    " probabilities but the schema has " +
                    std::to_string(schema.num_cells()) + " cells");
  }
  return JointPMF::FromProbabilities(std::move(schema), std::move(probs));
}

}  // namespace ifair
