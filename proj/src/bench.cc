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

#include "ifair/bench.h"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "ifair/error.h"
#include "ifair/info_measures.h"
#include "ifair/metrics.h"

namespace ifair {
namespace {

double ScoreValue(const Score& s, const char* what) {
  if (s.infinite) {
    throw Error(ErrorCode::kUndefinedConditional,
                std::string(what) + " is infinite");
  }
  return s.value;
}

double Truth(const JointPMF& truth, const EstimatorSpec& e) {
  const Partition singletons =
      Partition::Singletons(truth.schema().num_attributes());
  switch (e.kind) {
    case EstimatorSpec::Kind::kBayes:
    case EstimatorSpec::Kind::kPartitioned:
      return ScoreValue(IntersectionalUnfairness(truth), "u*");
    case EstimatorSpec::Kind::kUInd:
      return ScoreValue(IndependentApprox(truth, singletons), "u_ind");
    case EstimatorSpec::Kind::kSStar:
      return ComputeMoments(truth, singletons).s_star;
    case EstimatorSpec::Kind::kSStarQStar:
      return 0.0;
  }
  return 0.0;
}

// Fills estimate (and q_star); throws when the estimator is undefined.
void Estimate(const JointPMF& truth, const ContingencyTable& table,
              const EstimatorSpec& e, RepRecord& rec) {
  const Partition singletons =
      Partition::Singletons(truth.schema().num_attributes());
  switch (e.kind) {
    case EstimatorSpec::Kind::kBayes:
      rec.estimate = ScoreValue(
          IntersectionalUnfairness(SmoothedPmf(table, e.alpha)), "estimate");
      return;
    case EstimatorSpec::Kind::kUInd:
      rec.estimate = ScoreValue(
          IndependentApprox(EmpiricalPmf(table), singletons), "estimate");
      return;
    case EstimatorSpec::Kind::kSStar:
      rec.estimate = ComputeMoments(EmpiricalPmf(table), singletons).s_star;
      return;
    case EstimatorSpec::Kind::kPartitioned: {
      const GreedyResult g = GreedyPartition(table, e.tau);
      rec.q_star = g.q_star.ToString();
      rec.estimate = ScoreValue(
          IndependentApprox(EmpiricalPmf(table), g.q_star), "estimate");
      return;
    }
    case EstimatorSpec::Kind::kSStarQStar: {
      const GreedyResult g = GreedyPartition(table, e.tau);
      rec.q_star = g.q_star.ToString();
      rec.estimate = ComputeMoments(truth, g.q_star).s_star;
      return;
    }
  }
}

}  // namespace

std::string EstimatorSpec::Name() const {
  switch (kind) {
    case Kind::kBayes:
      return "bayes(" + FormatNumber(alpha) + ")";
    case Kind::kUInd:
      return "u_ind";
    case Kind::kSStar:
      return "s_star";
    case Kind::kPartitioned:
      return "partitioned(" + std::to_string(tau) + ")";
    case Kind::kSStarQStar:
      return "s_star_qstar(" + std::to_string(tau) + ")";
  }
  return "";
}

EstimatorSpec EstimatorSpec::Parse(std::string_view text) {
  static const std::regex kCall(R"(([a-z_]+)(?:\(([^)]*)\))?)");
  const std::string s(text);
  std::smatch m;
  EstimatorSpec e;
  if (std::regex_match(s, m, kCall)) {
    const std::string name = m[1].str();
    const std::string arg = m[2].str();
    const bool has_arg = m[2].matched;
    try {
      if (name == "u_ind" && !has_arg) {
        e.kind = Kind::kUInd;
        return e;
      }
      if (name == "s_star" && !has_arg) {
        e.kind = Kind::kSStar;
        return e;
      }
      if (name == "bayes") {
        e.kind = Kind::kBayes;
        if (has_arg) e.alpha = std::stod(arg);
        if (e.alpha > 0.0) return e;
      }
      if (name == "partitioned" || name == "s_star_qstar") {
        e.kind = name == "partitioned" ? Kind::kPartitioned : Kind::kSStarQStar;
        if (has_arg) e.tau = std::stoull(arg);
        return e;
      }
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown estimator '" + s + "'");
}

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ConvergenceResult ConvergenceExperiment(
    const JointPMF& truth, const std::vector<EstimatorSpec>& estimators,
    const std::vector<std::uint64_t>& n_grid, int reps, const RngSpec& rng) {
  if (reps < 1) throw Error(ErrorCode::kInvalidArgument, "reps must be >= 1");
  if (n_grid.empty() || !std::is_sorted(n_grid.begin(), n_grid.end()) ||
      n_grid.front() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "n grid must be ascending positive sample sizes");
  }
  ConvergenceResult result;
  for (const EstimatorSpec& e : estimators) {
    ConvergenceCurve c;
    c.estimator = e.Name();
    c.truth = Truth(truth, e);
    c.absolute = c.truth == 0.0;
    c.n_grid = n_grid;
    c.reps = reps;
    result.curves.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    std::vector<std::vector<double>> errors(estimators.size());
    std::vector<std::vector<double>> estimates(estimators.size());
    for (int r = 0; r < reps; ++r) {
      const ContingencyTable table = SampleTable(
          truth, n_grid[i], rng.Child("table", n_grid[i]).Child("rep", r));
      for (std::size_t k = 0; k < estimators.size(); ++k) {
        RepRecord rec;
        rec.estimator = result.curves[k].estimator;
        rec.n = n_grid[i];
        rec.rep = r;
        try {
          Estimate(truth, table, estimators[k], rec);
          rec.ok = true;
        } catch (const Error& err) {
          rec.failure = err.what();
        }
        if (rec.ok) {
          const ConvergenceCurve& c = result.curves[k];
          const double diff = rec.estimate - c.truth;
          errors[k].push_back(c.absolute ? diff * diff
                                         : diff * diff / (c.truth * c.truth));
          estimates[k].push_back(rec.estimate);
        }
        result.records.push_back(std::move(rec));
      }
    }
    for (std::size_t k = 0; k < estimators.size(); ++k) {
      ConvergenceCurve& c = result.curves[k];
      CompensatedSum err;
      CompensatedSum est;
      for (double x : errors[k]) err.Add(x);
      for (double x : estimates[k]) est.Add(x);
      const double ok = static_cast<double>(errors[k].size());
      c.rel_l2.push_back(ok > 0 ? err.Value() / ok : std::nan(""));
      c.mean_estimate.push_back(ok > 0 ? est.Value() / ok : std::nan(""));
      c.decile_low.push_back(Percentile(errors[k], 0.1));
      c.decile_high.push_back(Percentile(errors[k], 0.9));
      c.median_estimate.push_back(Percentile(estimates[k], 0.5));
      c.failure_fraction.push_back(1.0 - ok / reps);
    }
  }
  return result;
}

BoundComparison CompareBounds(const JointPMF& pmf, double delta,
                              std::uint64_t tau, std::uint64_t selection_n,
                              const RngSpec& rng, bool chernoff,
                              const SolverConfig& solver) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  BoundComparison b;
  b.delta = delta;
  b.selection_n = selection_n;
  b.u_star = ScoreValue(IntersectionalUnfairness(pmf), "u*");
  b.eps_star = UnfairnessQuantile(pmf, delta);
  b.selection =
      GreedyPartition(SampleTable(pmf, selection_n, rng.Child("selection", 0)),
                      tau);
  const Partition singletons =
      Partition::Singletons(pmf.schema().num_attributes());
  for (const auto& [label, q] :
       {std::pair<std::string, Partition>{"singletons", singletons},
        std::pair<std::string, Partition>{"q_star", b.selection.q_star}}) {
    BoundRow row{label, ChebyshevBounds(pmf, q, delta)};
    if (chernoff) AddChernoffBound(pmf, row.bounds, solver);
    b.rows.push_back(std::move(row));
  }
  return b;
}

std::string CurvesCsv(const std::vector<ConvergenceCurve>& curves) {
  std::ostringstream out;
  out << "estimator,n,statistic,value\n";
  for (const ConvergenceCurve& c : curves) {
    const std::string err = c.absolute ? "abs_l2" : "rel_l2";
    for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
      const std::pair<std::string, double> stats[] = {
          {err, c.rel_l2[i]},
          {"decile_10", c.decile_low[i]},
          {"decile_90", c.decile_high[i]},
          {"mean_estimate", c.mean_estimate[i]},
          {"median_estimate", c.median_estimate[i]},
          {"failure_fraction", c.failure_fraction[i]},
      };
      for (const auto& [name, value] : stats) {
        out << '"' << c.estimator << "\"," << c.n_grid[i] << ',' << name << ','
            << (std::isnan(value) ? "" : FormatNumber(value)) << '\n';
      }
    }
  }
  return out.str();
}

Json ToJson(const ConvergenceCurve& c) {
  auto numbers = [](const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(std::isnan(x) ? Json(nullptr) : Json(Sig10(x)));
    return a;
  };
  Json j;
  j["estimator"] = c.estimator;
  j["truth"] = Sig10(c.truth);
  j["absolute"] = c.absolute;
  j["n_grid"] = c.n_grid;
  j["reps"] = c.reps;
  j[c.absolute ? "abs_l2" : "rel_l2"] = numbers(c.rel_l2);
  j["decile_10"] = numbers(c.decile_low);
  j["decile_90"] = numbers(c.decile_high);
  j["mean_estimate"] = numbers(c.mean_estimate);
  j["median_estimate"] = numbers(c.median_estimate);
  j["failure_fraction"] = numbers(c.failure_fraction);
  return j;
}

Json ToJson(const BoundComparison& b) {
  Json j;
  j["delta"] = Sig10(b.delta);
  j["u_star"] = Sig10(b.u_star);
  j["eps_star"] = Sig10(b.eps_star);
  j["selection_n"] = b.selection_n;
  j["selection"] = ToJson(b.selection);
  Json rows = Json::array();
  for (const BoundRow& r : b.rows) {
    Json row = ToJson(r.bounds);
    row["row"] = r.label;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace ifair
