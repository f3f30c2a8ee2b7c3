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

// Command-line front end. Every subcommand writes its report into --out and
// echoes it on stdout; failures print an error object on stderr and exit
// with 2 (input), 3 (infeasible precondition) or 4 (budget exceeded).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ifair/bench.h"
#include "ifair/error.h"
#include "ifair/info_measures.h"
#include "ifair/ingest.h"
#include "ifair/metrics.h"
#include "ifair/partition_search.h"
#include "ifair/pmf.h"
#include "ifair/report.h"
#include "ifair/synth.h"
#include "ifair/tail_bounds.h"
#include "ifair/version.h"

namespace ifair {
namespace {

namespace fs = std::filesystem;

struct Config {
  double delta = 0.1;
  double alpha = 1.0;
  std::uint64_t tau = kDefaultTau;
  std::string variant = "ratio-log";
  std::optional<std::string> positive_label;
  bool chernoff = false;
  std::uint64_t seed = 0;
  std::size_t cell_budget = kDefaultCellBudget;
  std::string schema_path;
  std::string out_dir = ".";
};

// Inputs shared by several subcommands.
struct Inputs {
  std::string csv;
  std::vector<std::string> attrs;
  std::string pred;
  std::string pmf_path;
  std::string fixture;
  std::string partition;
};

struct SynthOptions {
  std::vector<std::size_t> cards;
  std::size_t label_card = 2;
  double concentration = 1.0;
  std::uint64_t n = 0;
  bool records = false;
};

struct BenchOptions {
  std::vector<std::uint64_t> n_grid = {100, 1000, 10000, 100000};
  int reps = 20;
  std::vector<std::string> estimators = {"bayes(0.1)", "bayes(1)", "bayes(10)",
                                         "u_ind", "s_star", "partitioned(10)"};
  std::uint64_t selection_n = 100000;
  bool compare_bounds = false;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
      return 3;
    case ErrorCode::kBudgetExceeded:
      return 4;
    default:
      return 2;
  }
}

Json ErrorJson(const Error& e) {
  Json j;
  j["code"] = ErrorCodeName(e.code());
  j["message"] = e.what();
  return j;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidInput,
                "cannot write '" + path.string() + "'");
  }
  out << text;
}

Json ConfigJson(const Config& c) {
  Json j;
  j["delta"] = Sig10(c.delta);
  j["alpha"] = Sig10(c.alpha);
  j["tau"] = c.tau;
  j["variant"] = c.variant;
  j["positive_label"] =
      c.positive_label ? Json(*c.positive_label) : Json(nullptr);
  j["chernoff"] = c.chernoff;
  j["seed"] = c.seed;
  j["cell_budget"] = c.cell_budget;
  j["schema"] = c.schema_path.empty() ? Json(nullptr) : Json(c.schema_path);
  return j;
}

Json Envelope(const std::string& command, const Config& c) {
  Json j;
  j["tool"] = "ifair";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = ConfigJson(c);
  return j;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

void Emit(const Config& c, const std::string& file, const Json& report) {
  fs::create_directories(c.out_dir);
  const std::string text = Dump(report);
  WriteFile(fs::path(c.out_dir) / file, text);
  std::cout << text;
}

std::optional<std::size_t> PositiveIndex(const Config& c,
                                         const AttributeSchema& schema) {
  if (!c.positive_label) return std::nullopt;
  auto idx = schema.label().IndexOf(*c.positive_label);
  if (!idx) {
    throw Error(ErrorCode::kInvalidArgument,
                "positive label '" + *c.positive_label +
                    "' is not a value of '" + schema.label().name + "'");
  }
  return idx;
}

void CheckCommon(const Config& c) {
  if (!(c.delta > 0.0 && c.delta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "--delta must lie in (0, 1]");
  }
  if (!(c.alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "--alpha must be positive");
  }
  ParseVariant(c.variant);
}

// Runs f and stores its result, or the error it raised, under key. Budget
// errors are not recoverable and propagate.
template <typename F>
void Section(Json& report, const std::string& key, F&& f) {
  try {
    report[key] = f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudgetExceeded) throw;
    Json err;
    err["error"] = ErrorJson(e);
    report[key] = std::move(err);
  }
}

Json BoundsJson(const JointPMF& pmf, const Partition& q, const Config& c) {
  const MetricVariant variant = ParseVariant(c.variant);
  BoundReport r = ChebyshevBounds(pmf, q, c.delta, variant);
  if (c.chernoff && variant == MetricVariant::kRatioLog && c.delta < 1.0) {
    AddChernoffBound(pmf, r);
  }
  return ToJson(r);
}

Json QuantileJson(const JointPMF& pmf, const Config& c) {
  const MetricVariant variant = ParseVariant(c.variant);
  const UDistribution u = ComputeUDistribution(pmf, variant, c.cell_budget);
  Json j;
  j["delta"] = Sig10(c.delta);
  j["eps_star"] = Sig10(UnfairnessQuantile(u, c.delta));
  j["expected"] = Sig10(u.Mean());
  j["support_size"] = u.support.size();
  return j;
}

Json UnfairnessJson(const JointPMF& pmf, const Config& c) {
  const UnfairnessReport r =
      ComputeUnfairnessReport(pmf, ParseVariant(c.variant),
                              PositiveIndex(c, pmf.schema()), c.cell_budget);
  return ToJson(r, pmf.schema());
}

ContingencyTable LoadTable(const Inputs& in, const Config& c, Json& input) {
  if (in.csv.empty() || in.attrs.empty() || in.pred.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a CSV path, --attrs and --pred are required");
  }
  const std::string text = ReadFile(in.csv);
  input["csv"] = in.csv;
  input["digest"] = Fnv1aHex(text);
  const CsvTable csv = ParseCsv(text);
  std::optional<AttributeSchema> schema;
  if (!c.schema_path.empty()) {
    const std::string schema_text = ReadFile(c.schema_path);
    input["schema_digest"] = Fnv1aHex(schema_text);
    try {
      schema = SchemaFromJson(nlohmann::json::parse(schema_text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string("malformed schema JSON: ") + e.what());
    }
    std::vector<std::string> names;
    for (const Variable& v : schema->attributes()) names.push_back(v.name);
    if (names != in.attrs || schema->label().name != in.pred) {
      throw Error(ErrorCode::kInvalidInput,
                  "schema columns do not match --attrs/--pred");
    }
  } else {
    schema = InferSchema(csv, in.attrs, in.pred);
  }
  const std::vector<Record> records = ExtractRecords(csv, in.attrs, in.pred);
  return IngestRecords(records, *schema);
}

JointPMF LoadPmf(const Inputs& in, Json& input) {
  if (!in.fixture.empty() == !in.pmf_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "exactly one of --pmf and --fixture is required");
  }
  if (!in.fixture.empty()) {
    input["fixture"] = in.fixture;
    return Fixture(in.fixture);
  }
  const std::string text = ReadFile(in.pmf_path);
  input["pmf"] = in.pmf_path;
  input["digest"] = Fnv1aHex(text);
  try {
    return PmfFromJson(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("malformed pmf JSON: ") + e.what());
  }
}

Partition PartitionArg(const std::string& text, int d) {
  return text.empty() ? Partition::Singletons(d) : Partition::Parse(text, d);
}

void RunAudit(const Inputs& in, const Config& c) {
  CheckCommon(c);
  Json report = Envelope("audit", c);
  Json input;
  const ContingencyTable table = LoadTable(in, c, input);
  report["input"] = input;
  report["n"] = table.n();
  report["schema"] = Json(SchemaToJson(table.schema()));
  const JointPMF empirical = EmpiricalPmf(table);
  const JointPMF smoothed = SmoothedPmf(table, c.alpha);
  const Partition singletons =
      Partition::Singletons(table.schema().num_attributes());
  Section(report, "empirical", [&] { return UnfairnessJson(empirical, c); });
  Section(report, "smoothed", [&] { return UnfairnessJson(smoothed, c); });
  Section(report, "quantile", [&] { return QuantileJson(empirical, c); });
  Section(report, "moments",
          [&] { return ToJson(ComputeMoments(empirical, singletons)); });
  Section(report, "bounds",
          [&] { return BoundsJson(empirical, singletons, c); });
  Section(report, "partitioned", [&] {
    const GreedyResult g = GreedyPartition(table, c.tau);
    Json j = ToJson(g);
    PutScore(j, "estimate",
             IndependentApprox(empirical, g.q_star, ParseVariant(c.variant)));
    return j;
  });
  Emit(c, "audit.json", report);
}

void RunBounds(const Inputs& in, const Config& c) {
  CheckCommon(c);
  Json report = Envelope("bounds", c);
  Json input;
  const JointPMF pmf = LoadPmf(in, input);
  report["input"] = input;
  const Partition q = PartitionArg(in.partition, pmf.schema().num_attributes());
  const MetricVariant variant = ParseVariant(c.variant);
  PutScore(report, "u_star", IntersectionalUnfairness(pmf, variant));
  report["quantile"] = QuantileJson(pmf, c);
  report["bounds"] = BoundsJson(pmf, q, c);
  Emit(c, "bounds.json", report);
}

void RunPartition(const Inputs& in, const Config& c) {
  CheckCommon(c);
  Json report = Envelope("partition", c);
  Json input;
  const ContingencyTable table = LoadTable(in, c, input);
  report["input"] = input;
  report["n"] = table.n();
  const GreedyResult g = GreedyPartition(table, c.tau);
  report["greedy"] = ToJson(g);
  PutScore(report, "estimate",
           IndependentApprox(EmpiricalPmf(table), g.q_star,
                             ParseVariant(c.variant)));
  Emit(c, "partition.json", report);
}

std::string CountsCsv(const ContingencyTable& table) {
  const AttributeSchema& s = table.schema();
  std::ostringstream out;
  for (const Variable& v : s.attributes()) out << v.name << ',';
  out << s.label().name << ",count\n";
  for (std::size_t g = 0; g < s.num_groups(); ++g) {
    const std::vector<std::size_t> values = s.DecodeGroup(g);
    for (std::size_t y = 0; y < s.label_card(); ++y) {
      for (int k = 0; k < s.num_attributes(); ++k) {
        out << s.attribute(k).values[values[k]] << ',';
      }
      out << s.label().values[y] << ',' << table.count(g, y) << '\n';
    }
  }
  return out.str();
}

std::string RecordsCsv(const ContingencyTable& table) {
  const AttributeSchema& s = table.schema();
  std::ostringstream out;
  for (const Variable& v : s.attributes()) out << v.name << ',';
  out << s.label().name << '\n';
  for (std::size_t g = 0; g < s.num_groups(); ++g) {
    const std::vector<std::size_t> values = s.DecodeGroup(g);
    for (std::size_t y = 0; y < s.label_card(); ++y) {
      std::string row;
      for (int k = 0; k < s.num_attributes(); ++k) {
        row += s.attribute(k).values[values[k]] + ',';
      }
      row += s.label().values[y] + '\n';
      for (std::uint64_t i = 0; i < table.count(g, y); ++i) out << row;
    }
  }
  return out.str();
}

JointPMF SynthPmf(const Inputs& in, const SynthOptions& o, const Config& c,
                  Json& input) {
  if (!in.fixture.empty() || !in.pmf_path.empty()) return LoadPmf(in, input);
  if (o.cards.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "--cards, --fixture or --pmf is required");
  }
  std::vector<std::string> names;
  for (std::size_t k = 0; k < o.cards.size(); ++k) {
    names.push_back("a" + std::to_string(k + 1));
  }
  input["dirichlet"] = {{"cards", o.cards},
                        {"label_card", o.label_card},
                        {"concentration", Sig10(o.concentration)}};
  const AttributeSchema schema =
      AttributeSchema::Create(names, o.cards, o.label_card);
  return DirichletPmf(schema, o.concentration, RngSpec{c.seed, "synth-pmf", 0});
}

void RunSynth(const Inputs& in, const SynthOptions& o, const Config& c) {
  Json report = Envelope("synth", c);
  Json input;
  const JointPMF pmf = SynthPmf(in, o, c, input);
  report["input"] = input;
  report["pmf"] = PmfToJson(pmf);
  fs::create_directories(c.out_dir);
  if (o.n > 0) {
    const ContingencyTable table =
        SampleTable(pmf, o.n, RngSpec{c.seed, "synth-table", 0});
    report["n"] = o.n;
    WriteFile(fs::path(c.out_dir) / "table.csv", CountsCsv(table));
    if (o.records) {
      WriteFile(fs::path(c.out_dir) / "records.csv", RecordsCsv(table));
    }
  }
  Emit(c, "synth.json", report);
}

void RunBench(const Inputs& in, const SynthOptions& so, const BenchOptions& o,
              const Config& c) {
  CheckCommon(c);
  Json report = Envelope("bench", c);
  Json input;
  const JointPMF pmf = SynthPmf(in, so, c, input);
  report["input"] = input;
  report["n_grid"] = o.n_grid;
  report["reps"] = o.reps;
  std::vector<EstimatorSpec> estimators;
  for (const std::string& e : o.estimators) {
    estimators.push_back(EstimatorSpec::Parse(e));
  }
  const RngSpec rng{c.seed, "bench", 0};
  const ConvergenceResult result =
      ConvergenceExperiment(pmf, estimators, o.n_grid, o.reps, rng);
  Json curves = Json::array();
  for (const ConvergenceCurve& curve : result.curves) {
    curves.push_back(ToJson(curve));
  }
  report["curves"] = std::move(curves);
  if (o.compare_bounds) {
    const double delta = c.delta < 1.0 ? c.delta : 0.1;
    Section(report, "bound_comparison", [&] {
      return ToJson(CompareBounds(pmf, delta, c.tau, o.selection_n,
                                  rng.Child("bounds", 0), c.chernoff));
    });
  }
  fs::create_directories(c.out_dir);
  WriteFile(fs::path(c.out_dir) / "bench.csv", CurvesCsv(result.curves));
  Emit(c, "bench.json", report);
}

void AddCommon(CLI::App* app, Config& c) {
  app->add_option("--delta", c.delta, "Tail probability delta")
      ->capture_default_str();
  app->add_option("--alpha", c.alpha, "Dirichlet smoothing parameter")
      ->capture_default_str();
  app->add_option("--tau", c.tau, "Feasibility threshold on block counts")
      ->capture_default_str();
  app->add_option("--variant", c.variant,
                  "ratio-log | abs-diff | ratio-log-vs-average | "
                  "abs-diff-vs-average")
      ->capture_default_str();
  app->add_option("--positive-label", c.positive_label,
                  "Positive label value for weighted unfairness");
  app->add_flag("--chernoff", c.chernoff, "Also compute the Chernoff bound");
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--cell-budget", c.cell_budget,
                  "Maximum outcomes enumerated for the law of U")
      ->capture_default_str();
  app->add_option("--schema", c.schema_path, "Schema JSON for CSV input");
  app->add_option("--out", c.out_dir, "Output directory")
      ->capture_default_str();
}

void AddCsvInputs(CLI::App* app, Inputs& in) {
  app->add_option("csv", in.csv, "CSV file with one row per prediction")
      ->required();
  app->add_option("--attrs", in.attrs, "Protected attribute columns")
      ->delimiter(',')
      ->required();
  app->add_option("--pred", in.pred, "Prediction column")->required();
}

void AddPmfInputs(CLI::App* app, Inputs& in) {
  app->add_option("--pmf", in.pmf_path, "Joint pmf JSON");
  app->add_option("--fixture", in.fixture,
                  "CE8 | A3-scenario1 | A3-scenario2 | noise-family(d,seed)");
}

void AddSynthOptions(CLI::App* app, SynthOptions& o) {
  app->add_option("--cards", o.cards, "Attribute cardinalities")
      ->delimiter(',');
  app->add_option("--label-card", o.label_card, "Label cardinality")
      ->capture_default_str();
  app->add_option("--concentration", o.concentration,
                  "Symmetric Dirichlet concentration")
      ->capture_default_str();
}

int Main(int argc, char** argv) {
  CLI::App app("Intersectional fairness audit and certificates", "ifair");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Config c;
  Inputs in;
  SynthOptions so;
  BenchOptions bo;

  CLI::App* audit = app.add_subcommand("audit", "Audit a CSV of predictions");
  AddCsvInputs(audit, in);
  AddCommon(audit, c);

  CLI::App* bounds = app.add_subcommand("bounds", "Bounds for a known pmf");
  AddPmfInputs(bounds, in);
  bounds->add_option("--partition", in.partition,
                     "Blocks such as \"0,1|2\"; default singletons");
  AddCommon(bounds, c);

  CLI::App* partition =
      app.add_subcommand("partition", "Greedy partition search on a CSV");
  AddCsvInputs(partition, in);
  AddCommon(partition, c);

  CLI::App* synth = app.add_subcommand("synth", "Generate a pmf and a sample");
  AddPmfInputs(synth, in);
  AddSynthOptions(synth, so);
  synth->add_option("--n", so.n, "Sample size; 0 for no sample")
      ->capture_default_str();
  synth->add_flag("--records", so.records,
                  "Also write one CSV row per sampled record");
  AddCommon(synth, c);

  CLI::App* bench = app.add_subcommand("bench", "Convergence benchmark");
  AddPmfInputs(bench, in);
  AddSynthOptions(bench, so);
  bench->add_option("--n-grid", bo.n_grid, "Sample sizes")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--reps", bo.reps, "Repetitions per sample size")
      ->capture_default_str();
  bench->add_option("--estimators", bo.estimators, "Estimators")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_flag("--compare-bounds", bo.compare_bounds,
                  "Add an exact bound comparison");
  bench->add_option("--selection-n", bo.selection_n,
                    "Sample size used to select q* for the comparison")
      ->capture_default_str();
  AddCommon(bench, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*audit) RunAudit(in, c);
    if (*bounds) RunBounds(in, c);
    if (*partition) RunPartition(in, c);
    if (*synth) RunSynth(in, so, c);
    if (*bench) RunBench(in, so, bo, c);
  } catch (const Error& e) {
    Json j;
    j["error"] = ErrorJson(e);
    std::cerr << j.dump() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    Json j;
    j["error"] = {{"code", "io_error"}, {"message", e.what()}};
    std::cerr << j.dump() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace
}  // namespace ifair

int main(int argc, char** argv) { return ifair::Main(argc, argv); }
