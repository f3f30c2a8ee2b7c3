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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ifair/bench.h"
#include "ifair/error.h"
#include "ifair/info_measures.h"
#include "ifair/metrics.h"
#include "ifair/partition.h"
#include "ifair/partition_search.h"
#include "ifair/pmf.h"
#include "ifair/synth.h"
#include "ifair/tail_bounds.h"
#include "test_util.h"

namespace ifair {
namespace {

namespace fs = std::filesystem;
using ::ifair::testing::BinarySchema;
using ::ifair::testing::RandomPmf;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Median(std::vector<double> v) { return Percentile(std::move(v), 0.5); }

// ---------------------------------------------------------------------------

Outcome Ce8Exactness() {
  const JointPMF ce8 = Ce8Fixture();
  const auto start = std::chrono::steady_clock::now();
  const double ufi = IntersectionalUnfairness(ce8).value;
  double worst_marginal = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (MetricVariant v :
         {MetricVariant::kRatioLog, MetricVariant::kAbsDiff,
          MetricVariant::kRatioLogVsAverage, MetricVariant::kAbsDiffVsAverage}) {
      worst_marginal =
          std::max(worst_marginal, std::abs(MarginalUnfairness(ce8, k, v).value));
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  Outcome o;
  o.pass = std::abs(ufi - std::log(3.0)) <= 1e-12 && worst_marginal <= 1e-12 &&
           ms < 1.0;
  o.detail = fmt::format("|u*-ln3|={:.2e} max|u*_k|={:.2e} time={:.3f}ms",
                         std::abs(ufi - std::log(3.0)), worst_marginal, ms);
  return o;
}

Outcome A3Fixtures() {
  Outcome o;
  const MetricVariant v = MetricVariant::kAbsDiffVsAverage;
  const double expected_eps[] = {1.0 / 200.0, 101.0 / 200.0};
  for (int scenario : {1, 2}) {
    const JointPMF p = A3Fixture(scenario);
    const double w = WeightedUnfairness(p);
    const double eps = UnfairnessQuantile(p, 0.01, v);
    const double target = expected_eps[scenario - 1];
    const bool ok = std::abs(w - 99.0 / 20000.0) <= 1e-12 &&
                    std::abs(eps - target) <= 1e-12;
    o.pass = o.pass && ok;
    o.detail += fmt::format("s{}: w*={:.12g} eps*(0.01)={:.12g} ", scenario, w,
                            eps);
  }
  return o;
}

Outcome IndependenceEquality() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 3;
    const JointPMF p = NoiseFamilyFixture(d, 1000 + i);
    const double gap = std::abs(IntersectionalUnfairness(p).value -
                                IndependentApprox(p, Partition::Singletons(d)).value);
    worst = std::max(worst, gap);
  }
  int violations = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 3;
    const JointPMF p = RandomPmf(BinarySchema(d), 2000 + i);
    double sum = 0.0;
    for (int k = 0; k < d; ++k) sum += MarginalUnfairness(p, k).value;
    if (IndependentApprox(p, Partition::Singletons(d)).value > sum + 1e-12) {
      ++violations;
    }
  }
  Outcome o;
  o.pass = worst <= 1e-9 && violations == 0;
  o.detail = fmt::format("max|u*-u_ind|={:.2e} over 100 noise pmfs; "
                         "u_ind>sum u*_k on {}/100 general pmfs",
                         worst, violations);
  return o;
}

Outcome CertificateValidity() {
  int checks = 0;
  int violations = 0;
  int infinite = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 4;
    const JointPMF p = RandomPmf(BinarySchema(d), 3000 + i);
    const Partition q = Partition::Singletons(d);
    for (double delta : {0.05, 0.1, 0.3}) {
      const BoundReport r = ChernoffBound(p, q, delta);
      for (const Score& eps : {r.eps1, *r.eps1_prime, *r.eps2}) {
        if (eps.infinite) {
          ++infinite;
          continue;
        }
        const double tail = testing::TailProb(p, eps.value);
        ++checks;
        worst_ratio = std::max(worst_ratio, tail / delta);
        if (tail > delta) ++violations;
      }
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt::format("{} violations in {} checks (eps1, eps1', eps2; {} "
                         "infinite); max Pr(U>eps)/delta={:.3f}",
                         violations, checks, infinite, worst_ratio);
  return o;
}

Outcome Ce8BoundValues() {
  const JointPMF ce8 = Ce8Fixture();
  const Partition q = Partition::Singletons(2);
  const BoundReport r = ChebyshevBounds(ce8, q, 0.1);
  // Brute-force route over the 8 cells.
  const testing::OracleMoments m = testing::Moments(ce8, q);
  const double s_star =
      std::pow(std::cbrt(m.var) + std::cbrt(m.var_y), 1.5) / std::sqrt(0.1);
  const std::vector<double> py = testing::LabelMass(ce8);
  double u_ind = 0.0;
  double marginal = -HUGE_VAL;
  for (std::size_t y = 0; y < 2; ++y) {
    double log_ratio = 0.0;
    double term = 0.0;
    for (const Block& b : q.blocks()) {
      double sup = 0.0;
      double inf = HUGE_VAL;
      for (std::size_t g = 0; g < 4; ++g) {
        const std::vector<std::size_t> v = ce8.schema().DecodeGroup(g);
        const double rate = testing::BlockJoint(ce8, b, v, y) /
                            testing::BlockMassOf(ce8, b, v);
        sup = std::max(sup, rate);
        inf = std::min(inf, rate);
      }
      log_ratio += std::log(sup / inf);
      term += 0.5 * std::log(py[y]) - std::log(inf);
    }
    u_ind = std::max(u_ind, log_ratio);
    marginal = std::max(marginal, term);
  }
  const double eps1_oracle = 2.0 * std::sqrt(2.0) * s_star + u_ind;
  const double eps1p_oracle = s_star + (m.mu - m.mu_y) + marginal;
  Outcome o;
  o.pass = std::abs(r.eps1.value - 4.2552) <= 1e-3 &&
           std::abs(r.eps1_prime->value - 2.0667) <= 1e-3 &&
           std::abs(r.eps1.value - eps1_oracle) <= 1e-12 &&
           std::abs(r.eps1_prime->value - eps1p_oracle) <= 1e-12;
  o.detail = fmt::format("eps1={:.7f} (oracle {:.7f}) eps1'={:.7f} (oracle {:.7f})",
                         r.eps1.value, eps1_oracle, r.eps1_prime->value,
                         eps1p_oracle);
  return o;
}

Outcome InformationIdentities() {
  int failures = 0;
  double worst_gamma = 0.0;
  double worst_decomp = 0.0;
  double worst_d1 = 0.0;
  double worst_d2 = 0.0;
  double min_c = HUGE_VAL;
  int monotone_violations = 0;
  const double h = 1e-4;
  for (int i = 0; i < 500; ++i) {
    const int d = 2 + i % 3;
    std::vector<std::string> names;
    std::vector<std::size_t> cards;
    for (int k = 0; k < d; ++k) {
      names.push_back("a" + std::to_string(k));
      cards.push_back(2 + (i + k) % 2);
    }
    const JointPMF p = RandomPmf(
        AttributeSchema::Create(names, cards, 2 + i % 2), 4000 + i);
    const Partition singles = Partition::Singletons(d);
    const Partition coarse = singles.Merge(0, 1);
    const MomentSummary m = ComputeMoments(p, singles);
    const double c = TotalCorrelation(p, singles);
    const double cy = ConditionalTotalCorrelation(p, singles);
    min_c = std::min({min_c, c, cy});
    worst_gamma = std::max(worst_gamma, std::abs(m.gamma - m.gamma_mi));
    if (TotalCorrelation(p, coarse) > c + 1e-12 ||
        TotalCorrelation(p, Partition::Trivial(d)) >
            TotalCorrelation(p, coarse) + 1e-12) {
      ++monotone_violations;
    }
    // l^(singles)(a) = l^(coarse)(a) + l_{01}(a_0, a_1).
    const std::vector<double> fine = PointwiseL(p, singles);
    std::vector<double> rhs = PointwiseL(p, coarse);
    const JointPMF p01 = MarginalPmf(p, {0, 1});
    const std::vector<double> l01 = PointwiseL(p01, Partition::Singletons(2));
    for (std::size_t g = 0; g < fine.size(); ++g) {
      const std::vector<std::size_t> v = p.schema().DecodeGroup(g);
      const std::vector<std::size_t> sub = {v[0], v[1]};
      rhs[g] += l01[p01.schema().EncodeGroup(sub)];
      worst_decomp = std::max(worst_decomp, std::abs(fine[g] - rhs[g]));
    }
    for (bool cond : {false, true}) {
      if (Cumulant(p, singles, 0.0, cond) != 0.0) ++failures;
      const double kp = Cumulant(p, singles, h, cond);
      const double km = Cumulant(p, singles, -h, cond);
      const double mean = cond ? m.mu_y : m.mu;
      const double var = cond ? m.sigma_y * m.sigma_y : m.sigma * m.sigma;
      worst_d1 = std::max(worst_d1, std::abs((kp - km) / (2 * h) - mean));
      worst_d2 = std::max(worst_d2, std::abs((kp + km) / (h * h) - var));
    }
  }
  Outcome o;
  o.pass = failures == 0 && min_c >= -1e-12 && worst_gamma <= 1e-10 &&
           monotone_violations == 0 && worst_decomp <= 1e-10 &&
           worst_d1 <= 1e-5 && worst_d2 <= 1e-5;
  o.detail = fmt::format(
      "min C={:.1e} |gamma-gamma_mi|={:.1e} coarsening violations={} "
      "decomposition={:.1e} kappa'={:.1e} kappa''={:.1e} kappa(0)!=0: {}",
      min_c, worst_gamma, monotone_violations, worst_decomp, worst_d1, worst_d2,
      failures);
  return o;
}

Outcome Consistency() {
  // Half uniform, half a Dirichlet draw: every cell at least 1/32.
  const JointPMF draw = RandomPmf(BinarySchema(3), 5000);
  std::vector<double> cells(16);
  for (std::size_t c = 0; c < 16; ++c) cells[c] = 0.5 / 16 + 0.5 * draw.probs()[c];
  const JointPMF p = JointPMF::FromProbabilities(draw.schema(), cells);
  const double u_star = IntersectionalUnfairness(p).value;
  const std::uint64_t grid[] = {100, 1000, 10000, 100000, 1000000};
  std::vector<double> medians;
  int trivial = 0;
  bool failed_reps = false;
  for (std::uint64_t n : grid) {
    std::vector<double> errors;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ContingencyTable t = SampleTable(p, n, RngSpec{seed, "consistency", n});
      try {
        errors.push_back(std::abs(PartitionedEstimate(t, 10).value - u_star));
        if (n == 1000000 &&
            GreedyPartition(t, 10).q_star == Partition::Trivial(3)) {
          ++trivial;
        }
      } catch (const Error&) {
        failed_reps = true;
        errors.push_back(HUGE_VAL);
      }
    }
    medians.push_back(Median(errors));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < medians.size(); ++i) {
    monotone = monotone && medians[i] <= medians[i - 1];
  }
  Outcome o;
  o.pass = medians.back() <= 0.02 && monotone && trivial >= 9;
  o.detail = fmt::format("median |u_hat-u*| over n=1e2..1e6: {:.4f} {:.4f} "
                         "{:.4f} {:.4f} {:.4f}; trivial q* on {}/10{}",
                         medians[0], medians[1], medians[2], medians[3],
                         medians[4], trivial,
                         failed_reps ? "; some reps infeasible" : "");
  return o;
}

Outcome ConvergenceOrdering() {
  const std::vector<EstimatorSpec> est = {
      EstimatorSpec::Parse("s_star"), EstimatorSpec::Parse("bayes(0.1)"),
      EstimatorSpec::Parse("bayes(1)"), EstimatorSpec::Parse("bayes(10)")};
  std::vector<std::vector<double>> rel(est.size());
  for (std::uint64_t draw = 0; draw < 12; ++draw) {
    const JointPMF p = DirichletPmf(BinarySchema(10), 1.0,
                                    RngSpec{6000, "ordering-pmf", draw});
    const ConvergenceResult r = ConvergenceExperiment(
        p, est, {10000}, 20, RngSpec{6000, "ordering-table", draw});
    for (std::size_t k = 0; k < est.size(); ++k) {
      rel[k].push_back(r.curves[k].rel_l2[0]);
    }
  }
  std::vector<double> med;
  for (const auto& v : rel) med.push_back(Median(v));
  Outcome o;
  o.pass = med[0] < med[1] && med[0] < med[2] && med[0] < med[3];
  o.detail = fmt::format("median rel L2 at n=1e4: s_star={:.4g} bayes(0.1)={:.4g} "
                         "bayes(1)={:.4g} bayes(10)={:.4g}",
                         med[0], med[1], med[2], med[3]);
  return o;
}

Outcome SStarDecay() {
  const JointPMF p = RandomPmf(BinarySchema(6), 7000);
  std::vector<double> small;
  std::vector<double> large;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::uint64_t n : {1000ULL, 100000ULL}) {
      const ContingencyTable t = SampleTable(p, n, RngSpec{seed, "decay", n});
      const GreedyResult g = GreedyPartition(t, 10);
      const double s = ComputeMoments(p, g.q_star).s_star;
      (n == 1000 ? small : large).push_back(s);
    }
  }
  Outcome o;
  o.pass = Median(large) < Median(small);
  o.detail = fmt::format("median s*(q*): n=1e3 {:.4f}, n=1e5 {:.4f}",
                         Median(small), Median(large));
  return o;
}

Outcome PluginQRate() {
  Outcome o;
  double worst = 0.0;
  for (int s : {2, 4, 16}) {
    const std::vector<double> uniform(s, 1.0 / s);
    const double target = std::log(s) * std::log(s);
    worst = std::max(worst, std::abs(::ifair::PluginQ(uniform) - target));
  }
  const JointPMF p = DirichletPmf(AttributeSchema::Create({"a"}, {512}, 2), 1.0,
                                  RngSpec{8000, "q-pmf", 0});
  const double truth = ::ifair::PluginQ(p.probs());
  double mse[2] = {0.0, 0.0};
  const std::uint64_t sizes[2] = {1000, 1000000};
  const int reps = 50;
  for (int i = 0; i < 2; ++i) {
    for (int r = 0; r < reps; ++r) {
      const ContingencyTable t =
          SampleTable(p, sizes[i], RngSpec{8000, "q-table", sizes[i] + r});
      const double q = ::ifair::PluginQ(EmpiricalPmf(t).probs());
      mse[i] += (q - truth) * (q - truth) / reps;
    }
  }
  o.pass = worst <= 1e-15 && mse[1] * 10.0 <= mse[0];
  o.detail = fmt::format("max|Q(uniform)-log^2 S|={:.1e}; MSE n=1e3 {:.3e}, "
                         "n=1e6 {:.3e} (ratio {:.1f})",
                         worst, mse[0], mse[1], mse[0] / mse[1]);
  return o;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file below dir with its contents, in path order.
std::vector<std::pair<std::string, std::string>> Snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out.emplace_back(fs::relative(e.path(), dir).string(), ReadFile(e.path()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome CliDeterminism() {
  const fs::path root = fs::temp_directory_path() / "ifair_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root / "input");
  const std::string cli = std::string("'") + IFAIR_CLI_PATH + "' ";
  const std::string input = (root / "input").string();
  const auto sh = [](const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  sh(cli + "synth --cards 2 2 2 --n 20000 --records --seed 9 --out '" + input +
     "' > /dev/null");
  const std::string records = input + "/records.csv";
  const std::vector<std::string> commands = {
      "audit '" + records + "' --attrs a1,a2,a3 --pred yhat --chernoff",
      "partition '" + records + "' --attrs a1,a2,a3 --pred yhat",
      "bounds --fixture CE8 --chernoff",
      "bounds --fixture 'noise-family(3,4)' --variant abs-diff",
      "synth --cards 3 2 --label-card 3 --n 1000 --records --seed 4",
      "bench --fixture CE8 --n-grid 100 1000 --reps 3 --compare-bounds "
      "--selection-n 10000 --seed 2",
      "bounds --fixture nonsense"};
  int mismatches = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    int codes[2];
    std::vector<std::pair<std::string, std::string>> snaps[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = root / ("run" + std::to_string(run));
      fs::remove_all(out);
      fs::create_directories(out);
      codes[run] = sh("cd '" + out.string() + "' && " + cli + commands[i] +
                      " --out . > stdout.txt 2> stderr.txt");
      snaps[run] = Snapshot(out);
    }
    if (codes[0] != codes[1] || snaps[0] != snaps[1] || snaps[0].size() < 2) {
      ++mismatches;
    }
  }
  fs::remove_all(root);
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = fmt::format("{} of {} commands differ between repeated runs",
                         mismatches, commands.size());
  return o;
}

}  // namespace
}  // namespace ifair

int main() {
  using Check = std::pair<const char*, std::function<ifair::Outcome()>>;
  const std::vector<Check> checks = {
      {"CE8 exactness", ifair::Ce8Exactness},
      {"A3 weighted unfairness and quantiles", ifair::A3Fixtures},
      {"independence equality suite", ifair::IndependenceEquality},
      {"certificate validity suite", ifair::CertificateValidity},
      {"CE8 bound values", ifair::Ce8BoundValues},
      {"information identities", ifair::InformationIdentities},
      {"partitioned estimator consistency", ifair::Consistency},
      {"convergence ordering", ifair::ConvergenceOrdering},
      {"s*(q*) decay", ifair::SStarDecay},
      {"plug-in Q", ifair::PluginQRate},
      {"CLI determinism", ifair::CliDeterminism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    ifair::Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s [%.2fs] %s\n", i + 1,
                o.pass ? "PASS" : "FAIL", checks[i].first, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, checks.size());
  return failed == 0 ? 0 : 1;
}
