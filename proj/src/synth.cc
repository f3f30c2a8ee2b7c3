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

#include "ifair/synth.h"

#include <cmath>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>

#include "ifair/error.h"

namespace ifair {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void FnvBytes(std::uint64_t& h, const unsigned char* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void FnvWord(std::uint64_t& h, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  FnvBytes(h, bytes, 8);
}

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngSpec::StreamSeed() const {
  std::uint64_t h = kFnvOffset;
  FnvWord(h, seed);
  FnvWord(h, purpose.size());
  FnvBytes(h, reinterpret_cast<const unsigned char*>(purpose.data()),
           purpose.size());
  FnvWord(h, index);
  return SplitMix64(h);
}

RngSpec RngSpec::Child(std::string_view child_purpose,
                       std::uint64_t child_index) const {
  return RngSpec{StreamSeed(), std::string(child_purpose), child_index};
}

Engine MakeEngine(const RngSpec& rng) { return Engine(rng.StreamSeed()); }

JointPMF DirichletPmf(const AttributeSchema& schema, double concentration,
                      const RngSpec& rng) {
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Dirichlet concentration must be positive");
  }
  Engine engine = MakeEngine(rng);
  boost::random::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> w(schema.num_cells());
  // Small concentrations can underflow every draw; redraw in that case.
  for (;;) {
    double total = 0.0;
    for (double& x : w) {
      x = gamma(engine);
      total += x;
    }
    if (total > 0.0) break;
  }
  return JointPMF::Normalized(schema, std::move(w));
}

ContingencyTable SampleTable(const JointPMF& pmf, std::uint64_t n,
                             const RngSpec& rng) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample size must be positive");
  }
  Engine engine = MakeEngine(rng);
  std::span<const double> p = pmf.probs();
  // Sequential conditional binomials: cell i gets Bin(left, p_i / mass_left).
  std::vector<double> tail(p.size() + 1, 0.0);
  for (std::size_t i = p.size(); i-- > 0;) tail[i] = tail[i + 1] + p[i];
  std::vector<std::uint64_t> counts(p.size(), 0);
  std::uint64_t left = n;
  for (std::size_t i = 0; i < p.size() && left > 0; ++i) {
    if (!(p[i] > 0.0)) continue;
    const double share = tail[i] > 0.0 ? p[i] / tail[i] : 1.0;
    if (share >= 1.0) {
      counts[i] = left;
      left = 0;
      break;
    }
    boost::random::binomial_distribution<std::int64_t, double> bin(
        static_cast<std::int64_t>(left), share);
    counts[i] = static_cast<std::uint64_t>(bin(engine));
    left -= counts[i];
  }
  if (left > 0) {
    // Rounding left mass unassigned; give it to the last positive cell.
    for (std::size_t i = p.size(); i-- > 0;) {
      if (p[i] > 0.0) {
        counts[i] += left;
        break;
      }
    }
  }
  return ContingencyTable::FromCounts(pmf.schema(), std::move(counts));
}

JointPMF Ce8Fixture() {
  AttributeSchema schema = AttributeSchema::Create({"a1", "a2"}, {2, 2}, 2);
  std::vector<double> p = {3, 1, 1, 3, 1, 3, 3, 1};
  for (double& x : p) x /= 16.0;
  return JointPMF::FromProbabilities(std::move(schema), std::move(p));
}

JointPMF A3Fixture(int scenario) {
  if (scenario != 1 && scenario != 2) {
    throw Error(ErrorCode::kInvalidArgument, "A3 scenario must be 1 or 2");
  }
  constexpr std::size_t kGroups = 991;
  constexpr std::size_t kHalf = 495;
  AttributeSchema schema = AttributeSchema::Create({"group"}, {kGroups}, 2);
  std::vector<double> p(2 * kGroups, 0.0);
  p[1] = 0.01;
  for (std::size_t g = 1; g < kGroups; ++g) {
    double rate = 0.5;
    if (scenario == 2) rate = g <= kHalf ? 1.0 : 0.0;
    p[2 * g] = 0.001 * (1.0 - rate);
    p[2 * g + 1] = 0.001 * rate;
  }
  return JointPMF::FromProbabilities(std::move(schema), std::move(p));
}

JointPMF NoiseFamilyFixture(int d, std::uint64_t seed) {
  if (d < 1 || d > 30) {
    throw Error(ErrorCode::kInvalidArgument,
                "noise family needs 1 <= d <= 30 attributes");
  }
  std::vector<std::string> names;
  for (int k = 0; k < d; ++k) names.push_back("a" + std::to_string(k + 1));
  AttributeSchema schema =
      AttributeSchema::Create(names, std::vector<std::size_t>(d, 2), 2);
  AttributeSchema head = AttributeSchema::Create({"a1"}, {2}, 2);
  const JointPMF base =
      DirichletPmf(head, 1.0, RngSpec{seed, "noise-family", 0});
  // Attribute 0 is the most significant digit of the group index.
  const std::size_t rest = std::size_t{1} << (d - 1);
  const double scale = 1.0 / static_cast<double>(rest);
  std::vector<double> p(schema.num_cells());
  for (std::size_t g = 0; g < schema.num_groups(); ++g) {
    for (std::size_t y = 0; y < 2; ++y) {
      p[g * 2 + y] = base.prob(g / rest, y) * scale;
    }
  }
  return JointPMF::Normalized(std::move(schema), std::move(p));
}

JointPMF Fixture(std::string_view name) {
  if (name == "CE8") return Ce8Fixture();
  if (name == "A3-scenario1") return A3Fixture(1);
  if (name == "A3-scenario2") return A3Fixture(2);
  static const std::regex kNoise(R"(noise-family\((\d+),\s*(\d+)\))");
  std::cmatch m;
  const std::string s(name);
  if (std::regex_match(s.c_str(), m, kNoise)) {
    int d = 0;
    std::uint64_t seed = 0;
    try {
      d = std::stoi(m[1].str());
      seed = std::stoull(m[2].str());
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixture parameters out of range in '" + s + "'");
    }
    return NoiseFamilyFixture(d, seed);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown fixture '" + s + "'");
}

}  // namespace ifair
