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

#ifndef IFAIR_SYNTH_H_
#define IFAIR_SYNTH_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/random/mersenne_twister.hpp>

#include "ifair/pmf.h"
#include "ifair/schema.h"

namespace ifair {

// Names one random stream. The stream is an mt19937_64 seeded with
// SplitMix64(FNV-1a-64(seed, purpose, index)), which is identical on every
// platform.
struct RngSpec {
  std::uint64_t seed = 0;
  std::string purpose;
  std::uint64_t index = 0;

  std::uint64_t StreamSeed() const;
  // A sub-stream; derived from this stream's seed.
  RngSpec Child(std::string_view child_purpose, std::uint64_t child_index) const;
};

using Engine = boost::random::mt19937_64;

Engine MakeEngine(const RngSpec& rng);

// One draw of a symmetric Dirichlet over all cells of the schema.
JointPMF DirichletPmf(const AttributeSchema& schema, double concentration,
                      const RngSpec& rng);

// Multinomial sample of size n over the cells of pmf.
ContingencyTable SampleTable(const JointPMF& pmf, std::uint64_t n,
                             const RngSpec& rng);

// Two binary attributes, independent of each other and of Yhat, yet
// dependent once Yhat is known.
JointPMF Ce8Fixture();

// 991 groups on one attribute: group 0 has mass 1/100 and always predicts 1;
// groups 1..495 and 496..990 have mass 1/1000 each. Scenario 1 predicts 1
// with rate 1/2 in both halves, scenario 2 with rate 1 and 0.
JointPMF A3Fixture(int scenario);

// A_1 carries all label dependence; A_2..A_d are independent fair coins.
JointPMF NoiseFamilyFixture(int d, std::uint64_t seed);

// "CE8", "A3-scenario1", "A3-scenario2" or "noise-family(d,seed)".
JointPMF Fixture(std::string_view name);

}  // namespace ifair

#endif  // IFAIR_SYNTH_H_
