// Copyright 2026 The aspforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ASPFORGE_INSTANCES_HPP_
#define ASPFORGE_INSTANCES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "aspforge/corpus.hpp"
#include "aspforge/syntax.hpp"

namespace aspforge {

// One concrete scenario of a prompt: ground facts to join with both the
// gold and the candidate program before solving. Fresh constants come from
// the reserved c1../e1.. namespace, disjoint from every vocabulary.
struct FactInstance {
  std::vector<Rule> facts;
  std::string descriptor;
};

// Deterministic in (record, seed). Instances alternate between a baseline
// scenario and a discriminating one (boundary values, forbidden facts,
// non-joinable rows, longer chains), so that the canonical faults of each
// class are caught by at least one of them.
std::vector<FactInstance> make_instances(const CorpusRecord& record,
                                         std::uint64_t seed,
                                         std::size_t count = 2);

// The instances used by scoring and by mutant verification; both must see
// the same scenarios, so the seed is fixed to the record's own.
std::vector<FactInstance> default_instances(const CorpusRecord& record);

std::string render_facts(const std::vector<Rule>& facts);

}  // namespace aspforge

#endif  // ASPFORGE_INSTANCES_HPP_
