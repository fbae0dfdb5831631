// Copyright 2026 The structlab Authors
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


// Small instances of every corpus generator, shared by tests.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "structlab/structlab.hpp"

namespace oracle {

inline std::vector<std::pair<std::string, structlab::FiniteStructure>> corpus_samples() {
  using namespace structlab;
  std::vector<std::pair<std::string, FiniteStructure>> out;
  auto add = [&](std::string name, Generated g) { out.emplace_back(std::move(name), std::move(g.structure)); };
  add("matching-pair-4", gen_matching_pair(2, {4}));
  add("matching-pair-4-8", gen_matching_pair(6, {4, 8}));
  add("matching-pair-6", gen_matching_pair(3, {6}));
  add("order-convex", gen_order_with_predicate(6, {1, 2, 3}));
  add("order-alternating", gen_order_with_predicate(5, {0, 2, 4}));
  add("order-empty", gen_order_with_predicate(4, {}));
  add("ehrenfeucht-5-2", gen_ehrenfeucht_encoding(5, 2));
  add("ehrenfeucht-5-0", gen_ehrenfeucht_encoding(5, 0));
  add("ehrenfeucht-6-3", gen_ehrenfeucht_encoding(6, 3));
  add("bijection-4", gen_bijection_pair(4));
  add("bijection-8", gen_bijection_pair(8));
  add("comb-1", gen_comb_ladder(1));
  add("comb-2", gen_comb_ladder(2));
  add("comb-3", gen_comb_ladder(3));
  add("bipartite-1", gen_random_bipartite_encoding(1));
  add("bipartite-2", gen_random_bipartite_encoding(2));
  add("equivalence-6-2", gen_bounded_equivalence(6, 2));
  add("equivalence-7-3", gen_bounded_equivalence(7, 3));
  add("singletons-1", gen_singleton_orbit(1));
  add("singletons-3", gen_singleton_orbit(3));
  return out;
}

}  // namespace oracle
