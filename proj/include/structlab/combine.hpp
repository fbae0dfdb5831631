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

// Fusion, intersection and restriction of structures on a common universe.

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "structlab/error.hpp"
#include "structlab/structure.hpp"

namespace structlab {

struct Fusion {
  FiniteStructure structure;
  // False when two differently named symbols ended up with equal extents.
  bool regular = true;
  std::vector<std::pair<std::string, std::string>> duplicates;
};

namespace detail {

inline void check_compatible(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.universe_size != b.universe_size) {
    throw Error(ErrorKind::kUniverseMismatch,
                "universe sizes differ: " + std::to_string(a.universe_size) + " vs " +
                    std::to_string(b.universe_size));
  }
  for (const auto* s : {&a, &b}) {
    if (!s->functions.empty() || !s->constants.empty()) {
      throw Error(ErrorKind::kPrecondition,
                  "structure has raw functions or constants; regularize it first");
    }
  }
  for (const auto& [name, rel] : a.relations) {
    auto it = b.relations.find(name);
    if (it != b.relations.end() && !(it->second == rel)) {
      throw Error(ErrorKind::kExtentClash,
                  "symbol '" + name + "' has different interpretations");
    }
  }
}

}  // namespace detail

inline Fusion fuse(const FiniteStructure& a, const FiniteStructure& b) {
  detail::check_compatible(a, b);
  Fusion out;
  out.structure = a;
  for (const auto& [name, rel] : b.relations) out.structure.relations.emplace(name, rel);
  out.duplicates = duplicate_extents(out.structure);
  out.regular = out.duplicates.empty();
  return out;
}

inline FiniteStructure intersect(const FiniteStructure& a, const FiniteStructure& b) {
  detail::check_compatible(a, b);
  FiniteStructure out;
  out.universe_size = a.universe_size;
  for (const auto& [name, rel] : a.relations) {
    if (b.relations.count(name)) out.relations.emplace(name, rel);
  }
  return out;
}

inline FiniteStructure restrict(const FiniteStructure& s, const std::set<std::string>& keep) {
  for (const auto& name : keep) {
    if (!s.has_symbol(name)) {
      throw Error(ErrorKind::kUnknownSymbol, "cannot keep unknown symbol '" + name + "'");
    }
  }
  FiniteStructure out;
  out.universe_size = s.universe_size;
  for (const auto& [name, rel] : s.relations) {
    if (keep.count(name)) out.relations.emplace(name, rel);
  }
  for (const auto& [name, fn] : s.functions) {
    if (keep.count(name)) out.functions.emplace(name, fn);
  }
  for (const auto& [name, c] : s.constants) {
    if (keep.count(name)) out.constants.emplace(name, c);
  }
  return out;
}

}  // namespace structlab
