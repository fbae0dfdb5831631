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

// Regularization replaces functions and constants by their graphs and keeps
// one name per interpretation; deregularization undoes it from the NameMap.

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "structlab/error.hpp"
#include "structlab/structure.hpp"

namespace structlab {

enum class ConversionKind {
  kDuplicateCollapse,
  kFunctionToGraph,
  kConstantToSingleton,
};

inline std::string_view conversion_kind_name(ConversionKind kind) {
  switch (kind) {
    case ConversionKind::kDuplicateCollapse: return "duplicate-collapse";
    case ConversionKind::kFunctionToGraph: return "function-to-graph";
    case ConversionKind::kConstantToSingleton: return "constant-to-singleton";
  }
  return "?";
}

struct Alias {
  std::string target;
  ConversionKind kind = ConversionKind::kDuplicateCollapse;

  friend bool operator==(const Alias&, const Alias&) = default;
};

// Keys are removed or converted names. A function or constant whose graph
// survives under its own name maps to itself; duplicate-collapse keys are
// never targets.
struct NameMap {
  std::map<std::string, Alias> aliases;

  bool empty() const { return aliases.empty(); }
  friend bool operator==(const NameMap&, const NameMap&) = default;
};

struct Regularized {
  FiniteStructure structure;
  NameMap names;
};

inline Regularized regularize(const FiniteStructure& s) {
  for (const auto& [name, fn] : s.functions) {
    if (s.relations.count(name)) {
      throw Error(ErrorKind::kNameCollision,
                  "graph of function '" + name + "' collides with a relation");
    }
  }
  for (const auto& [name, c] : s.constants) {
    if (s.relations.count(name) || s.functions.count(name)) {
      throw Error(ErrorKind::kNameCollision,
                  "singleton of constant '" + name + "' collides with another symbol");
    }
  }
  validate(s);

  std::map<std::string, Relation> converted = s.relations;
  std::map<std::string, ConversionKind> origin;
  for (const auto& [name, rel] : s.relations) origin[name] = ConversionKind::kDuplicateCollapse;
  for (const auto& [name, fn] : s.functions) {
    Relation graph{fn.arity + 1, {}};
    for (const auto& [args, value] : fn.table) {
      Tuple t = args;
      t.push_back(value);
      graph.tuples.insert(std::move(t));
    }
    converted.emplace(name, std::move(graph));
    origin[name] = ConversionKind::kFunctionToGraph;
  }
  for (const auto& [name, value] : s.constants) {
    converted.emplace(name, Relation{1, {Tuple{value}}});
    origin[name] = ConversionKind::kConstantToSingleton;
  }

  // std::map iteration is name-ordered, so the first name seen for an
  // extent is the lexicographically least one.
  Regularized out;
  out.structure.universe_size = s.universe_size;
  std::map<std::pair<int, std::set<Tuple>>, std::string> survivor;
  for (auto& [name, rel] : converted) {
    auto key = std::make_pair(rel.arity, rel.tuples);
    auto [it, fresh] = survivor.emplace(key, name);
    const ConversionKind kind = origin[name];
    if (fresh) {
      if (kind != ConversionKind::kDuplicateCollapse) {
        out.names.aliases[name] = Alias{name, kind};
      }
      out.structure.relations.emplace(name, std::move(rel));
    } else {
      out.names.aliases[name] = Alias{it->second, kind};
    }
  }
  return out;
}

inline FiniteStructure deregularize(const FiniteStructure& s, const NameMap& m) {
  validate(s);
  for (const auto& [alias, entry] : m.aliases) {
    if (!s.relations.count(entry.target)) {
      throw Error(ErrorKind::kMissingTarget,
                  "alias '" + alias + "' targets missing relation '" + entry.target + "'");
    }
    auto chained = m.aliases.find(entry.target);
    if (entry.kind == ConversionKind::kDuplicateCollapse &&
        (alias == entry.target ||
         (chained != m.aliases.end() &&
          chained->second.kind == ConversionKind::kDuplicateCollapse))) {
      throw Error(ErrorKind::kInvalidArgument,
                  "alias '" + alias + "' is part of an alias chain");
    }
    if (alias != entry.target && s.relations.count(alias)) {
      throw Error(ErrorKind::kNameCollision,
                  "alias '" + alias + "' already names a relation");
    }
  }

  FiniteStructure out;
  out.universe_size = s.universe_size;
  out.relations = s.relations;
  std::set<std::string> consumed;
  for (const auto& [alias, entry] : m.aliases) {
    const Relation& target = s.relations.at(entry.target);
    switch (entry.kind) {
      case ConversionKind::kDuplicateCollapse:
        out.relations[alias] = target;
        break;
      case ConversionKind::kFunctionToGraph: {
        if (target.arity < 2) {
          throw Error(ErrorKind::kNotFunctional,
                      "graph '" + entry.target + "' of function '" + alias +
                          "' has arity < 2");
        }
        Function fn{target.arity - 1, {}};
        for (const auto& t : target.tuples) {
          Tuple args(t.begin(), t.end() - 1);
          if (!fn.table.emplace(std::move(args), t.back()).second) {
            throw Error(ErrorKind::kNotFunctional,
                        "graph '" + entry.target + "' is not functional");
          }
        }
        auto total = tuple_count(s.universe_size, fn.arity);
        if (!total || fn.table.size() != *total) {
          throw Error(ErrorKind::kNotFunctional,
                      "graph '" + entry.target + "' is not total");
        }
        out.functions.emplace(alias, std::move(fn));
        if (alias == entry.target) consumed.insert(alias);
        break;
      }
      case ConversionKind::kConstantToSingleton: {
        if (target.arity != 1 || target.tuples.size() != 1) {
          throw Error(ErrorKind::kNotFunctional,
                      "relation '" + entry.target + "' is not a singleton");
        }
        out.constants.emplace(alias, target.tuples.begin()->front());
        if (alias == entry.target) consumed.insert(alias);
        break;
      }
    }
  }
  for (const auto& name : consumed) out.relations.erase(name);
  return out;
}

inline nlohmann::json name_map_to_json(const NameMap& m) {
  nlohmann::json aliases = nlohmann::json::array();
  for (const auto& [alias, entry] : m.aliases) {
    aliases.push_back({{"alias", alias},
                       {"target", entry.target},
                       {"kind", std::string(conversion_kind_name(entry.kind))}});
  }
  return {{"aliases", aliases}};
}

inline NameMap name_map_from_json(const nlohmann::json& j) {
  NameMap m;
  try {
    for (const auto& entry : j.at("aliases")) {
      const std::string kind = entry.at("kind").get<std::string>();
      ConversionKind k;
      if (kind == "duplicate-collapse") {
        k = ConversionKind::kDuplicateCollapse;
      } else if (kind == "function-to-graph") {
        k = ConversionKind::kFunctionToGraph;
      } else if (kind == "constant-to-singleton") {
        k = ConversionKind::kConstantToSingleton;
      } else {
        throw Error(ErrorKind::kInvalidArgument, "unknown conversion kind '" + kind + "'");
      }
      m.aliases[entry.at("alias").get<std::string>()] =
          Alias{entry.at("target").get<std::string>(), k};
    }
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed name map: ") + e.what(), 1, 1);
  }
  return m;
}

}  // namespace structlab
