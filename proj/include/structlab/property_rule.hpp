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

// Declarative rules describing a property of an ambient algebra.
//
//   {"type":"contains","symbol":"Q"}
//   {"type":"superset","of":["Q"]}      {"type":"subset","of":["Q","R"]}
//   {"type":"list","members":[["Q"],["Q","R"]]}
//   {"type":"and","args":[...]}         {"type":"or","args":[...]}
//   {"type":"not","arg":...}            {"type":"all"}   {"type":"none"}

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "structlab/error.hpp"
#include "structlab/sigalgebra.hpp"

namespace structlab {

struct PropertyRule {
  enum class Kind { kContains, kSuperset, kSubset, kList, kAnd, kOr, kNot, kAll, kNone };

  Kind kind = Kind::kAll;
  std::string symbol;
  std::vector<std::string> of;
  std::vector<std::vector<std::string>> members;
  std::vector<PropertyRule> args;

  static PropertyRule of_kind(Kind k) {
    PropertyRule r;
    r.kind = k;
    return r;
  }
  static PropertyRule contains(std::string s) {
    PropertyRule r = of_kind(Kind::kContains);
    r.symbol = std::move(s);
    return r;
  }
  static PropertyRule superset(std::vector<std::string> of) {
    PropertyRule r = of_kind(Kind::kSuperset);
    r.of = std::move(of);
    return r;
  }
  static PropertyRule subset(std::vector<std::string> of) {
    PropertyRule r = of_kind(Kind::kSubset);
    r.of = std::move(of);
    return r;
  }
  static PropertyRule list(std::vector<std::vector<std::string>> members) {
    PropertyRule r = of_kind(Kind::kList);
    r.members = std::move(members);
    return r;
  }
  static PropertyRule all() { return of_kind(Kind::kAll); }
  static PropertyRule none() { return of_kind(Kind::kNone); }
  static PropertyRule negation(PropertyRule arg) {
    PropertyRule r = of_kind(Kind::kNot);
    r.args.push_back(std::move(arg));
    return r;
  }
  static PropertyRule both(std::vector<PropertyRule> args) {
    PropertyRule r = of_kind(Kind::kAnd);
    r.args = std::move(args);
    return r;
  }
  static PropertyRule either(std::vector<PropertyRule> args) {
    PropertyRule r = of_kind(Kind::kOr);
    r.args = std::move(args);
    return r;
  }
};

inline PropertyRule rule_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "contains") return PropertyRule::contains(j.at("symbol").get<std::string>());
    if (type == "superset") return PropertyRule::superset(j.at("of").get<std::vector<std::string>>());
    if (type == "subset") return PropertyRule::subset(j.at("of").get<std::vector<std::string>>());
    if (type == "list") {
      return PropertyRule::list(j.at("members").get<std::vector<std::vector<std::string>>>());
    }
    if (type == "all") return PropertyRule::all();
    if (type == "none") return PropertyRule::none();
    if (type == "not") return PropertyRule::negation(rule_from_json(j.at("arg")));
    if (type == "and" || type == "or") {
      std::vector<PropertyRule> args;
      for (const auto& a : j.at("args")) args.push_back(rule_from_json(a));
      return type == "and" ? PropertyRule::both(std::move(args))
                           : PropertyRule::either(std::move(args));
    }
    throw SyntaxError("unknown rule type '" + type + "'", 1, 1);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed property rule: ") + e.what(), 1, 1);
  }
}

namespace detail {

inline void check_rule_symbols(const PropertyRule& r, const AmbientAlgebra& a) {
  if (r.kind == PropertyRule::Kind::kContains) a.index_of(r.symbol);
  for (const auto& s : r.of) a.index_of(s);
  for (const auto& m : r.members) a.element(m);
  for (const auto& c : r.args) check_rule_symbols(c, a);
}

inline bool rule_holds(const PropertyRule& r, const AmbientAlgebra& a, SymbolSet m) {
  switch (r.kind) {
    case PropertyRule::Kind::kContains: return (m >> a.index_of(r.symbol)) & 1;
    case PropertyRule::Kind::kSuperset: {
      SymbolSet of = a.element(r.of);
      return (m & of) == of;
    }
    case PropertyRule::Kind::kSubset: return (m & ~a.element(r.of)) == 0;
    case PropertyRule::Kind::kList:
      for (const auto& listed : r.members) {
        if (a.element(listed) == m) return true;
      }
      return false;
    case PropertyRule::Kind::kAnd:
      for (const auto& c : r.args) {
        if (!rule_holds(c, a, m)) return false;
      }
      return true;
    case PropertyRule::Kind::kOr:
      for (const auto& c : r.args) {
        if (rule_holds(c, a, m)) return true;
      }
      return false;
    case PropertyRule::Kind::kNot: return !rule_holds(r.args.at(0), a, m);
    case PropertyRule::Kind::kAll: return true;
    case PropertyRule::Kind::kNone: return false;
  }
  return false;
}

}  // namespace detail

inline PropertySet realize(const PropertyRule& rule, const AmbientAlgebra& a) {
  detail::check_rule_symbols(rule, a);
  PropertySet p(a.symbol_count());
  for (std::size_t m = 0; m < a.element_count(); ++m) {
    if (detail::rule_holds(rule, a, SymbolSet(m))) p.insert(SymbolSet(m));
  }
  return p;
}

}  // namespace structlab
