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

// Finite relational structures over the universe {0, ..., n-1}.
//
// A structure carries named relations and, before regularization, raw
// functions and constants. All operations in the library treat structures
// as immutable values: they take const references and return new values.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structlab/error.hpp"

namespace structlab {

using Element = int;
using Tuple = std::vector<Element>;

struct Relation {
  int arity = 1;
  std::set<Tuple> tuples;

  friend bool operator==(const Relation&, const Relation&) = default;
};

// A total map universe^arity -> universe.
struct Function {
  int arity = 1;
  std::map<Tuple, Element> table;

  friend bool operator==(const Function&, const Function&) = default;
};

struct FiniteStructure {
  int universe_size = 0;
  std::map<std::string, Relation> relations;
  std::map<std::string, Function> functions;
  std::map<std::string, Element> constants;

  bool has_symbol(std::string_view name) const {
    const std::string key(name);
    return relations.count(key) || functions.count(key) || constants.count(key);
  }

  // Relation names in sorted order.
  std::vector<std::string> relation_names() const {
    std::vector<std::string> names;
    names.reserve(relations.size());
    for (const auto& [name, rel] : relations) names.push_back(name);
    return names;
  }

  const Relation& relation(std::string_view name) const {
    auto it = relations.find(std::string(name));
    if (it == relations.end()) {
      throw Error(ErrorKind::kUnknownSymbol,
                  "unknown relation symbol '" + std::string(name) + "'");
    }
    return it->second;
  }

  friend bool operator==(const FiniteStructure&,
                         const FiniteStructure&) = default;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return true;
}

// Number of tuples of the given length, or nullopt on overflow.
inline std::optional<std::size_t> tuple_count(int n, int length) {
  std::size_t total = 1;
  for (int i = 0; i < length; ++i) {
    if (n != 0 &&
        total > std::numeric_limits<std::size_t>::max() / std::size_t(n)) {
      return std::nullopt;
    }
    total *= std::size_t(n);
  }
  return total;
}

// Base-n encoding, most significant position first, so codes enumerate
// tuples in lexicographic order.
inline std::size_t encode_tuple(std::span<const Element> t, int n) {
  std::size_t code = 0;
  for (Element e : t) code = code * std::size_t(n) + std::size_t(e);
  return code;
}

inline Tuple decode_tuple(std::size_t code, int n, int length) {
  Tuple t(std::size_t(length), 0);
  for (int i = length - 1; i >= 0; --i) {
    t[std::size_t(i)] = Element(code % std::size_t(n));
    code /= std::size_t(n);
  }
  return t;
}

// All tuples of the given length in lexicographic order.
inline std::vector<Tuple> all_tuples(int n, int length) {
  std::vector<Tuple> out;
  auto count = tuple_count(n, length);
  if (!count) throw Error(ErrorKind::kBudgetExceeded, "tuple space overflow");
  out.reserve(*count);
  for (std::size_t c = 0; c < *count; ++c) out.push_back(decode_tuple(c, n, length));
  return out;
}

inline void check_tuple(const Tuple& t, int arity, int n, std::string_view who) {
  if (int(t.size()) != arity) {
    throw Error(ErrorKind::kArityMismatch,
                "tuple of length " + std::to_string(t.size()) + " in '" +
                    std::string(who) + "' of arity " + std::to_string(arity));
  }
  for (Element e : t) {
    if (e < 0 || e >= n) {
      throw Error(ErrorKind::kOutOfRange,
                  "element " + std::to_string(e) + " in '" + std::string(who) +
                      "' outside universe of size " + std::to_string(n));
    }
  }
}

// Throws on any violated invariant of the data model.
inline void validate(const FiniteStructure& s) {
  const int n = s.universe_size;
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "negative universe size");
  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (!is_identifier(name)) {
      throw Error(ErrorKind::kInvalidArgument, "bad symbol name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::kDuplicateSymbol, "duplicate symbol '" + name + "'");
    }
  };
  for (const auto& [name, rel] : s.relations) {
    claim(name);
    if (rel.arity < 1) {
      throw Error(ErrorKind::kArityMismatch, "relation '" + name + "' has arity < 1");
    }
    for (const auto& t : rel.tuples) check_tuple(t, rel.arity, n, name);
  }
  for (const auto& [name, fn] : s.functions) {
    claim(name);
    if (fn.arity < 1) {
      throw Error(ErrorKind::kArityMismatch, "function '" + name + "' has arity < 1");
    }
    for (const auto& [args, value] : fn.table) {
      check_tuple(args, fn.arity, n, name);
      check_tuple(Tuple{value}, 1, n, name);
    }
    auto total = tuple_count(n, fn.arity);
    if (!total || fn.table.size() != *total) {
      throw Error(ErrorKind::kNonTotalFunction,
                  "function '" + name + "' is not total on the universe");
    }
  }
  for (const auto& [name, value] : s.constants) {
    claim(name);
    check_tuple(Tuple{value}, 1, n, name);
  }
}

// Pairs of relation names (first < second) with equal arity and extent.
inline std::vector<std::pair<std::string, std::string>> duplicate_extents(
    const FiniteStructure& s) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto a = s.relations.begin(); a != s.relations.end(); ++a) {
    for (auto b = std::next(a); b != s.relations.end(); ++b) {
      if (a->second == b->second) out.emplace_back(a->first, b->first);
    }
  }
  return out;
}

inline bool is_regular(const FiniteStructure& s) {
  return s.functions.empty() && s.constants.empty() &&
         duplicate_extents(s).empty();
}

// Membership index for one relation. Dense when the tuple space is small,
// otherwise falls back to the ordered set.
class RelationIndex {
 public:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 24;

  RelationIndex(const Relation& rel, int n) : rel_(&rel), n_(n), arity_(rel.arity) {
    auto count = tuple_count(n, rel.arity);
    if (count && *count <= kDenseLimit) {
      dense_.assign(*count, 0);
      for (const auto& t : rel.tuples) dense_[encode_tuple(t, n)] = 1;
    }
  }

  int arity() const { return arity_; }

  bool contains(std::span<const Element> t) const {
    if (!dense_.empty() || rel_->tuples.empty()) {
      return !dense_.empty() && dense_[encode_tuple(t, n_)] != 0;
    }
    return rel_->tuples.count(Tuple(t.begin(), t.end())) != 0;
  }

 private:
  const Relation* rel_;
  int n_;
  int arity_;
  std::vector<std::uint8_t> dense_;
};

}  // namespace structlab
