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

// Permutations of the universe acting on structures and on properties.
//
// Two matching modes are used throughout. kStrict compares extents by name:
// f preserves a structure when f(Q) = Q for every symbol Q. kSetwise lets
// names trade extents: f preserves a structure when it maps the family of
// extents (per arity) onto itself.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structlab/error.hpp"
#include "structlab/sigalgebra.hpp"
#include "structlab/structure.hpp"

namespace structlab {

class Permutation {
 public:
  explicit Permutation(std::vector<Element> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (Element e : image_) {
      if (e < 0 || std::size_t(e) >= image_.size() || seen[std::size_t(e)]) {
        throw Error(ErrorKind::kInvalidArgument, "image is not a bijection");
      }
      seen[std::size_t(e)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<Element> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
  }

  static Permutation transposition(int n, Element a, Element b) {
    auto p = identity(n).image_;
    std::swap(p.at(std::size_t(a)), p.at(std::size_t(b)));
    return Permutation(std::move(p));
  }

  // Accepts "[2,0,1]" or "2,0,1".
  static Permutation parse(std::string_view text) {
    std::vector<Element> image;
    std::string token;
    for (char c : text) {
      if (c >= '0' && c <= '9') {
        token += c;
      } else if (c == ',' || c == ']') {
        if (!token.empty()) image.push_back(std::stoi(token));
        token.clear();
      } else if (c != '[' && c != ' ') {
        throw Error(ErrorKind::kInvalidArgument, "bad permutation '" + std::string(text) + "'");
      }
    }
    if (!token.empty()) image.push_back(std::stoi(token));
    return Permutation(std::move(image));
  }

  int size() const { return int(image_.size()); }
  Element operator()(Element e) const { return image_[std::size_t(e)]; }
  const std::vector<Element>& image() const { return image_; }

  Permutation inverse() const {
    std::vector<Element> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[std::size_t(image_[i])] = Element(i);
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] != Element(i)) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(image_[i]);
    }
    return out + "]";
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Element> image_;
};

// (f * g)(x) = f(g(x)): apply g first.
inline Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::kUniverseMismatch, "permutation sizes differ");
  std::vector<Element> out(std::size_t(f.size()));
  for (int i = 0; i < f.size(); ++i) out[std::size_t(i)] = f(g(i));
  return Permutation(std::move(out));
}

enum class InvarianceMode { kStrict, kSetwise };

inline std::string_view mode_name(InvarianceMode mode) {
  return mode == InvarianceMode::kStrict ? "strict" : "setwise";
}

inline Relation permute_relation(const Relation& rel, const Permutation& f) {
  Relation out{rel.arity, {}};
  for (const auto& t : rel.tuples) {
    Tuple image(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) image[i] = f(t[i]);
    out.tuples.insert(std::move(image));
  }
  return out;
}

struct PermutedStructure {
  FiniteStructure structure;
  // False when two extents collided (only possible for non-regular input).
  bool regular = true;
};

inline PermutedStructure apply_permutation(const FiniteStructure& s, const Permutation& f) {
  if (f.size() != s.universe_size) {
    throw Error(ErrorKind::kUniverseMismatch,
                "permutation of size " + std::to_string(f.size()) + " on universe of size " +
                    std::to_string(s.universe_size));
  }
  PermutedStructure out;
  out.structure.universe_size = s.universe_size;
  for (const auto& [name, rel] : s.relations) {
    out.structure.relations.emplace(name, permute_relation(rel, f));
  }
  for (const auto& [name, fn] : s.functions) {
    Function image{fn.arity, {}};
    for (const auto& [args, value] : fn.table) {
      Tuple mapped(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) mapped[i] = f(args[i]);
      image.table.emplace(std::move(mapped), f(value));
    }
    out.structure.functions.emplace(name, std::move(image));
  }
  for (const auto& [name, c] : s.constants) out.structure.constants.emplace(name, f(c));
  out.regular = duplicate_extents(out.structure).empty();
  return out;
}

// Sorted (arity, extent) family of the relations.
inline std::vector<Relation> extent_family(const FiniteStructure& s) {
  std::vector<Relation> out;
  for (const auto& [name, rel] : s.relations) out.push_back(rel);
  std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
    return std::tie(a.arity, a.tuples) < std::tie(b.arity, b.tuples);
  });
  return out;
}

// Whether f preserves the relations of s in the given mode.
inline bool preserves(const FiniteStructure& s, const Permutation& f, InvarianceMode mode) {
  if (mode == InvarianceMode::kStrict) {
    for (const auto& [name, rel] : s.relations) {
      if (!(permute_relation(rel, f) == rel)) return false;
    }
    return true;
  }
  return extent_family(apply_permutation(s, f).structure) == extent_family(s);
}

namespace detail {

// Backtracking search for bijections pi with pi(R_i) = R_{target[i]} for
// every relation index i. `forced[v] >= 0` pins pi(v). The visitor returns
// false to stop the search.
class MapSearch {
 public:
  MapSearch(const FiniteStructure& s, std::vector<int> target)
      : n_(s.universe_size), target_(std::move(target)) {
    for (const auto& [name, rel] : s.relations) rels_.push_back(&rel);
    for (const auto* rel : rels_) index_.emplace_back(*rel, n_);
    by_max_.assign(rels_.size(), std::vector<std::vector<const Tuple*>>(std::size_t(n_)));
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      for (const auto& t : rels_[r]->tuples) {
        Element top = *std::max_element(t.begin(), t.end());
        by_max_[r][std::size_t(top)].push_back(&t);
      }
    }
  }

  void run(const std::vector<Element>& forced, const std::function<bool(const Permutation&)>& visit) {
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      const Relation& to = *rels_[std::size_t(target_[r])];
      if (to.arity != rels_[r]->arity || to.tuples.size() != rels_[r]->tuples.size()) return;
    }
    image_.assign(std::size_t(n_), -1);
    used_.assign(std::size_t(n_), false);
    forced_ = forced;
    visit_ = &visit;
    stop_ = false;
    extend(0);
  }

 private:
  bool consistent(Element v) const {
    Tuple mapped;
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      for (const Tuple* t : by_max_[r][std::size_t(v)]) {
        mapped.resize(t->size());
        for (std::size_t i = 0; i < t->size(); ++i) mapped[i] = image_[std::size_t((*t)[i])];
        if (!index_[std::size_t(target_[r])].contains(mapped)) return false;
      }
    }
    return true;
  }

  void extend(Element v) {
    if (stop_) return;
    if (v == n_) {
      if (!(*visit_)(Permutation(image_))) stop_ = true;
      return;
    }
    auto attempt = [&](Element w) {
      if (used_[std::size_t(w)]) return;
      image_[std::size_t(v)] = w;
      used_[std::size_t(w)] = true;
      if (consistent(v)) extend(v + 1);
      used_[std::size_t(w)] = false;
      image_[std::size_t(v)] = -1;
    };
    if (forced_[std::size_t(v)] >= 0) {
      attempt(forced_[std::size_t(v)]);
    } else {
      for (Element w = 0; w < n_ && !stop_; ++w) attempt(w);
    }
  }

  int n_;
  std::vector<int> target_;
  std::vector<const Relation*> rels_;
  std::vector<RelationIndex> index_;
  std::vector<std::vector<std::vector<const Tuple*>>> by_max_;
  std::vector<Element> image_;
  std::vector<bool> used_;
  std::vector<Element> forced_;
  const std::function<bool(const Permutation&)>* visit_ = nullptr;
  bool stop_ = false;
};

// Relation-index maps allowed by the mode: the identity for kStrict, every
// arity-preserving bijection of symbols for kSetwise.
inline std::vector<std::vector<int>> symbol_targets(const FiniteStructure& s, InvarianceMode mode) {
  const int count = int(s.relations.size());
  std::vector<int> ident(static_cast<std::size_t>(count));
  std::iota(ident.begin(), ident.end(), 0);
  if (mode == InvarianceMode::kStrict) return {ident};
  std::vector<int> arity;
  for (const auto& [name, rel] : s.relations) arity.push_back(rel.arity);
  std::vector<std::vector<int>> out;
  std::vector<int> perm = ident;
  do {
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) ok = arity[std::size_t(i)] == arity[std::size_t(perm[std::size_t(i)])];
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline void for_each_map(const FiniteStructure& s, InvarianceMode mode,
                         const std::vector<Element>& forced,
                         const std::function<bool(const Permutation&)>& visit) {
  bool stopped = false;
  for (const auto& target : symbol_targets(s, mode)) {
    MapSearch search(s, target);
    search.run(forced, [&](const Permutation& p) {
      if (!visit(p)) {
        stopped = true;
        return false;
      }
      return true;
    });
    if (stopped) return;
  }
}

}  // namespace detail

inline constexpr int kDefaultPermutationCap = 8;
// Symbols per structure for setwise searches, which try every
// arity-preserving relabelling of symbols.
inline constexpr int kSetwiseSymbolCap = 8;

struct AutomorphismOptions {
  InvarianceMode mode = InvarianceMode::kStrict;
  int exhaustive_cap = kDefaultPermutationCap;
};

// Every automorphism in the given mode, sorted lexicographically by image.
inline std::vector<Permutation> automorphisms(const FiniteStructure& s,
                                              const AutomorphismOptions& options = {}) {
  if (s.universe_size > options.exhaustive_cap) {
    throw Error(ErrorKind::kCapExceeded,
                "universe of size " + std::to_string(s.universe_size) +
                    " exceeds the exhaustive cap " + std::to_string(options.exhaustive_cap) +
                    "; use generators-only mode");
  }
  if (options.mode == InvarianceMode::kSetwise && int(s.relations.size()) > kSetwiseSymbolCap) {
    throw Error(ErrorKind::kCapExceeded, "too many symbols for a setwise search");
  }
  std::set<Permutation> found;
  std::vector<Element> free(std::size_t(s.universe_size), -1);
  detail::for_each_map(s, options.mode, free, [&](const Permutation& p) {
    found.insert(p);
    return true;
  });
  return {found.begin(), found.end()};
}

struct AutomorphismGenerators {
  // Coset representatives along the stabilizer chain of 0, 1, ..., n-1.
  std::vector<Permutation> generators;
  std::vector<std::size_t> transversal_sizes;

  std::uint64_t group_order() const {
    std::uint64_t order = 1;
    for (auto t : transversal_sizes) order *= t;
    return order;
  }
};

// Generators-only mode: no cap on the universe size, one search per coset.
inline AutomorphismGenerators automorphism_generators(const FiniteStructure& s,
                                                      InvarianceMode mode = InvarianceMode::kStrict) {
  if (mode == InvarianceMode::kSetwise && int(s.relations.size()) > kSetwiseSymbolCap) {
    throw Error(ErrorKind::kCapExceeded, "too many symbols for a setwise search");
  }
  const int n = s.universe_size;
  AutomorphismGenerators out;
  for (Element level = 0; level < n; ++level) {
    std::size_t orbit = 1;
    for (Element target = level + 1; target < n; ++target) {
      std::vector<Element> forced(std::size_t(n), -1);
      for (Element v = 0; v < level; ++v) forced[std::size_t(v)] = v;
      forced[std::size_t(level)] = target;
      std::optional<Permutation> rep;
      detail::for_each_map(s, mode, forced, [&](const Permutation& p) {
        rep = p;
        return false;
      });
      if (rep) {
        ++orbit;
        out.generators.push_back(*rep);
      }
    }
    out.transversal_sizes.push_back(orbit);
  }
  return out;
}

// Exact for any universe size: the preserving permutations form a group, so
// it is the full symmetric group iff every adjacent transposition is in it.
inline bool is_perm_invariant(const FiniteStructure& s, InvarianceMode mode) {
  for (Element k = 0; k + 1 < s.universe_size; ++k) {
    if (!preserves(s, Permutation::transposition(s.universe_size, k, k + 1), mode)) return false;
  }
  return true;
}

enum class PermutationSweep { kGenerators, kExhaustive };

struct PermClosureWitness {
  Permutation permutation;
  SymbolSet member;
  // Image in the algebra; nullopt when f(N) is not a restriction of the
  // ambient.
  std::optional<SymbolSet> image;
};

struct PermClosureResult {
  bool closed = true;
  std::optional<PermClosureWitness> witness;
  std::size_t permutations_checked = 0;
};

// The element f(N) of the algebra, or nullopt when f(N) leaves it.
inline std::optional<SymbolSet> permuted_element(const AmbientAlgebra& a, SymbolSet member,
                                                 const Permutation& f, InvarianceMode mode) {
  const auto& rels = a.ambient().relations;
  SymbolSet image = 0;
  for (int i = 0; i < a.symbol_count(); ++i) {
    if (!(member >> i & 1)) continue;
    const Relation& rel = rels.at(a.symbols()[std::size_t(i)]);
    Relation moved = permute_relation(rel, f);
    if (mode == InvarianceMode::kStrict) {
      if (!(moved == rel)) return std::nullopt;
      image |= SymbolSet{1} << i;
      continue;
    }
    bool found = false;
    for (int j = 0; j < a.symbol_count() && !found; ++j) {
      if (rels.at(a.symbols()[std::size_t(j)]) == moved) {
        image |= SymbolSet{1} << j;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return image;
}

// Whether every permutation image of every member of P is again in P. The
// generator sweep is exact: closure under adjacent transpositions implies
// closure under the group they generate.
inline PermClosureResult is_perm_closed_property(const PropertySet& p, const AmbientAlgebra& a,
                                                 InvarianceMode mode,
                                                 PermutationSweep sweep = PermutationSweep::kGenerators,
                                                 int exhaustive_cap = kDefaultPermutationCap) {
  if (p.symbol_count() != a.symbol_count()) {
    throw Error(ErrorKind::kInvalidArgument, "property and ambient disagree on symbol count");
  }
  const int n = a.ambient().universe_size;
  std::vector<Permutation> perms;
  if (sweep == PermutationSweep::kGenerators) {
    for (Element k = 0; k + 1 < n; ++k) perms.push_back(Permutation::transposition(n, k, k + 1));
  } else {
    if (n > exhaustive_cap) {
      throw Error(ErrorKind::kCapExceeded,
                  "universe of size " + std::to_string(n) + " exceeds the exhaustive cap");
    }
    auto ident = Permutation::identity(n).image();
    do {
      perms.emplace_back(ident);
    } while (std::next_permutation(ident.begin(), ident.end()));
  }
  PermClosureResult result;
  const auto members = p.canonical_members();
  for (const auto& f : perms) {
    ++result.permutations_checked;
    for (SymbolSet m : members) {
      auto image = permuted_element(a, m, f, mode);
      if (!image || !p.contains(*image)) {
        result.closed = false;
        result.witness = PermClosureWitness{f, m, image};
        return result;
      }
    }
  }
  return result;
}

}  // namespace structlab
