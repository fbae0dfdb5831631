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

// Quantifier-rank types of tuples and the Ehrenfeucht-Fraisse game.
//
// The partition is computed bottom-up: tuples of length m+q get their
// atomic type, and the rank-(k+1) label of a tuple of length l is its atomic
// type together with the set of rank-k labels of its one-point extensions.
// The game solver is a separate code path used as an oracle.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "structlab/error.hpp"
#include "structlab/structure.hpp"

namespace structlab {

inline constexpr std::size_t kDefaultTypeBudget = std::size_t{1} << 24;
inline constexpr std::size_t kDefaultEfBudget = std::size_t{1} << 28;

struct TypePartition {
  int arity = 0;
  int rank = 0;
  int universe_size = 0;
  // Label of every m-tuple, indexed by its lexicographic code. Labels are
  // numbered in order of first appearance.
  std::vector<int> labels;
  // Tuples of each block, lexicographically sorted; block i has label i.
  std::vector<std::vector<Tuple>> blocks;

  int label_of(const Tuple& t) const { return labels.at(encode_tuple(t, universe_size)); }
  std::size_t block_count() const { return blocks.size(); }
};

namespace detail {

// Interns atomic types of tuples of a fixed length: the equality pattern
// plus membership of every position tuple in every relation.
class AtomicTyper {
 public:
  AtomicTyper(const FiniteStructure& s, int length) : length_(length) {
    for (const auto& [name, rel] : s.relations) {
      index_.emplace_back(rel, s.universe_size);
      arity_.push_back(rel.arity);
    }
  }

  int type_of(const Tuple& t) {
    std::string key;
    for (int i = 0; i < length_; ++i) {
      for (int j = i + 1; j < length_; ++j) key += t[std::size_t(i)] == t[std::size_t(j)] ? '1' : '0';
    }
    Tuple probe;
    for (std::size_t r = 0; r < index_.size(); ++r) {
      const int a = arity_[r];
      auto positions = tuple_count(length_, a);
      if (!positions) throw Error(ErrorKind::kBudgetExceeded, "atomic type too large");
      probe.resize(std::size_t(a));
      for (std::size_t code = 0; code < *positions; ++code) {
        Tuple pos = decode_tuple(code, length_, a);
        for (int i = 0; i < a; ++i) probe[std::size_t(i)] = t[std::size_t(pos[std::size_t(i)])];
        key += index_[r].contains(probe) ? '1' : '0';
      }
    }
    auto [it, fresh] = ids_.emplace(std::move(key), int(ids_.size()));
    return it->second;
  }

 private:
  int length_;
  std::vector<RelationIndex> index_;
  std::vector<int> arity_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace detail

// Partition of m-tuples into rank-q type classes.
inline TypePartition qr_type_partition(const FiniteStructure& s, int m, int q,
                                       std::size_t budget = kDefaultTypeBudget) {
  if (m < 1 || m > 3) throw Error(ErrorKind::kInvalidArgument, "arity must be in 1..3");
  if (q < 0) throw Error(ErrorKind::kInvalidArgument, "rank must be non-negative");
  if (!s.functions.empty() || !s.constants.empty()) {
    throw Error(ErrorKind::kPrecondition, "structure must be relational; regularize it first");
  }
  const int n = s.universe_size;
  auto top = tuple_count(n, m + q);
  if (!top || *top > budget) {
    throw Error(ErrorKind::kBudgetExceeded,
                "type computation needs n^(m+q) tuples beyond the budget of " +
                    std::to_string(budget));
  }
  // labels[c] for tuples of the current length.
  std::vector<int> labels(*top);
  {
    detail::AtomicTyper typer(s, m + q);
    for (std::size_t c = 0; c < *top; ++c) labels[c] = typer.type_of(decode_tuple(c, n, m + q));
  }
  for (int length = m + q - 1; length >= m; --length) {
    const std::size_t count = *tuple_count(n, length);
    detail::AtomicTyper typer(s, length);
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(count);
    std::vector<int> key;
    for (std::size_t c = 0; c < count; ++c) {
      key.assign(1, typer.type_of(decode_tuple(c, n, length)));
      std::vector<int> ext(labels.begin() + std::ptrdiff_t(c * std::size_t(n)),
                           labels.begin() + std::ptrdiff_t((c + 1) * std::size_t(n)));
      std::sort(ext.begin(), ext.end());
      ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
      key.insert(key.end(), ext.begin(), ext.end());
      auto [it, fresh] = ids.emplace(key, int(ids.size()));
      next[c] = it->second;
    }
    labels = std::move(next);
  }
  TypePartition out;
  out.arity = m;
  out.rank = q;
  out.universe_size = n;
  out.labels.resize(labels.size());
  std::map<int, int> renumber;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    auto [it, fresh] = renumber.emplace(labels[c], int(renumber.size()));
    out.labels[c] = it->second;
    if (fresh) out.blocks.emplace_back();
    out.blocks[std::size_t(it->second)].push_back(decode_tuple(c, n, m));
  }
  return out;
}

enum class Winner { kSpoiler, kDuplicator };

inline std::string_view winner_name(Winner w) {
  return w == Winner::kSpoiler ? "spoiler" : "duplicator";
}

// Exact solver for the q-round game between two relational structures over
// the same signature. Positions are memoized across calls on one instance.
class EfGame {
 public:
  EfGame(const FiniteStructure& a, const FiniteStructure& b, std::size_t budget = kDefaultEfBudget)
      : a_(a), b_(b), budget_(budget) {
    for (const auto* s : {&a, &b}) {
      if (!s->functions.empty() || !s->constants.empty()) {
        throw Error(ErrorKind::kPrecondition, "structures must be relational; regularize first");
      }
    }
    if (a.relations.size() != b.relations.size()) {
      throw Error(ErrorKind::kPrecondition, "structures have different signatures");
    }
    for (const auto& [name, rel] : a.relations) {
      auto it = b.relations.find(name);
      if (it == b.relations.end() || it->second.arity != rel.arity) {
        throw Error(ErrorKind::kPrecondition, "structures have different signatures");
      }
      index_a_.emplace_back(rel, a.universe_size);
      index_b_.emplace_back(it->second, b.universe_size);
      arity_.push_back(rel.arity);
    }
  }

  Winner play(const Tuple& x, const Tuple& y, int rounds) {
    if (x.size() != y.size()) {
      throw Error(ErrorKind::kInvalidArgument, "tuples of different lengths");
    }
    if (rounds < 0) throw Error(ErrorKind::kInvalidArgument, "rounds must be non-negative");
    check_tuple(x, int(x.size()), a_.universe_size, "first tuple");
    check_tuple(y, int(y.size()), b_.universe_size, "second tuple");
    Tuple px, py;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!extends(px, py, x[i], y[i])) return Winner::kSpoiler;
      px.push_back(x[i]);
      py.push_back(y[i]);
    }
    return duplicator_wins(px, py, rounds) ? Winner::kDuplicator : Winner::kSpoiler;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  // Whether appending (c, d) to a partial isomorphism x -> y keeps it one.
  bool extends(const Tuple& x, const Tuple& y, Element c, Element d) const {
    const std::size_t len = x.size();
    for (std::size_t i = 0; i < len; ++i) {
      if ((x[i] == c) != (y[i] == d)) return false;
    }
    Tuple pa, pb;
    for (std::size_t r = 0; r < arity_.size(); ++r) {
      const int arity = arity_[r];
      const std::size_t positions = *tuple_count(int(len) + 1, arity);
      pa.resize(std::size_t(arity));
      pb.resize(std::size_t(arity));
      for (std::size_t code = 0; code < positions; ++code) {
        Tuple pos = decode_tuple(code, int(len) + 1, arity);
        bool uses_new = false;
        for (int i = 0; i < arity; ++i) {
          const std::size_t p = std::size_t(pos[std::size_t(i)]);
          uses_new = uses_new || p == len;
          pa[std::size_t(i)] = p == len ? c : x[p];
          pb[std::size_t(i)] = p == len ? d : y[p];
        }
        if (uses_new && index_a_[r].contains(pa) != index_b_[r].contains(pb)) return false;
      }
    }
    return true;
  }

  std::optional<std::uint64_t> key(const Tuple& x, const Tuple& y, int rounds) const {
    auto ca = tuple_count(a_.universe_size, int(x.size()));
    auto cb = tuple_count(b_.universe_size, int(y.size()));
    if (!ca || !cb || *ca == 0 || *cb == 0) return std::nullopt;
    // Keep code * 1024 below 2^62.
    constexpr std::uint64_t kSpan = std::uint64_t{1} << 52;
    if (rounds >= 64 || x.size() >= 16 || *ca > kSpan / *cb) return std::nullopt;
    const std::uint64_t code =
        std::uint64_t(encode_tuple(x, a_.universe_size)) * *cb + encode_tuple(y, b_.universe_size);
    return (code * 64 + std::uint64_t(rounds)) * 16 + x.size();
  }

  void tick() {
    if (++nodes_ > budget_) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "game search exceeded " + std::to_string(budget_) + " nodes");
    }
  }

  // x -> y is known to be a partial isomorphism.
  bool duplicator_wins(Tuple& x, Tuple& y, int rounds) {
    if (rounds == 0) return true;
    tick();
    std::optional<std::uint64_t> k;
    if (rounds >= 2) {
      k = key(x, y, rounds);
      if (k) {
        auto it = memo_.find(*k);
        if (it != memo_.end()) return it->second;
      }
    }
    bool result = spoiler_side(x, y, a_.universe_size, b_.universe_size, rounds, true) &&
                  spoiler_side(x, y, b_.universe_size, a_.universe_size, rounds, false);
    if (k) memo_.emplace(*k, result);
    return result;
  }

  // Duplicator answers every spoiler move made in one structure.
  bool spoiler_side(Tuple& x, Tuple& y, int spoiler_n, int reply_n, int rounds, bool in_a) {
    for (Element c = 0; c < spoiler_n; ++c) {
      bool answered = false;
      for (Element d = 0; d < reply_n && !answered; ++d) {
        const Element ea = in_a ? c : d, eb = in_a ? d : c;
        if (!extends(x, y, ea, eb)) continue;
        if (rounds == 1) {
          answered = true;
          continue;
        }
        x.push_back(ea);
        y.push_back(eb);
        answered = duplicator_wins(x, y, rounds - 1);
        x.pop_back();
        y.pop_back();
      }
      if (!answered) return false;
    }
    return true;
  }

  const FiniteStructure& a_;
  const FiniteStructure& b_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<RelationIndex> index_a_, index_b_;
  std::vector<int> arity_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

inline Winner ef_game_winner(const FiniteStructure& a, const Tuple& x, const FiniteStructure& b,
                             const Tuple& y, int rounds, std::size_t budget = kDefaultEfBudget) {
  EfGame game(a, b, budget);
  return game.play(x, y, rounds);
}

}  // namespace structlab
