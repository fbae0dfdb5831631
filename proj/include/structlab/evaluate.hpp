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

// Tarskian evaluation of formulas over finite structures.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "structlab/error.hpp"
#include "structlab/formula.hpp"
#include "structlab/structure.hpp"

namespace structlab {

using Assignment = std::map<std::string, Element>;

// A formula bound to one structure. Variables are resolved to slots at
// construction: the listed inputs take slots 0..k-1 and every quantifier
// gets a private slot, so shadowing needs no runtime lookup. Closed
// subformulas are evaluated once here; afterwards the object is immutable
// and `holds` may be called concurrently with distinct scratch buffers.
// The structure must outlive the compiled formula.
class CompiledFormula {
 public:
  CompiledFormula(const FiniteStructure& s, const Formula& f,
                  std::vector<std::string> inputs)
      : n_(s.universe_size), inputs_(std::move(inputs)) {
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (inputs_[i] == inputs_[j]) {
          throw Error(ErrorKind::kVariableOverlap,
                      "variable '" + inputs_[i] + "' listed twice");
        }
      }
    }
    std::vector<std::pair<std::string, int>> scope;
    for (std::size_t i = 0; i < inputs_.size(); ++i) scope.emplace_back(inputs_[i], int(i));
    slot_count_ = int(inputs_.size());
    std::map<std::string, int> relation_ids;
    root_ = compile(s, f, scope, relation_ids);
    std::vector<Element> scratch(std::size_t(slot_count_), 0);
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      if (nodes_[id].closed && nodes_[id].kind != Formula::Kind::kTrue &&
          nodes_[id].kind != Formula::Kind::kFalse) {
        nodes_[id].cached = eval(int(id), scratch.data()) ? 1 : 0;
      }
    }
  }

  const std::vector<std::string>& inputs() const { return inputs_; }
  int universe_size() const { return n_; }
  std::size_t scratch_size() const { return std::size_t(slot_count_); }

  // `scratch` must hold scratch_size() elements; values fill the inputs.
  bool holds(std::span<const Element> values, std::span<Element> scratch) const {
    for (std::size_t i = 0; i < inputs_.size(); ++i) scratch[i] = values[i];
    return eval(root_, scratch.data());
  }

  bool holds(std::span<const Element> values) const {
    std::vector<Element> scratch(scratch_size(), 0);
    return holds(values, scratch);
  }

 private:
  struct Node {
    Formula::Kind kind = Formula::Kind::kTrue;
    int relation = -1;
    int slot = -1;
    std::vector<int> slots;
    std::vector<int> children;
    bool closed = false;
    std::int8_t cached = -1;
  };

  int compile(const FiniteStructure& s, const Formula& f,
              std::vector<std::pair<std::string, int>>& scope,
              std::map<std::string, int>& relation_ids) {
    auto lookup = [&](const std::string& var) {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == var) return it->second;
      }
      throw Error(ErrorKind::kUnboundVariable, "unbound free variable '" + var + "'");
    };
    Node node;
    node.kind = f.kind();
    switch (f.kind()) {
      case Formula::Kind::kAtom: {
        auto rel = s.relations.find(f.symbol());
        if (rel == s.relations.end()) {
          throw Error(ErrorKind::kUnknownSymbol, "unknown relation symbol '" + f.symbol() + "'");
        }
        if (int(f.variables().size()) != rel->second.arity) {
          throw Error(ErrorKind::kArityMismatch,
                      "atom " + f.symbol() + " applied to " +
                          std::to_string(f.variables().size()) + " variables, arity is " +
                          std::to_string(rel->second.arity));
        }
        auto [it, fresh] = relation_ids.emplace(f.symbol(), int(relations_.size()));
        if (fresh) relations_.emplace_back(rel->second, n_);
        node.relation = it->second;
        for (const auto& v : f.variables()) node.slots.push_back(lookup(v));
        break;
      }
      case Formula::Kind::kEquality:
        for (const auto& v : f.variables()) node.slots.push_back(lookup(v));
        break;
      case Formula::Kind::kExists:
      case Formula::Kind::kForall: {
        node.slot = slot_count_++;
        scope.emplace_back(f.bound_variable(), node.slot);
        node.children.push_back(compile(s, f.child(0), scope, relation_ids));
        scope.pop_back();
        break;
      }
      default:
        for (const auto& c : f.children()) {
          node.children.push_back(compile(s, c, scope, relation_ids));
        }
    }
    nodes_.push_back(std::move(node));
    int id = int(nodes_.size()) - 1;
    free_slots_.resize(nodes_.size());
    // Closed: reads no slot bound outside the node.
    free_slots_[std::size_t(id)] = collect_free_slots(id);
    nodes_[std::size_t(id)].closed = free_slots_[std::size_t(id)].empty();
    return id;
  }

  std::vector<int> collect_free_slots(int id) const {
    const Node& node = nodes_[std::size_t(id)];
    std::vector<int> out = node.slots;
    for (int c : node.children) {
      for (int slot : free_slots_[std::size_t(c)]) {
        if (slot != node.slot) out.push_back(slot);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool eval(int id, Element* env) const {
    const Node& node = nodes_[std::size_t(id)];
    if (node.cached >= 0) return node.cached != 0;
    switch (node.kind) {
      case Formula::Kind::kAtom: {
        Element buffer[16];
        std::vector<Element> heap;
        Element* args = buffer;
        if (node.slots.size() > 16) {
          heap.resize(node.slots.size());
          args = heap.data();
        }
        for (std::size_t i = 0; i < node.slots.size(); ++i) {
          args[i] = env[node.slots[i]];
        }
        return relations_[std::size_t(node.relation)].contains(
            std::span<const Element>(args, node.slots.size()));
      }
      case Formula::Kind::kEquality:
        return env[node.slots[0]] == env[node.slots[1]];
      case Formula::Kind::kTrue: return true;
      case Formula::Kind::kFalse: return false;
      case Formula::Kind::kNot: return !eval(node.children[0], env);
      case Formula::Kind::kAnd:
        return eval(node.children[0], env) && eval(node.children[1], env);
      case Formula::Kind::kOr:
        return eval(node.children[0], env) || eval(node.children[1], env);
      case Formula::Kind::kImplies:
        return !eval(node.children[0], env) || eval(node.children[1], env);
      case Formula::Kind::kIff:
        return eval(node.children[0], env) == eval(node.children[1], env);
      case Formula::Kind::kExists:
        for (Element e = 0; e < n_; ++e) {
          env[node.slot] = e;
          if (eval(node.children[0], env)) return true;
        }
        return false;
      case Formula::Kind::kForall:
        for (Element e = 0; e < n_; ++e) {
          env[node.slot] = e;
          if (!eval(node.children[0], env)) return false;
        }
        return true;
    }
    return false;
  }

  int n_;
  std::vector<std::string> inputs_;
  int slot_count_ = 0;
  int root_ = -1;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> free_slots_;
  std::vector<RelationIndex> relations_;
};

inline bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& a) {
  std::vector<std::string> inputs = free_variables(f);
  Tuple values;
  for (const auto& v : inputs) {
    auto it = a.find(v);
    if (it == a.end()) {
      throw Error(ErrorKind::kUnboundVariable, "no value for free variable '" + v + "'");
    }
    if (it->second < 0 || it->second >= s.universe_size) {
      throw Error(ErrorKind::kOutOfRange, "value of '" + v + "' outside the universe");
    }
    values.push_back(it->second);
  }
  CompiledFormula compiled(s, f, std::move(inputs));
  return compiled.holds(values);
}

// Calls `fn(index, tuple)` for every tuple of the given length; work is split
// across `jobs` threads by contiguous index ranges.
template <typename Fn>
void parallel_for_tuples(int n, int length, int jobs, Fn&& fn) {
  auto count = tuple_count(n, length);
  if (!count) throw Error(ErrorKind::kBudgetExceeded, "tuple space overflow");
  const std::size_t total = *count;
  if (jobs <= 1 || total < 64) {
    for (std::size_t c = 0; c < total; ++c) fn(c, decode_tuple(c, n, length));
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t chunk = (total + std::size_t(jobs) - 1) / std::size_t(jobs);
  for (int w = 0; w < jobs; ++w) {
    const std::size_t lo = std::size_t(w) * chunk;
    const std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&fn, lo, hi, n, length] {
      for (std::size_t c = lo; c < hi; ++c) fn(c, decode_tuple(c, n, length));
    });
  }
  for (auto& w : workers) w.join();
}

// All tuples over `free_order` satisfying f under `params`, in lexicographic
// order. Variables of `free_order` that are not free in f range freely.
inline std::vector<Tuple> definable_set(const FiniteStructure& s, const Formula& f,
                                        const std::vector<std::string>& free_order,
                                        const Assignment& params, int jobs = 1) {
  for (const auto& v : free_order) {
    if (params.count(v)) {
      throw Error(ErrorKind::kVariableOverlap,
                  "variable '" + v + "' is both free and a parameter");
    }
  }
  std::vector<std::string> inputs = free_order;
  Tuple fixed;
  for (const auto& [name, value] : params) {
    if (value < 0 || value >= s.universe_size) {
      throw Error(ErrorKind::kOutOfRange, "parameter '" + name + "' outside the universe");
    }
    inputs.push_back(name);
    fixed.push_back(value);
  }
  CompiledFormula compiled(s, f, inputs);
  const int len = int(free_order.size());
  auto count = tuple_count(s.universe_size, len);
  if (!count) throw Error(ErrorKind::kBudgetExceeded, "tuple space overflow");
  std::vector<std::uint8_t> hit(*count, 0);
  parallel_for_tuples(s.universe_size, len, jobs, [&](std::size_t code, Tuple t) {
    std::vector<Element> scratch(compiled.scratch_size(), 0);
    t.insert(t.end(), fixed.begin(), fixed.end());
    hit[code] = compiled.holds(t, scratch) ? 1 : 0;
  });
  std::vector<Tuple> out;
  for (std::size_t c = 0; c < hit.size(); ++c) {
    if (hit[c]) out.push_back(decode_tuple(c, s.universe_size, len));
  }
  return out;
}

}  // namespace structlab
