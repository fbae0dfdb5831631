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

// The Boolean algebra of restrictions of a declared ambient structure.
//
// An element is a subset of the ambient's symbols, stored as a bit mask in
// symbol_index order (symbols sorted by name). A property is a set of
// elements, stored as a bitset over the 2^s masks.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "structlab/combine.hpp"
#include "structlab/error.hpp"
#include "structlab/structure.hpp"

namespace structlab {

using SymbolSet = std::uint32_t;

inline constexpr int kMaxAlgebraSymbols = 20;
// Largest symbol count for which every property is enumerated.
inline constexpr int kExhaustivePropertyCap = 4;

class AmbientAlgebra {
 public:
  explicit AmbientAlgebra(FiniteStructure ambient) : ambient_(std::move(ambient)) {
    validate(ambient_);
    if (!is_regular(ambient_)) {
      throw Error(ErrorKind::kPrecondition, "ambient structure must be regular");
    }
    symbols_ = ambient_.relation_names();
    if (int(symbols_.size()) > kMaxAlgebraSymbols) {
      throw Error(ErrorKind::kCapExceeded,
                  "ambient has more than " + std::to_string(kMaxAlgebraSymbols) + " symbols");
    }
  }

  const FiniteStructure& ambient() const { return ambient_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  int symbol_count() const { return int(symbols_.size()); }
  std::size_t element_count() const { return std::size_t{1} << symbols_.size(); }
  SymbolSet least() const { return 0; }
  SymbolSet greatest() const { return SymbolSet((std::uint64_t{1} << symbols_.size()) - 1); }

  int index_of(const std::string& name) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end() || *it != name) {
      throw Error(ErrorKind::kUnknownSymbol, "symbol '" + name + "' not in the ambient");
    }
    return int(it - symbols_.begin());
  }

  SymbolSet element(const std::vector<std::string>& names) const {
    SymbolSet mask = 0;
    for (const auto& name : names) mask |= SymbolSet{1} << index_of(name);
    return mask;
  }

  std::vector<std::string> names(SymbolSet mask) const {
    std::vector<std::string> out;
    for (int i = 0; i < symbol_count(); ++i) {
      if (mask & (SymbolSet{1} << i)) out.push_back(symbols_[std::size_t(i)]);
    }
    return out;
  }

  FiniteStructure restriction(SymbolSet mask) const {
    auto kept = names(mask);
    return restrict(ambient_, std::set<std::string>(kept.begin(), kept.end()));
  }

 private:
  FiniteStructure ambient_;
  std::vector<std::string> symbols_;
};

// Orders elements by size, then lexicographically by symbol index list.
inline bool canonical_less(SymbolSet a, SymbolSet b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  while (a && b) {
    int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

class PropertySet {
 public:
  PropertySet() : PropertySet(0) {}
  explicit PropertySet(int symbol_count)
      : symbol_count_(symbol_count), bits_(std::size_t{1} << symbol_count) {
    if (symbol_count < 0 || symbol_count > kMaxAlgebraSymbols) {
      throw Error(ErrorKind::kCapExceeded, "symbol count out of range");
    }
  }

  static PropertySet all(int symbol_count) {
    PropertySet p(symbol_count);
    p.bits_.set();
    return p;
  }

  static PropertySet of(int symbol_count, const std::vector<SymbolSet>& members) {
    PropertySet p(symbol_count);
    for (SymbolSet m : members) p.insert(m);
    return p;
  }

  int symbol_count() const { return symbol_count_; }
  std::size_t element_count() const { return bits_.size(); }
  SymbolSet greatest() const { return SymbolSet(bits_.size() - 1); }

  bool contains(SymbolSet m) const { return m < bits_.size() && bits_.test(m); }
  void insert(SymbolSet m) {
    if (m >= bits_.size()) throw Error(ErrorKind::kOutOfRange, "element outside the algebra");
    bits_.set(m);
  }
  void erase(SymbolSet m) {
    if (m < bits_.size()) bits_.reset(m);
  }

  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_full() const { return bits_.all(); }

  PropertySet complement() const {
    PropertySet p(*this);
    p.bits_.flip();
    return p;
  }

  PropertySet& operator|=(const PropertySet& o) {
    check_same(o);
    bits_ |= o.bits_;
    return *this;
  }
  PropertySet& operator&=(const PropertySet& o) {
    check_same(o);
    bits_ &= o.bits_;
    return *this;
  }
  friend PropertySet operator|(PropertySet a, const PropertySet& b) { return a |= b; }
  friend PropertySet operator&(PropertySet a, const PropertySet& b) { return a &= b; }

  bool is_subset_of(const PropertySet& o) const {
    check_same(o);
    return bits_.is_subset_of(o.bits_);
  }

  // Members in increasing mask order.
  std::vector<SymbolSet> members() const {
    std::vector<SymbolSet> out;
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
      out.push_back(SymbolSet(i));
    }
    return out;
  }

  std::vector<SymbolSet> canonical_members() const {
    auto out = members();
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }

  const boost::dynamic_bitset<>& bits() const { return bits_; }

  friend bool operator==(const PropertySet& a, const PropertySet& b) {
    return a.symbol_count_ == b.symbol_count_ && a.bits_ == b.bits_;
  }

 private:
  void check_same(const PropertySet& o) const {
    if (o.symbol_count_ != symbol_count_) {
      throw Error(ErrorKind::kInvalidArgument, "properties over different algebras");
    }
  }

  int symbol_count_;
  boost::dynamic_bitset<> bits_;
};

inline PropertySet upper_cone(int symbol_count, SymbolSet elem) {
  PropertySet p(symbol_count);
  const SymbolSet full = p.greatest();
  if (elem & ~full) throw Error(ErrorKind::kOutOfRange, "element outside the algebra");
  // Enumerate supersets as elem | (subsets of the complement).
  const SymbolSet rest = full & ~elem;
  SymbolSet sub = rest;
  while (true) {
    p.insert(elem | sub);
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  return p;
}

inline PropertySet lower_cone(int symbol_count, SymbolSet elem) {
  PropertySet p(symbol_count);
  if (elem & ~p.greatest()) throw Error(ErrorKind::kOutOfRange, "element outside the algebra");
  SymbolSet sub = elem;
  while (true) {
    p.insert(sub);
    if (sub == 0) break;
    sub = (sub - 1) & elem;
  }
  return p;
}

inline PropertySet upper_cone(const AmbientAlgebra& a, const std::vector<std::string>& elem) {
  return upper_cone(a.symbol_count(), a.element(elem));
}

inline PropertySet lower_cone(const AmbientAlgebra& a, const std::vector<std::string>& elem) {
  return lower_cone(a.symbol_count(), a.element(elem));
}

// A member of P and a one-symbol neighbour outside P.
struct ClosureViolation {
  SymbolSet member;
  SymbolSet outside;

  friend bool operator==(const ClosureViolation&, const ClosureViolation&) = default;
};

// Checking covering pairs suffices: an up-set is closed under adding one
// symbol at a time.
inline std::optional<ClosureViolation> expansion_violation(const PropertySet& p) {
  for (SymbolSet m : p.members()) {
    for (int i = 0; i < p.symbol_count(); ++i) {
      SymbolSet bit = SymbolSet{1} << i;
      if (!(m & bit) && !p.contains(m | bit)) return ClosureViolation{m, m | bit};
    }
  }
  return std::nullopt;
}

inline std::optional<ClosureViolation> restriction_violation(const PropertySet& p) {
  for (SymbolSet m : p.members()) {
    for (int i = 0; i < p.symbol_count(); ++i) {
      SymbolSet bit = SymbolSet{1} << i;
      if ((m & bit) && !p.contains(m & ~bit)) return ClosureViolation{m, m & ~bit};
    }
  }
  return std::nullopt;
}

inline bool is_expansion_closed(const PropertySet& p) { return !expansion_violation(p); }
inline bool is_restriction_closed(const PropertySet& p) { return !restriction_violation(p); }

inline bool is_union_closed(const PropertySet& p) {
  auto m = p.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!p.contains(m[i] | m[j])) return false;
    }
  }
  return true;
}

inline bool is_intersection_closed(const PropertySet& p) {
  auto m = p.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!p.contains(m[i] & m[j])) return false;
    }
  }
  return true;
}

// Nonempty and closed under pairwise union and intersection.
inline bool is_lattice_property(const PropertySet& p) {
  return !p.empty() && is_union_closed(p) && is_intersection_closed(p);
}

inline PropertySet union_of_upper_cones(const PropertySet& p) {
  PropertySet out(p.symbol_count());
  for (SymbolSet m : p.members()) out |= upper_cone(p.symbol_count(), m);
  return out;
}

inline PropertySet union_of_lower_cones(const PropertySet& p) {
  PropertySet out(p.symbol_count());
  for (SymbolSet m : p.members()) out |= lower_cone(p.symbol_count(), m);
  return out;
}

enum class Direction { kUp, kDown };

// Minimal (up) or maximal (down) members; their cones reproduce P exactly.
inline std::vector<SymbolSet> cone_decomposition(const PropertySet& p, Direction dir) {
  auto violation = dir == Direction::kUp ? expansion_violation(p) : restriction_violation(p);
  if (violation) {
    throw Error(ErrorKind::kPrecondition,
                std::string("property is not closed under ") +
                    (dir == Direction::kUp ? "expansions" : "restrictions") + ": mask " +
                    std::to_string(violation->member) + " is a member but mask " +
                    std::to_string(violation->outside) + " is not");
  }
  std::vector<SymbolSet> out;
  for (SymbolSet m : p.members()) {
    bool extreme = true;
    for (int i = 0; i < p.symbol_count() && extreme; ++i) {
      SymbolSet bit = SymbolSet{1} << i;
      if (dir == Direction::kUp && (m & bit) && p.contains(m & ~bit)) extreme = false;
      if (dir == Direction::kDown && !(m & bit) && p.contains(m | bit)) extreme = false;
    }
    if (extreme) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

struct DualityReport {
  bool expansion_closed = false;
  bool restriction_closed = false;
  bool complement_expansion_closed = false;
  bool complement_restriction_closed = false;
  bool equals_union_of_upper_cones = false;
  bool equals_union_of_lower_cones = false;
  bool complement_equals_union_of_lower_cones = false;
  bool complement_equals_union_of_upper_cones = false;

  // Closed under expansions iff the complement is closed under restrictions,
  // and symmetrically.
  bool duality_holds() const {
    return expansion_closed == complement_restriction_closed &&
           restriction_closed == complement_expansion_closed;
  }
  // The three-way equivalence for expansions and for restrictions.
  bool upward_equivalence_holds() const {
    return expansion_closed == equals_union_of_upper_cones &&
           expansion_closed == complement_equals_union_of_lower_cones;
  }
  bool downward_equivalence_holds() const {
    return restriction_closed == equals_union_of_lower_cones &&
           restriction_closed == complement_equals_union_of_upper_cones;
  }
  bool consistent() const {
    return duality_holds() && upward_equivalence_holds() && downward_equivalence_holds();
  }
};

inline DualityReport verify_duality(const PropertySet& p) {
  const PropertySet c = p.complement();
  DualityReport r;
  r.expansion_closed = is_expansion_closed(p);
  r.restriction_closed = is_restriction_closed(p);
  r.complement_expansion_closed = is_expansion_closed(c);
  r.complement_restriction_closed = is_restriction_closed(c);
  r.equals_union_of_upper_cones = union_of_upper_cones(p) == p;
  r.equals_union_of_lower_cones = union_of_lower_cones(p) == p;
  r.complement_equals_union_of_lower_cones = union_of_lower_cones(c) == c;
  r.complement_equals_union_of_upper_cones = union_of_upper_cones(c) == c;
  return r;
}

// Evaluates "closed both ways implies empty or everything" on this P.
inline bool check_er_triviality(const PropertySet& p) {
  bool both = is_expansion_closed(p) && is_restriction_closed(p);
  return !both || p.empty() || p.is_full();
}

struct ConeCollapse {
  bool preconditions = false;
  std::string failed_precondition;
  std::optional<SymbolSet> generator;
  bool equals_cone = false;
};

struct LatticeCollapseReport {
  bool lattice = false;
  ConeCollapse lower;
  ConeCollapse upper;

  // Wherever the preconditions hold, P is a single cone.
  bool holds() const {
    return (!lower.preconditions || lower.equals_cone) &&
           (!upper.preconditions || upper.equals_cone);
  }
};

inline LatticeCollapseReport check_lattice_cone_collapse(const PropertySet& p) {
  LatticeCollapseReport r;
  r.lattice = is_lattice_property(p);
  auto fill = [&](ConeCollapse& side, bool closed, const char* closure, bool lower) {
    if (!r.lattice) {
      side.failed_precondition = p.empty() ? "empty" : "not a lattice property";
    } else if (!closed) {
      side.failed_precondition = closure;
    } else {
      side.preconditions = true;
      SymbolSet g = lower ? 0 : p.greatest();
      for (SymbolSet m : p.members()) g = lower ? (g | m) : (g & m);
      side.generator = g;
      side.equals_cone = (lower ? lower_cone(p.symbol_count(), g)
                                : upper_cone(p.symbol_count(), g)) == p;
    }
  };
  fill(r.lower, is_restriction_closed(p), "not closed under restrictions", true);
  fill(r.upper, is_expansion_closed(p), "not closed under expansions", false);
  return r;
}

// Pairs symbol_index[i] of the first ambient with symbol_index[i] of the
// second, when the atom counts agree.
inline std::optional<std::vector<std::pair<std::string, std::string>>> algebra_isomorphic(
    const AmbientAlgebra& a, const AmbientAlgebra& b, std::uint64_t seed = 0) {
  if (a.symbol_count() != b.symbol_count()) return std::nullopt;
  std::vector<std::pair<std::string, std::string>> atoms;
  std::map<std::string, std::string> forward;
  for (int i = 0; i < a.symbol_count(); ++i) {
    atoms.emplace_back(a.symbols()[std::size_t(i)], b.symbols()[std::size_t(i)]);
    forward[atoms.back().first] = atoms.back().second;
  }
  // The induced map on name sets must commute with the Boolean operations.
  auto image = [&](SymbolSet m) {
    std::set<std::string> out;
    for (const auto& name : a.names(m)) out.insert(forward.at(name));
    return out;
  };
  auto as_set = [&](SymbolSet m) {
    auto v = b.names(m);
    return std::set<std::string>(v.begin(), v.end());
  };
  std::mt19937_64 rng(seed);
  const std::uint64_t span = a.element_count();
  for (int trial = 0; trial < 64 && span > 0; ++trial) {
    SymbolSet x = SymbolSet(rng() % span), y = SymbolSet(rng() % span);
    std::set<std::string> ix = image(x), iy = image(y), joined, met;
    std::set_union(ix.begin(), ix.end(), iy.begin(), iy.end(), std::inserter(joined, joined.end()));
    std::set_intersection(ix.begin(), ix.end(), iy.begin(), iy.end(),
                          std::inserter(met, met.end()));
    std::set<std::string> all = as_set(b.greatest()), comp;
    std::set_difference(all.begin(), all.end(), ix.begin(), ix.end(),
                        std::inserter(comp, comp.end()));
    if (image(x | y) != joined || image(x & y) != met ||
        image(a.greatest() & ~x) != comp) {
      throw Error(ErrorKind::kPrecondition, "atom bijection does not induce an isomorphism");
    }
  }
  return atoms;
}

// Properties of a small algebra: all of them for s <= kExhaustivePropertyCap
// unless a sample is requested, otherwise `samples` seeded random ones.
struct SweepOptions {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct SweepSummary {
  std::size_t visited = 0;
  bool exhaustive = false;
};

// Random property drawn from a mix of shapes so that closed, lattice and
// unstructured properties all occur.
inline PropertySet random_property(int symbol_count, std::mt19937_64& rng) {
  PropertySet p(symbol_count);
  const std::size_t elements = p.element_count();
  const int shape = int(rng() % 4);
  const int picks = 1 + int(rng() % 3);
  switch (shape) {
    case 0:
      for (std::size_t i = 0; i < elements; ++i) {
        if (rng() & 1) p.insert(SymbolSet(i));
      }
      break;
    case 1:
      for (int k = 0; k < picks; ++k) p |= upper_cone(symbol_count, SymbolSet(rng() % elements));
      break;
    case 2:
      for (int k = 0; k < picks; ++k) p |= lower_cone(symbol_count, SymbolSet(rng() % elements));
      break;
    default: {
      for (int k = 0; k < picks + 1; ++k) p.insert(SymbolSet(rng() % elements));
      bool grew = true;
      while (grew) {
        grew = false;
        auto m = p.members();
        for (SymbolSet x : m) {
          for (SymbolSet y : m) {
            for (SymbolSet z : {SymbolSet(x | y), SymbolSet(x & y)}) {
              if (!p.contains(z)) {
                p.insert(z);
                grew = true;
              }
            }
          }
        }
      }
    }
  }
  return p;
}

inline SweepSummary for_each_property(int symbol_count, const SweepOptions& options,
                                      const std::function<void(const PropertySet&)>& fn) {
  SweepSummary summary;
  if (options.samples == 0) {
    if (symbol_count > kExhaustivePropertyCap) {
      throw Error(ErrorKind::kCapExceeded,
                  "exhaustive sweep needs at most " + std::to_string(kExhaustivePropertyCap) +
                      " symbols; request a seeded sample");
    }
    const std::size_t elements = std::size_t{1} << symbol_count;
    const std::uint64_t count = std::uint64_t{1} << elements;
    for (std::uint64_t code = 0; code < count; ++code) {
      PropertySet p(symbol_count);
      for (std::size_t i = 0; i < elements; ++i) {
        if (code >> i & 1) p.insert(SymbolSet(i));
      }
      fn(p);
      ++summary.visited;
    }
    summary.exhaustive = true;
    return summary;
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t k = 0; k < options.samples; ++k) {
    fn(random_property(symbol_count, rng));
    ++summary.visited;
  }
  return summary;
}

inline std::string format_element(const AmbientAlgebra& a, SymbolSet m) {
  std::string out = "{";
  bool first = true;
  for (const auto& name : a.names(m)) {
    if (!first) out += ",";
    out += name;
    first = false;
  }
  return out + "}";
}

}  // namespace structlab
