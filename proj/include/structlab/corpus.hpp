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

// Deterministic generators for finite truncations of the example
// structures. Each returns the structure together with header lines that
// document its element numbering.

#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "structlab/error.hpp"
#include "structlab/structure.hpp"

namespace structlab {

struct Generated {
  FiniteStructure structure;
  std::vector<std::string> header;
};

inline constexpr int kBipartiteEncodingCap = 4;
inline constexpr std::size_t kEhrenfeuchtBudget = 4096;

namespace detail {

inline void add_symmetric(Relation& r, Element a, Element b) {
  r.tuples.insert({a, b});
  r.tuples.insert({b, a});
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace detail

// Two perfect matchings Q1, Q2 whose union is a disjoint union of cycles
// with the given even lengths. Each cycle occupies a consecutive block of
// vertices; around a cycle starting at o, Q1 joins o+2i to o+2i+1 and Q2
// joins o+2i+1 to o+2i+2 (wrapping to o).
inline Generated gen_matching_pair(int m, const std::vector<int>& wiring) {
  int total = 0;
  for (int len : wiring) {
    if (len < 4 || len % 2 != 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "cycle length " + std::to_string(len) + " must be even and at least 4");
    }
    total += len;
  }
  if (m < 0 || total != 2 * m) {
    throw Error(ErrorKind::kInvalidArgument, "cycle lengths must sum to 2m");
  }
  Generated g;
  g.structure.universe_size = 2 * m;
  Relation q1{2, {}}, q2{2, {}};
  int offset = 0;
  for (int len : wiring) {
    for (int i = 0; i < len; i += 2) {
      detail::add_symmetric(q1, offset + i, offset + i + 1);
      detail::add_symmetric(q2, offset + i + 1, offset + (i + 2) % len);
    }
    offset += len;
  }
  g.structure.relations.emplace("Q1", std::move(q1));
  g.structure.relations.emplace("Q2", std::move(q2));
  g.header = {"matching-pair m=" + std::to_string(m) + " wiring=[" + detail::join_ints(wiring) + "]",
              "each cycle is a consecutive block of vertices; Q1 joins 2i,2i+1 and Q2 joins",
              "2i+1,2i+2 within the block, wrapping around"};
  return g;
}

// Finite linear order Le (reflexive) with a unary predicate R = pattern.
inline Generated gen_order_with_predicate(int n, const std::vector<int>& pattern) {
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "n must be non-negative");
  Generated g;
  g.structure.universe_size = n;
  Relation le{2, {}}, r{1, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) le.tuples.insert({i, j});
  }
  for (int p : pattern) {
    if (p < 0 || p >= n) {
      throw Error(ErrorKind::kOutOfRange, "pattern element " + std::to_string(p) + " out of range");
    }
    r.tuples.insert({p});
  }
  g.structure.relations.emplace("Le", std::move(le));
  g.structure.relations.emplace("R", std::move(r));
  g.header = {"order-predicate n=" + std::to_string(n) + " pattern=[" + detail::join_ints(pattern) + "]",
              "elements 0..n-1 in their natural order; Le is <=, R is the pattern",
              "a finite order stands in for the dense order, which has no finite model"};
  return g;
}

// Base row 0..q_size-1 ordered by R (i <= j). The n-th marked point, for
// n < num_constants, sits at base position floor((n+1) q_size / (c+1)) and
// carries n pendant elements p with R(base, p). Pendants are numbered after
// the base, grouped by marked point in increasing n.
inline Generated gen_ehrenfeucht_encoding(int q_size, int num_constants,
                                          std::size_t budget = kEhrenfeuchtBudget) {
  if (q_size < 0 || num_constants < 0) {
    throw Error(ErrorKind::kInvalidArgument, "sizes must be non-negative");
  }
  if (num_constants > q_size) {
    throw Error(ErrorKind::kInvalidArgument, "need at least as many base points as constants");
  }
  const std::size_t pendants =
      std::size_t(num_constants) * std::size_t(num_constants > 0 ? num_constants - 1 : 0) / 2;
  if (pendants + std::size_t(q_size) > budget) {
    throw Error(ErrorKind::kBudgetExceeded, "encoding exceeds the element budget");
  }
  Generated g;
  g.structure.universe_size = q_size + int(pendants);
  Relation r{2, {}};
  for (int i = 0; i < q_size; ++i) {
    for (int j = i; j < q_size; ++j) r.tuples.insert({i, j});
  }
  g.header = {"ehrenfeucht-encoding q=" + std::to_string(q_size) +
                  " constants=" + std::to_string(num_constants),
              "base points 0.." + std::to_string(q_size - 1) + " ordered by R"};
  int next = q_size;
  for (int c = 0; c < num_constants; ++c) {
    const int base = int((std::int64_t(c) + 1) * q_size / (num_constants + 1));
    std::string line = "constant " + std::to_string(c) + " at base " + std::to_string(base);
    if (c > 0) {
      line += ", pendants " + std::to_string(next) + ".." + std::to_string(next + c - 1);
    }
    for (int k = 0; k < c; ++k) r.tuples.insert({base, next++});
    g.header.push_back(line);
  }
  g.structure.relations.emplace("R", std::move(r));
  return g;
}

// Q = {0..n/2-1}, R = {n/2..n-1} and the graph of the bijection i -> i+n/2.
inline Generated gen_bijection_pair(int n) {
  if (n < 0 || n % 2 != 0) throw Error(ErrorKind::kInvalidArgument, "n must be even");
  Generated g;
  g.structure.universe_size = n;
  Relation q{1, {}}, r{1, {}}, f{2, {}};
  for (int i = 0; i < n / 2; ++i) {
    q.tuples.insert({i});
    r.tuples.insert({i + n / 2});
    f.tuples.insert({i, i + n / 2});
  }
  g.structure.relations.emplace("Q", std::move(q));
  g.structure.relations.emplace("R", std::move(r));
  g.structure.relations.emplace("f_graph", std::move(f));
  g.header = {"bijection-pair n=" + std::to_string(n),
              "Q = 0.." + std::to_string(n / 2 - 1) + ", R = " + std::to_string(n / 2) + ".." +
                  std::to_string(n - 1) + ", f_graph pairs i with i+" + std::to_string(n / 2)};
  return g;
}

// Element counts of the comb ladder on m rungs.
struct CombLayout {
  int m = 0;
  int paired = 0;      // middles shared by some c and some d
  int c_only = 0;      // unidentified c elements
  int d_only = 0;      // unidentified d elements
  int middles() const { return paired + c_only + d_only; }
  int universe() const { return 2 * m + middles(); }
};

inline CombLayout comb_layout(int m) {
  CombLayout l;
  l.m = m;
  l.paired = m * (m + 1) / 2;
  l.c_only = m * m - l.paired;
  l.d_only = m * m - l.paired;
  return l;
}

// Rows a_i = i, columns b_j = m + j. Middles follow: first the c_(i,k) in
// lexicographic (i,k) order, then the unidentified d_(l,j) in lexicographic
// order. c_(i,k) and d_(l,j) are one element exactly when i = l, k = j and
// i <= j. R1 joins a_i to c_(i,k); R2 joins d_(l,j) to b_j.
inline Generated gen_comb_ladder(int m) {
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "m must be at least 1");
  const CombLayout layout = comb_layout(m);
  Generated g;
  g.structure.universe_size = layout.universe();
  Relation r1{2, {}}, r2{2, {}};
  int next = 2 * m;
  std::vector<std::vector<int>> c_id(std::size_t(m), std::vector<int>(std::size_t(m), 0));
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      c_id[std::size_t(i)][std::size_t(k)] = next++;
      r1.tuples.insert({i, c_id[std::size_t(i)][std::size_t(k)]});
    }
  }
  for (int l = 0; l < m; ++l) {
    for (int j = 0; j < m; ++j) {
      const int d = l <= j ? c_id[std::size_t(l)][std::size_t(j)] : next++;
      r2.tuples.insert({d, m + j});
    }
  }
  g.structure.relations.emplace("R1", std::move(r1));
  g.structure.relations.emplace("R2", std::move(r2));
  g.header = {"comb-ladder m=" + std::to_string(m),
              "a_i = i and b_j = " + std::to_string(m) + "+j for i,j < " + std::to_string(m),
              "c_(i,k) = " + std::to_string(2 * m) + "+i*" + std::to_string(m) +
                  "+k; unidentified d_(l,j) with l > j follow in lexicographic order",
              "c_(i,k) = d_(l,j) iff i = l, k = j and i <= j",
              "middles " + std::to_string(layout.middles()) + " = " + std::to_string(layout.paired) +
                  " paired + " + std::to_string(layout.c_only) + " c-only + " +
                  std::to_string(layout.d_only) + " d-only"};
  return g;
}

// Rows a_X = X for X in 0..2^m-1 (bit j set iff j is in X), columns
// b_j = 2^m + j, then c_(X,k) for all X, k in lexicographic order, then the
// unidentified d_(X,j) in lexicographic order. c_(X,k) = d_(X',j) iff
// X = X', k = j and j in X.
inline Generated gen_random_bipartite_encoding(int m, int cap = kBipartiteEncodingCap) {
  if (m < 0) throw Error(ErrorKind::kInvalidArgument, "m must be non-negative");
  if (m > cap) {
    throw Error(ErrorKind::kCapExceeded, "m exceeds the cap " + std::to_string(cap));
  }
  const int rows = 1 << m;
  const int paired = m * (rows / 2);
  Generated g;
  g.structure.universe_size = rows + m + 2 * rows * m - paired;
  Relation r1{2, {}}, r2{2, {}};
  auto c_id = [&](int x, int k) { return rows + m + x * m + k; };
  for (int x = 0; x < rows; ++x) {
    for (int k = 0; k < m; ++k) r1.tuples.insert({x, c_id(x, k)});
  }
  int next = rows + m + rows * m;
  for (int x = 0; x < rows; ++x) {
    for (int j = 0; j < m; ++j) {
      const int d = (x >> j & 1) ? c_id(x, j) : next++;
      r2.tuples.insert({d, rows + j});
    }
  }
  g.structure.relations.emplace("R1", std::move(r1));
  g.structure.relations.emplace("R2", std::move(r2));
  g.header = {"bipartite-encoding m=" + std::to_string(m),
              "a_X = X for subsets X of 0.." + std::to_string(m - 1) + " as bitmasks",
              "b_j = " + std::to_string(rows) + "+j; c_(X,k) = " + std::to_string(rows + m) + "+X*" +
                  std::to_string(m) + "+k; unidentified d_(X,j) follow",
              "c_(X,k) = d_(X',j) iff X = X', k = j and j in X"};
  return g;
}

// Equivalence E whose classes are consecutive blocks of size c (the last
// block may be smaller).
inline Generated gen_bounded_equivalence(int n, int c) {
  if (c < 1) throw Error(ErrorKind::kInvalidArgument, "class size must be at least 1");
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "n must be non-negative");
  Generated g;
  g.structure.universe_size = n;
  Relation e{2, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i / c == j / c) e.tuples.insert({i, j});
    }
  }
  g.structure.relations.emplace("E", std::move(e));
  g.header = {"bounded-equivalence n=" + std::to_string(n) + " c=" + std::to_string(c),
              "element i lies in class i / " + std::to_string(c)};
  return g;
}

// Unary P_i = {i} for every element i.
inline Generated gen_singleton_orbit(int n) {
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "n must be non-negative");
  Generated g;
  g.structure.universe_size = n;
  for (int i = 0; i < n; ++i) g.structure.relations.emplace("P_" + std::to_string(i), Relation{1, {{i}}});
  g.header = {"singleton-orbit n=" + std::to_string(n), "P_i holds exactly of element i"};
  return g;
}

}  // namespace structlab
