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

// Combinatorial indicators of a formula phi(x; y) on a finite structure:
// ladder index, strict-order chains, VC dimension and minimality profiles.
//
// All three pattern searches work on the trace matrix of phi: rows are the
// x-tuples, columns the y-tuples, with duplicate rows and columns merged
// (no ladder, chain or shattered set can use two copies of one trace).

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "structlab/error.hpp"
#include "structlab/evaluate.hpp"
#include "structlab/formula.hpp"
#include "structlab/structure.hpp"
#include "structlab/structure_io.hpp"

namespace structlab {

inline constexpr std::size_t kDefaultSearchBudget = 5'000'000;
inline constexpr int kMaxSplitSide = 2;

// Object variables x and parameter (column) variables y.
struct Split {
  std::vector<std::string> x;
  std::vector<std::string> y;

  std::string to_string() const {
    auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
      return out;
    };
    return join(x) + ";" + join(y);
  }
};

// Parses "x;y" or "x1,x2;y1,y2".
inline Split parse_split(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos) {
    throw Error(ErrorKind::kInvalidArgument, "split must look like 'x;y'");
  }
  auto side = [](std::string_view part) {
    std::vector<std::string> out;
    std::string token;
    auto flush = [&] {
      if (!token.empty()) out.push_back(token);
      token.clear();
    };
    for (char c : part) {
      if (c == ',') {
        flush();
      } else if (c != ' ') {
        token += c;
      }
    }
    flush();
    for (const auto& v : out) {
      if (!is_identifier(v)) throw Error(ErrorKind::kInvalidArgument, "bad variable '" + v + "'");
    }
    return out;
  };
  return Split{side(text.substr(0, semi)), side(text.substr(semi + 1))};
}

namespace detail {

inline void check_split(const Formula& f, const Split& split, bool allow_empty_y) {
  if (split.x.empty() || (!allow_empty_y && split.y.empty())) {
    throw Error(ErrorKind::kInvalidArgument, "both sides of the split need a variable");
  }
  if (int(split.x.size()) > kMaxSplitSide || int(split.y.size()) > kMaxSplitSide) {
    throw Error(ErrorKind::kInvalidArgument, "each side of the split holds at most 2 variables");
  }
  std::vector<std::string> all = split.x;
  all.insert(all.end(), split.y.begin(), split.y.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (all[i] == all[j]) {
        throw Error(ErrorKind::kVariableOverlap, "variable '" + all[i] + "' on both sides");
      }
    }
  }
  for (const auto& v : free_variables(f)) {
    if (std::find(all.begin(), all.end(), v) == all.end()) {
      throw Error(ErrorKind::kUnboundVariable, "free variable '" + v + "' missing from the split");
    }
  }
}

}  // namespace detail

// phi evaluated on every (row, column) pair with duplicate traces merged.
// Representatives are the lexicographically least tuple of each trace.
class TraceMatrix {
 public:
  TraceMatrix(const FiniteStructure& s, const Formula& f, const Split& split, int jobs = 1) {
    detail::check_split(f, split, false);
    const int n = s.universe_size;
    const int xl = int(split.x.size()), yl = int(split.y.size());
    auto rows = tuple_count(n, xl), cols = tuple_count(n, yl);
    auto cells = tuple_count(n, xl + yl);
    if (!rows || !cols || !cells || *cells > (std::size_t{1} << 28)) {
      throw Error(ErrorKind::kBudgetExceeded, "trace matrix too large");
    }
    std::vector<std::string> inputs = split.x;
    inputs.insert(inputs.end(), split.y.begin(), split.y.end());
    CompiledFormula compiled(s, f, inputs);
    // Cell (r, c) has code r * cols + c, which is the code of the joined tuple.
    std::vector<std::uint8_t> raw(*cells, 0);
    parallel_for_tuples(n, xl + yl, jobs, [&](std::size_t code, const Tuple& t) {
      std::vector<Element> scratch(compiled.scratch_size(), 0);
      raw[code] = compiled.holds(t, scratch) ? 1 : 0;
    });
    // Distinct row traces in first-appearance order.
    std::map<std::vector<std::uint8_t>, int> row_ids;
    std::vector<std::size_t> row_pick;
    for (std::size_t r = 0; r < *rows; ++r) {
      std::vector<std::uint8_t> trace(raw.begin() + std::ptrdiff_t(r * *cols),
                                      raw.begin() + std::ptrdiff_t((r + 1) * *cols));
      if (row_ids.emplace(std::move(trace), int(row_pick.size())).second) row_pick.push_back(r);
    }
    std::map<std::vector<std::uint8_t>, int> col_ids;
    std::vector<std::size_t> col_pick;
    for (std::size_t c = 0; c < *cols; ++c) {
      std::vector<std::uint8_t> trace;
      for (std::size_t r : row_pick) trace.push_back(raw[r * *cols + c]);
      if (col_ids.emplace(std::move(trace), int(col_pick.size())).second) col_pick.push_back(c);
    }
    for (std::size_t r : row_pick) row_tuples_.push_back(decode_tuple(r, n, xl));
    for (std::size_t c : col_pick) col_tuples_.push_back(decode_tuple(c, n, yl));
    row_sets_.assign(row_pick.size(), boost::dynamic_bitset<>(col_pick.size()));
    col_sets_.assign(col_pick.size(), boost::dynamic_bitset<>(row_pick.size()));
    for (std::size_t i = 0; i < row_pick.size(); ++i) {
      for (std::size_t j = 0; j < col_pick.size(); ++j) {
        if (raw[row_pick[i] * *cols + col_pick[j]]) {
          row_sets_[i].set(j);
          col_sets_[j].set(i);
        }
      }
    }
    total_rows_ = *rows;
  }

  std::size_t rows() const { return row_tuples_.size(); }
  std::size_t cols() const { return col_tuples_.size(); }
  // Number of x-tuples before merging.
  std::size_t total_rows() const { return total_rows_; }
  const Tuple& row_tuple(std::size_t i) const { return row_tuples_[i]; }
  const Tuple& col_tuple(std::size_t j) const { return col_tuples_[j]; }
  const boost::dynamic_bitset<>& row_set(std::size_t i) const { return row_sets_[i]; }
  const boost::dynamic_bitset<>& col_set(std::size_t j) const { return col_sets_[j]; }
  bool at(std::size_t i, std::size_t j) const { return row_sets_[i].test(j); }

 private:
  std::vector<Tuple> row_tuples_, col_tuples_;
  std::vector<boost::dynamic_bitset<>> row_sets_, col_sets_;
  std::size_t total_rows_ = 0;
};

struct LadderWitness {
  std::vector<Tuple> rows;
  std::vector<Tuple> cols;
};

struct LadderResult {
  int k = 0;
  bool lower_bound = false;
  std::optional<LadderWitness> witness;
  std::size_t nodes = 0;
};

struct ChainWitness {
  // Parameter tuples in order of strictly decreasing definable sets.
  std::vector<Tuple> params;
  std::vector<std::vector<Tuple>> sets;
};

struct ChainResult {
  int r = 0;
  bool lower_bound = false;
  std::optional<ChainWitness> witness;
  std::size_t nodes = 0;
};

struct ShatterWitness {
  std::vector<Tuple> cols;
  // rows[X] realizes the subset X of column positions (bit i = column i).
  std::vector<Tuple> rows;
};

struct ShatterResult {
  int m = 0;
  bool lower_bound = false;
  std::optional<ShatterWitness> witness;
  std::size_t nodes = 0;
};

struct SearchOptions {
  std::size_t budget = kDefaultSearchBudget;
  int jobs = 1;
};

namespace detail {

inline Assignment bind(const Split& split, const Tuple& x, const Tuple& y) {
  Assignment a;
  for (std::size_t i = 0; i < split.x.size(); ++i) a[split.x[i]] = x[i];
  for (std::size_t i = 0; i < split.y.size(); ++i) a[split.y[i]] = y[i];
  return a;
}

class LadderSearch {
 public:
  LadderSearch(const TraceMatrix& m, int max_k, std::size_t budget)
      : m_(m), max_k_(max_k), budget_(budget) {}

  LadderResult run() {
    boost::dynamic_bitset<> rows(m_.rows()), cols(m_.cols());
    rows.set();
    cols.set();
    try {
      extend(rows, cols);
    } catch (const Stop&) {
    }
    LadderResult out;
    out.k = int(best_rows_.size());
    out.lower_bound = exhausted_;
    out.nodes = nodes_;
    if (out.k > 0) {
      LadderWitness w;
      for (auto i : best_rows_) w.rows.push_back(m_.row_tuple(i));
      for (auto j : best_cols_) w.cols.push_back(m_.col_tuple(j));
      out.witness = std::move(w);
    }
    return out;
  }

 private:
  struct Stop {};

  // rows: candidates r with phi(r, c_i) false for every chosen column;
  // cols: candidates c with phi(r_i, c) true for every chosen row.
  void extend(const boost::dynamic_bitset<>& rows, const boost::dynamic_bitset<>& cols) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      throw Stop{};
    }
    if (chosen_rows_.size() > best_rows_.size()) {
      best_rows_ = chosen_rows_;
      best_cols_ = chosen_cols_;
      if (int(best_rows_.size()) >= max_k_) throw Stop{};
    }
    const std::size_t depth = chosen_rows_.size();
    if (depth + std::min(rows.count(), cols.count()) <= best_rows_.size()) return;
    for (auto r = rows.find_first(); r != boost::dynamic_bitset<>::npos; r = rows.find_next(r)) {
      boost::dynamic_bitset<> next_cols = cols & m_.row_set(r);
      for (auto c = next_cols.find_first(); c != boost::dynamic_bitset<>::npos;
           c = next_cols.find_next(c)) {
        boost::dynamic_bitset<> next_rows = rows - m_.col_set(c);
        next_rows.reset(r);
        boost::dynamic_bitset<> later_cols = next_cols;
        later_cols.reset(c);
        if (depth + 1 + std::min(next_rows.count(), later_cols.count()) <= best_rows_.size()) {
          continue;
        }
        chosen_rows_.push_back(r);
        chosen_cols_.push_back(c);
        extend(next_rows, later_cols);
        chosen_rows_.pop_back();
        chosen_cols_.pop_back();
      }
    }
  }

  const TraceMatrix& m_;
  int max_k_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::size_t> chosen_rows_, chosen_cols_, best_rows_, best_cols_;
};

}  // namespace detail

// Re-checks phi(rows[i], cols[j]) <=> i <= j with the plain evaluator.
inline bool verify_ladder(const FiniteStructure& s, const Formula& f, const Split& split,
                          const LadderWitness& w) {
  if (w.rows.size() != w.cols.size()) return false;
  for (std::size_t i = 0; i < w.rows.size(); ++i) {
    for (std::size_t j = 0; j < w.cols.size(); ++j) {
      if (evaluate(s, f, detail::bind(split, w.rows[i], w.cols[j])) != (i <= j)) return false;
    }
  }
  return true;
}

inline bool verify_chain(const FiniteStructure& s, const Formula& f, const Split& split,
                         const ChainWitness& w) {
  std::vector<std::vector<Tuple>> sets;
  for (const auto& p : w.params) {
    std::vector<Tuple> set;
    for (const auto& c : all_tuples(s.universe_size, int(split.y.size()))) {
      if (evaluate(s, f, detail::bind(split, p, c))) set.push_back(c);
    }
    sets.push_back(std::move(set));
  }
  if (sets != w.sets) return false;
  for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
    const auto& big = sets[i];
    const auto& small = sets[i + 1];
    if (small.size() >= big.size() ||
        !std::includes(big.begin(), big.end(), small.begin(), small.end())) {
      return false;
    }
  }
  return true;
}

inline bool verify_shatter(const FiniteStructure& s, const Formula& f, const Split& split,
                           const ShatterWitness& w) {
  const std::size_t m = w.cols.size();
  if (m >= 31 || w.rows.size() != (std::size_t{1} << m)) return false;
  for (std::size_t x = 0; x < w.rows.size(); ++x) {
    for (std::size_t i = 0; i < m; ++i) {
      if (evaluate(s, f, detail::bind(split, w.rows[x], w.cols[i])) != bool(x >> i & 1)) {
        return false;
      }
    }
  }
  return true;
}

// Largest k <= max_k with a ladder for phi(x; y).
inline LadderResult ladder_index(const FiniteStructure& s, const Formula& f, const Split& split,
                                 int max_k, const SearchOptions& options = {}) {
  if (max_k < 1) throw Error(ErrorKind::kInvalidArgument, "max must be at least 1");
  TraceMatrix m(s, f, split, options.jobs);
  auto result = detail::LadderSearch(m, max_k, options.budget).run();
  if (result.witness && !verify_ladder(s, f, split, *result.witness)) {
    throw Error(ErrorKind::kPrecondition, "internal error: ladder witness failed verification");
  }
  return result;
}

// Longest chain of parameter tuples a_1, ..., a_r on the x side whose sets
// phi(a_i, N) strictly decrease. The chain counts nonempty sets; when every
// set is empty the answer is 1 (one empty set), and 0 on an empty universe.
inline ChainResult strict_order_chain(const FiniteStructure& s, const Formula& f,
                                      const Split& split, int max_r,
                                      const SearchOptions& options = {}) {
  if (max_r < 1) throw Error(ErrorKind::kInvalidArgument, "max must be at least 1");
  TraceMatrix m(s, f, split, options.jobs);
  ChainResult out;
  if (m.total_rows() == 0) return out;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_set(i).any()) order.push_back(i);
  }
  auto make_witness = [&](const std::vector<std::size_t>& chain) {
    ChainWitness w;
    for (std::size_t i : chain) {
      w.params.push_back(m.row_tuple(i));
      std::vector<Tuple> set;
      // Listed over all y-tuples, not only the merged representatives.
      for (const auto& c : all_tuples(s.universe_size, int(split.y.size()))) {
        if (evaluate(s, f, detail::bind(split, m.row_tuple(i), c))) set.push_back(c);
      }
      w.sets.push_back(std::move(set));
    }
    return w;
  };
  if (order.empty()) {
    out.r = 1;
    out.witness = make_witness({0});
    return out;
  }
  // Longest chain ending at each set, processed by increasing size.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.row_set(a).count() < m.row_set(b).count();
  });
  std::vector<int> length(order.size(), 1);
  std::vector<int> below(order.size(), -1);
  for (std::size_t i = 0; i < order.size() && !out.lower_bound; ++i) {
    const auto& big = m.row_set(order[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (++out.nodes > options.budget) {
        out.lower_bound = true;
        break;
      }
      const auto& small = m.row_set(order[j]);
      if (small.count() < big.count() && small.is_subset_of(big) && length[j] + 1 > length[i]) {
        length[i] = length[j] + 1;
        below[i] = int(j);
      }
    }
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (length[i] > length[top]) top = i;
  }
  std::vector<std::size_t> chain;
  for (int at = int(top); at >= 0 && int(chain.size()) < max_r; at = below[std::size_t(at)]) {
    chain.push_back(order[std::size_t(at)]);
  }
  out.r = int(chain.size());
  out.witness = make_witness(chain);
  if (!verify_chain(s, f, split, *out.witness)) {
    throw Error(ErrorKind::kPrecondition, "internal error: chain witness failed verification");
  }
  return out;
}

namespace detail {

class ShatterSearch {
 public:
  ShatterSearch(const TraceMatrix& m, int max_m, std::size_t budget)
      : m_(m), max_m_(max_m), budget_(budget) {}

  ShatterResult run() {
    std::vector<boost::dynamic_bitset<>> classes;
    if (m_.rows() > 0) {
      classes.emplace_back(m_.rows());
      classes.back().set();
    }
    try {
      if (!classes.empty()) extend(0, classes);
    } catch (const Stop&) {
    }
    ShatterResult out;
    out.m = int(best_.size());
    out.lower_bound = exhausted_;
    out.nodes = nodes_;
    if (!classes.empty()) {
      ShatterWitness w;
      for (auto j : best_) w.cols.push_back(m_.col_tuple(j));
      for (std::size_t x = 0; x < (std::size_t{1} << best_.size()); ++x) {
        boost::dynamic_bitset<> pick(m_.rows());
        pick.set();
        for (std::size_t i = 0; i < best_.size(); ++i) {
          if (x >> i & 1) {
            pick &= m_.col_set(best_[i]);
          } else {
            pick -= m_.col_set(best_[i]);
          }
        }
        w.rows.push_back(m_.row_tuple(pick.find_first()));
      }
      out.witness = std::move(w);
    }
    return out;
  }

 private:
  struct Stop {};

  // `classes` are the nonempty row classes of the chosen columns' patterns.
  void extend(std::size_t from, const std::vector<boost::dynamic_bitset<>>& classes) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      throw Stop{};
    }
    if (chosen_.size() > best_.size()) {
      best_ = chosen_;
      if (int(best_.size()) >= max_m_) throw Stop{};
    }
    // Shattering one more column needs twice as many distinct rows.
    if ((std::size_t{1} << (best_.size() + 1)) > m_.rows()) throw Stop{};
    for (std::size_t c = from; c < m_.cols(); ++c) {
      if (chosen_.size() + (m_.cols() - c) <= best_.size()) return;
      std::vector<boost::dynamic_bitset<>> split;
      bool ok = true;
      for (const auto& cls : classes) {
        auto in = cls & m_.col_set(c);
        auto out = cls - m_.col_set(c);
        if (in.none() || out.none()) {
          ok = false;
          break;
        }
        split.push_back(std::move(in));
        split.push_back(std::move(out));
      }
      if (!ok) continue;
      chosen_.push_back(c);
      extend(c + 1, split);
      chosen_.pop_back();
    }
  }

  const TraceMatrix& m_;
  int max_m_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::size_t> chosen_, best_;
};

}  // namespace detail

// Largest m <= max_m such that some m columns are shattered by the rows.
inline ShatterResult vc_dimension(const FiniteStructure& s, const Formula& f, const Split& split,
                                  int max_m, const SearchOptions& options = {}) {
  if (max_m < 1 || max_m > 20) throw Error(ErrorKind::kInvalidArgument, "max must be in 1..20");
  TraceMatrix m(s, f, split, options.jobs);
  auto result = detail::ShatterSearch(m, max_m, options.budget).run();
  if (result.witness && !verify_shatter(s, f, split, *result.witness)) {
    throw Error(ErrorKind::kPrecondition, "internal error: shatter witness failed verification");
  }
  return result;
}

// One member of a minimality family: phi(x; params).
struct FamilyEntry {
  Formula formula;
  std::string object;
  std::vector<std::string> params;
};

struct ProfileEntry {
  std::string formula;
  std::string object;
  std::vector<std::string> params;
  int value = 0;
  // Parameter values attaining the value, and the size of that set.
  Tuple witness;
  std::size_t set_size = 0;
};

struct MinimalityProfile {
  std::vector<ProfileEntry> entries;
  int overall = 0;
};

inline MinimalityProfile minimality_profile(const FiniteStructure& s,
                                            const std::vector<FamilyEntry>& family, int jobs = 1) {
  MinimalityProfile out;
  const int n = s.universe_size;
  for (const auto& e : family) {
    Split split{{e.object}, e.params};
    detail::check_split(e.formula, split, true);
    ProfileEntry entry{to_string(e.formula), e.object, e.params, 0, {}, 0};
    std::vector<std::string> inputs = e.params;
    inputs.push_back(e.object);
    CompiledFormula compiled(s, e.formula, inputs);
    const std::size_t instances = *tuple_count(n, int(e.params.size()));
    std::vector<int> sizes(instances, 0);
    parallel_for_tuples(n, int(e.params.size()), jobs, [&](std::size_t code, Tuple t) {
      std::vector<Element> scratch(compiled.scratch_size(), 0);
      t.push_back(0);
      int count = 0;
      for (Element x = 0; x < n; ++x) {
        t.back() = x;
        if (compiled.holds(t, scratch)) ++count;
      }
      sizes[code] = count;
    });
    bool first = true;
    for (std::size_t code = 0; code < instances; ++code) {
      const int defect = std::min(sizes[code], n - sizes[code]);
      if (first || defect > entry.value) {
        entry.value = defect;
        entry.witness = decode_tuple(code, n, int(e.params.size()));
        entry.set_size = std::size_t(sizes[code]);
        first = false;
      }
    }
    out.overall = std::max(out.overall, entry.value);
    out.entries.push_back(std::move(entry));
  }
  return out;
}

// x = y with parameter y, plus every relation atom with x in one position
// and fresh parameters y1, y2, ... elsewhere.
inline std::vector<FamilyEntry> atomic_family(const FiniteStructure& s) {
  std::vector<FamilyEntry> out;
  out.push_back({Formula::equality("x", "y"), "x", {"y"}});
  for (const auto& [name, rel] : s.relations) {
    for (int pos = 0; pos < rel.arity; ++pos) {
      std::vector<std::string> vars, params;
      for (int i = 0; i < rel.arity; ++i) {
        if (i == pos) {
          vars.push_back("x");
        } else {
          params.push_back("y" + std::to_string(params.size() + 1));
          vars.push_back(params.back());
        }
      }
      out.push_back({Formula::atom(name, vars), "x", params});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report bundle.

struct ReportOptions {
  int max_k = 8;
  int max_r = 8;
  int max_m = 6;
  SearchOptions search;
};

struct IndicatorRecord {
  std::string indicator;
  std::string formula;
  std::string split;
  int value = 0;
  bool lower_bound = false;
  nlohmann::json witness;
};

inline nlohmann::json tuples_json(const std::vector<Tuple>& ts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : ts) j.push_back(t);
  return j;
}

inline nlohmann::json to_json(const LadderWitness& w) {
  return {{"rows", tuples_json(w.rows)}, {"cols", tuples_json(w.cols)}};
}

inline nlohmann::json to_json(const ChainWitness& w) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : w.sets) sets.push_back(tuples_json(s));
  return {{"params", tuples_json(w.params)}, {"sets", sets}};
}

inline nlohmann::json to_json(const ShatterWitness& w) {
  return {{"cols", tuples_json(w.cols)}, {"rows", tuples_json(w.rows)}};
}

inline nlohmann::json to_json(const IndicatorRecord& r) {
  return {{"indicator", r.indicator}, {"formula", r.formula}, {"split", r.split},
          {"value", r.value},         {"bound_flag", r.lower_bound ? "lower_bound" : "exact"},
          {"witness", r.witness}};
}

inline IndicatorRecord ladder_record(const FiniteStructure& s, const Formula& f, const Split& split,
                                     int max_k, const SearchOptions& options) {
  auto r = ladder_index(s, f, split, max_k, options);
  return {"ladder", to_string(f), split.to_string(), r.k, r.lower_bound,
          r.witness ? to_json(*r.witness) : nlohmann::json(nullptr)};
}

inline IndicatorRecord chain_record(const FiniteStructure& s, const Formula& f, const Split& split,
                                    int max_r, const SearchOptions& options) {
  auto r = strict_order_chain(s, f, split, max_r, options);
  return {"sop", to_string(f), split.to_string(), r.r, r.lower_bound,
          r.witness ? to_json(*r.witness) : nlohmann::json(nullptr)};
}

inline IndicatorRecord vc_record(const FiniteStructure& s, const Formula& f, const Split& split,
                                 int max_m, const SearchOptions& options) {
  auto r = vc_dimension(s, f, split, max_m, options);
  return {"vc", to_string(f), split.to_string(), r.m, r.lower_bound,
          r.witness ? to_json(*r.witness) : nlohmann::json(nullptr)};
}

inline IndicatorRecord profile_record(const FiniteStructure& s, const Formula& f,
                                      const Split& split, int jobs) {
  auto p = minimality_profile(s, {{f, split.x.at(0), split.y}}, jobs);
  const auto& e = p.entries.at(0);
  nlohmann::json w = {{"params", e.witness}, {"set_size", e.set_size}};
  return {"minprofile", e.formula, split.to_string(), e.value, false, w};
}

// Runs every indicator on every (formula, split). The minimality profile
// is included when the x side is a single variable.
inline std::vector<IndicatorRecord> indicator_report(
    const FiniteStructure& s, const std::vector<std::pair<Formula, Split>>& formulas,
    const ReportOptions& options = {}) {
  std::vector<IndicatorRecord> out;
  for (const auto& [f, split] : formulas) {
    out.push_back(ladder_record(s, f, split, options.max_k, options.search));
    out.push_back(chain_record(s, f, split, options.max_r, options.search));
    out.push_back(vc_record(s, f, split, options.max_m, options.search));
    if (split.x.size() == 1) out.push_back(profile_record(s, f, split, options.search.jobs));
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string report_csv(const std::vector<IndicatorRecord>& records) {
  std::string out = "indicator,formula,split,value,bound_flag,witness\n";
  for (const auto& r : records) {
    out += csv_field(r.indicator) + "," + csv_field(r.formula) + "," + csv_field(r.split) + "," +
           std::to_string(r.value) + "," + (r.lower_bound ? "lower_bound" : "exact") + "," +
           csv_field(r.witness.dump()) + "\n";
  }
  return out;
}

inline std::string report_text(const std::vector<IndicatorRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    out << "indicator: " << r.indicator << "\n"
        << "formula: " << r.formula << "\n"
        << "split: " << r.split << "\n"
        << "value: " << r.value << "\n"
        << "bound_flag: " << (r.lower_bound ? "lower_bound" : "exact") << "\n"
        << "witness: " << r.witness.dump() << "\n\n";
  }
  return out.str();
}

}  // namespace structlab
