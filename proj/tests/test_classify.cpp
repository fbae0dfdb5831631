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


#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "structlab/structlab.hpp"
#include "support/gtest_helpers.hpp"
#include "support/index_oracle.hpp"
#include "support/oracle.hpp"

using namespace structlab;
using K = ErrorKind;

namespace {

const Formula kPhi = parse_formula("exists z . (R1(x,z) & R2(z,y))");
const Split kXY{{"x"}, {"y"}};

FiniteStructure linear_order(int n) {
  return restrict(gen_order_with_predicate(n, {}).structure, {"Le"});
}

FiniteStructure perfect_matching() {
  auto s = restrict(gen_matching_pair(3, {6}).structure, {"Q1"});
  FiniteStructure out;
  out.universe_size = s.universe_size;
  out.relations.emplace("R", s.relations.at("Q1"));
  return out;
}

FiniteStructure empty_relation(int n) {
  FiniteStructure s;
  s.universe_size = n;
  s.relations.emplace("R", Relation{2, {}});
  return s;
}

const std::vector<std::pair<std::string, int>> kBinary2 = {{"R", 2}, {"S", 2}};

}  // namespace

// ------------------------------------------------------------------ types

TEST(TypePartition, Examples) {
  auto matching = perfect_matching();
  for (int q = 0; q <= 3; ++q) EXPECT_EQ(qr_type_partition(matching, 1, q).block_count(), 1u);
  auto cycles = gen_matching_pair(6, {4, 8}).structure;
  auto p = qr_type_partition(cycles, 1, 3);
  EXPECT_GE(p.block_count(), 2u);
  EXPECT_NE(p.label_of({0}), p.label_of({4}));
  EXPECT_EQ(p.label_of({0}), p.label_of({3}));
  FiniteStructure bare;
  bare.universe_size = 5;
  EXPECT_EQ(qr_type_partition(bare, 1, 2).block_count(), 1u);
  // Pairs split into diagonal and off-diagonal.
  EXPECT_EQ(qr_type_partition(bare, 2, 1).block_count(), 2u);
}

TEST(TypePartition, LabelsAndBlocksAgree) {
  auto s = linear_order(4);
  auto p = qr_type_partition(s, 1, 1);
  // Rank 1 sees "has something below" and "has something above".
  EXPECT_EQ(p.block_count(), 3u);
  EXPECT_EQ(p.labels, (std::vector<int>{0, 1, 1, 2}));
  EXPECT_EQ(p.blocks[1], (std::vector<Tuple>{{1}, {2}}));
  auto p2 = qr_type_partition(s, 1, 2);
  EXPECT_EQ(p2.block_count(), 4u);
}

TEST(TypePartition, Errors) {
  auto s = linear_order(3);
  EXPECT_DOMAIN_ERROR(qr_type_partition(s, 0, 1), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(qr_type_partition(s, 4, 1), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(qr_type_partition(s, 1, -1), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(qr_type_partition(s, 2, 3, 100), K::kBudgetExceeded);
  FiniteStructure f = s;
  f.constants.emplace("c", 0);
  EXPECT_DOMAIN_ERROR(qr_type_partition(f, 1, 1), K::kPrecondition);
}

TEST(TypePartition, AgreesWithGameOracle) {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 25; ++round) {
    const int n = 1 + int(rng() % 4);
    auto s = oracle::random_structure(rng, n, round % 2 ? kBinary2 : std::vector<std::pair<std::string, int>>{{"R", 2}});
    for (int m = 1; m <= 2; ++m) {
      for (int q = 0; q <= 3; ++q) {
        auto p = qr_type_partition(s, m, q);
        EfGame game(s, s);
        const auto tuples = all_tuples(n, m);
        for (const auto& a : tuples) {
          for (const auto& b : tuples) {
            const bool same = p.label_of(a) == p.label_of(b);
            ASSERT_EQ(same, game.play(a, b, q) == Winner::kDuplicator)
                << "n=" << n << " m=" << m << " q=" << q;
          }
        }
      }
    }
  }
}

TEST(TypePartition, HigherRankRefines) {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + int(rng() % 5);
    auto s = oracle::random_structure(rng, n, kBinary2, 0.3);
    for (int m = 1; m <= 2; ++m) {
      auto coarse = qr_type_partition(s, m, 0);
      for (int q = 1; q <= 2; ++q) {
        auto fine = qr_type_partition(s, m, q);
        std::map<int, int> parent;
        for (std::size_t c = 0; c < fine.labels.size(); ++c) {
          auto [it, fresh] = parent.emplace(fine.labels[c], coarse.labels[c]);
          ASSERT_EQ(it->second, coarse.labels[c]);
        }
        EXPECT_GE(fine.block_count(), coarse.block_count());
        coarse = fine;
      }
    }
  }
}

TEST(TypePartition, ConstantOnAutomorphismOrbits) {
  std::mt19937_64 rng(79);
  for (int round = 0; round < 30; ++round) {
    const int n = 1 + int(rng() % 6);
    auto s = oracle::random_structure(rng, n, {{"R", 2}}, 0.3);
    auto p = qr_type_partition(s, 1, 2);
    for (const auto& g : automorphisms(s)) {
      for (Element e = 0; e < n; ++e) ASSERT_EQ(p.label_of({e}), p.label_of({g(e)}));
    }
  }
}

// ------------------------------------------------------------------- game

TEST(EfGame, Examples) {
  auto l2 = linear_order(2), l3 = linear_order(3), l4 = linear_order(4);
  EXPECT_EQ(ef_game_winner(l3, {1}, l3, {1}, 4), Winner::kDuplicator);
  EXPECT_EQ(ef_game_winner(l2, {}, l3, {}, 2), Winner::kSpoiler);
  EXPECT_EQ(ef_game_winner(l2, {}, l3, {}, 1), Winner::kDuplicator);
  // Orders of size at least 2^q - 1 are q-equivalent.
  EXPECT_EQ(ef_game_winner(l3, {}, l4, {}, 2), Winner::kDuplicator);
  EXPECT_EQ(ef_game_winner(l3, {}, l4, {}, 3), Winner::kSpoiler);
  EXPECT_EQ(ef_game_winner(l3, {0}, l4, {1}, 0), Winner::kDuplicator);
  EXPECT_EQ(ef_game_winner(l3, {0, 1}, l4, {1, 0}, 0), Winner::kSpoiler);
  EXPECT_EQ(winner_name(Winner::kSpoiler), "spoiler");
}

TEST(EfGame, Errors) {
  auto l2 = linear_order(2);
  EXPECT_DOMAIN_ERROR(ef_game_winner(l2, {0}, l2, {}, 1), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(ef_game_winner(l2, {5}, l2, {0}, 1), K::kOutOfRange);
  EXPECT_DOMAIN_ERROR(ef_game_winner(l2, {}, perfect_matching(), {}, 1), K::kPrecondition);
  EXPECT_DOMAIN_ERROR(ef_game_winner(linear_order(6), {}, linear_order(7), {}, 5, 50),
                      K::kBudgetExceeded);
}

TEST(EfGame, SymmetricAndIsomorphismInvariant) {
  std::mt19937_64 rng(83);
  for (int round = 0; round < 40; ++round) {
    const int n = 1 + int(rng() % 4);
    auto a = oracle::random_structure(rng, n, {{"R", 2}}, 0.4);
    auto b = oracle::random_structure(rng, n, {{"R", 2}}, 0.4);
    auto img = Permutation::identity(n).image();
    std::shuffle(img.begin(), img.end(), rng);
    Permutation g(img);
    auto moved = apply_permutation(a, g).structure;
    for (const auto& t : all_tuples(n, 1)) {
      ASSERT_EQ(ef_game_winner(a, t, moved, {g(t[0])}, 3), Winner::kDuplicator);
      for (const auto& u : all_tuples(n, 1)) {
        ASSERT_EQ(ef_game_winner(a, t, b, u, 2), ef_game_winner(b, u, a, t, 2));
      }
    }
  }
}

// ---------------------------------------------------------------- indices

TEST(Ladder, Examples) {
  auto comb = gen_comb_ladder(3).structure;
  auto r = ladder_index(comb, kPhi, kXY, 6);
  EXPECT_EQ(r.k, 3);
  EXPECT_FALSE(r.lower_bound);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(oracle::ladder_witness_ok(comb, kPhi, kXY, *r.witness));
  EXPECT_EQ(ladder_index(gen_comb_ladder(1).structure, kPhi, kXY, 6).k, 1);
  EXPECT_EQ(ladder_index(perfect_matching(), parse_formula("R(x,y)"), kXY, 6).k, 1);
  auto none = ladder_index(empty_relation(4), parse_formula("R(x,y)"), kXY, 6);
  EXPECT_EQ(none.k, 0);
  EXPECT_FALSE(none.witness);
  EXPECT_EQ(ladder_index(linear_order(5), parse_formula("Le(x,y)"), kXY, 8).k, 5);
  EXPECT_EQ(ladder_index(linear_order(5), parse_formula("Le(x,y)"), kXY, 3).k, 3);
}

TEST(Ladder, ErrorsAndBudget) {
  auto s = linear_order(4);
  auto le = parse_formula("Le(x,y)");
  EXPECT_DOMAIN_ERROR(ladder_index(s, le, kXY, 0), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(ladder_index(s, le, Split{{"x"}, {}}, 3), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(ladder_index(s, le, Split{{"x"}, {"x"}}, 3), K::kVariableOverlap);
  EXPECT_DOMAIN_ERROR(ladder_index(s, le, Split{{"x"}, {"z"}}, 3), K::kUnboundVariable);
  EXPECT_DOMAIN_ERROR(ladder_index(s, le, Split{{"x", "u", "v"}, {"y"}}, 3), K::kInvalidArgument);
  auto capped = ladder_index(linear_order(8), le, kXY, 8, {3, 1});
  EXPECT_TRUE(capped.lower_bound);
  EXPECT_LT(capped.k, 8);
  if (capped.witness) { EXPECT_TRUE(oracle::ladder_witness_ok(linear_order(8), le, kXY, *capped.witness)); }
}

TEST(Ladder, ParseSplit) {
  auto sp = parse_split("x1, x2 ; y");
  EXPECT_EQ(sp.x, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(sp.y, (std::vector<std::string>{"y"}));
  EXPECT_EQ(sp.to_string(), "x1,x2;y");
  EXPECT_DOMAIN_ERROR(parse_split("x,y"), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(parse_split("x;y;z"), K::kInvalidArgument);
  EXPECT_DOMAIN_ERROR(parse_split("1x;y"), K::kInvalidArgument);
}

TEST(Indices, AgreeWithBruteForce) {
  std::mt19937_64 rng(89);
  const std::vector<std::pair<std::string, int>> sig = {{"P", 1}, {"R", 2}};
  for (int round = 0; round < 120; ++round) {
    const int n = 1 + int(rng() % 4);
    auto s = oracle::random_structure(rng, n, sig, 0.4);
    auto f = oracle::random_formula(rng, sig, {"x", "y"}, 3);
    // Make sure both split variables occur.
    f = Formula::conj(f, Formula::disj(Formula::equality("x", "y"), Formula::truth()));
    auto lr = ladder_index(s, f, kXY, 6);
    ASSERT_EQ(lr.k, oracle::ladder(s, f, kXY, 6)) << to_string(f);
    if (lr.witness) { ASSERT_TRUE(oracle::ladder_witness_ok(s, f, kXY, *lr.witness)); }
    auto cr = strict_order_chain(s, f, kXY, 8);
    ASSERT_EQ(cr.r, oracle::chain(s, f, kXY)) << to_string(f);
    ASSERT_TRUE(cr.witness && oracle::chain_witness_ok(s, f, kXY, *cr.witness));
    auto vr = vc_dimension(s, f, kXY, 6);
    ASSERT_EQ(vr.m, oracle::vc(s, f, kXY, 6)) << to_string(f);
    ASSERT_TRUE(vr.witness && oracle::shatter_witness_ok(s, f, kXY, *vr.witness));
    // Two ladder rungs shatter one column.
    if (lr.k >= 2) { ASSERT_GE(vr.m, 1); }
  }
}

TEST(Indices, PairSplits) {
  std::mt19937_64 rng(97);
  const Split split{{"x", "u"}, {"y"}};
  for (int round = 0; round < 30; ++round) {
    const int n = 1 + int(rng() % 3);
    auto s = oracle::random_structure(rng, n, {{"R", 2}, {"T", 3}}, 0.4);
    auto f = parse_formula("T(x,u,y) | R(u,y)");
    ASSERT_EQ(ladder_index(s, f, split, 8).k, oracle::ladder(s, f, split, 8));
    ASSERT_EQ(strict_order_chain(s, f, split, 8).r, oracle::chain(s, f, split));
    ASSERT_EQ(vc_dimension(s, f, split, 6).m, oracle::vc(s, f, split, 6));
  }
}

TEST(Indices, IgnoreExtraSymbols) {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + int(rng() % 4);
    auto s = oracle::random_structure(rng, n, {{"R", 2}}, 0.4);
    auto big = s;
    big.relations.emplace("Extra", oracle::random_structure(rng, n, {{"E", 2}}).relations.at("E"));
    auto f = parse_formula("exists z . (R(x,z) & R(z,y))");
    EXPECT_EQ(ladder_index(s, f, kXY, 8).k, ladder_index(big, f, kXY, 8).k);
    EXPECT_EQ(strict_order_chain(s, f, kXY, 8).r, strict_order_chain(big, f, kXY, 8).r);
    EXPECT_EQ(vc_dimension(s, f, kXY, 6).m, vc_dimension(big, f, kXY, 6).m);
  }
}

TEST(Indices, JobsDoNotChangeResults) {
  auto comb = gen_comb_ladder(3).structure;
  for (int jobs : {2, 3}) {
    SearchOptions opts{kDefaultSearchBudget, jobs};
    auto a = ladder_index(comb, kPhi, kXY, 6), b = ladder_index(comb, kPhi, kXY, 6, opts);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.witness->rows, b.witness->rows);
    EXPECT_EQ(a.witness->cols, b.witness->cols);
    EXPECT_EQ(to_json(*strict_order_chain(comb, kPhi, kXY, 8).witness),
              to_json(*strict_order_chain(comb, kPhi, kXY, 8, opts).witness));
  }
}

TEST(Chain, Examples) {
  auto comb = gen_comb_ladder(4).structure;
  auto r = strict_order_chain(comb, kPhi, kXY, 8);
  EXPECT_EQ(r.r, 4);
  ASSERT_TRUE(r.witness);
  // Sets {b_j : j >= i} for i = 0..3 with b_j = 4 + j.
  EXPECT_EQ(r.witness->sets.front(), (std::vector<Tuple>{{4}, {5}, {6}, {7}}));
  EXPECT_EQ(r.witness->sets.back(), (std::vector<Tuple>{{7}}));
  EXPECT_EQ(strict_order_chain(linear_order(4), parse_formula("x = y"), kXY, 8).r, 1);
  auto empty = strict_order_chain(empty_relation(3), parse_formula("R(x,y)"), kXY, 8);
  EXPECT_EQ(empty.r, 1);
  EXPECT_TRUE(empty.witness->sets.front().empty());
  EXPECT_EQ(strict_order_chain(empty_relation(0), parse_formula("R(x,y)"), kXY, 8).r, 0);
  EXPECT_EQ(strict_order_chain(comb, kPhi, kXY, 2).r, 2);
}

TEST(Vc, Examples) {
  auto bip = gen_random_bipartite_encoding(3).structure;
  auto r = vc_dimension(bip, kPhi, kXY, 6);
  EXPECT_EQ(r.m, 3);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->rows.size(), 8u);
  EXPECT_TRUE(oracle::shatter_witness_ok(bip, kPhi, kXY, *r.witness));
  EXPECT_EQ(vc_dimension(gen_random_bipartite_encoding(1).structure, kPhi, kXY, 6).m, 1);
  EXPECT_EQ(vc_dimension(perfect_matching(), parse_formula("R(x,y)"), kXY, 6).m, 1);
  EXPECT_EQ(vc_dimension(empty_relation(3), parse_formula("R(x,y)"), kXY, 6).m, 0);
  EXPECT_DOMAIN_ERROR(vc_dimension(bip, kPhi, kXY, 21), K::kInvalidArgument);
}

TEST(Stability, CombRestrictionsHaveShortLadders) {
  for (int m = 1; m <= 5; ++m) {
    auto comb = gen_comb_ladder(m).structure;
    EXPECT_EQ(ladder_index(comb, kPhi, kXY, 8).k, m);
    for (const char* r : {"R1", "R2"}) {
      auto part = restrict(comb, {r});
      EXPECT_LE(ladder_index(part, parse_formula(std::string(r) + "(x,y)"), kXY, 8).k, 1);
    }
  }
}

// ------------------------------------------------------------- minimality

TEST(Minimality, Examples) {
  FiniteStructure bare;
  bare.universe_size = 6;
  auto p = minimality_profile(bare, {{parse_formula("x = y"), "x", {"y"}}});
  EXPECT_EQ(p.overall, 1);
  EXPECT_EQ(p.entries[0].set_size, 1u);
  EXPECT_EQ(minimality_profile(linear_order(6), {{parse_formula("Le(x,y)"), "x", {"y"}}}).overall, 3);
  auto q = restrict(gen_bijection_pair(8).structure, {"Q"});
  EXPECT_EQ(minimality_profile(q, {{parse_formula("Q(x)"), "x", {}}}).overall, 4);
  auto q4 = restrict(gen_bijection_pair(4).structure, {"Q"});
  EXPECT_EQ(minimality_profile(q4, {{parse_formula("Q(x)"), "x", {}}}).overall, 2);
  auto eq = gen_bounded_equivalence(6, 2).structure;
  EXPECT_EQ(minimality_profile(eq, {{parse_formula("E(x,y)"), "x", {"y"}}}).overall, 2);
  auto one = gen_bounded_equivalence(6, 6).structure;
  EXPECT_EQ(minimality_profile(one, {{parse_formula("E(x,y)"), "x", {"y"}}}).overall, 0);
  auto order = gen_order_with_predicate(5, {}).structure;
  EXPECT_EQ(minimality_profile(order, {{parse_formula("R(x)"), "x", {}}}).overall, 0);
}

TEST(Minimality, MatchesDirectCount) {
  std::mt19937_64 rng(103);
  for (int round = 0; round < 40; ++round) {
    const int n = 1 + int(rng() % 6);
    auto s = oracle::random_structure(rng, n, {{"P", 1}, {"R", 2}});
    auto family = atomic_family(s);
    auto p = minimality_profile(s, family, 1 + int(round % 3));
    ASSERT_EQ(p.entries.size(), family.size());
    int overall = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      int best = 0;
      for (const auto& params : all_tuples(n, int(family[i].params.size()))) {
        oracle::Env env;
        for (std::size_t k = 0; k < params.size(); ++k) env[family[i].params[k]] = params[k];
        const int size = int(oracle::defset(s, family[i].formula, {"x"}, env).size());
        best = std::max(best, std::min(size, n - size));
      }
      ASSERT_EQ(p.entries[i].value, best);
      ASSERT_LE(best, n / 2);
      overall = std::max(overall, best);
    }
    ASSERT_EQ(p.overall, overall);
  }
}

TEST(Minimality, AtomicFamilyShape) {
  auto fam = atomic_family(gen_comb_ladder(1).structure);
  ASSERT_EQ(fam.size(), 5u);
  EXPECT_EQ(to_string(fam[0].formula), "x = y");
  EXPECT_EQ(to_string(fam[1].formula), "R1(x,y1)");
  EXPECT_EQ(to_string(fam[2].formula), "R1(y1,x)");
  EXPECT_EQ(fam[2].params, (std::vector<std::string>{"y1"}));
}

TEST(Minimality, FusionExperimentBound) {
  for (int n = 2; n <= 16; n += 2) {
    for (int c : {1, 2, 3, 5}) {
      auto e = oracle::fusion_experiment(n, c);
      EXPECT_TRUE(e.holds()) << "n=" << n << " c=" << c << " fusion=" << e.profile_fusion;
      EXPECT_GE(e.profile_fusion, std::max(e.profile_equivalence, e.profile_singletons));
    }
  }
}

// ---------------------------------------------------------------- reports

TEST(Report, Formats) {
  auto comb = gen_comb_ladder(2).structure;
  auto records = indicator_report(comb, {{kPhi, kXY}});
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0].indicator, "ladder");
  EXPECT_EQ(records[1].indicator, "sop");
  EXPECT_EQ(records[2].indicator, "vc");
  EXPECT_EQ(records[3].indicator, "minprofile");
  EXPECT_EQ(records[0].value, 2);
  EXPECT_EQ(records[1].value, 2);
  EXPECT_EQ(records[2].value, 1);
  auto csv = report_csv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "indicator,formula,split,value,bound_flag,witness");
  EXPECT_NE(csv.find("ladder,\"exists z . R1(x,z) & R2(z,y)\",x;y,2,exact,\"{"), std::string::npos);
  auto text = report_text(records);
  for (const char* key : {"indicator: ", "formula: ", "split: ", "value: ", "bound_flag: ", "witness: "}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  auto j = to_json(records[0]);
  EXPECT_EQ(j["bound_flag"], "exact");
  EXPECT_EQ(j["witness"]["rows"].size(), 2u);
  // Two-variable x sides skip the profile.
  EXPECT_EQ(indicator_report(comb, {{kPhi, Split{{"x", "u"}, {"y"}}}}).size(), 3u);
}

TEST(Report, BudgetFlag) {
  ReportOptions opts;
  opts.search.budget = 2;
  auto records = indicator_report(linear_order(8), {{parse_formula("Le(x,y)"), kXY}}, opts);
  EXPECT_TRUE(records[0].lower_bound);
  EXPECT_NE(report_csv(records).find("lower_bound"), std::string::npos);
}
