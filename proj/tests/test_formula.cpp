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


#include <algorithm>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "structlab/structlab.hpp"
#include "support/gtest_helpers.hpp"
#include "support/oracle.hpp"

using namespace structlab;
using K = ErrorKind;

namespace {

const std::vector<std::pair<std::string, int>> kSig = {{"P", 1}, {"R", 2}, {"S", 2}};

FiniteStructure matching() {
  FiniteStructure s;
  s.universe_size = 2;
  s.relations.emplace("Q1", Relation{2, {{0, 1}, {1, 0}}});
  return s;
}

}  // namespace

// ---------------------------------------------------------------- parsing

TEST(ParseFormula, LadderFormula) {
  auto f = parse_formula("exists z . (R1(x,z) & R2(z,y))");
  auto expected = Formula::exists(
      "z", Formula::conj(Formula::atom("R1", {"x", "z"}), Formula::atom("R2", {"z", "y"})));
  EXPECT_EQ(f, expected);
}

TEST(ParseFormula, Equality) { EXPECT_EQ(parse_formula("x = x"), Formula::equality("x", "x")); }

TEST(ParseFormula, MissingBody) {
  EXPECT_DOMAIN_ERROR(parse_formula("forall x"), K::kSyntax);
  EXPECT_DOMAIN_ERROR(parse_formula("forall x ."), K::kSyntax);
}

TEST(ParseFormula, Errors) {
  for (const char* bad : {"", "R(", "R(x,)", "x =", "x & ", "(x = y", "R(X)", "exists true . x = x",
                          "x = y y", "~", "R(x) <-> ", "forall . R(x)"}) {
    EXPECT_DOMAIN_ERROR(parse_formula(bad), K::kSyntax) << bad;
  }
}

TEST(ParseFormula, ErrorsReportColumn) {
  try {
    parse_formula("R(x) & & S(y)");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 8);
  }
}

TEST(ParseFormula, Precedence) {
  EXPECT_EQ(parse_formula("P(x) | P(y) & P(z)"),
            Formula::disj(Formula::atom("P", {"x"}),
                          Formula::conj(Formula::atom("P", {"y"}), Formula::atom("P", {"z"}))));
  EXPECT_EQ(parse_formula("P(x) -> P(y) -> P(z)"),
            Formula::implies(Formula::atom("P", {"x"}),
                             Formula::implies(Formula::atom("P", {"y"}), Formula::atom("P", {"z"}))));
  EXPECT_EQ(parse_formula("P(x) <-> P(y) <-> P(z)"),
            Formula::iff(Formula::iff(Formula::atom("P", {"x"}), Formula::atom("P", {"y"})),
                         Formula::atom("P", {"z"})));
  EXPECT_EQ(parse_formula("~P(x) & true"),
            Formula::conj(Formula::negation(Formula::atom("P", {"x"})), Formula::truth()));
  // A quantifier body extends as far right as possible.
  EXPECT_EQ(parse_formula("forall x . P(x) & P(y)"),
            Formula::forall("x", Formula::conj(Formula::atom("P", {"x"}), Formula::atom("P", {"y"}))));
}

TEST(ParseFormula, PrintReparseIsIdentity) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    auto f = oracle::random_formula(rng, kSig, {"x", "y"}, 5);
    const std::string text = to_string(f);
    EXPECT_EQ(parse_formula(text), f) << text;
  }
}

TEST(ParseFormula, MinimalParentheses) {
  EXPECT_EQ(to_string(parse_formula("((P(x)) & (P(y)))")), "P(x) & P(y)");
  EXPECT_EQ(to_string(parse_formula("(P(x) | P(y)) & P(z)")), "(P(x) | P(y)) & P(z)");
  EXPECT_EQ(to_string(parse_formula("~(x = y)")), "~x = y");
  EXPECT_EQ(parse_formula("~x = y"), Formula::negation(Formula::equality("x", "y")));
}

TEST(FreeVariables, Examples) {
  EXPECT_EQ(free_variables(parse_formula("exists z . (R1(x,z) & R2(z,y))")),
            (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(free_variables(parse_formula("x = x")), (std::vector<std::string>{"x"}));
  EXPECT_TRUE(free_variables(parse_formula("forall x . R(x,x)")).empty());
  EXPECT_EQ(free_variables(parse_formula("R(y,x) & exists y . R(y,z)")),
            (std::vector<std::string>{"y", "x", "z"}));
  // Quantifier scope extends as far right as possible.
  EXPECT_EQ(quantifier_rank(parse_formula("exists x . forall y . R(x,y) | exists z . P(z)")), 3);
  EXPECT_EQ(quantifier_rank(parse_formula("(exists x . forall y . R(x,y)) | exists z . P(z)")), 2);
}

// ------------------------------------------------------------- evaluation

TEST(Evaluate, Examples) {
  EXPECT_TRUE(evaluate(matching(), parse_formula("exists y . Q1(x,y)"), {{"x", 0}}));
  EXPECT_TRUE(evaluate(matching(), parse_formula("true"), {}));
  auto comb = gen_comb_ladder(2).structure;
  auto phi = parse_formula("exists z . (R1(x,z) & R2(z,y))");
  // a_1 = 1, b_0 = 2 in the documented numbering.
  EXPECT_FALSE(evaluate(comb, phi, {{"x", 1}, {"y", 2}}));
  EXPECT_TRUE(evaluate(comb, phi, {{"x", 0}, {"y", 3}}));
}

TEST(Evaluate, Errors) {
  auto s = matching();
  EXPECT_DOMAIN_ERROR(evaluate(s, parse_formula("T(x)"), {{"x", 0}}), K::kUnknownSymbol);
  EXPECT_DOMAIN_ERROR(evaluate(s, parse_formula("Q1(x)"), {{"x", 0}}), K::kArityMismatch);
  EXPECT_DOMAIN_ERROR(evaluate(s, parse_formula("Q1(x,y)"), {{"x", 0}}), K::kUnboundVariable);
  EXPECT_DOMAIN_ERROR(evaluate(s, parse_formula("Q1(x,x)"), {{"x", 7}}), K::kOutOfRange);
}

TEST(Evaluate, ShadowingAndClosedSubformulas) {
  FiniteStructure s;
  s.universe_size = 3;
  s.relations.emplace("P", Relation{1, {{0}}});
  EXPECT_TRUE(evaluate(s, parse_formula("P(x) & exists x . ~P(x)"), {{"x", 0}}));
  EXPECT_FALSE(evaluate(s, parse_formula("exists x . (P(x) & forall x . P(x))"), {}));
  EXPECT_TRUE(evaluate(s, parse_formula("exists x . forall y . (P(y) -> x = y)"), {}));
}

TEST(Evaluate, AgreesWithNaiveOracle) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 300; ++round) {
    const int n = 1 + int(rng() % 4);
    auto s = oracle::random_structure(rng, n, kSig);
    auto f = oracle::random_formula(rng, kSig, {"x", "y"}, 4);
    for (const auto& t : all_tuples(n, 2)) {
      Assignment a{{"x", t[0]}, {"y", t[1]}};
      Assignment used;
      for (const auto& v : free_variables(f)) used[v] = a.at(v);
      ASSERT_EQ(evaluate(s, f, used), oracle::holds(s, f, a)) << to_string(f);
    }
  }
}

TEST(Evaluate, LogicalIdentities) {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + int(rng() % 4);
    auto s = oracle::random_structure(rng, n, kSig);
    auto f = oracle::random_formula(rng, kSig, {"x", "y"}, 3);
    auto g = oracle::random_formula(rng, kSig, {"x", "y"}, 3);
    const std::vector<std::string> xy = {"x", "y"};
    auto set = [&](const Formula& h) { return definable_set(s, h, xy, {}); };
    auto all = all_tuples(n, 2);
    const auto sf = set(f), sg = set(g);
    std::vector<Tuple> comp, meet, join;
    std::set_difference(all.begin(), all.end(), sf.begin(), sf.end(), std::back_inserter(comp));
    std::set_intersection(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(meet));
    std::set_union(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(join));
    EXPECT_EQ(set(Formula::negation(f)), comp);
    EXPECT_EQ(set(Formula::conj(f, g)), meet);
    EXPECT_EQ(set(Formula::disj(f, g)), join);
    EXPECT_EQ(set(Formula::negation(Formula::conj(f, g))),
              set(Formula::disj(Formula::negation(f), Formula::negation(g))));
    EXPECT_EQ(set(Formula::negation(Formula::exists("x", f))),
              set(Formula::forall("x", Formula::negation(f))));
    EXPECT_EQ(set(Formula::implies(f, g)), set(Formula::disj(Formula::negation(f), g)));
  }
}

TEST(Evaluate, InvariantUnderAutomorphisms) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int round = 0; round < 80; ++round) {
    const int n = 2 + int(rng() % 4);
    auto s = oracle::random_structure(rng, n, {{"R", 2}}, 0.3);
    auto autos = automorphisms(s);
    auto f = oracle::random_formula(rng, {{"R", 2}}, {"x", "y"}, 3);
    for (const auto& g : autos) {
      for (const auto& t : all_tuples(n, 2)) {
        Assignment a{{"x", t[0]}, {"y", t[1]}}, ga{{"x", g(t[0])}, {"y", g(t[1])}};
        Assignment ua, uga;
        for (const auto& v : free_variables(f)) {
          ua[v] = a.at(v);
          uga[v] = ga.at(v);
        }
        ASSERT_EQ(evaluate(s, f, ua), evaluate(s, f, uga));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

// ---------------------------------------------------------- definable sets

TEST(DefinableSet, Examples) {
  auto s = matching();
  EXPECT_EQ(definable_set(s, parse_formula("x = x"), {"x"}, {}), (std::vector<Tuple>{{0}, {1}}));
  EXPECT_TRUE(definable_set(s, parse_formula("~ (x = x)"), {"x"}, {}).empty());
  auto comb = gen_comb_ladder(2).structure;
  auto phi = parse_formula("exists z . (R1(x,z) & R2(z,y))");
  // a_0 = 0, a_1 = 1, b_0 = 2, b_1 = 3.
  EXPECT_EQ(definable_set(comb, phi, {"x", "y"}, {}), (std::vector<Tuple>{{0, 2}, {0, 3}, {1, 3}}));
}

TEST(DefinableSet, ParametersAndErrors) {
  auto s = matching();
  EXPECT_EQ(definable_set(s, parse_formula("Q1(x,y)"), {"x"}, {{"y", 1}}),
            (std::vector<Tuple>{{0}}));
  EXPECT_DOMAIN_ERROR(definable_set(s, parse_formula("Q1(x,y)"), {"x", "y"}, {{"y", 1}}),
                      K::kVariableOverlap);
  EXPECT_DOMAIN_ERROR(definable_set(s, parse_formula("Q1(x,y)"), {"x"}, {}), K::kUnboundVariable);
}

TEST(DefinableSet, ParallelMatchesSequential) {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 20; ++round) {
    auto s = oracle::random_structure(rng, 7, kSig);
    auto f = oracle::random_formula(rng, kSig, {"x", "y", "z"}, 4);
    const std::vector<std::string> vars = {"x", "y", "z"};
    auto seq = definable_set(s, f, vars, {}, 1);
    EXPECT_EQ(definable_set(s, f, vars, {}, 4), seq);
    EXPECT_EQ(seq, oracle::defset(s, f, vars));
  }
}
